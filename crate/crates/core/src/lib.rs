//! Exact bigraded polynomial algebra on `C^n`, harmonic decompositions,
//! non-harmonicity certificates for the cone operators, and numerical
//! twisted spherical means.

pub mod basis;
pub mod cone;
pub mod config;
pub mod error;
pub mod harmonic;
pub mod linalg;
pub mod parallel;
pub mod poly;
pub mod tsm;
pub mod verify;

pub use error::{Error, Result};
pub use poly::{BiPoly, ExactComplex, Monomial, MultiIndex};
