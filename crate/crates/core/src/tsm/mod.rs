//! Numerical twisted spherical means and the Laguerre / special-Hermite
//! machinery around them.

pub mod conv;
pub mod experiments;
pub mod gausspoly;
pub mod laguerre;
pub mod mean;
pub mod quadrature;
pub mod radial;
pub mod weyl;

pub use gausspoly::GaussPoly;
pub use laguerre::laguerre_phi;
pub use mean::{geodesic_mean, twisted_mean, MeanReport};
