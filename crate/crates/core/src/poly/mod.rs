//! Exact polynomials in `z` and `z̄` on `C^n`, with Wirtinger calculus.
//!
//! A [`BiPoly`] stores `Σ c_{αβ} z^α z̄^β` as a sparse map from monomials to
//! [`ExactComplex`] coefficients. Zero coefficients are never stored, so two
//! polynomials are equal exactly when their term maps are.

mod exact;
pub mod json;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;

pub use exact::{format_rational, parse_rational_literal, ExactComplex};

use crate::error::{Error, Result};

/// Exponent vector of length `n`.
///
/// Ordered graded-lexicographically: lower total degree first, then the
/// larger exponent of the earliest variable first (`z₁ < z₂`, `z₁² < z₁z₂ < z₂²`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        Self(entries)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0; n])
    }

    /// Unit vector `e_k`.
    pub fn unit(n: usize, k: usize) -> Self {
        let mut v = vec![0; n];
        v[k] = 1;
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, k: usize) -> u32 {
        self.0[k]
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `α!`
    pub fn factorial(&self) -> num_bigint::BigInt {
        self.0
            .iter()
            .map(|&a| (1..=a as u64).product::<num_bigint::BigInt>())
            .product()
    }

    /// Returns a copy with entry `k` shifted by `delta`, or `None` if it would go negative.
    fn shifted(&self, k: usize, delta: i32) -> Option<Self> {
        let v = self.0[k] as i64 + delta as i64;
        if v < 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[k] = v as u32;
        Some(Self(e))
    }

    /// All exponent vectors of length `n` and total degree `d`, in ascending order.
    pub fn all_of_degree(n: usize, d: u32) -> Vec<Self> {
        fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if prefix.len() + 1 == n {
                prefix.push(d);
                out.push(MultiIndex(prefix.clone()));
                prefix.pop();
                return;
            }
            for first in (0..=d).rev() {
                prefix.push(first);
                rec(n, d - first, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n == 0 {
            if d == 0 {
                out.push(MultiIndex(vec![]));
            }
            return out;
        }
        rec(n, d, &mut Vec::with_capacity(n), &mut out);
        out
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The monomial `z^α z̄^β`. Ordered with `α` major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub alpha: MultiIndex,
    pub beta: MultiIndex,
}

impl Monomial {
    pub fn new(alpha: MultiIndex, beta: MultiIndex) -> Self {
        Self { alpha, beta }
    }

    pub fn bidegree(&self) -> (u32, u32) {
        (self.alpha.degree(), self.beta.degree())
    }

    fn product(&self, other: &Self) -> Self {
        Self::new(self.alpha.add(&other.alpha), self.beta.add(&other.beta))
    }

    fn conj(&self) -> Self {
        Self::new(self.beta.clone(), self.alpha.clone())
    }
}

/// Which Wirtinger derivative to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Wirtinger {
    /// `∂/∂z_k`
    Holo,
    /// `∂/∂z̄_k`
    Anti,
}

/// Exact polynomial `Σ c_{αβ} z^α z̄^β` on `C^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiPoly {
    n: usize,
    terms: BTreeMap<Monomial, ExactComplex>,
}

/// Binary and unary operations accepted by [`arithmetic`].
#[derive(Clone, Debug)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Scale(ExactComplex),
    Conj,
}

/// Dispatches one arithmetic operation. `Scale` and `Conj` ignore `rhs`.
pub fn arithmetic(lhs: &BiPoly, rhs: &BiPoly, op: ArithOp) -> Result<BiPoly> {
    match op {
        ArithOp::Add => lhs.checked_add(rhs),
        ArithOp::Sub => lhs.checked_sub(rhs),
        ArithOp::Mul => lhs.checked_mul(rhs),
        ArithOp::Scale(c) => Ok(lhs.scale(&c)),
        ArithOp::Conj => Ok(lhs.conj()),
    }
}

/// Bigrading data returned by [`BiPoly::grade_info`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradeInfo {
    /// `Some((p, q))` iff the polynomial is a nonzero bihomogeneous one.
    pub bidegree: Option<(u32, u32)>,
    /// Every bidegree carrying a nonzero term, ascending.
    pub components: Vec<(u32, u32)>,
}

impl GradeInfo {
    /// `p − q`, the frequency of the phase orbit `θ ↦ P(e^{iθ}z)`.
    pub fn phase_exponent(&self) -> Option<i64> {
        self.bidegree.map(|(p, q)| p as i64 - q as i64)
    }

    /// The factor `e^{i(p−q)θ}` with `P(e^{iθ}z) = e^{i(p−q)θ} P(z)`.
    pub fn phase_factor(&self, theta: f64) -> Option<Complex64> {
        self.phase_exponent()
            .map(|m| Complex64::from_polar(1.0, m as f64 * theta))
    }
}

impl BiPoly {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: ExactComplex) -> Self {
        Self::monomial(n, Monomial::new(MultiIndex::zeros(n), MultiIndex::zeros(n)), c)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, ExactComplex::one())
    }

    /// `c · z^α z̄^β`. Panics if the exponent lengths differ from `n`.
    pub fn monomial(n: usize, m: Monomial, c: ExactComplex) -> Self {
        assert!(m.alpha.len() == n && m.beta.len() == n, "monomial length != n");
        let mut p = Self::zero(n);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Shorthand for a monomial from raw exponents.
    pub fn term(alpha: &[u32], beta: &[u32], c: ExactComplex) -> Self {
        let n = alpha.len();
        Self::monomial(
            n,
            Monomial::new(MultiIndex::new(alpha.to_vec()), MultiIndex::new(beta.to_vec())),
            c,
        )
    }

    /// The coordinate `z_k` (0-based).
    pub fn z(n: usize, k: usize) -> Self {
        Self::monomial(n, Monomial::new(MultiIndex::unit(n, k), MultiIndex::zeros(n)), ExactComplex::one())
    }

    /// The coordinate `z̄_k` (0-based).
    pub fn zbar(n: usize, k: usize) -> Self {
        Self::monomial(n, Monomial::new(MultiIndex::zeros(n), MultiIndex::unit(n, k)), ExactComplex::one())
    }

    /// `|z|² = Σ z_k z̄_k`.
    pub fn norm_sq(n: usize) -> Self {
        let mut p = Self::zero(n);
        for k in 0..n {
            p.terms.insert(
                Monomial::new(MultiIndex::unit(n, k), MultiIndex::unit(n, k)),
                ExactComplex::one(),
            );
        }
        p
    }

    /// Builds a polynomial from terms, merging duplicates and dropping zeros.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, ExactComplex)>) -> Result<Self> {
        let mut p = Self::zero(n);
        for (m, c) in terms {
            if m.alpha.len() != n {
                return Err(Error::DimensionMismatch { left: n, right: m.alpha.len() });
            }
            if m.beta.len() != n {
                return Err(Error::DimensionMismatch { left: n, right: m.beta.len() });
            }
            p.add_term(m, &c);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ExactComplex)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> ExactComplex {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &ExactComplex) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_dim(&self, rhs: &Self) -> Result<()> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch { left: self.n, right: rhs.n });
        }
        Ok(())
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        let mut out = Self::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.product(m2), &(c1 * c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &ExactComplex) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&ExactComplex::from_int(k))
    }

    /// Function conjugation: `P̄(z) = conj(P(z))`, swapping `α ↔ β`.
    pub fn conj(&self) -> Self {
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.conj(), c.conj())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.n);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact Wirtinger derivative with respect to `z_k` or `z̄_k` (0-based `k`).
    pub fn differentiate(&self, k: usize, kind: Wirtinger) -> Result<Self> {
        if k >= self.n {
            return Err(Error::IndexOutOfRange { index: k, n: self.n });
        }
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let (e, shifted) = match kind {
                Wirtinger::Holo => (m.alpha.get(k), m.alpha.shifted(k, -1).map(|a| Monomial::new(a, m.beta.clone()))),
                Wirtinger::Anti => (m.beta.get(k), m.beta.shifted(k, -1).map(|b| Monomial::new(m.alpha.clone(), b))),
            };
            if let Some(nm) = shifted {
                out.add_term(nm, &c.scale_rational(&BigRational::from_integer(e.into())));
            }
        }
        Ok(out)
    }

    /// `∂/∂z_k`, panicking on an out-of-range index.
    pub fn d(&self, k: usize) -> Self {
        self.differentiate(k, Wirtinger::Holo).expect("index in range")
    }

    /// `∂/∂z̄_k`, panicking on an out-of-range index.
    pub fn dbar(&self, k: usize) -> Self {
        self.differentiate(k, Wirtinger::Anti).expect("index in range")
    }

    /// `Δ = 4 Σ_k ∂²/∂z_k∂z̄_k`.
    pub fn laplacian(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            for k in 0..self.n {
                let (a, b) = (m.alpha.get(k), m.beta.get(k));
                if a == 0 || b == 0 {
                    continue;
                }
                let nm = Monomial::new(
                    m.alpha.shifted(k, -1).unwrap(),
                    m.beta.shifted(k, -1).unwrap(),
                );
                let f = BigRational::from_integer((4 * a as i64 * b as i64).into());
                out.add_term(nm, &c.scale_rational(&f));
            }
        }
        out
    }

    pub fn is_harmonic(&self) -> bool {
        self.laplacian().is_zero()
    }

    /// Evaluates `Σ c_{αβ} z^α z̄^β` in floating point.
    pub fn evaluate(&self, z: &[Complex64]) -> Result<Complex64> {
        if z.len() != self.n {
            return Err(Error::DimensionMismatch { left: self.n, right: z.len() });
        }
        Ok(FloatPoly::from(self).eval(z))
    }

    /// Set of bidegrees carrying nonzero terms.
    pub fn bidegrees(&self) -> Vec<(u32, u32)> {
        self.terms
            .keys()
            .map(Monomial::bidegree)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// `Some((p, q))` if nonzero and bihomogeneous.
    pub fn bidegree(&self) -> Option<(u32, u32)> {
        match self.bidegrees().as_slice() {
            [single] => Some(*single),
            _ => None,
        }
    }

    /// Bidegree of a bihomogeneous polynomial; zero is rejected as it has none.
    pub fn require_bidegree(&self) -> Result<(u32, u32)> {
        self.bidegree().ok_or_else(|| Error::NotBihomogeneous { present: self.bidegrees() })
    }

    pub fn grade_info(&self) -> GradeInfo {
        GradeInfo { bidegree: self.bidegree(), components: self.bidegrees() }
    }

    /// The `(p, q)` component.
    pub fn component(&self, p: u32, q: u32) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.bidegree() == (p, q))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// `(Σ z_k ∂P/∂z_k, Σ z̄_k ∂P/∂z̄_k)`; equal to `(pP, qP)` for `P ∈ P_{p,q}`.
    pub fn euler_degrees(&self) -> Result<(Self, Self)> {
        if !self.is_zero() {
            self.require_bidegree()?;
        }
        let mut holo = Self::zero(self.n);
        let mut anti = Self::zero(self.n);
        for k in 0..self.n {
            holo = &holo + &(&Self::z(self.n, k) * &self.d(k));
            anti = &anti + &(&Self::zbar(self.n, k) * &self.dbar(k));
        }
        Ok((holo, anti))
    }

    /// Applies a coefficient-wise map to each term, keeping monomials.
    pub fn map_terms(&self, mut f: impl FnMut(&Monomial, &ExactComplex) -> ExactComplex) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(m, c));
        }
        out
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (k, &e) in m.alpha.entries().iter().enumerate() {
                if e > 0 {
                    write!(f, "·z{}^{}", k + 1, e)?;
                }
            }
            for (k, &e) in m.beta.entries().iter().enumerate() {
                if e > 0 {
                    write!(f, "·zb{}^{}", k + 1, e)?;
                }
            }
        }
        Ok(())
    }
}

macro_rules! poly_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<'a> $tr<&'a BiPoly> for &BiPoly {
            type Output = BiPoly;
            /// Panics on dimension mismatch; use the `checked_*` form to get an error instead.
            fn $m(self, rhs: &'a BiPoly) -> BiPoly {
                self.$checked(rhs).expect("BiPoly dimension mismatch")
            }
        }
        impl $tr<BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: BiPoly) -> BiPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);
poly_binop!(Mul, mul, checked_mul);

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale_int(-1)
    }
}

/// Floating-point copy of a [`BiPoly`] for fast repeated evaluation.
#[derive(Clone, Debug)]
pub struct FloatPoly {
    n: usize,
    max_exp: u32,
    terms: Vec<(Complex64, Vec<u32>, Vec<u32>)>,
}

impl From<&BiPoly> for FloatPoly {
    fn from(p: &BiPoly) -> Self {
        let mut max_exp = 0;
        let terms = p
            .terms
            .iter()
            .map(|(m, c)| {
                for &e in m.alpha.entries().iter().chain(m.beta.entries()) {
                    max_exp = max_exp.max(e);
                }
                (c.to_complex64(), m.alpha.entries().to_vec(), m.beta.entries().to_vec())
            })
            .collect();
        Self { n: p.n, max_exp, terms }
    }
}

impl FloatPoly {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Panics if `z.len() != n`.
    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        assert_eq!(z.len(), self.n, "point length must equal n");
        if self.terms.is_empty() {
            return Complex64::new(0.0, 0.0);
        }
        let stride = self.max_exp as usize + 1;
        // powers[k * stride + e] = z_k^e, and the conjugates likewise
        let mut pw = vec![Complex64::new(1.0, 0.0); self.n * stride];
        let mut pwc = pw.clone();
        for k in 0..self.n {
            for e in 1..stride {
                pw[k * stride + e] = pw[k * stride + e - 1] * z[k];
                pwc[k * stride + e] = pwc[k * stride + e - 1] * z[k].conj();
            }
        }
        self.terms
            .iter()
            .map(|(c, a, b)| {
                let mut v = *c;
                for k in 0..self.n {
                    if a[k] > 0 {
                        v *= pw[k * stride + a[k] as usize];
                    }
                    if b[k] > 0 {
                        v *= pwc[k * stride + b[k] as usize];
                    }
                }
                v
            })
            .sum()
    }
}
