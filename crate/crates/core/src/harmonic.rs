//! Bigraded harmonic polynomials: the spaces `H_{p,q} = ker Δ ∩ P_{p,q}`,
//! the Fischer decomposition `P = Σ_j |z|^{2j} P_j`, the factorial pairing,
//! and the phase-Fourier split of a degree-`k` harmonic into bigraded parts.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;

use crate::basis::{MonomialBasis, OperatorMatrix};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, PivotRule};
use crate::poly::{BiPoly, ExactComplex};

/// `⟨R, S⟩ = Σ c^R_{αβ} conj(c^S_{αβ}) α! β!`.
///
/// Both arguments must lie in the same `P_{p,q}`; the zero polynomial is
/// accepted against any bidegree.
pub fn fischer_inner(r: &BiPoly, s: &BiPoly) -> Result<ExactComplex> {
    if r.n() != s.n() {
        return Err(Error::DimensionMismatch { left: r.n(), right: s.n() });
    }
    let br = if r.is_zero() { None } else { Some(r.require_bidegree()?) };
    let bs = if s.is_zero() { None } else { Some(s.require_bidegree()?) };
    if let (Some(a), Some(b)) = (br, bs) {
        if a != b {
            return Err(Error::BidegreeMismatch { left: a, right: b });
        }
    }
    let mut acc = ExactComplex::zero();
    for (m, c) in r.terms() {
        let d = s.coefficient(m);
        if d.is_zero() {
            continue;
        }
        let weight = BigRational::from_integer(m.alpha.factorial() * m.beta.factorial());
        acc += &(c * &d.conj()).scale_rational(&weight);
    }
    Ok(acc)
}

/// Laplacian `P_{p,q} → P_{p−1,q−1}` as an exact matrix.
pub fn laplacian_matrix(n: usize, p: u32, q: u32) -> OperatorMatrix {
    OperatorMatrix::build(
        MonomialBasis::new(n, p, q),
        MonomialBasis::new_signed(n, p as i64 - 1, q as i64 - 1),
        |m| Ok(m.laplacian()),
    )
    .expect("Δ maps P_{p,q} into P_{p-1,q-1}")
}

/// Exact basis of `H_{p,q}`.
#[derive(Clone, Debug)]
pub struct HarmonicBasis {
    pub laplacian_matrix: OperatorMatrix,
    /// Kernel vectors in reduced echelon form over the monomial basis.
    pub basis: Vec<BiPoly>,
    pub dim: usize,
}

pub fn harmonic_basis(n: usize, p: u32, q: u32) -> HarmonicBasis {
    let laplacian_matrix = laplacian_matrix(n, p, q);
    let basis = laplacian_matrix.kernel();
    let dim = basis.len();
    HarmonicBasis { laplacian_matrix, basis, dim }
}

/// `P = Σ_j |z|^{2j} P_j` with `P_j ∈ H_{p−j,q−j}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HarmonicDecomposition {
    pub bidegree: (u32, u32),
    /// `[P_0, …, P_l]` with `l = min(p, q)`; absent parts are zero polynomials.
    pub components: Vec<BiPoly>,
}

impl HarmonicDecomposition {
    pub fn recompose(&self) -> BiPoly {
        let n = self.components.first().map_or(0, BiPoly::n);
        let r2 = BiPoly::norm_sq(n);
        let mut weight = BiPoly::one(n);
        let mut acc = BiPoly::zero(n);
        for c in &self.components {
            acc = &acc + &(&weight * c);
            weight = &weight * &r2;
        }
        acc
    }
}

/// Precomputed exact solver for Fischer decompositions on one `P_{p,q}`.
///
/// The columns of the system are `|z|^{2j} h` for `h` ranging over the
/// harmonic bases of `H_{p−j,q−j}`; they form a basis of `P_{p,q}`, so the
/// system is square and uniquely solvable.
#[derive(Clone, Debug)]
pub struct FischerDecomposer {
    n: usize,
    p: u32,
    q: u32,
    space: MonomialBasis,
    /// `(j, harmonic basis of H_{p−j,q−j})`
    blocks: Vec<(u32, Vec<BiPoly>)>,
    inverse: Matrix,
}

impl FischerDecomposer {
    pub fn new(n: usize, p: u32, q: u32) -> Self {
        Self::with_pivot(n, p, q, PivotRule::default())
    }

    pub fn with_pivot(n: usize, p: u32, q: u32, rule: PivotRule) -> Self {
        let space = MonomialBasis::new(n, p, q);
        let r2 = BiPoly::norm_sq(n);
        let mut blocks = Vec::new();
        let mut columns = Vec::new();
        let mut weight = BiPoly::one(n);
        for j in 0..=p.min(q) {
            let hb = harmonic_basis(n, p - j, q - j).basis;
            for h in &hb {
                let col = space
                    .coordinates(&(&weight * h))
                    .expect("|z|^{2j} H_{p-j,q-j} lies in P_{p,q}");
                columns.push(col);
            }
            blocks.push((j, hb));
            weight = &weight * &r2;
        }
        let system = Matrix::from_columns(space.len(), &columns);
        let inverse = system
            .inverse(rule)
            .expect("Fischer system is square and invertible");
        Self { n, p, q, space, blocks, inverse }
    }

    pub fn decompose(&self, poly: &BiPoly) -> Result<HarmonicDecomposition> {
        if poly.n() != self.n {
            return Err(Error::DimensionMismatch { left: self.n, right: poly.n() });
        }
        if !poly.is_zero() {
            let b = poly.require_bidegree()?;
            if b != (self.p, self.q) {
                return Err(Error::BidegreeMismatch { left: (self.p, self.q), right: b });
            }
        }
        let rhs = self.space.coordinates(poly)?;
        let x = self.inverse.mul_vec(&rhs);
        let mut offset = 0;
        let mut components = Vec::with_capacity(self.blocks.len());
        for (_, hb) in &self.blocks {
            let mut comp = BiPoly::zero(self.n);
            for (h, c) in hb.iter().zip(&x[offset..offset + hb.len()]) {
                if !c.is_zero() {
                    comp = &comp + &h.scale(c);
                }
            }
            offset += hb.len();
            components.push(comp);
        }
        Ok(HarmonicDecomposition { bidegree: (self.p, self.q), components })
    }
}

/// Unique Fischer decomposition of a bihomogeneous polynomial.
pub fn fischer_decompose(poly: &BiPoly) -> Result<HarmonicDecomposition> {
    let (p, q) = poly.require_bidegree()?;
    FischerDecomposer::new(poly.n(), p, q).decompose(poly)
}

/// Values `Y(e^{iθ_m} ω)` on the uniform grid `θ_m = 2πm/M`.
pub fn phase_orbit_samples(
    f: impl Fn(&[Complex64]) -> Complex64,
    omega: &[Complex64],
    grid: usize,
) -> Vec<Complex64> {
    (0..grid)
        .map(|m| {
            let phase = Complex64::from_polar(1.0, 2.0 * PI * m as f64 / grid as f64);
            let pt: Vec<Complex64> = omega.iter().map(|w| w * phase).collect();
            f(&pt)
        })
        .collect()
}

/// Recovers `Y_{p,q}(ω)`, `p + q = k`, from samples of `θ ↦ Y(e^{iθ}ω)` on a
/// uniform grid. Component `(p, q)` is the Fourier coefficient of `e^{i(p−q)θ}`.
///
/// The grid must separate the frequencies `−k, −k+2, …, k`: an odd grid needs
/// more than `k` points, an even one more than `2k`.
pub fn bigrade_split(samples: &[Complex64], k: u32) -> Result<BTreeMap<(u32, u32), Complex64>> {
    let m = samples.len();
    let aliased = m == 0 || (1..=k as usize).any(|j| (2 * j) % m == 0);
    if aliased {
        return Err(Error::Aliasing { grid: m, degree: k });
    }
    let mut out = BTreeMap::new();
    for p in 0..=k {
        let q = k - p;
        let freq = p as f64 - q as f64;
        let coef: Complex64 = samples
            .iter()
            .enumerate()
            .map(|(j, v)| v * Complex64::from_polar(1.0, -freq * 2.0 * PI * j as f64 / m as f64))
            .sum::<Complex64>()
            / m as f64;
        out.insert((p, q), coef);
    }
    Ok(out)
}
