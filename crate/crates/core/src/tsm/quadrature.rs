//! Quadrature rules for the normalized sphere measure on `S^{2n−1}`,
//! geodesic slices of it, the shifted Gaussian frame on `C^n`, and the
//! radial half-line.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::{FiniteAboveNegOneF64, GaussHermite, GaussJacobi, GaussLaguerre, GaussLegendre};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

pub const MAX_SPHERE_DEGREE: usize = 60;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RuleKind {
    Sphere { n: usize, degree: usize },
    Geodesic { n: usize, pole: Vec<[f64; 2]>, t: f64, degree: usize },
    ComplexSpace { n: usize, hermite_degree: usize },
    RadialLaguerre { order: f64, points: usize },
}

/// Nodes are points of `C^n` (the radial rule stores `x` as `x + 0i`).
#[derive(Clone, Debug)]
pub struct QuadratureRule {
    pub kind: RuleKind,
    nodes: Nodes,
}

#[derive(Clone, Debug)]
enum Nodes {
    Explicit { points: Vec<Vec<Complex64>>, weights: Vec<f64> },
    /// Moduli × three phase grids, generated on the fly (the n = 3 sphere
    /// rule is too large to store).
    Torus3 { moduli: Vec<([f64; 3], f64)>, phases: Vec<Complex64> },
}

impl QuadratureRule {
    fn explicit(kind: RuleKind, points: Vec<Vec<Complex64>>, weights: Vec<f64>) -> Self {
        Self { kind, nodes: Nodes::Explicit { points, weights } }
    }

    pub fn len(&self) -> usize {
        match &self.nodes {
            Nodes::Explicit { weights, .. } => weights.len(),
            Nodes::Torus3 { moduli, phases } => moduli.len() * phases.len().pow(3),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Dimension of the nodes.
    pub fn dim(&self) -> usize {
        match &self.nodes {
            Nodes::Explicit { points, .. } => points.first().map_or(0, Vec::len),
            Nodes::Torus3 { .. } => 3,
        }
    }

    /// Node `i` and its weight.
    pub fn node(&self, i: usize) -> (Vec<Complex64>, f64) {
        match &self.nodes {
            Nodes::Explicit { points, weights } => (points[i].clone(), weights[i]),
            Nodes::Torus3 { .. } => {
                let (p, w) = self.torus_node(i);
                (p.to_vec(), w)
            }
        }
    }

    fn torus_node(&self, i: usize) -> ([Complex64; 3], f64) {
        let Nodes::Torus3 { moduli, phases } = &self.nodes else { unreachable!() };
        let m = phases.len();
        let (rest, c) = (i / m, i % m);
        let (rest, b) = (rest / m, rest % m);
        let (k, a) = (rest / m, rest % m);
        let (r, w) = moduli[k];
        ([phases[a] * r[0], phases[b] * r[1], phases[c] * r[2]], w)
    }

    /// `Σ w_i f(x_i)`, summed deterministically.
    pub fn integrate(&self, f: impl Fn(&[Complex64]) -> Complex64 + Sync) -> Result<Complex64> {
        match &self.nodes {
            Nodes::Explicit { points, weights } => det_sum(weights.len(), |i| weights[i] * f(&points[i])),
            Nodes::Torus3 { .. } => det_sum(self.len(), |i| {
                let (p, w) = self.torus_node(i);
                w * f(&p)
            }),
        }
    }
}

const CHUNK: usize = 512;

fn pairwise(v: &[Complex64]) -> Complex64 {
    if v.len() <= 8 {
        return v.iter().sum();
    }
    let (a, b) = v.split_at(v.len() / 2);
    pairwise(a) + pairwise(b)
}

/// Sum of `term(0..len)` with a fixed reduction tree: fixed-size chunks,
/// pairwise inside each chunk and across chunk sums. The result does not
/// depend on how chunks are scheduled.
pub fn det_sum(len: usize, term: impl Fn(usize) -> Complex64 + Sync) -> Result<Complex64> {
    let chunks: Vec<Complex64> = (0..len.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(len);
            let vals: Vec<Complex64> = (lo..hi).map(&term).collect();
            if let Some(k) = vals.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
                return Err(Error::NonFinite { node: lo + k });
            }
            Ok(pairwise(&vals))
        })
        .collect::<Result<_>>()?;
    Ok(pairwise(&chunks))
}

fn nz(k: usize) -> NonZeroUsize {
    NonZeroUsize::new(k.max(1)).unwrap()
}

fn above(x: f64) -> FiniteAboveNegOneF64 {
    FiniteAboveNegOneF64::new(x).expect("parameter above -1")
}

/// Gauss–Legendre on `[−1, 1]`.
pub fn legendre(points: usize) -> Vec<(f64, f64)> {
    GaussLegendre::new(nz(points)).as_node_weight_pairs().to_vec()
}

/// Gauss–Jacobi for the symmetric weight `(1−x²)^e` on `[−1, 1]`.
///
/// Only the symmetric case is exposed: `GaussJacobi` in gauss-quad 0.3
/// returns wrong rules for `α ≠ β` with an odd number of points.
pub fn gegenbauer(points: usize, e: f64) -> Vec<(f64, f64)> {
    if e == 0.0 {
        return legendre(points);
    }
    GaussJacobi::new(nz(points), above(e), above(e)).as_node_weight_pairs().to_vec()
}

/// Gauss–Hermite for `e^{−x²}` on the line.
pub fn hermite(points: usize) -> Vec<(f64, f64)> {
    GaussHermite::new(nz(points)).as_node_weight_pairs().to_vec()
}

/// Generalized Gauss–Laguerre for `x^α e^{−x}` on the half-line.
pub fn laguerre(points: usize, alpha: f64) -> Vec<(f64, f64)> {
    GaussLaguerre::new(nz(points), above(alpha)).as_node_weight_pairs().to_vec()
}

fn phases(count: usize) -> Vec<Complex64> {
    (0..count).map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / count as f64)).collect()
}

/// Normalized surface measure on `S^{2n−1} ⊂ C^n`, exact on `z^α z̄^β` with
/// `|α|+|β| ≤ degree`.
///
/// `n = 2`: Hopf coordinates, `|z₁|² = (1+u)/2` with Gauss–Legendre in `u`
/// and uniform grids in both phases. `n = 3`: the squared moduli are uniform
/// on the 2-simplex, `(s, (1−s)t, (1−s)(1−t))` with density `2(1−s)` in
/// `s` and uniform in `t`, plus three phase grids. After the phase average
/// the integrand has degree `≤ degree/2` in `(s, t)`, so `⌈(degree+2)/4⌉`
/// Legendre points in `t` and one more in `s` (which also carries the
/// factor `1−s`) are exact; n = 2 keeps
/// `degree/2 + 1` Legendre points for headroom on non-polynomial integrands.
pub fn sphere_quadrature(n: usize, degree: usize) -> Result<QuadratureRule> {
    if degree > MAX_SPHERE_DEGREE {
        return Err(Error::InvalidArgument(format!("sphere degree {degree} exceeds {MAX_SPHERE_DEGREE}")));
    }
    let ph = phases(degree + 1);
    let pw = 1.0 / ph.len() as f64;
    let kind = RuleKind::Sphere { n, degree };
    match n {
        2 => {
            let mut nodes = Vec::new();
            let mut weights = Vec::new();
            for (u, w) in legendre(degree / 2 + 1) {
                let (c, s) = (((1.0 + u) / 2.0).sqrt(), ((1.0 - u) / 2.0).sqrt());
                for e1 in &ph {
                    for e2 in &ph {
                        nodes.push(vec![e1 * c, e2 * s]);
                        weights.push(w / 2.0 * pw * pw);
                    }
                }
            }
            Ok(QuadratureRule::explicit(kind, nodes, weights))
        }
        3 => {
            let m = (degree + 2).div_ceil(4);
            let lt = legendre(m);
            let mut moduli = Vec::new();
            for (x, wx) in legendre(m + 1) {
                let s = (1.0 + x) / 2.0;
                for &(y, wy) in &lt {
                    let t = (1.0 + y) / 2.0;
                    let r = [s.sqrt(), ((1.0 - s) * t).sqrt(), ((1.0 - s) * (1.0 - t)).sqrt()];
                    // ds dt = dx dy / 4, density 2(1−s)
                    moduli.push((r, wx * wy / 2.0 * (1.0 - s) * pw * pw * pw));
                }
            }
            Ok(QuadratureRule { kind, nodes: Nodes::Torus3 { moduli, phases: ph } })
        }
        _ => Err(Error::UnsupportedDimension { n, what: "sphere quadrature" }),
    }
}

/// Normalized surface measure on the real unit sphere `S^k ⊂ R^{k+1}`,
/// by the recursive product rule: the last coordinate `x` carries weight
/// `(1−x²)^{(k−2)/2}`, the rest is `√(1−x²)·S^{k−1}`; `S^1` is a uniform grid.
pub fn real_sphere_rule(k: usize, degree: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
    if k == 0 {
        return (vec![vec![1.0], vec![-1.0]], vec![0.5, 0.5]);
    }
    if k == 1 {
        let m = degree + 1;
        let nodes = (0..m)
            .map(|j| {
                let a = 2.0 * PI * j as f64 / m as f64;
                vec![a.cos(), a.sin()]
            })
            .collect();
        return (nodes, vec![1.0 / m as f64; m]);
    }
    let (sub_nodes, sub_w) = real_sphere_rule(k - 1, degree);
    let e = (k as f64 - 2.0) / 2.0;
    let rule = gegenbauer(degree / 2 + 1, e);
    let total: f64 = rule.iter().map(|p| p.1).sum();
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for (x, w) in rule {
        let s = (1.0 - x * x).sqrt();
        for (v, ws) in sub_nodes.iter().zip(&sub_w) {
            let mut p: Vec<f64> = v.iter().map(|c| c * s).collect();
            p.push(x);
            nodes.push(p);
            weights.push(w / total * ws);
        }
    }
    (nodes, weights)
}

fn to_real(z: &[Complex64]) -> Vec<f64> {
    z.iter().flat_map(|c| [c.re, c.im]).collect()
}

fn to_complex(x: &[f64]) -> Vec<Complex64> {
    x.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect()
}

/// Orthonormal basis of the real orthogonal complement of `v` in `R^d`.
fn complement_basis(v: &[f64]) -> Vec<Vec<f64>> {
    let d = v.len();
    let mut basis: Vec<Vec<f64>> = vec![v.to_vec()];
    for e in 0..d {
        let mut u = vec![0.0; d];
        u[e] = 1.0;
        for b in &basis {
            let dot: f64 = u.iter().zip(b).map(|(x, y)| x * y).sum();
            u.iter_mut().zip(b).for_each(|(x, y)| *x -= dot * y);
        }
        let norm = u.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            u.iter_mut().for_each(|x| *x /= norm);
            basis.push(u);
        }
        if basis.len() == d {
            break;
        }
    }
    basis.remove(0);
    basis
}

/// Normalized measure on the geodesic sphere
/// `{ tω + √(1−t²)u : u ⊥ ω, |u| = 1 }` (real orthogonality in `R^{2n}`).
pub fn geodesic_quadrature(pole: &[Complex64], t: f64, degree: usize) -> Result<QuadratureRule> {
    if !(t.abs() < 1.0) {
        return Err(Error::InvalidArgument(format!("|t| must be < 1, got t = {t}")));
    }
    let n = pole.len();
    if n == 0 {
        return Err(Error::UnsupportedDimension { n, what: "geodesic quadrature" });
    }
    let mut w = to_real(pole);
    let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::InvalidArgument("pole must be nonzero".into()));
    }
    w.iter_mut().for_each(|x| *x /= norm);
    let frame = complement_basis(&w);
    let (unodes, weights) = real_sphere_rule(2 * n - 2, degree);
    let s = (1.0 - t * t).sqrt();
    let nodes = unodes
        .iter()
        .map(|u| {
            let mut v: Vec<f64> = w.iter().map(|x| t * x).collect();
            for (coef, b) in u.iter().zip(&frame) {
                v.iter_mut().zip(b).for_each(|(x, y)| *x += s * coef * y);
            }
            to_complex(&v)
        })
        .collect();
    let pole_unit: Vec<[f64; 2]> = w.chunks(2).map(|c| [c[0], c[1]]).collect();
    Ok(QuadratureRule::explicit(RuleKind::Geodesic { n, pole: pole_unit, t, degree }, nodes, weights))
}

/// Tensor Gauss–Hermite rule in the frame `w = c + √2 y`, `y ∈ R^{2n}`,
/// for integrals `∫_{C^n} F(w) e^{−|w−c|²/2} dw`: nodes are the offsets
/// `√2 y` and the weights include the Jacobian `2^n`, so that
/// `∫ F(w) e^{−|w−c|²/2} dw ≈ Σ w_i F(c + x_i)`.
pub fn complex_space_quadrature(n: usize, hermite_degree: usize) -> Result<QuadratureRule> {
    if !(1..=2).contains(&n) {
        return Err(Error::UnsupportedDimension { n, what: "complex-space quadrature (n <= 2)" });
    }
    let gh = hermite(hermite_degree);
    let dims = 2 * n;
    let total = gh.len().pow(dims as u32);
    let jac = 2f64.powi(n as i32);
    let mut nodes = Vec::with_capacity(total);
    let mut weights = Vec::with_capacity(total);
    let mut idx = vec![0usize; dims];
    for _ in 0..total {
        let x: Vec<f64> = idx.iter().map(|&i| 2f64.sqrt() * gh[i].0).collect();
        nodes.push(to_complex(&x));
        weights.push(jac * idx.iter().map(|&i| gh[i].1).product::<f64>());
        for slot in idx.iter_mut().rev() {
            *slot += 1;
            if *slot < gh.len() {
                break;
            }
            *slot = 0;
        }
    }
    Ok(QuadratureRule::explicit(RuleKind::ComplexSpace { n, hermite_degree }, nodes, weights))
}

/// Generalized Gauss–Laguerre for `x^order e^{−x}`.
pub fn radial_quadrature(order: f64, points: usize) -> QuadratureRule {
    let (nodes, weights) = laguerre(points, order)
        .into_iter()
        .map(|(x, w)| (vec![Complex64::new(x, 0.0)], w))
        .unzip();
    QuadratureRule::explicit(RuleKind::RadialLaguerre { order, points }, nodes, weights)
}
