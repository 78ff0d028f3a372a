//! Numerical experiments around the weighted functional equation
//! `φ_k^{n−1}×ν_r(z) = C · r^{2(p+q)} φ_{k−q}^{n+p+q−1}(r) · P(z) φ_{k−q}^{n+p+q−1}(z)`.

use num_complex::Complex64;
use serde::Serialize;

use super::laguerre::{laguerre_phi, phi_radial};
use super::mean::{CValue, SphereMeans};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::poly::{BiPoly, FloatPoly};

fn cv(values: &[Complex64]) -> (Complex64, f64) {
    let m = values.iter().sum::<Complex64>() / values.len() as f64;
    let spread = (values.iter().map(|v| (v - m).norm_sqr()).sum::<f64>() / values.len() as f64).sqrt();
    (m, spread / m.norm())
}

#[derive(Clone, Debug, Serialize)]
pub struct Lemma42Report {
    pub bidegree: (u32, u32),
    pub k: u32,
    pub n: usize,
    /// `k < q`: every mean vanishes.
    pub zero_branch: bool,
    pub max_abs_mean: f64,
    /// Worst coefficient of variation of `value / (P(z)φ(z))` over `z`, across radii.
    pub separability_cv: f64,
    /// Coefficient of variation of the per-radius ratio against `r^{2(p+q)} φ(r)`.
    pub profile_residual: f64,
    /// Empirical `(2π)^{−n} C(n,p,q)`.
    pub constant: Option<CValue>,
    pub max_err_est: f64,
}

/// Default sample sets used by the checks and the CLI.
pub fn default_z_samples() -> Vec<Vec<Complex64>> {
    let c = Complex64::new;
    vec![
        vec![c(0.3, 0.1), c(0.2, -0.4)],
        vec![c(-0.5, 0.6), c(0.1, 0.3)],
        vec![c(0.8, -0.2), c(-0.4, 0.5)],
        vec![c(0.2, 0.9), c(0.7, 0.1)],
        vec![c(-1.0, -0.3), c(0.3, -0.8)],
        vec![c(0.45, 0.45), c(-0.6, -0.2)],
        vec![c(1.1, 0.4), c(0.5, 0.9)],
        vec![c(-0.25, -0.7), c(-0.9, 0.35)],
    ]
}

pub const DEFAULT_RADII: [f64; 4] = [0.5, 1.0, 1.5, 2.0];

pub fn lemma42_check(
    p: &BiPoly,
    k: u32,
    z_samples: &[Vec<Complex64>],
    r_samples: &[f64],
    cfg: &Config,
) -> Result<Lemma42Report> {
    let n = p.n();
    if n != 2 {
        return Err(Error::UnsupportedDimension { n, what: "functional-equation check (n = 2)" });
    }
    if z_samples.is_empty() || r_samples.is_empty() {
        return Err(Error::InvalidArgument("need at least one z and one r sample".into()));
    }
    let (pd, qd) = p.require_bidegree()?;
    if !p.is_harmonic() {
        return Err(Error::NotHarmonic);
    }
    let means = SphereMeans::new(n, cfg)?;
    let phi = laguerre_phi(k, n as u32 - 1, n).evaluator();
    let f = |z: &[Complex64]| phi.eval(z);
    let mut max_abs: f64 = 0.0;
    let mut max_err: f64 = 0.0;
    let mut values = Vec::with_capacity(r_samples.len());
    for &r in r_samples {
        let mut row = Vec::with_capacity(z_samples.len());
        for z in z_samples {
            let rep = means.mean(&f, z, r, Some(p))?;
            max_abs = max_abs.max(rep.complex().norm());
            max_err = max_err.max(rep.err_est);
            row.push(rep.complex());
        }
        values.push(row);
    }
    if k < qd {
        return Ok(Lemma42Report {
            bidegree: (pd, qd),
            k,
            n,
            zero_branch: true,
            max_abs_mean: max_abs,
            separability_cv: 0.0,
            profile_residual: 0.0,
            constant: None,
            max_err_est: max_err,
        });
    }
    let nu = n as u32 + pd + qd - 1;
    let target = laguerre_phi(k - qd, nu, n).evaluator();
    let pf = FloatPoly::from(p);
    let refs: Vec<Complex64> = z_samples.iter().map(|z| pf.eval(z) * target.eval(z)).collect();
    if let Some((i, v)) = refs.iter().enumerate().find(|(_, v)| v.norm() < cfg.abs_tol) {
        return Err(Error::ZeroReference { index: i, magnitude: v.norm() });
    }
    let mut sep: f64 = 0.0;
    let mut per_r = Vec::new();
    for (row, &r) in values.iter().zip(r_samples) {
        let ratios: Vec<Complex64> = row.iter().zip(&refs).map(|(v, d)| v / d).collect();
        let (m, c) = cv(&ratios);
        sep = sep.max(c);
        let prof = r.powi(2 * (pd + qd) as i32) * phi_radial(k - qd, nu, r);
        if prof.abs() < cfg.abs_tol {
            return Err(Error::ZeroReference { index: per_r.len(), magnitude: prof.abs() });
        }
        per_r.push(m / prof);
    }
    let (constant, residual) = cv(&per_r);
    Ok(Lemma42Report {
        bidegree: (pd, qd),
        k,
        n,
        zero_branch: false,
        max_abs_mean: max_abs,
        separability_cv: sep,
        profile_residual: if per_r.len() > 1 { residual } else { 0.0 },
        constant: Some(constant.into()),
        max_err_est: max_err,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DemoReport {
    pub weight: BiPoly,
    pub ks: Vec<u32>,
    pub radii: Vec<f64>,
    pub points: usize,
    pub max_abs_mean: f64,
    /// `(k, r, point index)` of the largest mean.
    pub argmax: (u32, f64, usize),
    pub max_err_est: f64,
}

/// Largest `|φ_k^{n−1}×ν_r(z)|`, `dν_r = P dμ_r`, over the given points,
/// orders and radii.
pub fn noninjectivity_demo(
    p: &BiPoly,
    ks: &[u32],
    radii: &[f64],
    points: &[Vec<Complex64>],
    cfg: &Config,
) -> Result<DemoReport> {
    let n = p.n();
    if n != 2 {
        return Err(Error::UnsupportedDimension { n, what: "non-injectivity demo (n = 2)" });
    }
    if points.is_empty() {
        return Err(Error::EmptyConeSample("no sample points supplied".into()));
    }
    let means = SphereMeans::new(n, cfg)?;
    let mut best = (0.0, (0, 0.0, 0));
    let mut max_err: f64 = 0.0;
    for &k in ks {
        let phi = laguerre_phi(k, n as u32 - 1, n).evaluator();
        let f = |z: &[Complex64]| phi.eval(z);
        for &r in radii {
            for (i, z) in points.iter().enumerate() {
                let rep = means.mean(&f, z, r, Some(p))?;
                max_err = max_err.max(rep.err_est);
                let v = rep.complex().norm();
                if v > best.0 {
                    best = (v, (k, r, i));
                }
            }
        }
    }
    Ok(DemoReport {
        weight: p.clone(),
        ks: ks.to_vec(),
        radii: radii.to_vec(),
        points: points.len(),
        max_abs_mean: best.0,
        argmax: best.1,
        max_err_est: max_err,
    })
}

/// Points `(0, w)` on `{z₁ = 0}`.
pub fn z1_zero_points(count: usize) -> Vec<Vec<Complex64>> {
    (0..count)
        .map(|j| {
            let a = 0.9 * j as f64 + 0.3;
            vec![Complex64::new(0.0, 0.0), Complex64::from_polar(0.4 + 0.25 * j as f64, a)]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ExactComplex;

    #[test]
    fn zero_branch() {
        let rep = lemma42_check(&BiPoly::zbar(2, 0), 0, &default_z_samples()[..3], &[1.0], &Config::default()).unwrap();
        assert!(rep.zero_branch && rep.max_abs_mean < 1e-8);
    }

    #[test]
    fn separable_and_profile() {
        let cfg = Config::default();
        let z = default_z_samples();
        let rep = lemma42_check(&BiPoly::zbar(2, 0), 1, &z, &[1.3], &cfg).unwrap();
        assert!(rep.separability_cv < 1e-6, "{rep:?}");
        // r = 2 is a root of φ₁¹, so the profile uses other radii
        let rep = lemma42_check(&BiPoly::one(2), 1, &z[..4], &[0.5, 1.0, 1.5, 2.5], &cfg).unwrap();
        assert!(rep.separability_cv < 1e-6 && rep.profile_residual < 1e-6, "{rep:?}");
    }

    #[test]
    fn vanishing_on_zero_set() {
        let cfg = Config::default();
        let pts = z1_zero_points(3);
        let rep = noninjectivity_demo(&BiPoly::z(2, 0), &[1], &[0.5, 1.5], &pts, &cfg).unwrap();
        assert!(rep.max_abs_mean < 1e-8, "{rep:?}");
        let w = BiPoly::term(&[1, 0], &[0, 1], ExactComplex::one());
        let rep = noninjectivity_demo(&w, &[1], &[1.0], &pts, &cfg).unwrap();
        assert!(rep.max_abs_mean < 1e-8);
        assert!(matches!(noninjectivity_demo(&w, &[1], &[1.0], &[], &cfg), Err(Error::EmptyConeSample(_))));
    }
}
