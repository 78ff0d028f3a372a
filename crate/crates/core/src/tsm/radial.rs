//! Radial special-Hermite expansion `f = Σ_k c_k φ_k^{n−1}`.
//!
//! Normalization: with `⟨f, g⟩ = ∫_{C^n} f ḡ dz` one has
//! `⟨φ_j, φ_k⟩ = (2π)^n δ_{jk} / B_k^n`, `B_k^n = k!(n−1)!/(n+k−1)!`, so the
//! coefficient is `c_k = (2π)^{−n} B_k^n ⟨f, φ_k⟩`. In the variable
//! `x = |z|²/2` this is
//! `c_k = k!/(n+k−1)! ∫_0^∞ f(√(2x)) e^{x/2} L_k^{n−1}(x) x^{n−1} e^{−x} dx`,
//! evaluated by generalized Gauss–Laguerre with `α = n−1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::laguerre::{laguerre_eval, phi_radial};
use super::quadrature::laguerre;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::poly::format_rational;

pub const NORMALIZATION: &str =
    "c_k = (2π)^{-n} B_k^n <f, φ_k^{n-1}>, <f,g> = ∫_{C^n} f conj(g) dz (Lebesgue); <φ_j, φ_k> = (2π)^n δ_jk / B_k^n";

/// `B_k^n = k!(n−1)!/(n+k−1)!`
pub fn b_value(n: usize, k: u32) -> BigRational {
    let fact = |m: u64| (1..=m).fold(BigInt::from(1), |a, i| a * BigInt::from(i));
    BigRational::new(fact(k as u64) * fact(n as u64 - 1), fact(n as u64 + k as u64 - 1))
}

#[derive(Clone, Debug, Serialize)]
pub struct RadialExpansion {
    pub n: usize,
    pub normalization: &'static str,
    pub coefficients: Vec<f64>,
    /// `B_k^n` as exact fractions.
    pub b_values: Vec<String>,
    /// Largest coefficient change between the two Laguerre rule sizes.
    pub tail_estimate: f64,
}

fn coefficients(f: &impl Fn(f64) -> f64, k_max: u32, n: usize, points: usize) -> Vec<f64> {
    let rule = laguerre(points, n as f64 - 1.0);
    (0..=k_max)
        .map(|k| {
            let norm: f64 = (1..n).map(|i| k as f64 + i as f64).product::<f64>();
            let s: f64 = rule
                .iter()
                .map(|&(x, w)| w * f((2.0 * x).sqrt()) * (x / 2.0).exp() * laguerre_eval(k, n as f64 - 1.0, x))
                .sum();
            s / norm
        })
        .collect()
}

/// Coefficients `c_0..c_{k_max}` of the radial profile `f(|z|)` on `C^n`.
pub fn radial_expand(f: impl Fn(f64) -> f64, k_max: u32, n: usize, cfg: &Config) -> Result<RadialExpansion> {
    if n == 0 {
        return Err(Error::UnsupportedDimension { n, what: "radial expansion" });
    }
    let a = coefficients(&f, k_max, n, cfg.radial_points.max(cfg.radial_compare));
    let b = coefficients(&f, k_max, n, cfg.radial_points.min(cfg.radial_compare));
    let tail = a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    if !tail.is_finite() || tail > cfg.abs_tol {
        return Err(Error::TailNotConverged { estimate: tail, tolerance: cfg.abs_tol });
    }
    Ok(RadialExpansion {
        n,
        normalization: NORMALIZATION,
        coefficients: a,
        b_values: (0..=k_max).map(|k| format_rational(&b_value(n, k))).collect(),
        tail_estimate: tail,
    })
}

/// `Σ_k c_k φ_k^{n−1}(r)`
pub fn synthesize(coefficients: &[f64], n: usize, r: f64) -> f64 {
    coefficients.iter().enumerate().map(|(k, c)| c * phi_radial(k as u32, n as u32 - 1, r)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let cfg = Config::default();
        for n in 1..=3 {
            let e = radial_expand(|r| phi_radial(2, n as u32 - 1, r), 6, n, &cfg).unwrap();
            for (k, c) in e.coefficients.iter().enumerate() {
                assert!((c - if k == 2 { 1.0 } else { 0.0 }).abs() < 1e-8, "n={n} k={k} {c}");
            }
        }
        let e = radial_expand(|r| phi_radial(0, 1, r) + 3.0 * phi_radial(5, 1, r), 5, 2, &cfg).unwrap();
        let want = [1.0, 0.0, 0.0, 0.0, 0.0, 3.0];
        assert!(e.coefficients.iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-8));
        assert_eq!(b_value(2, 1), BigRational::new(1.into(), 2.into()));
        assert_eq!(e.b_values[1], "1/2");
    }

    #[test]
    fn slow_tail_is_reported() {
        // e^{−r²/20} decays too slowly for the e^{x/2}-weighted rule
        let r = radial_expand(|r| (-r * r / 20.0).exp(), 3, 2, &Config::default());
        assert!(matches!(r, Err(Error::TailNotConverged { .. })));
    }

    #[test]
    fn synthesis_round_trip() {
        let cfg = Config::default();
        let c = [0.5, -1.0, 0.25, 2.0, 0.0, -0.75, 1.5];
        let e = radial_expand(|r| synthesize(&c, 2, r), 6, 2, &cfg).unwrap();
        assert!(e.coefficients.iter().zip(c).all(|(a, b)| (a - b).abs() < 1e-8));
    }
}
