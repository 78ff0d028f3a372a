//! Twisted convolution `f×g(z) = ∫_{C^n} f(z−w) g(w) e^{(i/2)Im(z·w̄)} dw`
//! of Gaussian-weighted polynomials (Lebesgue measure).

use num_complex::Complex64;

use super::gausspoly::GaussPoly;
use super::mean::{twist, MeanReport};
use super::quadrature::{complex_space_quadrature, QuadratureRule};
use crate::config::Config;
use crate::error::{Error, Result};

/// With `w = z/2 + x` the two Gaussians combine to `e^{−|z|²/8} e^{−|x|²/2}`,
/// which the shifted Hermite rule integrates exactly against polynomials.
pub fn twisted_conv_with(f: &GaussPoly, g: &GaussPoly, z: &[Complex64], rule: &QuadratureRule) -> Result<Complex64> {
    let n = z.len();
    if f.n() != n || g.n() != n {
        return Err(Error::DimensionMismatch { left: n, right: if f.n() != n { f.n() } else { g.n() } });
    }
    let (fe, ge) = (f.evaluator(), g.evaluator());
    let r2: f64 = z.iter().map(|c| c.norm_sqr()).sum();
    let damp = (-r2 / 8.0).exp();
    let v = rule.integrate(|x| {
        let w: Vec<Complex64> = z.iter().zip(x).map(|(a, b)| a * 0.5 + b).collect();
        let d: Vec<Complex64> = z.iter().zip(&w).map(|(a, b)| a - b).collect();
        fe.eval_poly(&d) * ge.eval_poly(&w) * Complex64::from_polar(1.0, 0.5 * twist(z, &w))
    })?;
    Ok(v * damp)
}

pub fn twisted_conv(f: &GaussPoly, g: &GaussPoly, z: &[Complex64], cfg: &Config) -> Result<MeanReport> {
    let n = z.len();
    let (a, b) = (cfg.hermite_degree, cfg.hermite_compare);
    let hi = complex_space_quadrature(n, a.max(b))?;
    let lo = complex_space_quadrature(n, a.min(b))?;
    let vh = twisted_conv_with(f, g, z, &hi)?;
    let vl = twisted_conv_with(f, g, z, &lo)?;
    Ok(MeanReport::from_pair((vh, hi.kind), (vl, lo.kind)))
}
