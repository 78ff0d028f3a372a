//! Twisted spherical means `f×μ_r(z) = ∫ f(z−w) e^{(i/2)Im(z·w̄)} dμ_r(w)`,
//! their weighted variants `dν_r = P dμ_r`, and geodesic-sphere means.

use num_complex::Complex64;
use serde::Serialize;

use super::quadrature::{geodesic_quadrature, sphere_quadrature, QuadratureRule, RuleKind};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::poly::{BiPoly, FloatPoly};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CValue {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for CValue {
    fn from(c: Complex64) -> Self {
        Self { re: c.re, im: c.im }
    }
}

/// Value at the higher of the two rule degrees and `|v_hi − v_lo|`.
#[derive(Clone, Debug, Serialize)]
pub struct MeanReport {
    pub value: CValue,
    pub rule: RuleKind,
    pub compare_rule: RuleKind,
    pub err_est: f64,
}

impl MeanReport {
    pub fn complex(&self) -> Complex64 {
        Complex64::new(self.value.re, self.value.im)
    }

    pub(crate) fn from_pair(hi: (Complex64, RuleKind), lo: (Complex64, RuleKind)) -> Self {
        Self { value: hi.0.into(), rule: hi.1, compare_rule: lo.1, err_est: (hi.0 - lo.0).norm() }
    }
}

/// `Im(z·w̄) = Im Σ z_j w̄_j`
pub fn twist(z: &[Complex64], w: &[Complex64]) -> f64 {
    z.iter().zip(w).map(|(a, b)| (a * b.conj()).im).sum()
}

/// One quadrature evaluation of the (weighted) twisted mean. The density
/// `P` is evaluated at the sphere point `w = rω` itself.
pub fn twisted_mean_with(
    f: &(impl Fn(&[Complex64]) -> Complex64 + Sync),
    z: &[Complex64],
    r: f64,
    weight: Option<&FloatPoly>,
    rule: &QuadratureRule,
) -> Result<Complex64> {
    if !(r > 0.0) {
        return Err(Error::InvalidArgument(format!("radius must be positive, got {r}")));
    }
    let n = z.len();
    if n > 3 {
        return Err(Error::UnsupportedDimension { n, what: "twisted mean (n <= 3)" });
    }
    rule.integrate(|omega| {
        // stack buffers: this runs once per node
        let zero = Complex64::new(0.0, 0.0);
        let (mut w, mut diff) = ([zero; 3], [zero; 3]);
        for j in 0..n {
            w[j] = omega[j] * r;
            diff[j] = z[j] - w[j];
        }
        let (w, diff) = (&w[..n], &diff[..n]);
        let phase = Complex64::from_polar(1.0, 0.5 * twist(z, w));
        let dens = weight.map_or(Complex64::new(1.0, 0.0), |p| p.eval(w));
        f(diff) * phase * dens
    })
}

/// Sphere rules at the configured pair of degrees, built once per `n`.
#[derive(Clone, Debug)]
pub struct SphereMeans {
    hi: QuadratureRule,
    lo: QuadratureRule,
}

impl SphereMeans {
    pub fn new(n: usize, cfg: &Config) -> Result<Self> {
        let (a, b) = (cfg.quad_degree, cfg.compare_degree);
        Ok(Self { hi: sphere_quadrature(n, a.max(b))?, lo: sphere_quadrature(n, a.min(b))? })
    }

    pub fn n(&self) -> usize {
        self.hi.dim()
    }

    pub fn mean(
        &self,
        f: &(impl Fn(&[Complex64]) -> Complex64 + Sync),
        z: &[Complex64],
        r: f64,
        weight: Option<&BiPoly>,
    ) -> Result<MeanReport> {
        if z.len() != self.n() {
            return Err(Error::DimensionMismatch { left: self.n(), right: z.len() });
        }
        if let Some(p) = weight {
            if p.n() != z.len() {
                return Err(Error::DimensionMismatch { left: z.len(), right: p.n() });
            }
        }
        let fp = weight.map(FloatPoly::from);
        let hi = twisted_mean_with(f, z, r, fp.as_ref(), &self.hi)?;
        let lo = twisted_mean_with(f, z, r, fp.as_ref(), &self.lo)?;
        Ok(MeanReport::from_pair((hi, self.hi.kind.clone()), (lo, self.lo.kind.clone())))
    }
}

/// `f×μ_r(z)` (or `f×ν_r(z)` with density `weight`) with a two-degree error estimate.
pub fn twisted_mean(
    f: &(impl Fn(&[Complex64]) -> Complex64 + Sync),
    z: &[Complex64],
    r: f64,
    weight: Option<&BiPoly>,
    cfg: &Config,
) -> Result<MeanReport> {
    SphereMeans::new(z.len(), cfg)?.mean(f, z, r, weight)
}

/// Normalized mean of `f` over the geodesic sphere with pole `ω` at latitude `t`.
pub fn geodesic_mean(
    f: &(impl Fn(&[Complex64]) -> Complex64 + Sync),
    pole: &[Complex64],
    t: f64,
    cfg: &Config,
) -> Result<MeanReport> {
    let (a, b) = (cfg.quad_degree, cfg.compare_degree);
    let hi = geodesic_quadrature(pole, t, a.max(b))?;
    let lo = geodesic_quadrature(pole, t, a.min(b))?;
    let vh = hi.integrate(f)?;
    let vl = lo.integrate(f)?;
    Ok(MeanReport::from_pair((vh, hi.kind), (vl, lo.kind)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::harmonic_basis;
    use crate::poly::ExactComplex;
    use crate::tsm::laguerre::laguerre_phi;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn mean_examples() {
        let one = |_: &[Complex64]| c(1.0, 0.0);
        let z0 = [c(0.0, 0.0); 2];
        let v = twisted_mean(&one, &z0, 1.3, None, &cfg()).unwrap();
        assert!((v.complex() - 1.0).norm() < 1e-14);

        let phi0 = laguerre_phi(0, 1, 2).evaluator();
        let f = |z: &[Complex64]| phi0.eval(z);
        for r in [0.5, 1.0, 2.0] {
            let v = twisted_mean(&f, &z0, r, None, &cfg()).unwrap();
            assert!((v.complex() - (-r * r / 4.0f64).exp()).norm() < 1e-10);
        }

        let w = BiPoly::zbar(2, 0);
        let z = [c(0.3, 0.1), c(0.2, -0.4)];
        let v = twisted_mean(&f, &z, 1.5, Some(&w), &cfg()).unwrap();
        assert!(v.complex().norm() < 1e-8);
        assert!(twisted_mean(&f, &z, 0.0, None, &cfg()).is_err());
    }

    /// Series oracle for the mean of `1`: averaging `e^{i s cos}` over
    /// `S^{2n−1}` term by term gives `Σ_m (−1)^m (s/2)^{2m} (n−1)! / (m! (m+n−1)!)`
    /// with `s = r|z|/2`.
    #[test]
    fn twist_phase_matches_series() {
        let one = |_: &[Complex64]| c(1.0, 0.0);
        let cases: [(Vec<Complex64>, f64); 5] = [
            (vec![c(0.5, 0.2), c(-0.3, 0.9)], 1.0),
            (vec![c(1.2, 0.0), c(0.0, 1.1)], 2.4),
            (vec![c(0.0, 0.0), c(2.0, 0.0)], 3.9),
            (vec![c(0.5, 0.2), c(-0.3, 0.9), c(0.4, -0.6)], 1.7),
            (vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.5)], 2.2),
        ];
        for (z, r) in cases {
            let n = z.len();
            let zn = z.iter().map(|w| w.norm_sqr()).sum::<f64>().sqrt();
            if r * zn > 4.0 {
                continue;
            }
            let s = r * zn / 2.0;
            let mut term = 1.0;
            let mut series = 0.0;
            for m in 0..60 {
                series += term;
                term *= -(s / 2.0).powi(2) / ((m + 1) as f64 * (m + n) as f64);
            }
            let v = SphereMeans::new(n, &cfg()).unwrap().mean(&one, &z, r, None).unwrap();
            assert!((v.complex() - series).norm() < 1e-8, "n={n}: {} vs {series}", v.complex());
        }
    }

    #[test]
    fn geodesic_examples() {
        let pole = [c(0.6, 0.0), c(0.0, 0.8)];
        let one = |_: &[Complex64]| c(1.0, 0.0);
        assert!((geodesic_mean(&one, &pole, 0.4, &cfg()).unwrap().complex() - 1.0).norm() < 1e-13);

        // real inner product with u₀
        let u0 = [c(0.1, -0.7), c(0.5, 0.3)];
        let lin = |v: &[Complex64]| c(v.iter().zip(&u0).map(|(a, b)| (a * b.conj()).re).sum(), 0.0);
        let expect = 0.4 * pole.iter().zip(&u0).map(|(a, b)| (a * b.conj()).re).sum::<f64>();
        assert!((geodesic_mean(&lin, &pole, 0.4, &cfg()).unwrap().complex() - expect).norm() < 1e-10);

        let odd = |v: &[Complex64]| v[0] * v[1] * v[1].conj();
        assert!(geodesic_mean(&odd, &pole, 0.0, &cfg()).unwrap().complex().norm() < 1e-13);
        assert!(geodesic_mean(&one, &pole, -1.0, &cfg()).is_err());
    }

    /// Mean of a degree-k harmonic over the slice is `Y(ω)` times a factor
    /// depending only on `t`.
    #[test]
    fn geodesic_mean_of_harmonic_is_proportional() {
        let h = &harmonic_basis(2, 2, 1).basis[1] + &harmonic_basis(2, 2, 1).basis[3].scale(&ExactComplex::from_gaussian(0, 2));
        let fp = FloatPoly::from(&h);
        let f = |v: &[Complex64]| fp.eval(v);
        let poles = [
            [c(0.6, 0.0), c(0.0, 0.8)],
            [c(0.3, 0.4), c(-0.5, 0.7)],
            [c(-0.9, 0.1), c(0.2, 0.37)],
        ];
        let ratios: Vec<Complex64> = poles
            .iter()
            .map(|p| {
                let nrm = p.iter().map(|w| w.norm_sqr()).sum::<f64>().sqrt();
                let p: Vec<Complex64> = p.iter().map(|w| w / nrm).collect();
                geodesic_mean(&f, &p, 0.35, &cfg()).unwrap().complex() / fp.eval(&p)
            })
            .collect();
        let mean = ratios.iter().sum::<Complex64>() / ratios.len() as f64;
        let cv = (ratios.iter().map(|r| (r - mean).norm_sqr()).sum::<f64>() / ratios.len() as f64).sqrt() / mean.norm();
        assert!(cv < 1e-6, "cv {cv}");
    }
}
