//! Weyl correspondence `P ↦ P(Ã) = Σ c_{αβ} (Ã*)^α (Ã)^β` acting on
//! Gaussian-weighted polynomials.
//!
//! On `p·e^{−|z|²/4}`: `Ã_j = ∂/∂z_j + z̄_j/4` acts on `p` as `∂/∂z_j`, and
//! `Ã_j* = ∂/∂z̄_j − z_j/4` acts as `∂/∂z̄_j − z_j/2`.

use num_rational::BigRational;
use serde::Serialize;

use super::gausspoly::GaussPoly;
use super::laguerre::laguerre_phi;
use crate::error::{Error, Result};
use crate::poly::{BiPoly, ExactComplex};

pub fn a_tilde(j: usize, p: &BiPoly) -> BiPoly {
    p.d(j)
}

pub fn a_tilde_star(j: usize, p: &BiPoly) -> BiPoly {
    let half = ExactComplex::from_ratio(1, 2);
    &p.dbar(j) - &(&BiPoly::z(p.n(), j) * p).scale(&half)
}

/// `P(Ã) g`, with `(Ã)^β` applied first.
pub fn weyl_apply(p: &BiPoly, g: &GaussPoly) -> Result<GaussPoly> {
    if p.n() != g.n() {
        return Err(Error::DimensionMismatch { left: p.n(), right: g.n() });
    }
    let mut acc = BiPoly::zero(g.n());
    for (m, c) in p.terms() {
        let mut cur = g.poly.clone();
        for (j, &e) in m.beta.entries().iter().enumerate() {
            for _ in 0..e {
                cur = a_tilde(j, &cur);
            }
        }
        for (j, &e) in m.alpha.entries().iter().enumerate() {
            for _ in 0..e {
                cur = a_tilde_star(j, &cur);
            }
        }
        acc = &acc + &cur.scale(c);
    }
    Ok(GaussPoly::new(acc))
}

/// Outcome of comparing `P(Ã) φ_k^{n−1}` with `P · φ_{k−q}^{n+p+q−1}`.
#[derive(Clone, Debug, Serialize)]
pub struct WeylCheck {
    pub bidegree: (u32, u32),
    pub k: u32,
    /// `P(Ã) φ_k = c · P φ_{k−q}` exactly (or both sides vanish when `k < q`).
    pub proportional: bool,
    #[serde(serialize_with = "ser_opt_display")]
    pub scalar: Option<ExactComplex>,
    /// `|c|² = 4^{−(p+q)}`
    pub modulus_ok: bool,
    /// Phase of `c` in units of π.
    pub phase_over_pi: Option<f64>,
}

fn ser_opt_display<S: serde::Serializer>(v: &Option<ExactComplex>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(c) => s.collect_str(c),
        None => s.serialize_none(),
    }
}

pub fn weyl_check(p: &BiPoly, k: u32) -> Result<WeylCheck> {
    let n = p.n();
    let (pd, qd) = p.require_bidegree()?;
    let lhs = weyl_apply(p, &laguerre_phi(k, n as u32 - 1, n))?.poly;
    if k < qd {
        let zero = lhs.is_zero();
        return Ok(WeylCheck {
            bidegree: (pd, qd),
            k,
            proportional: zero,
            scalar: zero.then(ExactComplex::zero),
            modulus_ok: zero,
            phase_over_pi: None,
        });
    }
    let target = p * &laguerre_phi(k - qd, n as u32 + pd + qd - 1, n).poly;
    let (mono, tc) = target.terms().next().expect("target is nonzero");
    let c = &lhs.coefficient(mono) / tc;
    let proportional = lhs == target.scale(&c);
    let want = BigRational::new(1.into(), num_bigint::BigInt::from(4).pow(pd + qd));
    let modulus_ok = c.norm_sqr() == want;
    let phase = c.to_complex64().arg() / std::f64::consts::PI;
    Ok(WeylCheck { bidegree: (pd, qd), k, proportional, scalar: Some(c), modulus_ok, phase_over_pi: Some(phase) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::harmonic_basis;

    #[test]
    fn examples() {
        let phi1 = laguerre_phi(1, 1, 2);
        assert_eq!(weyl_apply(&BiPoly::one(2), &phi1).unwrap(), phi1);

        let out = weyl_apply(&BiPoly::zbar(2, 0), &phi1).unwrap();
        assert_eq!(out.poly, BiPoly::zbar(2, 0).scale(&ExactComplex::from_ratio(-1, 2)));

        let out = weyl_apply(&BiPoly::zbar(2, 0), &laguerre_phi(0, 1, 2)).unwrap();
        assert!(out.is_zero());
    }

    #[test]
    fn scalar_multiples_on_harmonic_bases() {
        for p in 0..=2 {
            for q in 0..=2 {
                for h in harmonic_basis(2, p, q).basis {
                    for k in 0..=4 {
                        let chk = weyl_check(&h, k).unwrap();
                        assert!(chk.proportional && chk.modulus_ok, "p={p} q={q} k={k} {h}");
                    }
                }
            }
        }
    }
}
