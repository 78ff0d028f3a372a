//! Generalized Laguerre polynomials `L_k^ν` and the Laguerre functions
//! `φ_k^ν(z) = L_k^ν(|z|²/2) e^{−|z|²/4}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gausspoly::GaussPoly;
use crate::poly::{BiPoly, ExactComplex};

/// Coefficients of `L_k^ν(x)` in powers of `x`, from
/// `L_{k+1} = ((2k+1+ν−x) L_k − (k+ν) L_{k−1}) / (k+1)`.
pub fn laguerre_coeffs(k: u32, nu: u32) -> Vec<BigRational> {
    let r = |v: i64| BigRational::from_integer(BigInt::from(v));
    let nu_r = r(nu as i64);
    let mut prev = vec![BigRational::one()];
    if k == 0 {
        return prev;
    }
    let mut cur = vec![BigRational::one() + &nu_r, -BigRational::one()];
    for j in 1..k {
        let j_r = r(j as i64);
        let a = r(2 * j as i64 + 1) + &nu_r;
        let b = &j_r + &nu_r;
        let mut next = vec![BigRational::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i] += &a * c;
            next[i + 1] -= c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= &b * c;
        }
        let div = r(j as i64 + 1);
        next.iter_mut().for_each(|c| *c /= &div);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `L_k^ν(x)` by the same recurrence in floating point.
pub fn laguerre_eval(k: u32, nu: f64, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 1.0 + nu - x);
    if k == 0 {
        return prev;
    }
    for j in 1..k {
        let j = j as f64;
        let next = ((2.0 * j + 1.0 + nu - x) * cur - (j + nu) * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Radial profile `φ_k^ν(r) = L_k^ν(r²/2) e^{−r²/4}`.
pub fn phi_radial(k: u32, nu: u32, r: f64) -> f64 {
    laguerre_eval(k, nu as f64, r * r / 2.0) * (-r * r / 4.0).exp()
}

/// `φ_k^ν` on `C^n` with exact polynomial part `L_k^ν(|z|²/2)`.
pub fn laguerre_phi(k: u32, nu: u32, n: usize) -> GaussPoly {
    let half_r2 = BiPoly::norm_sq(n).scale(&ExactComplex::from_ratio(1, 2));
    let mut acc = BiPoly::zero(n);
    let mut power = BiPoly::one(n);
    for c in laguerre_coeffs(k, nu) {
        if !c.is_zero() {
            acc = &acc + &power.scale(&ExactComplex::real(c));
        }
        power = &power * &half_r2;
    }
    GaussPoly::new(acc)
}
