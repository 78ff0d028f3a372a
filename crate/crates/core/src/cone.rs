//! The cone `H(z) = a z₁z̄₂ + |z|²`, the operators 𝒜 and ℬ, and an exact
//! finite-degree certificate that no nonzero `Q ∈ P_{p,q}` makes `H^s Q`
//! harmonic.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::basis::{MonomialBasis, OperatorMatrix};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, PivotRule};
use crate::parallel;
use crate::poly::{BiPoly, ExactComplex, Monomial};

fn require_n2(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::AmbientTooSmall { n, required: 2 });
    }
    Ok(())
}

/// `𝒜 = z̄₂ ∂/∂z̄₁ + z₁ ∂/∂z₂`; preserves the bidegree.
pub fn apply_a(p: &BiPoly) -> Result<BiPoly> {
    let n = p.n();
    require_n2(n)?;
    Ok(&(&BiPoly::zbar(n, 1) * &p.dbar(0)) + &(&BiPoly::z(n, 0) * &p.d(1)))
}

/// `ℬ = ∂²/∂z̄₁∂z₂`; lowers the bidegree by `(1, 1)`.
pub fn apply_b(p: &BiPoly) -> Result<BiPoly> {
    require_n2(p.n())?;
    Ok(p.dbar(0).d(1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AB {
    A,
    B,
}

pub fn apply_ab(p: &BiPoly, which: AB) -> Result<BiPoly> {
    match which {
        AB::A => apply_a(p),
        AB::B => apply_b(p),
    }
}

/// `H = a z₁z̄₂ + |z|²`.
pub fn h_poly(a: &ExactComplex, n: usize) -> Result<BiPoly> {
    require_n2(n)?;
    Ok(&(&BiPoly::z(n, 0) * &BiPoly::zbar(n, 1)).scale(a) + &BiPoly::norm_sq(n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    A,
    B,
    Laplacian,
    MultH { a: ExactComplex, s: u32 },
    DeltaMultH { a: ExactComplex, s: u32 },
    /// `a𝒜 + (n+p+q) I`
    EigenShift { a: ExactComplex },
}

impl OperatorKind {
    /// Bidegree shift `(dp, dq)` of the operator.
    fn shift(&self) -> (i64, i64) {
        match self {
            OperatorKind::A | OperatorKind::EigenShift { .. } => (0, 0),
            OperatorKind::B | OperatorKind::Laplacian => (-1, -1),
            OperatorKind::MultH { s, .. } => (*s as i64, *s as i64),
            OperatorKind::DeltaMultH { s, .. } => (*s as i64 - 1, *s as i64 - 1),
        }
    }
}

/// Exact matrix of `op` on `P_{p,q}` over the graded-lex monomial bases.
pub fn operator_matrix(n: usize, p: u32, q: u32, op: &OperatorKind) -> Result<OperatorMatrix> {
    require_n2(n)?;
    let hs = match op {
        OperatorKind::MultH { a, s } | OperatorKind::DeltaMultH { a, s } => {
            if a.is_zero() {
                return Err(Error::DegenerateCone);
            }
            if *s == 0 {
                return Err(Error::InvalidArgument("power s must be at least 1".into()));
            }
            Some(h_poly(a, n)?.pow(*s))
        }
        OperatorKind::EigenShift { a } if a.is_zero() => return Err(Error::DegenerateCone),
        _ => None,
    };
    let (dp, dq) = op.shift();
    let domain = MonomialBasis::new(n, p, q);
    let codomain = MonomialBasis::new_signed(n, p as i64 + dp, q as i64 + dq);
    let shift = ExactComplex::from_int((n as u32 + p + q) as i64);
    OperatorMatrix::build(domain, codomain, |m| match op {
        OperatorKind::A => apply_a(m),
        OperatorKind::B => apply_b(m),
        OperatorKind::Laplacian => Ok(m.laplacian()),
        OperatorKind::MultH { .. } => Ok(hs.as_ref().unwrap() * m),
        OperatorKind::DeltaMultH { .. } => Ok((hs.as_ref().unwrap() * m).laplacian()),
        OperatorKind::EigenShift { a } => Ok(&apply_a(m)?.scale(a) + &m.scale(&shift)),
    })
}

/// Rank of the coefficient matrix `M_{jk}` of `z_j z̄_k` in a `(1,1)` form.
/// A nonzero form factors as (linear in z)·(linear in z̄) iff the rank is 1.
pub fn hermitian_form_rank(h: &BiPoly) -> Result<usize> {
    let n = h.n();
    if !h.is_zero() && h.require_bidegree()? != (1, 1) {
        return Err(Error::BidegreeMismatch { left: (1, 1), right: h.require_bidegree()? });
    }
    let mut m = Matrix::zeros(n, n);
    for (mono, c) in h.terms() {
        let j = mono.alpha.entries().iter().position(|&e| e == 1).unwrap();
        let k = mono.beta.entries().iter().position(|&e| e == 1).unwrap();
        m.set(j, k, c.clone());
    }
    Ok(m.rank())
}

/// `Δ(HQ) − 4(a𝒜Q + (n+p+q)Q)` for harmonic bihomogeneous `Q`; identically zero.
pub fn eigen_residual(q: &BiPoly, a: &ExactComplex) -> Result<BiPoly> {
    let n = q.n();
    require_n2(n)?;
    if !q.is_harmonic() {
        return Err(Error::NotHarmonic);
    }
    let (p_deg, q_deg) = if q.is_zero() { (0, 0) } else { q.require_bidegree()? };
    let lhs = (&h_poly(a, n)? * q).laplacian();
    let shift = ExactComplex::from_int((n as u32 + p_deg + q_deg) as i64);
    let rhs = (&apply_a(q)?.scale(a) + &q.scale(&shift)).scale_int(4);
    Ok(&lhs - &rhs)
}

/// Gram asymmetry of 𝒜 under the factorial pairing:
/// `G_ij = ⟨𝒜e_j, e_i⟩ − ⟨e_j, 𝒜e_i⟩` over the monomial basis of `P_{p,q}`.
/// Zero iff 𝒜 is self-adjoint for that pairing.
pub fn a_gram_asymmetry(n: usize, p: u32, q: u32) -> Result<Matrix> {
    let om = operator_matrix(n, p, q, &OperatorKind::A)?;
    let basis = &om.domain;
    let weights: Vec<ExactComplex> = basis
        .monomials()
        .iter()
        .map(|m| ExactComplex::real((m.alpha.factorial() * m.beta.factorial()).into()))
        .collect();
    let d = basis.len();
    let mut g = Matrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            // ⟨𝒜e_j, e_i⟩ = A_ij w_i ; ⟨e_j, 𝒜e_i⟩ = conj(A_ji) w_j
            let v = &(om.matrix.get(i, j) * &weights[i]) - &(&om.matrix.get(j, i).conj() * &weights[j]);
            g.set(i, j, v);
        }
    }
    Ok(g)
}

/// `P ∘ σ_θ` as a finite sum `Σ_m e^{imθ/2} P_m`, where
/// `σ_θ = diag(e^{iθ/2}, e^{−iθ/2}, 1, …)` and `m = α₁−β₁−α₂+β₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseSeries {
    pub n: usize,
    pub parts: BTreeMap<i64, BiPoly>,
}

impl PhaseSeries {
    pub fn map(&self, f: impl Fn(&BiPoly) -> BiPoly) -> Self {
        let parts = self
            .parts
            .iter()
            .map(|(m, p)| (*m, f(p)))
            .filter(|(_, p)| !p.is_zero())
            .collect();
        Self { n: self.n, parts }
    }

    /// Exact specialization at `θ = tπ`, available when every `m·t` is an
    /// integer (then `e^{imθ/2} = i^{mt}`).
    pub fn at_pi_multiple(&self, t: i64) -> BiPoly {
        let mut acc = BiPoly::zero(self.n);
        for (m, p) in &self.parts {
            acc = &acc + &p.scale(&ExactComplex::i_pow(m * t));
        }
        acc
    }

    /// Floating specialization; coefficients are returned per monomial.
    pub fn at(&self, theta: f64) -> BTreeMap<Monomial, Complex64> {
        let mut out: BTreeMap<Monomial, Complex64> = BTreeMap::new();
        for (m, p) in &self.parts {
            let f = Complex64::from_polar(1.0, *m as f64 * theta / 2.0);
            for (mono, c) in p.terms() {
                *out.entry(mono.clone()).or_default() += c.to_complex64() * f;
            }
        }
        out.retain(|_, v| *v != Complex64::new(0.0, 0.0));
        out
    }
}

pub fn sigma_rotate(p: &BiPoly) -> Result<PhaseSeries> {
    let n = p.n();
    require_n2(n)?;
    let mut parts: BTreeMap<i64, BiPoly> = BTreeMap::new();
    for (mono, c) in p.terms() {
        let (a, b) = (&mono.alpha, &mono.beta);
        let m = a.get(0) as i64 - b.get(0) as i64 - a.get(1) as i64 + b.get(1) as i64;
        let entry = parts.entry(m).or_insert_with(|| BiPoly::zero(n));
        *entry = &*entry + &BiPoly::monomial(n, mono.clone(), c.clone());
    }
    Ok(PhaseSeries { n, parts })
}

/// Points of `H⁻¹(0)` for float `a`, together with the explanation when the
/// set reduces to the origin.
#[derive(Clone, Debug, Serialize)]
pub struct ConeSample {
    pub a: [f64; 2],
    pub n: usize,
    /// Slopes `t` with `z = (z₁, t z₁, 0, …)`.
    pub slopes: Vec<[f64; 2]>,
    pub points: Vec<Vec<[f64; 2]>>,
    /// `max |H(z)| / |z|²` over the returned points.
    pub max_relative_residual: f64,
    /// `H⁻¹(0) ≠ {0}` iff `|a| ≥ 2`.
    pub nontrivial: bool,
    pub reason: Option<String>,
}

impl ConeSample {
    pub fn complex_points(&self) -> Vec<Vec<Complex64>> {
        self.points.iter().map(|p| p.iter().map(|c| Complex64::new(c[0], c[1])).collect()).collect()
    }
}

/// `H(z₁, t z₁, 0, …) = |z₁|²(a t̄ + 1 + |t|²)`, so with `t = −ρe^{i arg a}`
/// the slope solves `ρ² − |a|ρ + 1 = 0`. Points cycle over both roots and a
/// deterministic set of complex scalings `λ`.
pub fn cone_sample(a: Complex64, n: usize, count: usize) -> Result<ConeSample> {
    require_n2(n)?;
    let mod_a = a.norm();
    let disc = mod_a * mod_a - 4.0;
    let mut out = ConeSample {
        a: [a.re, a.im],
        n,
        slopes: Vec::new(),
        points: Vec::new(),
        max_relative_residual: 0.0,
        nontrivial: disc >= 0.0,
        reason: None,
    };
    if disc < 0.0 {
        out.reason = Some("|t|²−|a||t|+1=0 has no real root".into());
        return Ok(out);
    }
    let psi = a.arg();
    let sq = disc.sqrt();
    let mut roots = vec![(mod_a - sq) / 2.0];
    if sq > 0.0 {
        roots.push((mod_a + sq) / 2.0);
    }
    let slopes: Vec<Complex64> = roots.iter().map(|&rho| -Complex64::from_polar(rho, psi)).collect();
    let golden = 0.5 * (5f64.sqrt() - 1.0);
    for j in 0..count {
        let t = slopes[j % slopes.len()];
        let lambda = Complex64::from_polar(0.6 + 0.9 * ((j as f64 * golden) % 1.0), 2.0 * PI * ((j as f64 * 0.3819660112501051) % 1.0));
        let mut z = vec![Complex64::new(0.0, 0.0); n];
        z[0] = lambda;
        z[1] = t * lambda;
        let h = a * z[0] * z[1].conj() + z.iter().map(|w| w.norm_sqr()).sum::<f64>();
        let norm2: f64 = z.iter().map(|w| w.norm_sqr()).sum();
        out.max_relative_residual = out.max_relative_residual.max(h.norm() / norm2);
        out.points.push(z.iter().map(|c| [c.re, c.im]).collect());
    }
    out.slopes = slopes.iter().map(|t| [t.re, t.im]).collect();
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct CertifyOptions {
    /// Largest domain dimension attempted; larger cases are skipped and
    /// leave the certificate partial.
    pub max_dim: usize,
    pub pivot: PivotRule,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self { max_dim: 2000, pivot: PivotRule::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelEntry {
    pub p: u32,
    pub q: u32,
    pub dim: usize,
}

/// One application of the power induction: `Δ(H·R) = 0` on the lifted
/// space forces `R = H^{s−1}Q = 0`, and multiplication by `H^{s−1}` is
/// injective on `P_{p,q}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InductionStage {
    pub p: u32,
    pub q: u32,
    pub lifted: [u32; 2],
    pub lifted_kernel_dim: usize,
    pub mult_rank: usize,
    pub domain_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkippedCase {
    pub p: u32,
    pub q: u32,
    pub dim: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    NonHarmonic,
    Counterexample,
    Partial,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::NonHarmonic => 0,
            Outcome::Counterexample => 2,
            Outcome::Partial => 3,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    #[serde(serialize_with = "ser_display")]
    pub a: ExactComplex,
    pub n: usize,
    pub s: u32,
    pub range: [u32; 2],
    pub kernels: Vec<KernelEntry>,
    pub irreducible_rank: usize,
    pub verdict: String,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub stages: Vec<InductionStage>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<SkippedCase>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<BiPoly>,
    /// Whether `H⁻¹(0)` has nonzero points (`|a| ≥ 2`).
    pub nontrivial_cone: bool,
}

fn ser_display<S: serde::Serializer, T: std::fmt::Display>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

struct CaseResult {
    p: u32,
    q: u32,
    outcome: std::result::Result<(usize, Option<BiPoly>, Option<InductionStage>), usize>,
}

fn certify_case(a: &ExactComplex, n: usize, p: u32, q: u32, s: u32, opts: &CertifyOptions) -> Result<CaseResult> {
    let lifted = (p + s - 1, q + s - 1);
    let biggest = MonomialBasis::expected_dim(n, lifted.0, lifted.1);
    if biggest > opts.max_dim {
        return Ok(CaseResult { p, q, outcome: Err(biggest) });
    }
    let direct = operator_matrix(n, p, q, &OperatorKind::DeltaMultH { a: a.clone(), s })?;
    let kernel = direct.matrix.kernel_with(opts.pivot);
    let witness = kernel.first().map(|v| direct.domain.polynomial(v));
    let stage = if s >= 2 {
        let lifted_op = operator_matrix(n, lifted.0, lifted.1, &OperatorKind::DeltaMultH { a: a.clone(), s: 1 })?;
        let lifted_kernel_dim = lifted_op.matrix.kernel_with(opts.pivot).len();
        let mult = operator_matrix(n, p, q, &OperatorKind::MultH { a: a.clone(), s: s - 1 })?;
        Some(InductionStage {
            p,
            q,
            lifted: [lifted.0, lifted.1],
            lifted_kernel_dim,
            mult_rank: mult.matrix.row_reduce(opts.pivot).rank(),
            domain_dim: mult.domain.len(),
        })
    } else {
        None
    };
    Ok(CaseResult { p, q, outcome: Ok((kernel.len(), witness, stage)) })
}

/// Exact certificate that `Δ(H^s Q) = 0`, `Q ∈ P_{p,q}`, forces `Q = 0` for
/// all `p ≤ p_max`, `q ≤ q_max`.
pub fn certify_nonharmonic(
    a: &ExactComplex,
    n: usize,
    p_max: u32,
    q_max: u32,
    s: u32,
    opts: &CertifyOptions,
) -> Result<Certificate> {
    require_n2(n)?;
    if a.is_zero() {
        return Err(Error::DegenerateCone);
    }
    if s == 0 {
        return Err(Error::InvalidArgument("power s must be at least 1".into()));
    }
    let cases: Vec<(u32, u32)> = (0..=p_max).flat_map(|p| (0..=q_max).map(move |q| (p, q))).collect();
    let results: Vec<CaseResult> = parallel::install(|| {
        cases
            .par_iter()
            .map(|&(p, q)| certify_case(a, n, p, q, s, opts))
            .collect::<Result<Vec<_>>>()
    })?;

    let irreducible_rank = hermitian_form_rank(&h_poly(a, n)?)?;
    let mut kernels = Vec::new();
    let mut stages = Vec::new();
    let mut skipped = Vec::new();
    let mut counterexample = None;
    let mut consistent = true;
    for r in results {
        match r.outcome {
            Ok((dim, witness, stage)) => {
                kernels.push(KernelEntry { p: r.p, q: r.q, dim });
                if counterexample.is_none() {
                    counterexample = witness;
                }
                if let Some(st) = stage {
                    // the induction proves injectivity only when both stages pass
                    if dim == 0 && (st.lifted_kernel_dim != 0 || st.mult_rank != st.domain_dim) {
                        consistent = false;
                    }
                    stages.push(st);
                }
            }
            Err(dim) => skipped.push(SkippedCase { p: r.p, q: r.q, dim }),
        }
    }
    let (outcome, verdict) = if counterexample.is_some() || irreducible_rank < 2 {
        let (p, q) = kernels.iter().find(|k| k.dim > 0).map_or((0, 0), |k| (k.p, k.q));
        let v = if irreducible_rank < 2 {
            "counterexample: H is reducible".to_string()
        } else {
            format!("counterexample: nonzero kernel on P_({p},{q})")
        };
        (Outcome::Counterexample, v)
    } else if !skipped.is_empty() || !consistent {
        let tested = kernels.iter().map(|k| format!("({},{})", k.p, k.q)).collect::<Vec<_>>().join(",");
        let why = if consistent { "resource limit" } else { "induction stages inconclusive" };
        (Outcome::Partial, format!("partial({why}): tested bidegrees {tested}"))
    } else {
        (Outcome::NonHarmonic, format!("non-harmonic-up-to-degree({},{})", p_max + s, q_max + s))
    };
    let (re, im) = (a.re.clone(), a.im.clone());
    let mod2 = &re * &re + &im * &im;
    Ok(Certificate {
        a: a.clone(),
        n,
        s,
        range: [p_max, q_max],
        kernels,
        irreducible_rank,
        verdict,
        outcome,
        stages,
        skipped,
        counterexample,
        nontrivial_cone: mod2 >= num_rational::BigRational::from_integer(4.into()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::harmonic_basis;

    fn c(v: i64) -> ExactComplex {
        ExactComplex::from_int(v)
    }

    #[test]
    fn ab_examples() {
        assert!(apply_a(&BiPoly::z(2, 0)).unwrap().is_zero());
        let z1b_z2 = BiPoly::term(&[0, 1], &[1, 0], c(1));
        let expect = &BiPoly::term(&[0, 1], &[0, 1], c(1)) + &BiPoly::term(&[1, 0], &[1, 0], c(1));
        assert_eq!(apply_a(&z1b_z2).unwrap(), expect);
        assert_eq!(apply_b(&z1b_z2).unwrap(), BiPoly::one(2));
        assert!(matches!(apply_a(&BiPoly::z(1, 0)), Err(Error::AmbientTooSmall { .. })));
    }

    #[test]
    fn matrix_examples() {
        let m = operator_matrix(2, 1, 0, &OperatorKind::A).unwrap();
        assert_eq!(m.matrix, Matrix::from_rows(vec![vec![c(0), c(1)], vec![c(0), c(0)]]));
        let m = operator_matrix(2, 0, 0, &OperatorKind::DeltaMultH { a: c(3), s: 1 }).unwrap();
        assert_eq!(m.matrix, Matrix::from_rows(vec![vec![c(8)]]));
        let m = operator_matrix(2, 1, 1, &OperatorKind::Laplacian).unwrap();
        assert_eq!(m.matrix, Matrix::from_rows(vec![vec![c(4), c(0), c(0), c(4)]]));
        assert!(matches!(
            operator_matrix(2, 1, 1, &OperatorKind::MultH { a: c(0), s: 1 }),
            Err(Error::DegenerateCone)
        ));
    }

    #[test]
    fn certify_examples() {
        let o = CertifyOptions::default();
        let cert = certify_nonharmonic(&c(3), 2, 0, 0, 1, &o).unwrap();
        assert_eq!(cert.kernels, vec![KernelEntry { p: 0, q: 0, dim: 0 }]);
        assert_eq!(cert.outcome, Outcome::NonHarmonic);

        let cert = certify_nonharmonic(&ExactComplex::i(), 2, 2, 2, 1, &o).unwrap();
        assert_eq!(cert.kernels.len(), 9);
        assert!(cert.kernels.iter().all(|k| k.dim == 0));
        assert_eq!(cert.verdict, "non-harmonic-up-to-degree(3,3)");
        assert_eq!(cert.irreducible_rank, 2);

        let cert = certify_nonharmonic(&c(2), 2, 1, 1, 2, &o).unwrap();
        assert_eq!(cert.verdict, "non-harmonic-up-to-degree(3,3)");
        assert_eq!(cert.stages.len(), 4);
        assert!(cert.stages.iter().all(|s| s.lifted_kernel_dim == 0 && s.mult_rank == s.domain_dim));
        assert!(matches!(certify_nonharmonic(&c(0), 2, 1, 1, 1, &o), Err(Error::DegenerateCone)));
    }

    #[test]
    fn resource_limit_gives_partial() {
        let o = CertifyOptions { max_dim: 4, ..Default::default() };
        let cert = certify_nonharmonic(&c(3), 2, 2, 2, 1, &o).unwrap();
        assert_eq!(cert.outcome, Outcome::Partial);
        assert!(!cert.skipped.is_empty());
        assert_eq!(cert.outcome.exit_code(), 3);
    }

    #[test]
    fn certificate_json_shape() {
        let cert = certify_nonharmonic(&c(3), 2, 0, 1, 1, &CertifyOptions::default()).unwrap();
        let v = serde_json::to_value(&cert).unwrap();
        assert_eq!(v["a"], "3/1+0/1i");
        assert_eq!(v["range"], serde_json::json!([0, 1]));
        assert_eq!(v["kernels"][1], serde_json::json!({"p":0,"q":1,"dim":0}));
        assert_eq!(v["verdict"], "non-harmonic-up-to-degree(1,2)");
    }

    #[test]
    fn eigen_residual_examples() {
        for (q, a) in [
            (BiPoly::one(2), c(3)),
            (BiPoly::z(2, 1), c(3)),
            (BiPoly::term(&[1, 0], &[0, 1], c(1)), ExactComplex::from_gaussian(1, 1)),
        ] {
            assert!(eigen_residual(&q, &a).unwrap().is_zero());
        }
        let hq = &h_poly(&c(3), 2).unwrap() * &BiPoly::z(2, 1);
        assert_eq!(hq.laplacian(), &BiPoly::z(2, 0).scale_int(12) + &BiPoly::z(2, 1).scale_int(12));
        assert!(matches!(eigen_residual(&BiPoly::norm_sq(2), &c(1)), Err(Error::NotHarmonic)));
    }

    #[test]
    fn sigma_examples() {
        let theta = 0.7;
        let s = sigma_rotate(&BiPoly::term(&[1, 0], &[0, 1], c(1))).unwrap();
        assert_eq!(s.parts.keys().copied().collect::<Vec<_>>(), vec![2]);
        let at = s.at(theta);
        let v = at.values().next().unwrap();
        assert!((v - Complex64::from_polar(1.0, theta)).norm() < 1e-15);

        let s = sigma_rotate(&BiPoly::norm_sq(2)).unwrap();
        assert_eq!(s.at_pi_multiple(1), BiPoly::norm_sq(2));

        let p = &BiPoly::term(&[2, 1], &[1, 1], ExactComplex::from_gaussian(1, -2))
            + &BiPoly::term(&[0, 3], &[2, 0], c(5));
        let lhs = sigma_rotate(&p).unwrap().map(BiPoly::laplacian);
        let rhs = sigma_rotate(&p.laplacian()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.at_pi_multiple(1), rhs.at_pi_multiple(1));
    }

    #[test]
    fn cone_sample_examples() {
        let s = cone_sample(Complex64::new(3.0, 0.0), 2, 4).unwrap();
        assert!((s.slopes[0][0] - (-3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-15);
        assert!(s.max_relative_residual < 1e-10);
        let h = h_poly(&c(3), 2).unwrap();
        let v = h.evaluate(&[Complex64::new(1.0, 0.0), Complex64::new((-3.0 + 5f64.sqrt()) / 2.0, 0.0)]).unwrap();
        assert!(v.norm() < 1e-12);

        let s = cone_sample(Complex64::new(2.0, 0.0), 2, 1).unwrap();
        assert!((s.slopes[0][0] + 1.0).abs() < 1e-15 && s.slopes[0][1].abs() < 1e-15);

        let s = cone_sample(Complex64::new(1.0, 0.0), 2, 5).unwrap();
        assert!(s.points.is_empty() && !s.nontrivial);
        assert_eq!(s.reason.as_deref(), Some("|t|²−|a||t|+1=0 has no real root"));

        let s = cone_sample(Complex64::new(0.0, 2.5), 3, 6).unwrap();
        assert!(s.max_relative_residual < 1e-10);
    }

    #[test]
    fn irreducibility_rank() {
        assert_eq!(hermitian_form_rank(&h_poly(&c(7), 3).unwrap()).unwrap(), 3);
        // (z₁ + z₂)(z̄₁) is reducible
        let red = &BiPoly::term(&[1, 0], &[1, 0], c(1)) + &BiPoly::term(&[0, 1], &[1, 0], c(1));
        assert_eq!(hermitian_form_rank(&red).unwrap(), 1);
    }

    #[test]
    fn a_is_nilpotent_not_self_adjoint() {
        let m = operator_matrix(2, 1, 0, &OperatorKind::A).unwrap().matrix;
        assert!(m.pow(2).is_zero() && !m.is_zero());
        assert!(!a_gram_asymmetry(2, 1, 0).unwrap().is_zero());
    }

    /// Kernel of Δ∘mult_H on P_{p,q} has the dimension of H·P_{p,q} ∩ H_{p+1,q+1}.
    #[test]
    fn kernel_matches_divisible_harmonics() {
        let a = ExactComplex::from_gaussian(1, 1);
        for p in 0..=2 {
            for q in 0..=2 {
                let mult = operator_matrix(2, p, q, &OperatorKind::MultH { a: a.clone(), s: 1 }).unwrap();
                let hb = harmonic_basis(2, p + 1, q + 1).basis;
                let space = &mult.codomain;
                let mut cols: Vec<Vec<ExactComplex>> = (0..mult.matrix.cols()).map(|j| mult.matrix.column(j)).collect();
                let rank_m = mult.matrix.rank();
                cols.extend(hb.iter().map(|h| space.coordinates(h).unwrap()));
                let joint = Matrix::from_columns(space.len(), &cols).rank();
                let intersection = rank_m + hb.len() - joint;
                let direct = operator_matrix(2, p, q, &OperatorKind::DeltaMultH { a: a.clone(), s: 1 }).unwrap();
                assert_eq!(direct.matrix.kernel().len(), intersection);
            }
        }
    }
}
