use num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;
use crate::poly::{json, BiPoly, FloatPoly};

/// `z ↦ p(z, z̄) e^{−|z|²/4}` with exact polynomial part `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaussPoly {
    pub poly: BiPoly,
}

impl GaussPoly {
    pub fn new(poly: BiPoly) -> Self {
        Self { poly }
    }

    pub fn n(&self) -> usize {
        self.poly.n()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Float evaluator; build once and reuse at many points.
    pub fn evaluator(&self) -> GaussEval {
        GaussEval { poly: FloatPoly::from(&self.poly) }
    }

    pub fn evaluate(&self, z: &[Complex64]) -> Complex64 {
        self.evaluator().eval(z)
    }

    /// Reads the polynomial part from BiPoly JSON.
    pub fn from_json_str(text: &str) -> Result<json::Parsed<Self>> {
        let p = json::from_json_str(text)?;
        Ok(json::Parsed { value: Self::new(p.value), warnings: p.warnings })
    }
}

#[derive(Clone, Debug)]
pub struct GaussEval {
    poly: FloatPoly,
}

impl GaussEval {
    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        let r2: f64 = z.iter().map(|c| c.norm_sqr()).sum();
        self.poly.eval(z) * (-r2 / 4.0).exp()
    }

    /// Polynomial part only.
    pub fn eval_poly(&self, z: &[Complex64]) -> Complex64 {
        self.poly.eval(z)
    }
}
