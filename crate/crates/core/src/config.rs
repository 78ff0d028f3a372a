//! Effective run configuration, embedded in every report.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Sphere / geodesic quadrature degree.
    pub quad_degree: usize,
    /// Second degree used for the error estimate.
    pub compare_degree: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Gauss–Hermite points per real axis for twisted convolutions.
    pub hermite_degree: usize,
    pub hermite_compare: usize,
    /// Gauss–Laguerre points for radial expansions.
    pub radial_points: usize,
    pub radial_compare: usize,
    /// Largest matrix domain the certifier attempts.
    pub max_dim: usize,
    pub output: Option<String>,
    pub verbosity: u8,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            quad_degree: 40,
            compare_degree: 48,
            abs_tol: 1e-8,
            rel_tol: 1e-6,
            hermite_degree: 30,
            hermite_compare: 38,
            radial_points: 40,
            radial_compare: 48,
            max_dim: 2000,
            output: None,
            verbosity: 0,
        }
    }
}

impl Config {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let c: Config = serde_json::from_str(text)?;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidArgument(m.into()));
        if self.quad_degree == 0 || self.compare_degree == 0 {
            return bad("quadrature degrees must be positive");
        }
        if self.quad_degree.max(self.compare_degree) > crate::tsm::quadrature::MAX_SPHERE_DEGREE {
            return bad("quadrature degree exceeds 60");
        }
        if self.hermite_degree == 0 || self.hermite_compare == 0 || self.radial_points == 0 || self.radial_compare == 0 {
            return bad("rule sizes must be positive");
        }
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return bad("tolerances must be positive");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip() {
        let c = Config::default();
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(Config::from_json_str(&text).unwrap(), c);
        let partial = Config::from_json_str(r#"{"abs_tol": 1e-9}"#).unwrap();
        assert_eq!(partial.quad_degree, 40);
        assert_eq!(partial.abs_tol, 1e-9);
        assert!(Config::from_json_str(r#"{"bogus": 1}"#).is_err());
        assert!(Config::from_json_str(r#"{"quad_degree": 80}"#).is_err());
    }
}
