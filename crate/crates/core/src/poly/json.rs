//! BiPoly JSON interchange.
//!
//! ```json
//! {"n": 2, "terms": [{"alpha": [1,0], "beta": [0,1], "coef": {"re": "3/1", "im": "0/1"}}]}
//! ```
//!
//! Writing always emits canonical term order and `num/den` strings, so
//! `write(read(F))` is byte-identical to `F` once `F` is canonical.

use serde::ser::{Serialize, SerializeStruct, Serializer};
use serde_json::Value;

use super::{format_rational, BiPoly, ExactComplex, Monomial, MultiIndex};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::str::FromStr;

impl Serialize for ExactComplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ExactComplex", 2)?;
        st.serialize_field("re", &format_rational(&self.re))?;
        st.serialize_field("im", &format_rational(&self.im))?;
        st.end()
    }
}

#[derive(serde::Serialize)]
struct TermOut<'a> {
    alpha: &'a [u32],
    beta: &'a [u32],
    coef: &'a ExactComplex,
}

impl Serialize for BiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermOut<'_>> = self
            .terms()
            .map(|(m, c)| TermOut { alpha: m.alpha.entries(), beta: m.beta.entries(), coef: c })
            .collect();
        let mut st = s.serialize_struct("BiPoly", 2)?;
        st.serialize_field("n", &self.n())?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

/// A parsed value together with non-fatal normalization warnings.
#[derive(Debug, Clone)]
pub struct Parsed<T> {
    pub value: T,
    pub warnings: Vec<String>,
}

/// Canonical JSON text for `p` (pretty-printed, trailing newline).
pub fn to_json_string(p: &BiPoly) -> String {
    let mut s = serde_json::to_string_pretty(p).expect("BiPoly serialization is infallible");
    s.push('\n');
    s
}

pub fn from_json_str(text: &str) -> Result<Parsed<BiPoly>> {
    let v: Value = serde_json::from_str(text)?;
    from_json_value(&v, "")
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> Error {
    let path = path.into();
    Error::Schema { path: if path.is_empty() { "/".into() } else { path }, message: message.into() }
}

/// Validates a JSON value against the BiPoly schema. `base` is the JSON
/// pointer of `v` inside a larger document (empty at top level).
pub fn from_json_value(v: &Value, base: &str) -> Result<Parsed<BiPoly>> {
    let obj = v.as_object().ok_or_else(|| schema(base, "expected an object"))?;
    let n = obj
        .get("n")
        .ok_or_else(|| schema(base, "missing field \"n\""))?
        .as_u64()
        .ok_or_else(|| schema(format!("{base}/n"), "expected a non-negative integer"))? as usize;
    let terms = obj
        .get("terms")
        .ok_or_else(|| schema(base, "missing field \"terms\""))?
        .as_array()
        .ok_or_else(|| schema(format!("{base}/terms"), "expected an array"))?;
    let mut warnings = Vec::new();
    let mut poly = BiPoly::zero(n);
    for (i, t) in terms.iter().enumerate() {
        let tp = format!("{base}/terms/{i}");
        let tobj = t.as_object().ok_or_else(|| schema(&tp, "expected an object"))?;
        let alpha = read_index(tobj.get("alpha"), &format!("{tp}/alpha"), n, i)?;
        let beta = read_index(tobj.get("beta"), &format!("{tp}/beta"), n, i)?;
        let coef = tobj.get("coef").ok_or_else(|| schema(&tp, "missing field \"coef\""))?;
        let cp = format!("{tp}/coef");
        let cobj = coef.as_object().ok_or_else(|| schema(&cp, "expected an object"))?;
        let re = read_rational(cobj.get("re"), &format!("{cp}/re"), &mut warnings)?;
        let im = read_rational(cobj.get("im"), &format!("{cp}/im"), &mut warnings)?;
        let c = ExactComplex::new(re, im);
        let m = Monomial::new(alpha, beta);
        if c.is_zero() {
            warnings.push(format!("{tp}: zero coefficient dropped"));
            continue;
        }
        if !poly.coefficient(&m).is_zero() {
            warnings.push(format!("{tp}: duplicate monomial merged"));
        }
        poly.add_term(m, &c);
    }
    Ok(Parsed { value: poly, warnings })
}

fn read_index(v: Option<&Value>, path: &str, n: usize, term: usize) -> Result<MultiIndex> {
    let arr = v
        .ok_or_else(|| schema(path, "missing exponent array"))?
        .as_array()
        .ok_or_else(|| schema(path, "expected an array of non-negative integers"))?;
    if arr.len() != n {
        return Err(schema(
            path,
            format!("term {term}: exponent array has length {}, expected n = {n}", arr.len()),
        ));
    }
    arr.iter()
        .enumerate()
        .map(|(k, e)| {
            e.as_u64()
                .and_then(|e| u32::try_from(e).ok())
                .ok_or_else(|| schema(format!("{path}/{k}"), "expected a non-negative integer"))
        })
        .collect::<Result<Vec<u32>>>()
        .map(MultiIndex::new)
}

fn read_rational(v: Option<&Value>, path: &str, warnings: &mut Vec<String>) -> Result<BigRational> {
    let s = v
        .ok_or_else(|| schema(path, "missing rational"))?
        .as_str()
        .ok_or_else(|| schema(path, "expected a rational string \"num/den\""))?;
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| schema(path, format!("bad numerator in {s:?}")))?;
    let den = BigInt::from_str(den).map_err(|_| schema(path, format!("bad denominator in {s:?}")))?;
    if den.is_zero() {
        return Err(schema(path, "zero denominator"));
    }
    let r = BigRational::new(num.clone(), den.clone());
    if r.numer() != &num || r.denom() != &den {
        if s.contains('/') {
            warnings.push(format!("{path}: fraction {s} normalized to {}", format_rational(&r)));
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_integer_coefficient() {
        let text = r#"{"n":2,"terms":[{"alpha":[1,0],"beta":[0,1],"coef":{"re":"3","im":"0"}}]}"#;
        let p = from_json_str(text).unwrap();
        assert_eq!(p.value, BiPoly::term(&[1, 0], &[0, 1], ExactComplex::from_int(3)));
        assert!(p.warnings.is_empty());
    }

    #[test]
    fn wrong_alpha_length_names_term() {
        let text = r#"{"n":2,"terms":[{"alpha":[1,0],"beta":[0,1],"coef":{"re":"1","im":"0"}},
                                   {"alpha":[1,0,0],"beta":[0,1],"coef":{"re":"1","im":"0"}}]}"#;
        let err = from_json_str(text).unwrap_err();
        match err {
            Error::Schema { path, message } => {
                assert_eq!(path, "/terms/1/alpha");
                assert!(message.contains("term 1"));
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn normalizes_with_warning() {
        let text = r#"{"n":1,"terms":[{"alpha":[1],"beta":[0],"coef":{"re":"2/4","im":"0/3"}}]}"#;
        let p = from_json_str(text).unwrap();
        assert_eq!(p.value, BiPoly::term(&[1], &[0], ExactComplex::from_ratio(1, 2)));
        assert_eq!(p.warnings.len(), 2);
    }

    #[test]
    fn canonical_round_trip_is_byte_exact() {
        let p = &BiPoly::term(&[1, 0], &[0, 1], ExactComplex::from_gaussian(3, -1)) + &BiPoly::norm_sq(2);
        let text = to_json_string(&p);
        let back = from_json_str(&text).unwrap().value;
        assert_eq!(back, p);
        assert_eq!(to_json_string(&back), text);
    }
}
