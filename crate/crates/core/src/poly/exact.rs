//! Gaussian rationals: complex numbers with exact rational parts.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A complex number `re + i·im` with exact, always-reduced rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ExactComplex {
    pub re: BigRational,
    pub im: BigRational,
}

impl ExactComplex {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Self::new(BigRational::from_integer(v.into()), BigRational::zero())
    }

    pub fn from_gaussian(re: i64, im: i64) -> Self {
        Self::new(
            BigRational::from_integer(re.into()),
            BigRational::from_integer(im.into()),
        )
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(num.into(), den.into()))
    }

    pub fn real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `|self|²`, exact.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let d = self.norm_sqr();
        Some(Self::new(&self.re / &d, -(&self.im / &d)))
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::from_int(1),
            1 => Self::i(),
            2 => Self::from_int(-1),
            _ => Self::from_gaussian(0, -1),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Nearest double-precision value of each part.
    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Bit length of the larger numerator, used for pivot selection.
    pub fn numerator_bits(&self) -> u64 {
        self.re.numer().bits().max(self.im.numer().bits())
    }

    /// Parses a scalar of the form `a+bi`, where `a` and `b` are integers,
    /// fractions `p/q` or decimals. Decimals are converted from their literal
    /// digits, so `0.1` is exactly `1/10`.
    pub fn parse_literal(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::InvalidArgument("empty complex literal".into()));
        }
        let bad = || Error::InvalidArgument(format!("cannot parse complex literal {s:?}"));
        if let Some(body) = t.strip_suffix('i') {
            // find the sign that separates real and imaginary parts
            let split = body
                .char_indices()
                .skip(1)
                .filter(|&(i, c)| {
                    (c == '+' || c == '-') && !matches!(body.as_bytes()[i - 1], b'e' | b'E')
                })
                .map(|(i, _)| i)
                .last();
            let (re_part, im_part) = match split {
                Some(i) => (&body[..i], &body[i..]),
                None => ("", body),
            };
            let im = match im_part {
                "" | "+" => BigRational::one(),
                "-" => -BigRational::one(),
                other => parse_rational_literal(other).ok_or_else(bad)?,
            };
            let re = if re_part.is_empty() {
                BigRational::zero()
            } else {
                parse_rational_literal(re_part).ok_or_else(bad)?
            };
            Ok(Self::new(re, im))
        } else {
            Ok(Self::real(parse_rational_literal(&t).ok_or_else(bad)?))
        }
    }
}

/// Parses `p`, `p/q` or a decimal literal into an exact rational.
pub fn parse_rational_literal(s: &str) -> Option<BigRational> {
    let s = s.strip_prefix('+').unwrap_or(s);
    if s.is_empty() {
        return None;
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num).ok()?;
        let den = BigInt::from_str(den).ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(BigRational::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.starts_with('-');
        let int_digits = int.trim_start_matches('-');
        if !frac.chars().all(|c| c.is_ascii_digit())
            || !int_digits.chars().all(|c| c.is_ascii_digit())
            || (int_digits.is_empty() && frac.is_empty())
        {
            return None;
        }
        let digits = format!("{int_digits}{frac}");
        let mag = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).ok()?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let value = BigRational::new(mag, den);
        return Some(if negative { -value } else { value });
    }
    BigInt::from_str(s).ok().map(BigRational::from_integer)
}

/// Canonical `num/den` rendering.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl fmt::Display for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.im.is_negative() { "-" } else { "+" };
        write!(
            f,
            "{}{}{}i",
            format_rational(&self.re),
            sign,
            format_rational(&self.im.abs())
        )
    }
}

impl From<i64> for ExactComplex {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<BigRational> for ExactComplex {
    fn from(r: BigRational) -> Self {
        Self::real(r)
    }
}

impl<'a> Add<&'a ExactComplex> for &ExactComplex {
    type Output = ExactComplex;
    fn add(self, rhs: &'a ExactComplex) -> ExactComplex {
        ExactComplex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a ExactComplex> for &ExactComplex {
    type Output = ExactComplex;
    fn sub(self, rhs: &'a ExactComplex) -> ExactComplex {
        ExactComplex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a ExactComplex> for &ExactComplex {
    type Output = ExactComplex;
    fn mul(self, rhs: &'a ExactComplex) -> ExactComplex {
        ExactComplex::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl<'a> Div<&'a ExactComplex> for &ExactComplex {
    type Output = ExactComplex;
    /// Panics on division by zero.
    fn div(self, rhs: &'a ExactComplex) -> ExactComplex {
        self * &rhs.inv().expect("division by zero ExactComplex")
    }
}

impl Neg for &ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        ExactComplex::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        ExactComplex::new(-self.re, -self.im)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ExactComplex> for ExactComplex {
            type Output = ExactComplex;
            fn $m(self, rhs: ExactComplex) -> ExactComplex {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a ExactComplex> for ExactComplex {
            type Output = ExactComplex;
            fn $m(self, rhs: &'a ExactComplex) -> ExactComplex {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&ExactComplex> for ExactComplex {
    fn add_assign(&mut self, rhs: &ExactComplex) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&ExactComplex> for ExactComplex {
    fn sub_assign(&mut self, rhs: &ExactComplex) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&ExactComplex> for ExactComplex {
    fn mul_assign(&mut self, rhs: &ExactComplex) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_literals() {
        assert_eq!(ExactComplex::parse_literal("3").unwrap(), ExactComplex::from_int(3));
        assert_eq!(ExactComplex::parse_literal("i").unwrap(), ExactComplex::i());
        assert_eq!(
            ExactComplex::parse_literal("1+i").unwrap(),
            ExactComplex::from_gaussian(1, 1)
        );
        assert_eq!(
            ExactComplex::parse_literal("-5/2").unwrap(),
            ExactComplex::from_ratio(-5, 2)
        );
        assert_eq!(
            ExactComplex::parse_literal("0.1-2.5i").unwrap(),
            ExactComplex::new(BigRational::new(1.into(), 10.into()), BigRational::new((-5).into(), 2.into()))
        );
        assert_eq!(
            ExactComplex::parse_literal("3/1+0/1i").unwrap(),
            ExactComplex::from_int(3)
        );
        assert_eq!(ExactComplex::parse_literal("-i").unwrap(), ExactComplex::from_gaussian(0, -1));
        assert!(ExactComplex::parse_literal("abc").is_err());
        assert!(ExactComplex::parse_literal("1/0").is_err());
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(ExactComplex::from_int(3).to_string(), "3/1+0/1i");
        assert_eq!(ExactComplex::from_gaussian(1, -2).to_string(), "1/1-2/1i");
    }

    #[test]
    fn reduced_and_exact() {
        let a = ExactComplex::new(BigRational::new(6.into(), (-4).into()), BigRational::zero());
        assert_eq!(a.re.numer(), &BigInt::from(-3));
        assert_eq!(a.re.denom(), &BigInt::from(2));
        let b = ExactComplex::from_gaussian(7, -3);
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(&(&a * &b) / &b, a);
    }
}
