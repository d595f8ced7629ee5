//! Coefficient rings for [`Series`](crate::Series).
//!
//! Three rings are provided: exact rationals ([`Rational`]), polynomials in a
//! formal parameter `t` over the rationals ([`TPoly`]), and `f64` for the
//! numeric mode. All of them have characteristic zero, so dividing by a
//! positive integer is always possible through [`Coeff::from_rational`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{JetError, Result};

/// Arbitrary precision rational number, always in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Shorthand for the rational `num / den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Canonical `p/q` (or `p`) form of a rational.
pub fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q` or `p`. Rejects a zero denominator.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| JetError::Json(format!("bad rational {s:?}")))?;
    let den = BigInt::from_str(den).map_err(|_| JetError::Json(format!("bad rational {s:?}")))?;
    if den.is_zero() {
        return Err(JetError::Json(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Numerator and denominator when both fit in an `i64`.
fn small(r: &Rational) -> Option<(i64, i64)> {
    Some((r.numer().to_i64()?, r.denom().to_i64()?))
}

/// `num / den` in lowest terms, for `den > 0`.
fn reduced(num: i128, den: i128) -> Rational {
    if num == 0 {
        return Zero::zero();
    }
    if den == 1 {
        return Rational::new_raw(BigInt::from(num), BigInt::from(1));
    }
    if let (Ok(n), Ok(d)) = (i64::try_from(num), i64::try_from(den)) {
        let g = n.gcd(&d);
        return Rational::new_raw(BigInt::from(n / g), BigInt::from(d / g));
    }
    let g = num.gcd(&den);
    Rational::new_raw(BigInt::from(num / g), BigInt::from(den / g))
}

// Most coefficients stay small, and BigInt gcd dominates the cost of exact
// arithmetic, so sums and products of word-sized rationals go through i128.
fn rat_add(a: &Rational, b: &Rational) -> Rational {
    match (small(a), small(b)) {
        (Some((p, q)), Some((r, s))) => {
            reduced(p as i128 * s as i128 + r as i128 * q as i128, q as i128 * s as i128)
        }
        _ => a + b,
    }
}

fn rat_mul(a: &Rational, b: &Rational) -> Rational {
    match (small(a), small(b)) {
        (Some((p, q)), Some((r, s))) => reduced(p as i128 * r as i128, q as i128 * s as i128),
        _ => a * b,
    }
}

/// How a coefficient prints inside a term of the canonical text form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rendered {
    /// The leading sign is pulled out so terms join with ` - `.
    pub negative: bool,
    pub body: String,
    /// A sum of several parts; needs parentheses before `*monomial`.
    pub compound: bool,
}

/// A commutative ring of characteristic zero used as series coefficients.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// The canonical image of a rational in this ring.
    fn from_rational(r: &Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&int(n))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn add_assign(&mut self, other: &Self) {
        *self = self.add(other);
    }

    /// Largest absolute value of the underlying numbers, used for norms.
    fn magnitude(&self) -> f64;

    fn render(&self) -> Rendered;

    fn to_json(&self) -> Value;

    fn from_json(value: &Value) -> Result<Self>;
}

impl Coeff for Rational {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add(&self, other: &Self) -> Self {
        rat_add(self, other)
    }

    fn sub(&self, other: &Self) -> Self {
        rat_add(self, &-other)
    }

    fn mul(&self, other: &Self) -> Self {
        rat_mul(self, other)
    }

    fn neg(&self) -> Self {
        -self
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }

    fn add_assign(&mut self, other: &Self) {
        *self = rat_add(self, other);
    }

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    fn render(&self) -> Rendered {
        Rendered {
            negative: self.is_negative(),
            body: rational_to_string(&self.abs()),
            compound: false,
        }
    }

    fn to_json(&self) -> Value {
        Value::String(rational_to_string(self))
    }

    fn from_json(value: &Value) -> Result<Self> {
        match value {
            Value::String(s) => parse_rational(s),
            Value::Number(n) if n.is_i64() => Ok(int(n.as_i64().unwrap())),
            other => Err(JetError::Json(format!("expected a rational string, got {other}"))),
        }
    }
}

impl Coeff for f64 {
    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn neg(&self) -> Self {
        -self
    }

    fn from_rational(r: &Rational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }

    fn render(&self) -> Rendered {
        Rendered {
            negative: self.is_sign_negative(),
            body: format!("{}", self.abs()),
            compound: false,
        }
    }

    fn to_json(&self) -> Value {
        serde_json::Number::from_f64(*self)
            .map(Value::Number)
            .unwrap_or(Value::Null)
    }

    fn from_json(value: &Value) -> Result<Self> {
        value
            .as_f64()
            .ok_or_else(|| JetError::Json(format!("expected a float, got {value}")))
    }
}

/// A polynomial `c0 + c1*t + c2*t^2 + ...` in the deformation parameter `t`
/// with rational coefficients, stored densely without trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TPoly {
    coeffs: Vec<Rational>,
}

impl TPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        TPoly { coeffs }
    }

    /// The generator `t`.
    pub fn t() -> Self {
        TPoly::new(vec![int(0), int(1)])
    }

    pub fn constant(c: Rational) -> Self {
        TPoly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^k`.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(|| int(0))
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Evaluates at `t = t0` by Horner's rule.
    pub fn eval(&self, t0: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(int(0), |acc, c| acc * t0 + c)
    }

    /// d/dt.
    pub fn derivative(&self) -> Self {
        TPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let m = rational_to_string(&mag);
            match k {
                0 => write!(f, "{m}")?,
                _ => {
                    if !One::is_one(&mag) {
                        write!(f, "{m}*")?;
                    }
                    if k == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Coeff for TPoly {
    fn zero() -> Self {
        TPoly::default()
    }

    fn one() -> Self {
        TPoly::constant(int(1))
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return TPoly::zero();
        }
        let mut out = vec![int(0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = rat_add(&out[i + j], &rat_mul(a, b));
            }
        }
        TPoly::new(out)
    }

    fn neg(&self) -> Self {
        TPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn from_rational(r: &Rational) -> Self {
        TPoly::constant(r.clone())
    }

    fn add_assign(&mut self, other: &Self) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), int(0));
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a = rat_add(a, b);
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    fn magnitude(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.magnitude())
            .fold(0.0, f64::max)
    }

    fn render(&self) -> Rendered {
        let nonzero = self.coeffs.iter().filter(|c| !Zero::is_zero(*c)).count();
        if nonzero == 1 {
            let lead = self.coeffs.last().unwrap();
            if lead.is_negative() {
                return Rendered {
                    negative: true,
                    body: self.neg().to_string(),
                    compound: false,
                };
            }
        }
        Rendered {
            negative: false,
            body: self.to_string(),
            compound: nonzero > 1,
        }
    }

    fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(Coeff::to_json).collect())
    }

    fn from_json(value: &Value) -> Result<Self> {
        let items = value
            .as_array()
            .ok_or_else(|| JetError::Json(format!("expected an array of rationals, got {value}")))?;
        Ok(TPoly::new(
            items
                .iter()
                .map(<Rational as Coeff>::from_json)
                .collect::<Result<_>>()?,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced() {
        assert_eq!(rat(6, -4), rat(-3, 2));
        assert_eq!(rational_to_string(&rat(6, -4)), "-3/2");
        assert_eq!(rational_to_string(&int(7)), "7");
        assert_eq!(parse_rational("-10/4").unwrap(), rat(-5, 2));
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn tpoly_arithmetic() {
        let t = TPoly::t();
        let p = TPoly::one().add(&t.mul(&t).mul(&TPoly::from_int(3)));
        assert_eq!(p.to_string(), "1 + 3*t^2");
        assert_eq!(p.derivative().to_string(), "6*t");
        assert_eq!(p.eval(&int(2)), int(13));
        assert_eq!(p.sub(&p), TPoly::zero());
        assert_eq!(TPoly::from_int(-2).mul(&t).to_string(), "-2*t");
        assert_eq!(TPoly::zero().degree(), None);
        assert_eq!(p.degree(), Some(2));
    }

    #[test]
    fn tpoly_render_pulls_out_sign_of_monomials_only() {
        let r = TPoly::from_int(-2).mul(&TPoly::t()).render();
        assert!(r.negative);
        assert_eq!(r.body, "2*t");
        let r = TPoly::new(vec![int(1), int(-1)]).render();
        assert!(!r.negative && r.compound);
        assert_eq!(r.body, "1 - t");
    }

    #[test]
    fn json_round_trip_of_coefficients() {
        let p = TPoly::new(vec![rat(1, 2), int(0), int(-3)]);
        assert_eq!(TPoly::from_json(&p.to_json()).unwrap(), p);
        let r = rat(-7, 3);
        assert_eq!(<Rational as Coeff>::from_json(&r.to_json()).unwrap(), r);
    }
}
