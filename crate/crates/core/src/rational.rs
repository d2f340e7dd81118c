//! Exact rationals, their string format, and the scalar abstraction shared by
//! the exact engine and the floating-point fast path.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal {0:?}: expected \"p\" or \"p/q\"")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

fn is_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

/// Parses `"p"` or `"p/q"` (optional sign on `p`, `q > 0`). Decimals are rejected.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let unsigned = num.strip_prefix(['-', '+']).unwrap_or(num);
    if !is_digits(unsigned) {
        return Err(ParseRationalError::Malformed(s.to_string()));
    }
    let numer: BigInt = num
        .parse()
        .map_err(|_| ParseRationalError::Malformed(s.to_string()))?;
    let denom: BigInt = match den {
        None => BigInt::one(),
        Some(d) if is_digits(d) => d
            .parse()
            .map_err(|_| ParseRationalError::Malformed(s.to_string()))?,
        Some(_) => return Err(ParseRationalError::Malformed(s.to_string())),
    };
    if denom.is_zero() {
        return Err(ParseRationalError::ZeroDenominator(s.to_string()));
    }
    Ok(Rational::new(numer, denom))
}

/// `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Always `"p/q"`, even for integers (`9/1`).
pub fn format_rational_pq(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Decimal rendering with 12 significant digits, trailing zeros trimmed.
pub fn approx_string(r: &Rational) -> String {
    let x = rational_to_f64(r);
    format_significant(x, 12)
}

pub(crate) fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (digits as i32 - 1 - magnitude).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `4^n / n!`, the volume product of the cube and the cross-polytope.
pub fn mahler_floor(n: usize) -> Rational {
    Rational::new(BigInt::from(4).pow(n as u32), factorial(n))
}

/// Exact rational value of a finite double.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

/// Scalar field the polytope engine runs over.
///
/// `Rational` is exact. `f64` treats magnitudes below [`F64_EPS`] as zero and
/// is only used for the search fast path and Monte Carlo bounds.
pub trait Field: Clone + Debug + PartialEq + PartialOrd + Send + Sync + 'static {
    fn zero_value() -> Self;
    fn one_value() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn as_f64(&self) -> f64;

    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn divide(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn abs_value(&self) -> Self;

    /// Sign, with the field's notion of zero.
    fn sign(&self) -> Ordering;

    fn is_zero_value(&self) -> bool {
        self.sign() == Ordering::Equal
    }
    fn is_positive_value(&self) -> bool {
        self.sign() == Ordering::Greater
    }
    fn is_negative_value(&self) -> bool {
        self.sign() == Ordering::Less
    }
    /// Tolerance-aware comparison.
    fn compare(&self, other: &Self) -> Ordering {
        self.minus(other).sign()
    }
}

pub const F64_EPS: f64 = 1e-9;

impl Field for Rational {
    fn zero_value() -> Self {
        Zero::zero()
    }
    fn one_value() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        int(v)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn as_f64(&self) -> f64 {
        rational_to_f64(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn divide(&self, other: &Self) -> Self {
        self / other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn abs_value(&self) -> Self {
        self.abs()
    }
    fn sign(&self) -> Ordering {
        if Zero::is_zero(self) {
            Ordering::Equal
        } else if Signed::is_positive(self) {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
    fn compare(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
}

impl Field for f64 {
    fn zero_value() -> Self {
        0.0
    }
    fn one_value() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_rational(r: &Rational) -> Self {
        rational_to_f64(r)
    }
    fn as_f64(&self) -> f64 {
        *self
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn divide(&self, other: &Self) -> Self {
        self / other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn abs_value(&self) -> Self {
        self.abs()
    }
    fn sign(&self) -> Ordering {
        if self.abs() <= F64_EPS {
            Ordering::Equal
        } else if *self > 0.0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

pub(crate) fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    a.iter()
        .zip(b)
        .fold(F::zero_value(), |acc, (x, y)| acc.plus(&x.times(y)))
}

pub(crate) fn lex_cmp<F: Field>(a: &[F], b: &[F]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.compare(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}
