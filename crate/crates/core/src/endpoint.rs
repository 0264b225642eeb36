//! Scalar types usable as interval endpoints.
//!
//! Two representations are provided: [`Rational`] (arbitrary precision, exact
//! equality) and `f64` (fast, equality up to a tolerance). All higher layers
//! are generic over [`Endpoint`], so every law can be checked in either mode.

use std::fmt::{self, Debug};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Exact endpoint type.
pub type Rational = BigRational;

/// How endpoint equality is decided.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum NumericMode {
    /// Literal equality of rationals.
    Exact,
    /// Endpoints are equal iff they differ by at most `epsilon`.
    Float { epsilon: f64 },
}

impl NumericMode {
    pub const DEFAULT_EPSILON: f64 = 1e-9;

    pub fn float() -> Self {
        NumericMode::Float {
            epsilon: Self::DEFAULT_EPSILON,
        }
    }

    pub fn epsilon(&self) -> f64 {
        match self {
            NumericMode::Exact => 0.0,
            NumericMode::Float { epsilon } => *epsilon,
        }
    }
}

impl fmt::Display for NumericMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumericMode::Exact => write!(f, "exact"),
            NumericMode::Float { epsilon } => write!(f, "float(epsilon={epsilon:e})"),
        }
    }
}

/// A number in `[0,1]` arithmetic.
///
/// Implementors only need closed operations on the unit interval; range
/// checks live in [`crate::Interval`].
pub trait Endpoint: Clone + PartialOrd + Debug + Send + Sync + 'static {
    /// `true` for representations where equality is literal.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    /// `num / den`; `den` must be nonzero.
    fn ratio(num: u64, den: u64) -> Self;
    fn from_rational(value: &Rational) -> Self;

    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn div_count(&self, count: usize) -> Self;
    /// Square root, when representable. Exact rationals return `None`.
    fn try_sqrt(&self) -> Option<Self>;

    fn abs_diff(&self, other: &Self) -> Self;
    /// Whether a deviation counts as equality under the given tolerance.
    fn within(deviation: &Self, epsilon: f64) -> bool;
    fn to_f64(&self) -> f64;

    /// Parses a decimal (`0.25`) or rational (`1/4`) literal.
    fn parse_literal(text: &str) -> Option<Self>;
    /// Decimal string for floats, `p/q` (or `p` for integers) for rationals.
    fn render(&self) -> String;

    fn mode(epsilon: f64) -> NumericMode {
        if Self::EXACT {
            NumericMode::Exact
        } else {
            NumericMode::Float { epsilon }
        }
    }
}

impl Endpoint for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn ratio(num: u64, den: u64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_rational(value: &Rational) -> Self {
        value.clone()
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

    fn div_count(&self, count: usize) -> Self {
        self / Rational::from_integer(BigInt::from(count))
    }

    fn try_sqrt(&self) -> Option<Self> {
        None
    }

    fn abs_diff(&self, other: &Self) -> Self {
        (self - other).abs()
    }

    fn within(deviation: &Self, _epsilon: f64) -> bool {
        deviation.is_zero()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn parse_literal(text: &str) -> Option<Self> {
        parse_rational(text)
    }

    fn render(&self) -> String {
        self.to_string()
    }
}

impl Endpoint for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn ratio(num: u64, den: u64) -> Self {
        num as f64 / den as f64
    }

    fn from_rational(value: &Rational) -> Self {
        Endpoint::to_f64(value)
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

    fn div_count(&self, count: usize) -> Self {
        self / count as f64
    }

    fn try_sqrt(&self) -> Option<Self> {
        Some(self.sqrt())
    }

    fn abs_diff(&self, other: &Self) -> Self {
        (self - other).abs()
    }

    fn within(deviation: &Self, epsilon: f64) -> bool {
        *deviation <= epsilon
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn parse_literal(text: &str) -> Option<Self> {
        let text = text.trim();
        if text.contains('/') {
            return parse_rational(text).map(|r| Endpoint::to_f64(&r));
        }
        let value = f64::from_str(text).ok()?;
        value.is_finite().then_some(value)
    }

    fn render(&self) -> String {
        format!("{self}")
    }
}

/// Parses `p/q`, `d`, or `d.ddd` into an exact rational. Signs are accepted
/// here and rejected later by the range check.
fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num = parse_decimal(num.trim())?;
        let den = parse_decimal(den.trim())?;
        if den.is_zero() {
            return None;
        }
        return Some(num / den);
    }
    parse_decimal(text)
}

fn parse_decimal(text: &str) -> Option<Rational> {
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).ok()?;
    let denom = num_traits::pow(BigInt::from(10u32), frac_part.len());
    let value = Rational::new(numer, denom);
    Some(if negative { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rational_literals() {
        assert_eq!(Rational::parse_literal("1/3"), Some(q(1, 3)));
        assert_eq!(Rational::parse_literal("0.25"), Some(q(1, 4)));
        assert_eq!(Rational::parse_literal(".5"), Some(q(1, 2)));
        assert_eq!(Rational::parse_literal("1"), Some(q(1, 1)));
        assert_eq!(Rational::parse_literal("0.5/2"), Some(q(1, 4)));
        assert_eq!(Rational::parse_literal("1/0"), None);
        assert_eq!(Rational::parse_literal("abc"), None);
        assert_eq!(Rational::parse_literal("."), None);
        assert_eq!(Rational::parse_literal(""), None);
    }

    #[test]
    fn float_literals() {
        assert_eq!(f64::parse_literal("0.25"), Some(0.25));
        assert_eq!(f64::parse_literal("1/4"), Some(0.25));
        assert_eq!(f64::parse_literal("nan"), None);
        assert_eq!(f64::parse_literal("inf"), None);
    }

    #[test]
    fn rendering() {
        assert_eq!(q(1, 4).render(), "1/4");
        assert_eq!(q(0, 1).render(), "0");
        assert_eq!(q(2, 2).render(), "1");
        assert_eq!(0.25f64.render(), "0.25");
        assert_eq!(0.0f64.render(), "0");
        assert_eq!(1.0f64.render(), "1");
    }

    #[test]
    fn equality_rules() {
        assert!(Rational::within(&q(0, 1), 0.5));
        assert!(!Rational::within(&q(1, 1_000_000_000_000), 0.5));
        assert!(f64::within(&1e-10, 1e-9));
        assert!(!f64::within(&1e-8, 1e-9));
    }

    #[test]
    fn mode_display() {
        assert_eq!(NumericMode::Exact.to_string(), "exact");
        assert_eq!(Rational::mode(1e-9), NumericMode::Exact);
        assert_eq!(f64::mode(1e-3), NumericMode::Float { epsilon: 1e-3 });
    }
}
