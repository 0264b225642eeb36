//! Closed subintervals of `[0,1]` and their arithmetic.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::endpoint::Endpoint;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("lo = {value} is outside [0,1]")]
    LoOutOfRange { value: String },
    #[error("hi = {value} is outside [0,1]")]
    HiOutOfRange { value: String },
    #[error("inverted endpoints: lo = {lo} > hi = {hi}")]
    Inverted { lo: String, hi: String },
    #[error("malformed interval `{0}`, expected `[lo,hi]`")]
    Malformed(String),
}

/// A closed interval `[lo, hi]` with `0 <= lo <= hi <= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval<T> {
    lo: T,
    hi: T,
}

fn in_unit<T: Endpoint>(value: &T) -> bool {
    *value >= T::zero() && *value <= T::one()
}

impl<T: Endpoint> Interval<T> {
    pub fn make(lo: T, hi: T) -> Result<Self, IntervalError> {
        if !in_unit(&lo) {
            return Err(IntervalError::LoOutOfRange { value: lo.render() });
        }
        if !in_unit(&hi) {
            return Err(IntervalError::HiOutOfRange { value: hi.render() });
        }
        if lo > hi {
            return Err(IntervalError::Inverted {
                lo: lo.render(),
                hi: hi.render(),
            });
        }
        Ok(Interval { lo, hi })
    }

    /// Builds an interval without range checks. Callers that cannot prove
    /// closure must validate with [`Interval::is_valid`].
    pub(crate) fn from_endpoints(lo: T, hi: T) -> Self {
        Interval { lo, hi }
    }

    pub fn degenerate(value: T) -> Result<Self, IntervalError> {
        Self::make(value.clone(), value)
    }

    /// `[0,0]`
    pub fn zero() -> Self {
        Interval {
            lo: T::zero(),
            hi: T::zero(),
        }
    }

    /// `[1,1]`
    pub fn one() -> Self {
        Interval {
            lo: T::one(),
            hi: T::one(),
        }
    }

    pub fn lo(&self) -> &T {
        &self.lo
    }

    pub fn hi(&self) -> &T {
        &self.hi
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_valid(&self) -> bool {
        in_unit(&self.lo) && in_unit(&self.hi) && self.lo <= self.hi
    }

    /// IV-product `[lo·lo', hi·hi']`.
    pub fn product(&self, other: &Self) -> Self {
        Interval {
            lo: self.lo.times(&other.lo),
            hi: self.hi.times(&other.hi),
        }
    }

    /// `1 - X = [1 - hi, 1 - lo]`.
    pub fn complement(&self) -> Self {
        let one = T::one();
        Interval {
            lo: one.minus(&self.hi),
            hi: one.minus(&self.lo),
        }
    }

    /// Standard negation; the same map as [`Interval::complement`].
    pub fn neg_standard(&self) -> Self {
        self.complement()
    }

    /// Probabilistic sum, endpointwise `x + (1 - x)·y`.
    pub fn prob_sum(&self, other: &Self) -> Self {
        let one = T::one();
        let psum = |x: &T, y: &T| x.plus(&one.minus(x).times(y));
        Interval {
            lo: psum(&self.lo, &other.lo),
            hi: psum(&self.hi, &other.hi),
        }
    }

    /// Componentwise minimum (lattice meet).
    pub fn meet(&self, other: &Self) -> Self {
        Interval {
            lo: min_of(&self.lo, &other.lo),
            hi: min_of(&self.hi, &other.hi),
        }
    }

    /// Componentwise maximum (lattice join).
    pub fn join(&self, other: &Self) -> Self {
        Interval {
            lo: max_of(&self.lo, &other.lo),
            hi: max_of(&self.hi, &other.hi),
        }
    }

    /// `X^k` by repeated product; `k = 0` gives `[1,1]`.
    pub fn power(&self, exponent: u32) -> Self {
        (0..exponent).fold(Self::one(), |acc, _| acc.product(self))
    }

    /// Endpointwise square root, when the representation supports it.
    pub fn sqrt(&self) -> Option<Self> {
        Some(Interval {
            lo: self.lo.try_sqrt()?,
            hi: self.hi.try_sqrt()?,
        })
    }

    /// Largest endpoint difference.
    pub fn deviation(&self, other: &Self) -> T {
        let dlo = self.lo.abs_diff(&other.lo);
        let dhi = self.hi.abs_diff(&other.hi);
        max_of(&dlo, &dhi)
    }

    /// Equality under the tolerance rules of `T`.
    pub fn approx_eq(&self, other: &Self, epsilon: f64) -> bool {
        T::within(&self.deviation(other), epsilon)
    }

    /// Endpoints as floats.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.lo.to_f64(), self.hi.to_f64())
    }
}

fn min_of<T: PartialOrd + Clone>(a: &T, b: &T) -> T {
    if b < a {
        b.clone()
    } else {
        a.clone()
    }
}

fn max_of<T: PartialOrd + Clone>(a: &T, b: &T) -> T {
    if b > a {
        b.clone()
    } else {
        a.clone()
    }
}

/// Componentwise partial order.
impl<T: Endpoint> PartialOrd for Interval<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        compare(IntervalOrder::Componentwise, self, other)
    }
}

impl<T: Endpoint> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo.render(), self.hi.render())
    }
}

impl<T: Endpoint> FromStr for Interval<T> {
    type Err = IntervalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || IntervalError::Malformed(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|rest| rest.strip_suffix(']'))
            .ok_or_else(malformed)?;
        let (lo, hi) = inner.split_once(',').ok_or_else(malformed)?;
        let lo = T::parse_literal(lo).ok_or_else(malformed)?;
        let hi = T::parse_literal(hi).ok_or_else(malformed)?;
        Interval::make(lo, hi)
    }
}

/// Orders on `I([0,1])`. Only `Componentwise` is partial; the others are
/// admissible total orders refining it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntervalOrder {
    #[default]
    Componentwise,
    /// `lo` first, then `hi`.
    LexLo,
    /// `hi` first, then `lo`.
    LexHi,
    /// `lo + hi` first, then width ascending.
    MidpointWidth,
}

impl IntervalOrder {
    pub const ALL: [IntervalOrder; 4] = [
        IntervalOrder::Componentwise,
        IntervalOrder::LexLo,
        IntervalOrder::LexHi,
        IntervalOrder::MidpointWidth,
    ];

    pub fn is_total(self) -> bool {
        self != IntervalOrder::Componentwise
    }

    pub fn name(self) -> &'static str {
        match self {
            IntervalOrder::Componentwise => "componentwise",
            IntervalOrder::LexLo => "lex-lo",
            IntervalOrder::LexHi => "lex-hi",
            IntervalOrder::MidpointWidth => "midpoint-width",
        }
    }
}

impl fmt::Display for IntervalOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IntervalOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IntervalOrder::ALL
            .into_iter()
            .find(|o| o.name() == s)
            .ok_or_else(|| format!("unknown order `{s}`"))
    }
}

fn cmp_endpoint<T: PartialOrd>(a: &T, b: &T) -> Ordering {
    a.partial_cmp(b).unwrap_or(Ordering::Equal)
}

/// Compares two intervals; `None` means incomparable, which only the
/// componentwise order can produce.
pub fn compare<T: Endpoint>(order: IntervalOrder, x: &Interval<T>, y: &Interval<T>) -> Option<Ordering> {
    match order {
        IntervalOrder::Componentwise => {
            match (cmp_endpoint(&x.lo, &y.lo), cmp_endpoint(&x.hi, &y.hi)) {
                (a, b) if a == b => Some(a),
                (Ordering::Equal, b) => Some(b),
                (a, Ordering::Equal) => Some(a),
                _ => None,
            }
        }
        IntervalOrder::LexLo => Some(cmp_endpoint(&x.lo, &y.lo).then(cmp_endpoint(&x.hi, &y.hi))),
        IntervalOrder::LexHi => Some(cmp_endpoint(&x.hi, &y.hi).then(cmp_endpoint(&x.lo, &y.lo))),
        IntervalOrder::MidpointWidth => {
            let mid = cmp_endpoint(&x.lo.plus(&x.hi), &y.lo.plus(&y.hi));
            let width = cmp_endpoint(&x.hi.minus(&x.lo), &y.hi.minus(&y.lo));
            Some(mid.then(width))
        }
    }
}
