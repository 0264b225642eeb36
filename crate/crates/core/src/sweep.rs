//! Exhaustive, deterministic sweeps over `grid^k` tuple spaces.
//!
//! The tuple space is enumerated in lexicographic order of grid indices (the
//! first coordinate is most significant) and split into contiguous blocks,
//! one per worker. Every tuple is always evaluated, so the statistics do not
//! depend on the worker count, and the reported failure is the minimum over
//! the per-worker first failures, i.e. the globally smallest failing tuple.

use std::num::NonZeroUsize;
use std::thread;

use thiserror::Error;

use crate::endpoint::Endpoint;
use crate::interval::Interval;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("refusing exhaustive check: {tuples} tuples exceed the evaluation budget of {budget}")]
    BudgetExceeded { tuples: u128, budget: u64 },
    #[error("{subject} produced {output}, which is not an interval in [0,1], at {inputs}")]
    ClosureViolation {
        subject: String,
        inputs: String,
        output: String,
    },
    #[error("arity mismatch: {0}")]
    Arity(String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckOptions {
    /// Tolerance for float mode; ignored by exact endpoints.
    pub epsilon: f64,
    /// Maximum number of tuples a single check may evaluate.
    pub budget: u64,
    pub workers: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            epsilon: crate::endpoint::NumericMode::DEFAULT_EPSILON,
            budget: DEFAULT_BUDGET,
            workers: default_workers(),
        }
    }
}

impl CheckOptions {
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }
}

pub fn default_workers() -> usize {
    thread::available_parallelism().map_or(1, NonZeroUsize::get)
}

#[derive(Debug, Clone)]
pub(crate) struct Failure<T> {
    pub index: Vec<usize>,
    pub lhs: Interval<T>,
    pub rhs: Interval<T>,
}

#[derive(Debug, Clone)]
pub(crate) struct SweepOutcome<T> {
    pub evaluations: u64,
    pub max_deviation: T,
    pub first_failure: Option<Failure<T>>,
}

/// `radix^width`, saturating.
pub(crate) fn tuple_count(radix: usize, width: usize) -> u128 {
    let exp = u32::try_from(width).unwrap_or(u32::MAX);
    (radix as u128).checked_pow(exp).unwrap_or(u128::MAX)
}

/// Refuses when the tuple space exceeds the budget.
pub fn admit(radix: usize, width: usize, budget: u64) -> Result<u64, CheckError> {
    let tuples = tuple_count(radix, width);
    if tuples > u128::from(budget) {
        return Err(CheckError::BudgetExceeded { tuples, budget });
    }
    Ok(tuples as u64)
}

/// Evaluates `eval` on every index tuple of `0..radix` of length `width` and
/// compares the returned `(lhs, rhs)` pairs.
pub(crate) fn sweep<T, F>(
    radix: usize,
    width: usize,
    options: &CheckOptions,
    eval: F,
) -> Result<SweepOutcome<T>, CheckError>
where
    T: Endpoint,
    F: Fn(&[usize]) -> Result<(Interval<T>, Interval<T>), CheckError> + Sync,
{
    let total = admit(radix, width, options.budget)?;
    let workers = (options.workers.max(1) as u64).min(total.max(1));
    let block = total.div_ceil(workers).max(1);
    let ranges: Vec<(u64, u64)> = (0..workers)
        .map(|w| (w * block, ((w + 1) * block).min(total)))
        .filter(|(start, end)| start < end)
        .collect();

    let partials: Vec<Result<SweepOutcome<T>, (u64, CheckError)>> = if ranges.len() <= 1 {
        ranges
            .iter()
            .map(|&(start, end)| sweep_block(radix, width, start, end, options.epsilon, &eval))
            .collect()
    } else {
        thread::scope(|scope| {
            let handles: Vec<_> = ranges
                .iter()
                .map(|&(start, end)| {
                    let eval = &eval;
                    scope.spawn(move || sweep_block(radix, width, start, end, options.epsilon, eval))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("sweep worker panicked"))
                .collect()
        })
    };

    let mut merged = SweepOutcome {
        evaluations: 0,
        max_deviation: T::zero(),
        first_failure: None,
    };
    let mut first_error: Option<(u64, CheckError)> = None;
    // Blocks are in index order, so the first failure/error seen is the smallest.
    for partial in partials {
        match partial {
            Ok(part) => {
                merged.evaluations += part.evaluations;
                if part.max_deviation > merged.max_deviation {
                    merged.max_deviation = part.max_deviation;
                }
                if merged.first_failure.is_none() {
                    merged.first_failure = part.first_failure;
                }
            }
            Err((at, err)) => {
                if first_error.as_ref().is_none_or(|(best, _)| at < *best) {
                    first_error = Some((at, err));
                }
            }
        }
    }
    match first_error {
        Some((_, err)) => Err(err),
        None => Ok(merged),
    }
}

fn decode(mut index: u64, radix: usize, width: usize) -> Vec<usize> {
    let mut digits = vec![0; width];
    for slot in digits.iter_mut().rev() {
        *slot = (index % radix as u64) as usize;
        index /= radix as u64;
    }
    digits
}

fn advance(digits: &mut [usize], radix: usize) {
    for slot in digits.iter_mut().rev() {
        *slot += 1;
        if *slot < radix {
            return;
        }
        *slot = 0;
    }
}

fn sweep_block<T, F>(
    radix: usize,
    width: usize,
    start: u64,
    end: u64,
    epsilon: f64,
    eval: &F,
) -> Result<SweepOutcome<T>, (u64, CheckError)>
where
    T: Endpoint,
    F: Fn(&[usize]) -> Result<(Interval<T>, Interval<T>), CheckError>,
{
    let mut digits = decode(start, radix, width);
    let mut outcome = SweepOutcome {
        evaluations: 0,
        max_deviation: T::zero(),
        first_failure: None,
    };
    for at in start..end {
        let (lhs, rhs) = eval(&digits).map_err(|err| (at, err))?;
        let deviation = lhs.deviation(&rhs);
        if !T::within(&deviation, epsilon) && outcome.first_failure.is_none() {
            outcome.first_failure = Some(Failure {
                index: digits.clone(),
                lhs,
                rhs,
            });
        }
        if deviation > outcome.max_deviation {
            outcome.max_deviation = deviation;
        }
        outcome.evaluations += 1;
        advance(&mut digits, radix);
    }
    Ok(outcome)
}

/// Validates an intermediate or final value against the interval invariant.
pub(crate) fn closed<T: Endpoint>(
    value: Interval<T>,
    subject: &str,
    inputs: impl FnOnce() -> String,
) -> Result<Interval<T>, CheckError> {
    if value.is_valid() {
        Ok(value)
    } else {
        Err(CheckError::ClosureViolation {
            subject: subject.to_string(),
            inputs: inputs(),
            output: value.to_string(),
        })
    }
}
