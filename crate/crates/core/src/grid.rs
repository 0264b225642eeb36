//! Uniform endpoint grids: the finite carriers laws are checked on.

use thiserror::Error;

use crate::endpoint::Endpoint;
use crate::interval::Interval;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("grid resolution must be at least 1")]
    ZeroResolution,
}

/// All intervals whose endpoints lie in `{0, 1/m, ..., 1}`, sorted
/// lexicographically by `(lo, hi)`.
#[derive(Debug, Clone)]
pub struct Grid<T> {
    resolution: u32,
    points: Vec<Interval<T>>,
}

impl<T: Endpoint> Grid<T> {
    pub fn new(resolution: u32) -> Result<Self, GridError> {
        if resolution == 0 {
            return Err(GridError::ZeroResolution);
        }
        let m = u64::from(resolution);
        let points = (0..=m)
            .flat_map(|lo| (lo..=m).map(move |hi| (lo, hi)))
            .map(|(lo, hi)| Interval::from_endpoints(T::ratio(lo, m), T::ratio(hi, m)))
            .collect();
        Ok(Grid { resolution, points })
    }

    pub fn resolution(&self) -> u32 {
        self.resolution
    }

    pub fn points(&self) -> &[Interval<T>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `(m+1)(m+2)/2`
    pub fn expected_len(resolution: u32) -> usize {
        let m = resolution as usize;
        (m + 1) * (m + 2) / 2
    }
}
