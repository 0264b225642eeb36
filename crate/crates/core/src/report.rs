//! Serializable verdicts.
//!
//! Reports are mode-agnostic: endpoints are stored as strings (decimal in
//! float mode, `p/q` in exact mode), so identical runs serialize to
//! byte-identical JSON.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::endpoint::{Endpoint, NumericMode};
use crate::interval::Interval;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An interval rendered as `[lo, hi]` endpoint strings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntervalText(pub String, pub String);

impl IntervalText {
    pub fn of<T: Endpoint>(x: &Interval<T>) -> Self {
        IntervalText(x.lo().render(), x.hi().render())
    }

    /// Parses back into an interval of the requested representation.
    pub fn to_interval<T: Endpoint>(&self) -> Option<Interval<T>> {
        let lo = T::parse_literal(&self.0)?;
        let hi = T::parse_literal(&self.1)?;
        Interval::make(lo, hi).ok()
    }
}

impl fmt::Display for IntervalText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.0, self.1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// The scaling argument, for laws that have one.
    pub lambda: Option<IntervalText>,
    pub xs: Vec<IntervalText>,
    pub lhs: IntervalText,
    pub rhs: IntervalText,
}

/// The two sides of a checked law, written symbolically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Statement {
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// Outcome of one exhaustive grid check.
///
/// `verdict == Fail` exactly when `counterexample` is present, and the
/// counterexample is the smallest failing tuple in grid order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub law: String,
    pub statement: Statement,
    pub verdict: Verdict,
    pub counterexample: Option<Counterexample>,
    pub evaluations: u64,
    pub max_deviation: String,
    pub mode: NumericMode,
    pub resolution: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict.is_pass()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StageRole {
    Premise,
    Conclusion,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stage {
    pub name: String,
    pub role: StageRole,
    pub report: CheckReport,
}

/// Logical status of a premises-imply-conclusion pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PipelineStatus {
    /// All premises and the conclusion hold on the grid.
    Confirmed,
    /// Some premise fails; the conclusion is reported for information only.
    NotApplicable,
    /// Premises hold but the conclusion fails: an implementation defect.
    Violation,
}

impl fmt::Display for PipelineStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PipelineStatus::Confirmed => "confirmed",
            PipelineStatus::NotApplicable => "not-applicable",
            PipelineStatus::Violation => "violation",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub pipeline: String,
    pub status: PipelineStatus,
    pub stages: Vec<Stage>,
}

impl PipelineReport {
    pub(crate) fn from_stages(pipeline: &str, stages: Vec<Stage>) -> Self {
        let premises_hold = stages
            .iter()
            .filter(|s| s.role == StageRole::Premise)
            .all(|s| s.report.passed());
        let conclusion_holds = stages
            .iter()
            .filter(|s| s.role == StageRole::Conclusion)
            .all(|s| s.report.passed());
        let status = match (premises_hold, conclusion_holds) {
            (false, _) => PipelineStatus::NotApplicable,
            (true, true) => PipelineStatus::Confirmed,
            (true, false) => PipelineStatus::Violation,
        };
        PipelineReport {
            pipeline: pipeline.to_string(),
            status,
            stages,
        }
    }

    /// Pass iff every stage passed.
    pub fn verdict(&self) -> Verdict {
        if self.stages.iter().all(|s| s.report.passed()) {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn stage(&self, name: &str) -> Option<&Stage> {
        self.stages.iter().find(|s| s.name == name)
    }
}
