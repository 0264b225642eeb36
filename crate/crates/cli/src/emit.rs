//! Rendering of run outputs as JSON, CSV or text.

use std::fmt::Write as _;

use ivhom_core::homogeneity::{LAW_FIXED_POINT, LAW_HOMOGENEITY, LAW_IDEMPOTENCY, LAW_POINTWISE_EQUAL};
use ivhom_core::{CheckReport, Counterexample, IntervalText, NumericMode, PipelineReport, Verdict};
use serde::{Deserialize, Serialize};

use crate::config::OutputFormat;

/// Result of `dual`: which registry functions the dual agrees with.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualReport {
    pub function: String,
    pub dual: String,
    pub arity: usize,
    pub equals: Vec<String>,
    pub candidates: Vec<CandidateMatch>,
    pub mode: NumericMode,
    pub resolution: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateMatch {
    pub name: String,
    pub verdict: Verdict,
    pub max_deviation: String,
}

/// Result of `eval`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub function: String,
    pub arity: usize,
    pub rows: Vec<EvalRow>,
    pub mode: NumericMode,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub resolution: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRow {
    pub args: Vec<IntervalText>,
    pub value: IntervalText,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Check(CheckReport),
    Pipeline(PipelineReport),
    Dual(DualReport),
    Eval(EvalReport),
}

impl Output {
    /// Process exit code implied by the result; independent of format.
    pub fn exit_code(&self) -> u8 {
        let pass = match self {
            Output::Check(r) => r.passed(),
            Output::Pipeline(p) => p.verdict().is_pass(),
            Output::Dual(_) | Output::Eval(_) => true,
        };
        if pass {
            0
        } else {
            1
        }
    }
}

pub fn emit(output: &Output, format: OutputFormat) -> String {
    match output {
        Output::Check(r) => emit_report(r, format),
        Output::Pipeline(p) => emit_pipeline(p, format),
        Output::Dual(d) => emit_dual(d, format),
        Output::Eval(e) => emit_eval(e, format),
    }
}

fn to_json<S: Serialize>(value: &S) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    text
}

pub fn emit_report(report: &CheckReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => to_json(report),
        OutputFormat::Csv => csv_row(&report.law, report),
        OutputFormat::Text => text_block(&report.law, report, ""),
    }
}

pub fn emit_pipeline(pipeline: &PipelineReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => to_json(pipeline),
        OutputFormat::Csv => pipeline.stages.iter().map(|s| csv_row(&s.name, &s.report)).collect(),
        OutputFormat::Text => {
            let mut out = format!(
                "{}: {} ({})\n",
                pipeline.pipeline,
                pipeline.verdict(),
                pipeline.status
            );
            for stage in &pipeline.stages {
                let role = match stage.role {
                    ivhom_core::StageRole::Premise => "premise",
                    ivhom_core::StageRole::Conclusion => "conclusion",
                };
                out.push_str(&text_block(&format!("{} [{role}]", stage.name), &stage.report, "  "));
            }
            out
        }
    }
}

fn emit_dual(report: &DualReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => to_json(report),
        OutputFormat::Csv => report
            .candidates
            .iter()
            .map(|c| format!("{},{},{}\n", c.name, c.verdict, c.max_deviation))
            .collect(),
        OutputFormat::Text => {
            let equals = if report.equals.is_empty() {
                format!("{} matches no registry function of arity {}", report.dual, report.arity)
            } else {
                format!("{} equals registry {}", report.dual, report.equals.join(", "))
            };
            format!(
                "{equals} on the grid (mode {}, resolution {})\n",
                report.mode, report.resolution
            )
        }
    }
}

fn emit_eval(report: &EvalReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => to_json(report),
        OutputFormat::Csv => {
            let mut out = String::new();
            let header: Vec<String> = (1..=report.arity)
                .flat_map(|i| [format!("x{i}_lo"), format!("x{i}_hi")])
                .chain(["value_lo".into(), "value_hi".into()])
                .collect();
            out.push_str(&header.join(","));
            out.push('\n');
            for row in &report.rows {
                let cells: Vec<&str> = row
                    .args
                    .iter()
                    .chain(std::iter::once(&row.value))
                    .flat_map(|t| [t.0.as_str(), t.1.as_str()])
                    .collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
            out
        }
        OutputFormat::Text => report
            .rows
            .iter()
            .map(|row| {
                let args: Vec<String> = row.args.iter().map(ToString::to_string).collect();
                format!("{}({}) = {}\n", report.function, args.join(","), row.value)
            })
            .collect(),
    }
}

fn csv_row(name: &str, report: &CheckReport) -> String {
    format!("{name},{},{}\n", report.verdict, report.max_deviation)
}

fn labels(law: &str, n: usize) -> Vec<String> {
    match law {
        LAW_FIXED_POINT => vec!["A".into()],
        LAW_IDEMPOTENCY => vec!["X".into()],
        LAW_HOMOGENEITY | LAW_POINTWISE_EQUAL => (1..=n).map(|i| format!("X{i}")).collect(),
        _ if n == 1 => vec!["X".into()],
        _ => (1..=n).map(|i| format!("X{i}")).collect(),
    }
}

fn expand(law: &str, report: &CheckReport, cx: &Counterexample) -> (String, String) {
    let mut bindings = Vec::new();
    if let Some(lambda) = &cx.lambda {
        bindings.push(format!("Λ = {lambda}"));
    }
    for (label, x) in labels(law, cx.xs.len()).iter().zip(&cx.xs) {
        bindings.push(format!("{label} = {x}"));
    }
    let equation = format!(
        "{} = {} ≠ {} = {}",
        report.statement.lhs, cx.lhs, cx.rhs, report.statement.rhs
    );
    (bindings.join(", "), equation)
}

fn text_block(title: &str, report: &CheckReport, indent: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{indent}{title}: {}", report.verdict);
    let _ = writeln!(out, "{indent}  statement: {}", report.statement);
    let _ = writeln!(
        out,
        "{indent}  mode {}, resolution {}, {} evaluations, max deviation {}",
        report.mode, report.resolution, report.evaluations, report.max_deviation
    );
    if let Some(cx) = &report.counterexample {
        let (bindings, equation) = expand(&report.law, report, cx);
        let _ = writeln!(out, "{indent}  counterexample: {bindings}");
        let _ = writeln!(out, "{indent}    {equation}");
    }
    for note in &report.notes {
        let _ = writeln!(out, "{indent}  note: {note}");
    }
    out
}
