//! Resolution of F/G/Φ and dispatch of one command, generic over the endpoint
//! type.

use ivhom_core::dsl::{self, DslError};
use ivhom_core::grid::Grid;
use ivhom_core::registry::{self, RegistryError};
use ivhom_core::sweep::admit;
use ivhom_core::{
    check_homogeneity, check_idempotency, check_order_iso, check_pointwise_equal, dual_ns, run_dual_transfer,
    run_idempotency_transfer, CheckError, CheckOptions, Endpoint, Interval, IntervalText, IvFunction, NumericMode,
    OrderIso, ScalingFunction,
};

use crate::config::{Command, RunConfig};
use crate::emit::{CandidateMatch, DualReport, EvalReport, EvalRow, Output};
use crate::CliError;

const EXPR_PREFIX: &str = "expr:";

pub fn execute(cfg: &RunConfig) -> Result<Output, CliError> {
    match cfg.mode {
        NumericMode::Exact => run::<ivhom_core::Rational>(cfg),
        NumericMode::Float { .. } => run::<f64>(cfg),
    }
}

fn run<T: Endpoint>(cfg: &RunConfig) -> Result<Output, CliError> {
    let options = CheckOptions {
        epsilon: cfg.mode.epsilon(),
        budget: cfg.budget,
        workers: cfg.workers,
    };
    let f = resolve_function::<T>(&cfg.f, cfg.arity)?;
    let grid = Grid::<T>::new(cfg.resolution).map_err(|err| CliError::Usage(err.to_string()))?;
    let output = match cfg.command {
        Command::Check => {
            let g = resolve_scaling::<T>(&cfg.g)?;
            let phi = resolve_iso::<T>(&cfg.phi)?;
            let mut report = check_homogeneity(&f, &g, &phi, &grid, &options)?;
            if phi.name() != "identity" {
                let iso = check_order_iso(&phi, &grid, &options)?;
                report.notes.push(format!(
                    "{} certified as an order isomorphism on the grid: {} (max deviation {})",
                    phi.name(),
                    iso.verdict,
                    iso.max_deviation
                ));
            }
            Output::Check(report)
        }
        Command::Idempotent => Output::Check(check_idempotency(&f, &grid, &options)?),
        Command::IdempotencyTransfer => {
            let g = resolve_scaling::<T>(&cfg.g)?;
            let anchor = parse_interval::<T>(&cfg.anchor, "--anchor")?;
            Output::Pipeline(run_idempotency_transfer(&f, &g, &anchor, &grid, &options)?)
        }
        Command::DualTransfer => Output::Pipeline(run_dual_transfer(&f, &grid, &options)?),
        Command::Dual => Output::Dual(dual_matches(&f, &grid, &options)?),
        Command::Eval => Output::Eval(evaluate(&f, cfg, &grid, &options)?),
    };
    Ok(output)
}

fn dsl_error(src: &str, err: DslError) -> CliError {
    CliError::Usage(format!("in `{src}`: {err}"))
}

fn registry_error(err: RegistryError) -> CliError {
    CliError::Usage(err.to_string())
}

fn default_arity(name: &str) -> usize {
    if name.starts_with("pow_") {
        1
    } else {
        2
    }
}

fn resolve_function<T: Endpoint>(spec: &str, arity: Option<usize>) -> Result<IvFunction<T>, CliError> {
    match spec.strip_prefix(EXPR_PREFIX) {
        Some(src) => {
            let arity = arity.ok_or_else(|| CliError::Usage("--arity is required when --f is an expression".into()))?;
            let expr = dsl::parse_expr(src, arity).map_err(|err| dsl_error(src, err))?;
            dsl::compile_function(&expr, arity, src).map_err(|err| dsl_error(src, err))
        }
        None => registry::function(spec, arity.unwrap_or_else(|| default_arity(spec))).map_err(registry_error),
    }
}

fn resolve_scaling<T: Endpoint>(spec: &str) -> Result<ScalingFunction<T>, CliError> {
    match spec.strip_prefix(EXPR_PREFIX) {
        Some(src) => {
            let expr = dsl::parse_expr(src, 1).map_err(|err| dsl_error(src, err))?;
            dsl::compile_scaling(&expr, src).map_err(|err| dsl_error(src, err))
        }
        None => registry::scaling(spec).map_err(registry_error),
    }
}

fn resolve_iso<T: Endpoint>(spec: &str) -> Result<OrderIso<T>, CliError> {
    match spec.strip_prefix(EXPR_PREFIX) {
        Some(src) => {
            let (fwd, inv) = src
                .split_once('|')
                .ok_or_else(|| CliError::Usage(format!("--phi expression `{src}` needs the form <forward>|<inverse>")))?;
            let forward = dsl::parse_expr(fwd, 1).map_err(|err| dsl_error(fwd, err))?;
            let inverse = dsl::parse_expr(inv, 1).map_err(|err| dsl_error(inv, err))?;
            dsl::compile_order_iso(&forward, &inverse, fwd).map_err(|err| dsl_error(src, err))
        }
        None => registry::order_iso(spec).map_err(registry_error),
    }
}

fn parse_interval<T: Endpoint>(text: &str, what: &str) -> Result<Interval<T>, CliError> {
    text.parse::<Interval<T>>()
        .map_err(|err| CliError::Usage(format!("{what}: `{text}`: {err}")))
}

fn candidates<T: Endpoint>(arity: usize) -> Vec<IvFunction<T>> {
    let mut names: Vec<String> = ["min", "max", "product", "mean"].map(String::from).to_vec();
    names.extend((1..=arity).map(|k| format!("proj_{k}")));
    if arity == 1 {
        names.push("pow_2".into());
    }
    names
        .iter()
        .filter_map(|name| registry::function(name, arity).ok())
        .collect()
}

fn dual_matches<T: Endpoint>(f: &IvFunction<T>, grid: &Grid<T>, options: &CheckOptions) -> Result<DualReport, CliError> {
    let dual = dual_ns(f);
    let mut equals = Vec::new();
    let mut matches = Vec::new();
    for candidate in candidates::<T>(f.arity()) {
        let report = check_pointwise_equal(&dual, &candidate, grid, options)?;
        if report.passed() {
            equals.push(candidate.name().to_string());
        }
        matches.push(CandidateMatch {
            name: candidate.name().to_string(),
            verdict: report.verdict,
            max_deviation: report.max_deviation,
        });
    }
    Ok(DualReport {
        function: f.name().to_string(),
        dual: dual.name().to_string(),
        arity: f.arity(),
        equals,
        candidates: matches,
        mode: T::mode(options.epsilon),
        resolution: grid.resolution(),
    })
}

fn evaluate<T: Endpoint>(
    f: &IvFunction<T>,
    cfg: &RunConfig,
    grid: &Grid<T>,
    options: &CheckOptions,
) -> Result<EvalReport, CliError> {
    let n = f.arity();
    let tuples: Vec<Vec<Interval<T>>> = if cfg.at.is_empty() {
        admit(grid.len(), n, options.budget)?;
        let points = grid.points();
        let total = grid.len().pow(n as u32);
        (0..total)
            .map(|mut code| {
                let mut args = vec![points[0].clone(); n];
                for slot in args.iter_mut().rev() {
                    *slot = points[code % points.len()].clone();
                    code /= points.len();
                }
                args
            })
            .collect()
    } else {
        cfg.at
            .iter()
            .map(|tuple| {
                let args = tuple
                    .split(';')
                    .map(|x| parse_interval::<T>(x, "--at"))
                    .collect::<Result<Vec<_>, _>>()?;
                if args.len() != n {
                    return Err(CliError::Usage(format!(
                        "--at `{tuple}` has {} intervals but {} has arity {n}",
                        args.len(),
                        f.name()
                    )));
                }
                Ok(args)
            })
            .collect::<Result<_, _>>()?
    };
    let mut rows = Vec::with_capacity(tuples.len());
    for args in tuples {
        let value = f.eval(&args);
        if !value.is_valid() {
            return Err(CheckError::ClosureViolation {
                subject: f.name().to_string(),
                inputs: args.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
                output: format!("{value:?}"),
            }
            .into());
        }
        rows.push(EvalRow {
            args: args.iter().map(IntervalText::of).collect(),
            value: IntervalText::of(&value),
        });
    }
    Ok(EvalReport {
        function: f.name().to_string(),
        arity: n,
        rows,
        mode: T::mode(options.epsilon),
        resolution: cfg.at.is_empty().then_some(grid.resolution()),
    })
}
