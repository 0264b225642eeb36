//! Exhaustive law checks on grids and the two transfer pipelines.
//!
//! A `(G, Φ)`-homogeneous IV-function satisfies
//!
//! ```text
//! F(G(Λ,X1), ..., G(Λ,Xn)) = G(Φ(Λ), F(X1, ..., Xn))
//! ```
//!
//! for every `Λ, X1..Xn`. Here every quantifier ranges over a [`Grid`], so a
//! pass is grid evidence at the reported resolution, never a proof.

use std::cmp::Ordering;

use crate::endpoint::Endpoint;
use crate::functions::{dual_ns, dual_scaling_ns, section, IvFunction, OrderIso, ScalingFunction};
use crate::grid::Grid;
use crate::interval::{compare, Interval, IntervalOrder};
use crate::registry;
use crate::report::{CheckReport, Counterexample, IntervalText, PipelineReport, Stage, StageRole, Statement, Verdict};
use crate::sweep::{admit, closed, sweep, CheckError, CheckOptions, Failure, SweepOutcome};

pub const LAW_HOMOGENEITY: &str = "homogeneity";
pub const LAW_IDEMPOTENCY: &str = "idempotency";
pub const LAW_FIXED_POINT: &str = "fixed-point";
pub const LAW_SECTION_BIJECTIVE: &str = "section-bijective";
pub const LAW_ORDER_ISO: &str = "order-isomorphism";
pub const LAW_POINTWISE_EQUAL: &str = "pointwise-equality";

pub const PIPELINE_IDEMPOTENCY: &str = "idempotency-transfer";
pub const PIPELINE_DUAL: &str = "dual-transfer";

const GRID_CERTIFIED: &str = "grid-certified: bijectivity holds on the grid points; not a proof on I([0,1])";

fn var_list(prefix: &str, n: usize) -> String {
    (1..=n).map(|i| format!("{prefix}{i}")).collect::<Vec<_>>().join(",")
}

fn describe_args<T: Endpoint>(names: &[String], values: &[&Interval<T>]) -> String {
    names
        .iter()
        .zip(values)
        .map(|(n, v)| format!("{n}={v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn build_report<T: Endpoint>(
    law: &str,
    statement: Statement,
    grid: &Grid<T>,
    options: &CheckOptions,
    outcome: SweepOutcome<T>,
    to_counterexample: impl FnOnce(Failure<T>) -> Counterexample,
) -> CheckReport {
    let counterexample = outcome.first_failure.map(to_counterexample);
    CheckReport {
        law: law.to_string(),
        statement,
        verdict: if counterexample.is_some() { Verdict::Fail } else { Verdict::Pass },
        counterexample,
        evaluations: outcome.evaluations,
        max_deviation: outcome.max_deviation.render(),
        mode: T::mode(options.epsilon),
        resolution: grid.resolution(),
        notes: Vec::new(),
    }
}

/// Checks `F(G(Λ,X1),...,G(Λ,Xn)) = G(Φ(Λ), F(X1,...,Xn))` on every tuple of
/// `grid^(n+1)`.
pub fn check_homogeneity<T: Endpoint>(
    f: &IvFunction<T>,
    g: &ScalingFunction<T>,
    phi: &OrderIso<T>,
    grid: &Grid<T>,
    options: &CheckOptions,
) -> Result<CheckReport, CheckError> {
    let n = f.arity();
    let points = grid.points();
    admit(points.len(), n + 1, options.budget)?;

    let scaled_args = (1..=n).map(|i| format!("{}(Λ,X{i})", g.name())).collect::<Vec<_>>().join(",");
    let statement = Statement {
        lhs: format!("{}({scaled_args})", f.name()),
        rhs: format!("{}({}(Λ),{}({}))", g.name(), phi.name(), f.name(), var_list("X", n)),
    };

    let mut phi_values = Vec::with_capacity(points.len());
    for lambda in points {
        phi_values.push(closed(phi.apply(lambda), phi.name(), || format!("Λ={lambda}"))?);
    }
    // scaled[i * len + j] = G(Λ_i, X_j)
    let mut scaled = Vec::with_capacity(points.len() * points.len());
    for lambda in points {
        for x in points {
            scaled.push(closed(g.apply(lambda, x), g.name(), || format!("Λ={lambda}, X={x}"))?);
        }
    }

    let len = points.len();
    let names: Vec<String> = std::iter::once("Λ".to_string())
        .chain((1..=n).map(|i| format!("X{i}")))
        .collect();
    let inputs_of = |idx: &[usize]| {
        let values: Vec<&Interval<T>> = idx.iter().map(|&i| &points[i]).collect();
        describe_args(&names, &values)
    };

    let outcome = sweep(len, n + 1, options, |idx| {
        let lambda = idx[0];
        let xs: Vec<Interval<T>> = idx[1..].iter().map(|&j| points[j].clone()).collect();
        let scaled_xs: Vec<Interval<T>> = idx[1..].iter().map(|&j| scaled[lambda * len + j].clone()).collect();
        let lhs = closed(f.eval(&scaled_xs), f.name(), || inputs_of(idx))?;
        let inner = closed(f.eval(&xs), f.name(), || inputs_of(idx))?;
        let rhs = closed(g.apply(&phi_values[lambda], &inner), g.name(), || inputs_of(idx))?;
        Ok((lhs, rhs))
    })?;

    let mut report = build_report(LAW_HOMOGENEITY, statement, grid, options, outcome, |fail| Counterexample {
        lambda: Some(IntervalText::of(&points[fail.index[0]])),
        xs: fail.index[1..].iter().map(|&j| IntervalText::of(&points[j])).collect(),
        lhs: IntervalText::of(&fail.lhs),
        rhs: IntervalText::of(&fail.rhs),
    });
    if phi.name() != "identity" {
        report.notes.push(format!(
            "Φ = {} is taken as an order isomorphism for the {} order",
            phi.name(),
            IntervalOrder::Componentwise
        ));
    }
    Ok(report)
}

/// Checks `F(X,...,X) = X` for every grid point.
pub fn check_idempotency<T: Endpoint>(
    f: &IvFunction<T>,
    grid: &Grid<T>,
    options: &CheckOptions,
) -> Result<CheckReport, CheckError> {
    let points = grid.points();
    let statement = Statement {
        lhs: format!("{}({})", f.name(), vec!["X"; f.arity()].join(",")),
        rhs: "X".into(),
    };
    let outcome = sweep(points.len(), 1, options, |idx| {
        let x = &points[idx[0]];
        let lhs = closed(f.eval_diagonal(x), f.name(), || format!("X={x}"))?;
        Ok((lhs, x.clone()))
    })?;
    Ok(build_report(LAW_IDEMPOTENCY, statement, grid, options, outcome, |fail| Counterexample {
        lambda: None,
        xs: vec![IntervalText::of(&points[fail.index[0]])],
        lhs: IntervalText::of(&fail.lhs),
        rhs: IntervalText::of(&fail.rhs),
    }))
}

/// Checks `F(A,...,A) = A` for a single interval `A`.
pub fn check_fixed_point<T: Endpoint>(
    f: &IvFunction<T>,
    anchor: &Interval<T>,
    grid: &Grid<T>,
    options: &CheckOptions,
) -> Result<CheckReport, CheckError> {
    let value = closed(f.eval_diagonal(anchor), f.name(), || format!("A={anchor}"))?;
    let deviation = value.deviation(anchor);
    let holds = T::within(&deviation, options.epsilon);
    Ok(CheckReport {
        law: LAW_FIXED_POINT.into(),
        statement: Statement {
            lhs: format!("{}({})", f.name(), vec![anchor.to_string(); f.arity()].join(",")),
            rhs: anchor.to_string(),
        },
        verdict: if holds { Verdict::Pass } else { Verdict::Fail },
        counterexample: (!holds).then(|| Counterexample {
            lambda: None,
            xs: vec![IntervalText::of(anchor)],
            lhs: IntervalText::of(&value),
            rhs: IntervalText::of(anchor),
        }),
        evaluations: 1,
        max_deviation: deviation.render(),
        mode: T::mode(options.epsilon),
        resolution: grid.resolution(),
        notes: Vec::new(),
    })
}

/// Grid certificate that `X -> G(X, A)` is a bijection: injective on grid
/// points, and every grid point is hit up to numeric equality.
///
/// `max_deviation` is the largest distance from a grid point to its nearest
/// image, so a pass keeps it within tolerance.
pub fn check_section_bijective<T: Endpoint>(
    g: &ScalingFunction<T>,
    anchor: &Interval<T>,
    grid: &Grid<T>,
    options: &CheckOptions,
) -> Result<CheckReport, CheckError> {
    let points = grid.points();
    admit(points.len(), 2, options.budget)?;
    let sec = section(g, anchor);
    let images = points
        .iter()
        .map(|x| closed(sec.apply(x), g.name(), || format!("X={x}, A={anchor}")))
        .collect::<Result<Vec<_>, _>>()?;

    let mut notes = vec![GRID_CERTIFIED.to_string()];
    let mut counterexample = None;

    'outer: for i in 0..images.len() {
        for j in i + 1..images.len() {
            if images[i].approx_eq(&images[j], options.epsilon) {
                notes.push("not injective: two distinct grid points share an image".into());
                counterexample = Some(Counterexample {
                    lambda: None,
                    xs: vec![IntervalText::of(&points[i]), IntervalText::of(&points[j])],
                    lhs: IntervalText::of(&images[i]),
                    rhs: IntervalText::of(&images[j]),
                });
                break 'outer;
            }
        }
    }

    let mut max_miss = T::zero();
    for target in points {
        let (nearest, miss) = images
            .iter()
            .map(|img| (img, img.deviation(target)))
            .fold(None::<(&Interval<T>, T)>, |best, (img, d)| match best {
                Some((_, ref bd)) if *bd <= d => best,
                _ => Some((img, d)),
            })
            .expect("grids are nonempty");
        if counterexample.is_none() && !T::within(&miss, options.epsilon) {
            notes.push("not surjective on the grid: target has no preimage; rhs is its nearest image".into());
            counterexample = Some(Counterexample {
                lambda: None,
                xs: vec![IntervalText::of(target)],
                lhs: IntervalText::of(target),
                rhs: IntervalText::of(nearest),
            });
        }
        if miss > max_miss {
            max_miss = miss;
        }
    }

    Ok(CheckReport {
        law: LAW_SECTION_BIJECTIVE.into(),
        statement: Statement {
            lhs: format!("{}(X,{anchor})", g.name()),
            rhs: "bijection on the grid".into(),
        },
        verdict: if counterexample.is_some() { Verdict::Fail } else { Verdict::Pass },
        counterexample,
        evaluations: points.len() as u64,
        max_deviation: max_miss.render(),
        mode: T::mode(options.epsilon),
        resolution: grid.resolution(),
        notes,
    })
}

/// Grid certificate for an order isomorphism with respect to the
/// componentwise order: both round trips are the identity, `[0,0]` and
/// `[1,1]` are fixed, and strictly comparable pairs stay strictly ordered.
pub fn check_order_iso<T: Endpoint>(
    phi: &OrderIso<T>,
    grid: &Grid<T>,
    options: &CheckOptions,
) -> Result<CheckReport, CheckError> {
    let points = grid.points();
    admit(points.len(), 2, options.budget)?;
    let eps = options.epsilon;
    let forward = points
        .iter()
        .map(|x| closed(phi.apply(x), phi.name(), || format!("X={x}")))
        .collect::<Result<Vec<_>, _>>()?;
    let backward = points
        .iter()
        .map(|x| closed(phi.invert(x), phi.name(), || format!("inverse at X={x}")))
        .collect::<Result<Vec<_>, _>>()?;

    let mut evaluations = 0u64;
    let mut max_dev = T::zero();
    let mut failure: Option<(String, Counterexample)> = None;
    fn record(reason: &str, cx: Counterexample, failure: &mut Option<(String, Counterexample)>) {
        if failure.is_none() {
            *failure = Some((reason.to_string(), cx));
        }
    }

    for (i, x) in points.iter().enumerate() {
        for (label, there_and_back) in [
            ("inverse(forward(X)) != X", phi.invert(&forward[i])),
            ("forward(inverse(X)) != X", phi.apply(&backward[i])),
        ] {
            evaluations += 1;
            let d = there_and_back.deviation(x);
            if !T::within(&d, eps) {
                let cx = Counterexample {
                    lambda: None,
                    xs: vec![IntervalText::of(x)],
                    lhs: IntervalText::of(&there_and_back),
                    rhs: IntervalText::of(x),
                };
                record(label, cx, &mut failure);
            }
            if d > max_dev {
                max_dev = d;
            }
        }
    }
    for fixed in [Interval::<T>::zero(), Interval::one()] {
        evaluations += 1;
        let image = phi.apply(&fixed);
        if !image.approx_eq(&fixed, eps) {
            let cx = Counterexample {
                lambda: None,
                xs: vec![IntervalText::of(&fixed)],
                lhs: IntervalText::of(&image),
                rhs: IntervalText::of(&fixed),
            };
            record("bounds are not fixed", cx, &mut failure);
        }
    }
    for (i, x) in points.iter().enumerate() {
        for (j, y) in points.iter().enumerate() {
            if compare(IntervalOrder::Componentwise, x, y) != Some(Ordering::Less) {
                continue;
            }
            evaluations += 1;
            let strict = compare(IntervalOrder::Componentwise, &forward[i], &forward[j]) == Some(Ordering::Less)
                && !forward[i].approx_eq(&forward[j], eps);
            if !strict {
                let cx = Counterexample {
                    lambda: None,
                    xs: vec![IntervalText::of(x), IntervalText::of(y)],
                    lhs: IntervalText::of(&forward[i]),
                    rhs: IntervalText::of(&forward[j]),
                };
                record("not strictly monotone on a comparable pair", cx, &mut failure);
            }
        }
    }

    let mut notes = vec![format!("order: {}", IntervalOrder::Componentwise), GRID_CERTIFIED.to_string()];
    let counterexample = failure.map(|(reason, cx)| {
        notes.push(reason);
        cx
    });
    Ok(CheckReport {
        law: LAW_ORDER_ISO.into(),
        statement: Statement {
            lhs: format!("{}(X)", phi.name()),
            rhs: "order isomorphism on the grid".into(),
        },
        verdict: if counterexample.is_some() { Verdict::Fail } else { Verdict::Pass },
        counterexample,
        evaluations,
        max_deviation: max_dev.render(),
        mode: T::mode(eps),
        resolution: grid.resolution(),
        notes,
    })
}

/// Checks `F1(X1..Xn) = F2(X1..Xn)` on `grid^n`.
pub fn check_pointwise_equal<T: Endpoint>(
    f1: &IvFunction<T>,
    f2: &IvFunction<T>,
    grid: &Grid<T>,
    options: &CheckOptions,
) -> Result<CheckReport, CheckError> {
    if f1.arity() != f2.arity() {
        return Err(CheckError::Arity(format!(
            "{} has arity {} but {} has arity {}",
            f1.name(),
            f1.arity(),
            f2.name(),
            f2.arity()
        )));
    }
    let n = f1.arity();
    let points = grid.points();
    let vars = var_list("X", n);
    let statement = Statement {
        lhs: format!("{}({vars})", f1.name()),
        rhs: format!("{}({vars})", f2.name()),
    };
    let outcome = sweep(points.len(), n, options, |idx| {
        let xs: Vec<Interval<T>> = idx.iter().map(|&i| points[i].clone()).collect();
        let at = || xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        let lhs = closed(f1.eval(&xs), f1.name(), at)?;
        let rhs = closed(f2.eval(&xs), f2.name(), at)?;
        Ok((lhs, rhs))
    })?;
    Ok(build_report(LAW_POINTWISE_EQUAL, statement, grid, options, outcome, |fail| Counterexample {
        lambda: None,
        xs: fail.index.iter().map(|&i| IntervalText::of(&points[i])).collect(),
        lhs: IntervalText::of(&fail.lhs),
        rhs: IntervalText::of(&fail.rhs),
    }))
}

/// Checks `G1(X, Y) = G2(X, Y)` on `grid^2`.
pub fn check_scalings_equal<T: Endpoint>(
    g1: &ScalingFunction<T>,
    g2: &ScalingFunction<T>,
    grid: &Grid<T>,
    options: &CheckOptions,
) -> Result<CheckReport, CheckError> {
    let points = grid.points();
    let statement = Statement {
        lhs: format!("{}(X,Y)", g1.name()),
        rhs: format!("{}(X,Y)", g2.name()),
    };
    let outcome = sweep(points.len(), 2, options, |idx| {
        let (x, y) = (&points[idx[0]], &points[idx[1]]);
        let at = || format!("X={x}, Y={y}");
        let lhs = closed(g1.apply(x, y), g1.name(), at)?;
        let rhs = closed(g2.apply(x, y), g2.name(), at)?;
        Ok((lhs, rhs))
    })?;
    Ok(build_report(LAW_POINTWISE_EQUAL, statement, grid, options, outcome, |fail| Counterexample {
        lambda: None,
        xs: fail.index.iter().map(|&i| IntervalText::of(&points[i])).collect(),
        lhs: IntervalText::of(&fail.lhs),
        rhs: IntervalText::of(&fail.rhs),
    }))
}

/// Idempotency from homogeneity: if `F(A,..,A) = A`, `G_A` is a bijection,
/// and `F` is `G`-homogeneous, then `F` is idempotent.
///
/// All four checks always run. Premises that fail make the status
/// `NotApplicable`; premises that pass with a failing conclusion are a
/// `Violation`.
pub fn run_idempotency_transfer<T: Endpoint>(
    f: &IvFunction<T>,
    g: &ScalingFunction<T>,
    anchor: &Interval<T>,
    grid: &Grid<T>,
    options: &CheckOptions,
) -> Result<PipelineReport, CheckError> {
    let identity = OrderIso::identity();
    let stages = vec![
        Stage {
            name: LAW_FIXED_POINT.into(),
            role: StageRole::Premise,
            report: check_fixed_point(f, anchor, grid, options)?,
        },
        Stage {
            name: LAW_SECTION_BIJECTIVE.into(),
            role: StageRole::Premise,
            report: check_section_bijective(g, anchor, grid, options)?,
        },
        Stage {
            name: LAW_HOMOGENEITY.into(),
            role: StageRole::Premise,
            report: check_homogeneity(f, g, &identity, grid, options)?,
        },
        Stage {
            name: LAW_IDEMPOTENCY.into(),
            role: StageRole::Conclusion,
            report: check_idempotency(f, grid, options)?,
        },
    ];
    Ok(PipelineReport::from_stages(PIPELINE_IDEMPOTENCY, stages))
}

pub const STAGE_P_HOMOGENEITY: &str = "P-homogeneity";
pub const STAGE_DUAL_HOMOGENEITY: &str = "P_NS-homogeneity-of-dual";

/// Duality transfer: if `F` is `P`-homogeneous then `F_NS` is
/// `P_NS`-homogeneous. The dual and `P_NS` are both built by composition
/// with the standard negation.
pub fn run_dual_transfer<T: Endpoint>(
    f: &IvFunction<T>,
    grid: &Grid<T>,
    options: &CheckOptions,
) -> Result<PipelineReport, CheckError> {
    let identity = OrderIso::identity();
    let p = registry::product_scaling();
    let premise = check_homogeneity(f, &p, &identity, grid, options)?;
    let conclusion = check_homogeneity(&dual_ns(f), &dual_scaling_ns(&p), &identity, grid, options)?;
    let stages = vec![
        Stage {
            name: STAGE_P_HOMOGENEITY.into(),
            role: StageRole::Premise,
            report: premise,
        },
        Stage {
            name: STAGE_DUAL_HOMOGENEITY.into(),
            role: StageRole::Conclusion,
            report: conclusion,
        },
    ];
    Ok(PipelineReport::from_stages(PIPELINE_DUAL, stages))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endpoint::Rational;
    use crate::report::PipelineStatus;

    fn opts() -> CheckOptions {
        CheckOptions::default()
    }

    fn grid(m: u32) -> Grid<Rational> {
        Grid::new(m).unwrap()
    }

    fn text(s: &str) -> IntervalText {
        let x: Interval<Rational> = s.parse().unwrap();
        IntervalText::of(&x)
    }

    #[test]
    fn min_is_p_homogeneous() {
        let r = check_homogeneity(
            &registry::min(2),
            &registry::product_scaling(),
            &OrderIso::identity(),
            &grid(4),
            &opts(),
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.evaluations, 15u64.pow(3));
        assert_eq!(r.max_deviation, "0");
        assert_eq!(r.statement.to_string(), "min(P(Λ,X1),P(Λ,X2)) = P(identity(Λ),min(X1,X2))");
    }

    #[test]
    fn product_fails_p_homogeneity() {
        let r = check_homogeneity(
            &registry::product(2),
            &registry::product_scaling(),
            &OrderIso::identity(),
            &grid(2),
            &opts(),
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.evaluations, 216);
        let cx = r.counterexample.unwrap();
        assert_eq!(cx.lambda, Some(text("[0,1/2]")));
        assert_eq!(cx.xs, vec![text("[0,1/2]"), text("[0,1/2]")]);
        assert_eq!(cx.lhs, text("[0,1/16]"));
        assert_eq!(cx.rhs, text("[0,1/8]"));
    }

    #[test]
    fn idempotency_examples() {
        assert!(check_idempotency(&registry::min(2), &grid(8), &opts()).unwrap().passed());
        assert!(check_idempotency(&registry::mean(2), &grid(4), &opts()).unwrap().passed());
        let r = check_idempotency(&registry::product(2), &grid(2), &opts()).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        let cx = r.counterexample.unwrap();
        assert_eq!(cx.xs, vec![text("[0,1/2]")]);
        assert_eq!(cx.lhs, text("[0,1/4]"));
        assert_eq!(r.max_deviation, "1/4");
    }

    #[test]
    fn section_examples() {
        let p = registry::product_scaling::<Rational>();
        for m in 1..=5 {
            let r = check_section_bijective(&p, &Interval::one(), &grid(m), &opts()).unwrap();
            assert!(r.passed());
            assert!(r.notes[0].starts_with("grid-certified"));
        }
        let r = check_section_bijective(&p, &Interval::zero(), &grid(2), &opts()).unwrap();
        assert!(!r.passed());
        assert!(r.notes.iter().any(|n| n.contains("not injective")));
        let half = "[1/2,1/2]".parse().unwrap();
        let r = check_section_bijective(&registry::projection_scaling(), &half, &grid(2), &opts()).unwrap();
        assert!(!r.passed());
        assert_eq!(r.counterexample.unwrap().lhs, text("[1/2,1/2]"));
    }

    #[test]
    fn section_surjectivity_failure() {
        // Injective but leaves the grid: X -> X·[1/2,1/2].
        let half = "[1/2,1/2]".parse().unwrap();
        let r = check_section_bijective(&registry::product_scaling(), &half, &grid(2), &opts()).unwrap();
        assert!(!r.passed());
        assert!(r.notes.iter().any(|n| n.contains("not surjective")));
        let cx = r.counterexample.unwrap();
        assert_eq!(cx.xs, vec![text("[0,1]")]);
    }

    #[test]
    fn fixed_point() {
        let r = check_fixed_point(&registry::product(2), &Interval::one(), &grid(2), &opts()).unwrap();
        assert!(r.passed());
        let half = "[1/2,1/2]".parse().unwrap();
        let r = check_fixed_point(&registry::product(2), &half, &grid(2), &opts()).unwrap();
        assert!(!r.passed());
        assert_eq!(r.counterexample.unwrap().lhs, text("[1/4,1/4]"));
    }

    #[test]
    fn idempotency_transfer_examples() {
        let p = registry::product_scaling::<Rational>();
        let r = run_idempotency_transfer(&registry::min(2), &p, &Interval::one(), &grid(4), &opts()).unwrap();
        assert_eq!(r.status, PipelineStatus::Confirmed);
        assert_eq!(r.verdict(), Verdict::Pass);

        let r = run_idempotency_transfer(&registry::product(2), &p, &Interval::one(), &grid(2), &opts()).unwrap();
        assert_eq!(r.status, PipelineStatus::NotApplicable);
        let verdicts: Vec<_> = r.stages.iter().map(|s| s.report.verdict).collect();
        assert_eq!(verdicts, [Verdict::Pass, Verdict::Pass, Verdict::Fail, Verdict::Fail]);

        let half = "[1/2,1/2]".parse().unwrap();
        let r = run_idempotency_transfer(&registry::min(2), &registry::projection_scaling(), &half, &grid(2), &opts())
            .unwrap();
        assert_eq!(r.status, PipelineStatus::NotApplicable);
        assert!(!r.stage(LAW_SECTION_BIJECTIVE).unwrap().report.passed());
        assert!(r.stage(LAW_IDEMPOTENCY).unwrap().report.passed());
    }

    #[test]
    fn violation_is_flagged() {
        // A bogus "homogeneity" premise cannot be forged through the public
        // API, so exercise the status logic directly.
        let pass = check_idempotency(&registry::min(2), &grid(1), &opts()).unwrap();
        let fail = check_idempotency(&registry::product(2), &grid(2), &opts()).unwrap();
        let stages = vec![
            Stage { name: "a".into(), role: StageRole::Premise, report: pass },
            Stage { name: "b".into(), role: StageRole::Conclusion, report: fail },
        ];
        let r = PipelineReport::from_stages("x", stages);
        assert_eq!(r.status, PipelineStatus::Violation);
        assert_eq!(r.verdict(), Verdict::Fail);
    }

    #[test]
    fn dual_transfer_examples() {
        for f in [registry::min(2), registry::mean(2)] {
            let r = run_dual_transfer(&f, &grid(3), &opts()).unwrap();
            assert_eq!(r.status, PipelineStatus::Confirmed, "{}", f.name());
        }
        let r = run_dual_transfer(&registry::product(2), &grid(2), &opts()).unwrap();
        assert_eq!(r.status, PipelineStatus::NotApplicable);
        assert!(!r.stages[0].report.passed());
    }

    #[test]
    fn order_iso_certificates() {
        let g = Grid::<f64>::new(6).unwrap();
        let sq = registry::square_iso::<f64>().unwrap();
        let r = check_order_iso(&sq, &g, &opts()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.notes.iter().any(|n| n == "order: componentwise"));
        assert!(check_order_iso(&OrderIso::<Rational>::identity(), &grid(4), &opts()).unwrap().passed());

        let flip = OrderIso::<Rational>::new("flip", Interval::complement, Interval::complement);
        let r = check_order_iso(&flip, &grid(2), &opts()).unwrap();
        assert!(!r.passed());
        assert!(r.notes.iter().any(|n| n.contains("bounds")));

        let squash = OrderIso::<Rational>::new("squash", |_| Interval::zero(), Interval::clone);
        assert!(!check_order_iso(&squash, &grid(2), &opts()).unwrap().passed());
    }

    #[test]
    fn pointwise_equality_and_arity() {
        let r = check_pointwise_equal(&dual_ns(&registry::min(2)), &registry::max(2), &grid(3), &opts()).unwrap();
        assert!(r.passed());
        assert!(matches!(
            check_pointwise_equal(&registry::min(2), &registry::max(3), &grid(3), &opts()),
            Err(CheckError::Arity(_))
        ));
        let r = check_scalings_equal(&registry::product_scaling(), &registry::prob_sum_scaling(), &grid(2), &opts())
            .unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn closure_violation_detected() {
        let escape = IvFunction::<Rational>::new("escape", 1, |xs| {
            Interval::from_endpoints(xs[0].hi().clone(), xs[0].lo().clone())
        });
        let err = check_idempotency(&escape, &grid(2), &opts()).unwrap_err();
        match err {
            CheckError::ClosureViolation { subject, inputs, output } => {
                assert_eq!(subject, "escape");
                assert_eq!(inputs, "X=[0,1/2]");
                assert_eq!(output, "[1/2,0]");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn budget_refusal() {
        let err = check_homogeneity(
            &registry::min(3),
            &registry::product_scaling(),
            &OrderIso::identity(),
            &grid(8),
            &opts().with_budget(1000),
        )
        .unwrap_err();
        assert_eq!(err, CheckError::BudgetExceeded { tuples: 45u128.pow(4), budget: 1000 });
    }
}
