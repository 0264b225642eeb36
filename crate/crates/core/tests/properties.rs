mod common;

use std::cmp::Ordering;

use ivhom_core::dsl::{compile_function, compile_scaling, parse_expr};
use ivhom_core::registry::{self, STANDARD_FUNCTIONS};
use ivhom_core::{
    check_homogeneity, check_idempotency, check_pointwise_equal, check_scalings_equal, compare, dual_ns,
    run_dual_transfer, run_idempotency_transfer, CheckOptions, CheckReport, Endpoint, Grid, Interval, IntervalOrder,
    OrderIso, PipelineReport, PipelineStatus, Rational,
};
use proptest::prelude::*;

fn interval() -> impl Strategy<Value = Interval<Rational>> {
    (1u64..=12)
        .prop_flat_map(|m| (Just(m), 0..=m, 0..=m))
        .prop_map(|(m, a, b)| {
            let (lo, hi) = (a.min(b), a.max(b));
            Interval::make(Rational::ratio(lo, m), Rational::ratio(hi, m)).unwrap()
        })
}

fn source(depth: u32) -> BoxedStrategy<String> {
    let leaf = prop_oneof![
        Just("X1".to_string()),
        Just("X2".to_string()),
        Just("[1/3,1/2]".to_string()),
        Just("proj(2)".to_string()),
    ];
    leaf.prop_recursive(depth, 24, 3, |inner| {
        prop_oneof![
            (prop::sample::select(vec!["min", "max", "mul", "psum", "mean"]), prop::collection::vec(inner.clone(), 1..3))
                .prop_map(|(op, args)| format!("{op}({})", args.join(","))),
            inner.clone().prop_map(|e| format!("neg({e})")),
            (inner, 1u32..3).prop_map(|(e, k)| format!("pow({e},{k})")),
        ]
    })
    .boxed()
}

proptest! {
    #[test]
    fn product_is_closed_commutative_associative(x in interval(), y in interval(), z in interval()) {
        let xy = x.product(&y);
        prop_assert!(xy.is_valid());
        prop_assert_eq!(&xy, &y.product(&x));
        prop_assert_eq!(xy.product(&z), x.product(&y.product(&z)));
    }

    #[test]
    fn negation_is_order_reversing_involution(x in interval(), y in interval()) {
        prop_assert_eq!(x.complement().complement(), x.clone());
        if let Some(o) = compare(IntervalOrder::Componentwise, &x, &y) {
            prop_assert_eq!(compare(IntervalOrder::Componentwise, &x.complement(), &y.complement()), Some(o.reverse()));
        }
    }

    #[test]
    fn de_morgan_and_absorption(x in interval(), y in interval()) {
        prop_assert_eq!(x.prob_sum(&y), x.complement().product(&y.complement()).complement());
        let ox = (x.lo().clone(), x.hi().clone());
        let oy = (y.lo().clone(), y.hi().clone());
        let expected = common::psum(&ox, &oy);
        let got = x.prob_sum(&y);
        prop_assert_eq!((got.lo().clone(), got.hi().clone()), expected);
        prop_assert_eq!(x.join(&x.meet(&y)), x.clone());
        prop_assert_eq!(x.meet(&x.join(&y)), x.clone());
    }

    #[test]
    fn total_orders_refine_componentwise(x in interval(), y in interval()) {
        for order in [IntervalOrder::LexLo, IntervalOrder::LexHi, IntervalOrder::MidpointWidth] {
            let o = compare(order, &x, &y);
            prop_assert!(o.is_some());
            prop_assert_eq!(o == Some(Ordering::Equal), x == y);
            prop_assert_eq!(compare(order, &y, &x), o.map(Ordering::reverse));
            if let Some(c) = compare(IntervalOrder::Componentwise, &x, &y) {
                prop_assert_eq!(o, Some(c));
            }
        }
    }

    #[test]
    fn float_and_exact_products_agree(x in interval(), y in interval()) {
        let to_f = |v: &Interval<Rational>| {
            Interval::make(v.lo().to_f64(), v.hi().to_f64()).unwrap()
        };
        let exact = x.product(&y);
        let float = to_f(&x).product(&to_f(&y));
        prop_assert!(float.approx_eq(&to_f(&exact), 1e-15));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Every compiled function is pi2-homogeneous with zero deviation.
    #[test]
    fn projection_scaling_is_universal_for_compiled(src in source(3)) {
        let expr = parse_expr(&src, 2).unwrap();
        let f = compile_function::<Rational>(&expr, 2, src.clone()).unwrap();
        let grid = Grid::new(2).unwrap();
        let r = check_homogeneity(&f, &registry::projection_scaling(), &OrderIso::identity(), &grid, &CheckOptions::default()).unwrap();
        prop_assert!(r.passed());
        prop_assert_eq!(r.max_deviation, "0");
    }

    #[test]
    fn dual_is_involution_for_compiled(src in source(3)) {
        let f = compile_function::<Rational>(&parse_expr(&src, 2).unwrap(), 2, "f").unwrap();
        let grid = Grid::new(3).unwrap();
        let r = check_pointwise_equal(&dual_ns(&dual_ns(&f)), &f, &grid, &CheckOptions::default()).unwrap();
        prop_assert!(r.passed());
    }

    #[test]
    fn parse_display_round_trip(src in source(4)) {
        let expr = parse_expr(&src, 2).unwrap();
        prop_assert_eq!(parse_expr(&expr.to_string(), 2).unwrap(), expr);
    }
}

#[test]
fn registry_outputs_are_closed() {
    let grid = Grid::<Rational>::new(6).unwrap();
    for (name, arity) in STANDARD_FUNCTIONS {
        let f = registry::function::<Rational>(name, arity).unwrap();
        // Idempotency sweeps validate every output against the interval invariant.
        assert!(check_idempotency(&f, &grid, &CheckOptions::default()).is_ok(), "{name}");
        let r = check_pointwise_equal(&f, &f, &grid, &CheckOptions::default()).unwrap();
        assert!(r.passed());
    }
}

#[test]
fn failures_persist_on_refined_grids() {
    let run = |m| {
        check_homogeneity(
            &registry::product::<Rational>(2),
            &registry::product_scaling(),
            &OrderIso::identity(),
            &Grid::new(m).unwrap(),
            &CheckOptions::default(),
        )
        .unwrap()
    };
    let coarse = run(2);
    let fine = run(4);
    assert!(!coarse.passed() && !fine.passed());
    // The m=2 failing tuple also lives on the m=4 grid and still fails there.
    let cx = coarse.counterexample.unwrap();
    let parse = |t: &ivhom_core::IntervalText| t.to_interval::<Rational>().unwrap();
    let (l, x, y) = (parse(cx.lambda.as_ref().unwrap()), parse(&cx.xs[0]), parse(&cx.xs[1]));
    let fine_points = Grid::<Rational>::new(4).unwrap();
    for v in [&l, &x, &y] {
        assert!(fine_points.points().contains(v));
    }
    let f = registry::product::<Rational>(2);
    let lhs = f.eval(&[l.product(&x), l.product(&y)]);
    let rhs = l.product(&f.eval(&[x, y]));
    assert_ne!(lhs, rhs);
}

#[test]
fn pipelines_never_report_violations() {
    let grid = Grid::<Rational>::new(3).unwrap();
    let p = registry::product_scaling();
    for (name, arity) in STANDARD_FUNCTIONS {
        let f = registry::function::<Rational>(name, arity).unwrap();
        let idem = run_idempotency_transfer(&f, &p, &Interval::one(), &grid, &CheckOptions::default()).unwrap();
        assert_ne!(idem.status, PipelineStatus::Violation, "{name}");
        let dual = run_dual_transfer(&f, &grid, &CheckOptions::default()).unwrap();
        assert_ne!(dual.status, PipelineStatus::Violation, "{name}");
    }
}

#[test]
fn expected_homogeneity_verdicts() {
    // Verdicts of each registry function against P, exact at m=3.
    let expected = [
        ("min", true),
        ("max", true),
        ("product", false),
        ("mean", true),
        ("proj_1", true),
        ("proj_2", true),
        ("pow_2", false),
    ];
    let grid = Grid::<Rational>::new(3).unwrap();
    for ((name, arity), (ename, passes)) in STANDARD_FUNCTIONS.into_iter().zip(expected) {
        assert_eq!(name, ename);
        let r = check_homogeneity(
            &registry::function::<Rational>(name, arity).unwrap(),
            &registry::product_scaling(),
            &OrderIso::identity(),
            &grid,
            &CheckOptions::default(),
        )
        .unwrap();
        assert_eq!(r.passed(), passes, "{name}");
    }
}

#[test]
fn float_and_exact_verdicts_agree() {
    let ge = Grid::<Rational>::new(4).unwrap();
    let gf = Grid::<f64>::new(4).unwrap();
    for (name, arity) in STANDARD_FUNCTIONS {
        let re = check_homogeneity(
            &registry::function::<Rational>(name, arity).unwrap(),
            &registry::product_scaling(),
            &OrderIso::identity(),
            &ge,
            &CheckOptions::default(),
        )
        .unwrap();
        let rf = check_homogeneity(
            &registry::function::<f64>(name, arity).unwrap(),
            &registry::product_scaling(),
            &OrderIso::identity(),
            &gf,
            &CheckOptions::default(),
        )
        .unwrap();
        assert_eq!(re.verdict, rf.verdict, "{name}");
        assert_eq!(re.evaluations, rf.evaluations);
    }
}

#[test]
fn golden_sources_match_registry() {
    let grid = Grid::<Rational>::new(4).unwrap();
    let opts = CheckOptions::default();
    let cases = [
        ("min(X1,X2)", "min", 2),
        ("max(X1,X2)", "max", 2),
        ("mul(X1,X2)", "product", 2),
        ("mean(X1,X2)", "mean", 2),
        ("proj(1)", "proj_1", 2),
        ("X2", "proj_2", 2),
        ("pow(X1,2)", "pow_2", 1),
        ("mul(X1,X1)", "pow_2", 1),
        ("neg(min(neg(X1),neg(X2)))", "max", 2),
        ("mean(X1,X2,X3)", "mean", 3),
    ];
    for (src, name, arity) in cases {
        let compiled = compile_function::<Rational>(&parse_expr(src, arity).unwrap(), arity, src).unwrap();
        let builtin = registry::function::<Rational>(name, arity).unwrap();
        let grid = if arity == 3 { Grid::new(2).unwrap() } else { grid.clone() };
        assert!(check_pointwise_equal(&compiled, &builtin, &grid, &opts).unwrap().passed(), "{src}");
    }
    for (src, name) in [("mul(L,X1)", "P"), ("psum(L,X1)", "P_NS"), ("X1", "pi2"), ("neg(mul(neg(L),neg(X1)))", "P_NS")] {
        let compiled = compile_scaling::<Rational>(&parse_expr(src, 1).unwrap(), src).unwrap();
        let builtin = registry::scaling::<Rational>(name).unwrap();
        assert!(check_scalings_equal(&compiled, &builtin, &grid, &opts).unwrap().passed(), "{src}");
    }
}

#[test]
fn compiled_dsl_scaling_reproduces_example() {
    // min over DSL-defined P is P-homogeneous, same as the registry route.
    let grid = Grid::<Rational>::new(4).unwrap();
    let g = compile_scaling::<Rational>(&parse_expr("mul(L,X1)", 1).unwrap(), "mulLX").unwrap();
    let f = compile_function::<Rational>(&parse_expr("min(X1,X2)", 2).unwrap(), 2, "minX").unwrap();
    let r = check_homogeneity(&f, &g, &OrderIso::identity(), &grid, &CheckOptions::default()).unwrap();
    assert!(r.passed());
}

#[test]
fn reports_round_trip_through_json() {
    let grid = Grid::<Rational>::new(2).unwrap();
    let fail = check_homogeneity(
        &registry::product(2),
        &registry::product_scaling(),
        &OrderIso::identity(),
        &grid,
        &CheckOptions::default(),
    )
    .unwrap();
    let pass = check_homogeneity(
        &registry::power::<f64>(2),
        &registry::product_scaling(),
        &registry::square_iso().unwrap(),
        &Grid::new(3).unwrap(),
        &CheckOptions::default(),
    )
    .unwrap();
    for r in [fail, pass] {
        let json = serde_json::to_string(&r).unwrap();
        let back: CheckReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
    let pipeline = run_dual_transfer(&registry::min::<Rational>(2), &grid, &CheckOptions::default()).unwrap();
    let json = serde_json::to_string(&pipeline).unwrap();
    assert_eq!(serde_json::from_str::<PipelineReport>(&json).unwrap(), pipeline);
}

#[test]
fn report_json_schema() {
    let grid = Grid::<Rational>::new(2).unwrap();
    let r = check_homogeneity(
        &registry::product(2),
        &registry::product_scaling(),
        &OrderIso::identity(),
        &grid,
        &CheckOptions::default(),
    )
    .unwrap();
    let value = serde_json::to_value(&r).unwrap();
    assert_eq!(value["law"], "homogeneity");
    assert_eq!(value["verdict"], "fail");
    assert_eq!(value["evaluations"], 216);
    assert_eq!(value["resolution"], 2);
    assert_eq!(value["mode"]["kind"], "exact");
    assert_eq!(value["counterexample"]["lambda"], serde_json::json!(["0", "1/2"]));
    assert_eq!(value["counterexample"]["xs"], serde_json::json!([["0", "1/2"], ["0", "1/2"]]));
    assert_eq!(value["max_deviation"], "1/4");

    let f = check_idempotency(&registry::min::<f64>(2), &Grid::new(2).unwrap(), &CheckOptions::default()).unwrap();
    let value = serde_json::to_value(&f).unwrap();
    assert_eq!(value["counterexample"], serde_json::Value::Null);
    assert_eq!(value["mode"], serde_json::json!({"kind": "float", "epsilon": 1e-9}));
}
