use surreal_core::nested::ntrank;
use surreal_tools::bench::universe;
use surreal_tools::bench::{gen_random, run_suite, GenSpec, UnknownSuite, SUITES};

#[test]
fn named_suites_pass() {
    let spec = GenSpec::default();
    for (name, cases) in [("leibniz", 1000), ("hfield-positivity", 1000)] {
        let r = run_suite(name, cases, &spec).unwrap();
        assert_eq!(r.passed, cases, "{r}");
    }
    let r = run_suite("rank-monotone", 500, &spec.with_tails(false)).unwrap();
    assert_eq!(r.passed, 500, "{r}");
}

#[test]
fn every_registered_suite_runs() {
    let spec = GenSpec::default().with_seed(11);
    for (name, _) in SUITES {
        let r = run_suite(name, 20, &spec).unwrap();
        assert!(r.ok(), "{r}");
    }
}

#[test]
fn unknown_suite() {
    let e = run_suite("nope", 1, &GenSpec::default()).unwrap_err();
    assert_eq!(e, UnknownSuite("nope".into()));
}

#[test]
fn reports_replay() {
    let spec = GenSpec::default().with_seed(99).with_tails(true);
    assert_eq!(
        run_suite("monotone", 50, &spec).unwrap(),
        run_suite("monotone", 50, &spec).unwrap()
    );
}

#[test]
fn size_budget_bounds_terms() {
    for seed in 0..200 {
        for size in 1..=4 {
            let x = gen_random(&GenSpec {
                size,
                seed,
                ..GenSpec::default()
            });
            assert!(x.terms().len() + x.tails().len() <= size, "{x}");
        }
    }
}

#[test]
fn tail_free_specs_are_rankable() {
    for seed in 0..200 {
        let x = gen_random(&GenSpec::default().with_seed(seed).with_tails(false));
        assert!(ntrank(&x).is_ok(), "{x}");
    }
}

#[test]
fn universe_rank_zero_classification() {
    let u = universe::enumerate(10_000);
    let r = universe::check_rank_zero(&u);
    assert!(r.ok(), "{:?}", r.failures);
}

#[test]
fn nested_truncation_is_a_partial_order_on_the_universe() {
    let u = universe::enumerate(10_000);
    let sample: Vec<_> = u.iter().step_by(20).cloned().collect();
    let r = universe::check_partial_order(&sample);
    assert!(r.ok(), "{:?}", r.failures);
}

#[test]
fn nested_truncation_classes_are_convex() {
    let u = universe::enumerate(10_000);
    let sample: Vec<_> = u.iter().step_by(8).cloned().collect();
    let r = universe::check_convexity(&sample);
    assert!(r.ok(), "{:?}", r.failures);
}
