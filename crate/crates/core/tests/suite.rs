use skewnj::verifiers::{run_suite, suite_passed, Report, SuiteConfig, SuiteSummary, Verdict};
use skewnj::{NormedSpace, SkewParams};

fn run(space: &NormedSpace) -> Vec<Report> {
    run_suite(space, &SuiteConfig::default().with_seed(42)).unwrap()
}

fn failures(reports: &[Report]) -> Vec<String> {
    reports
        .iter()
        .filter(|r| !r.ok())
        .map(|r| {
            format!(
                "{} {:?} lhs={} rhs={:?}",
                r.check_id, r.params, r.lhs, r.rhs
            )
        })
        .collect()
}

#[test]
fn plane_catalog_passes() {
    for s in [
        NormedSpace::lp(2, 2.0).unwrap(),
        NormedSpace::lp(2, 1.0).unwrap(),
        NormedSpace::lp(2, f64::INFINITY).unwrap(),
        NormedSpace::lp(2, 3.0).unwrap(),
        NormedSpace::l1_linf(),
        NormedSpace::polyhedral(&[vec![1.0, 0.0], vec![0.5, 0.9], vec![-0.4, 1.0]]).unwrap(),
    ] {
        let reports = run(&s);
        assert!(
            suite_passed(&reports),
            "{}: {:?}",
            s.name(),
            failures(&reports)
        );
        for r in &reports {
            assert_eq!(r.passed, r.recompute());
        }
    }
}

#[test]
fn higher_dimensional_space_passes() {
    let s = NormedSpace::lp(3, 1.0).unwrap();
    let reports = run(&s);
    assert!(suite_passed(&reports), "{:?}", failures(&reports));
}

#[test]
fn ordering_is_canonical() {
    let reports = run(&NormedSpace::l1_linf());
    for pair in reports.windows(2) {
        assert!(pair[0].check_id <= pair[1].check_id);
    }
    let ids: Vec<&str> = reports.iter().map(|r| r.check_id.as_str()).collect();
    for id in [
        "bounds",
        "symmetric_lower",
        "james_bounds",
        "global_sandwich",
        "equivalence_at_two",
        "modulus_formula",
        "modulus_upper",
        "midpoint_convexity",
        "uns_margin",
        "uns_james",
        "ns_cell",
        "ns_verdict",
        "coherence_reduction",
        "coherence_lyj",
        "printed_l1_linf",
    ] {
        assert!(ids.contains(&id), "missing {id}");
    }
    let bounds: Vec<_> = reports
        .iter()
        .filter(|r| r.check_id == "bounds")
        .map(|r| r.params.unwrap())
        .collect();
    assert_eq!(bounds, skewnj::params::default_grid());
}

#[test]
fn identical_seeds_give_identical_reports() {
    let s = NormedSpace::lp(2, 3.0).unwrap();
    let a = serde_json::to_string(&run(&s)).unwrap();
    let b = serde_json::to_string(&run(&s)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn l1_linf_reference_mismatch_is_informational() {
    let reports = run(&NormedSpace::l1_linf());
    let target = SkewParams::new(2.0, 1.0, 2.0).unwrap();
    let r = reports
        .iter()
        .find(|r| r.check_id == "printed_l1_linf" && r.params == Some(target))
        .unwrap();
    assert!(r.informational && !r.passed);
    assert!((r.lhs - 0.9).abs() < 1e-12);
    assert_eq!(r.rhs, skewnj::verifiers::Rhs::Value(1.3));
    assert!(suite_passed(&reports));
}

#[test]
fn square_ball_classifies_square_like() {
    let reports = run(&NormedSpace::lp(2, 1.0).unwrap());
    let verdicts: Vec<_> = reports
        .iter()
        .filter(|r| r.check_id == "uns_margin")
        .map(|r| r.verdict)
        .collect();
    assert_eq!(verdicts.len(), 9);
    assert!(verdicts.iter().all(|v| *v == Some(Verdict::SquareLike)));
    let ns = reports.iter().find(|r| r.check_id == "ns_verdict").unwrap();
    assert_eq!(ns.verdict, Some(Verdict::NotCertified));
    let summary = SuiteSummary::of(&reports);
    assert_eq!(summary.failed, 0);
    assert_eq!(summary.total, reports.len());
}

#[test]
fn rejects_small_eps_grid() {
    let cfg = SuiteConfig {
        eps_grid_size: Some(8),
        ..SuiteConfig::default()
    };
    assert!(run_suite(&NormedSpace::lp(2, 2.0).unwrap(), &cfg).is_err());
    let cfg = SuiteConfig {
        grid: vec![],
        ..SuiteConfig::default()
    };
    assert!(run_suite(&NormedSpace::lp(2, 2.0).unwrap(), &cfg).is_err());
}
