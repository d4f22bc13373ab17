//! Acceptance battery. Runs every criterion, prints one PASS/FAIL line each
//! and exits non-zero if any criterion fails.

use std::f64::consts::{PI, SQRT_2};
use std::io::Write;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use skewnj::closed_forms::{bounds_general, power_mean_check};
use skewnj::estimators::{estimate_james, estimate_skew_nj, skew_nj_objective};
use skewnj::params::default_grid;
use skewnj::verifiers::{
    check_convexity_lemma27, check_delta_formula_thm33, check_james_thm38, check_lower_thm28,
    check_normal_structure_thm42, check_sandwich_thm26, classify_uniform_nonsquare, run_suite,
    suite_passed, Report, Rhs, SuiteConfig, Verdict, VerifyOptions,
};
use skewnj::{EstimatorOptions, NormedSpace, SkewParams};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn sp(xi: f64, nu: f64, p: f64) -> SkewParams {
    SkewParams::new(xi, nu, p).unwrap()
}

/// Symmetric polygons with 6 to 12 vertices, reproducible from `seed`.
fn polygon_battery(count: usize, seed: u64) -> Vec<NormedSpace> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let k = rng.random_range(3..=6);
        let pts: Vec<Vec<f64>> = (0..k)
            .map(|_| {
                let a = rng.random_range(0.0..PI);
                let r = rng.random_range(0.5..1.5);
                vec![r * a.cos(), r * a.sin()]
            })
            .collect();
        let Ok(space) = NormedSpace::polyhedral(&pts) else {
            continue;
        };
        let n = space.extreme_points().map_or(0, |v| v.len());
        if (6..=12).contains(&n) {
            let name = format!("polygon-{}", out.len());
            out.push(space.with_name(name));
        }
    }
    out
}

fn closed_form_square(q: &SkewParams) -> f64 {
    let (xi, nu, p) = (q.xi(), q.nu(), q.p());
    (xi + nu).powf(p) / (2f64.powf(p - 2.0) * (xi.powf(p) + nu.powf(p)))
}

fn closed_form_reproduction() -> Outcome {
    let opts = EstimatorOptions::default();
    let mut worst = 0.0f64;
    let mut slowest = Duration::ZERO;
    let mut all_certified = true;
    for space in [
        NormedSpace::lp(2, 1.0).unwrap(),
        NormedSpace::lp(2, f64::INFINITY).unwrap(),
    ] {
        for q in default_grid() {
            let t = Instant::now();
            let est = estimate_skew_nj(&space, &q, &opts).unwrap();
            slowest = slowest.max(t.elapsed());
            worst = worst.max((est.value - closed_form_square(&q)).abs());
            all_certified &= est.certified;
        }
    }
    outcome(
        worst <= 1e-9 && slowest < Duration::from_millis(100) && all_certified,
        format!("max error {worst:e}, slowest cell {slowest:?}, all certified {all_certified}"),
    )
}

fn euclidean_identity() -> Outcome {
    let space = NormedSpace::lp(2, 2.0).unwrap();
    let opts = EstimatorOptions::default();
    let weights = [0.5, 1.0, 2.0, 3.0, 7.0];
    let pairs = space.sample_unit_sphere(20_000, 11).unwrap().points;
    let mut worst = 0.0f64;
    let mut worst_sd = 0.0f64;
    for &xi in &weights {
        for &nu in &weights {
            let q = sp(xi, nu, 2.0);
            worst = worst.max((estimate_skew_nj(&space, &q, &opts).unwrap().value - 1.0).abs());
            let vals: Vec<f64> = pairs
                .chunks(2)
                .map(|c| skew_nj_objective(&space, &q, &c[0], &c[1]).unwrap())
                .collect();
            let mean = vals.iter().sum::<f64>() / vals.len() as f64;
            let var =
                vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (vals.len() - 1) as f64;
            worst_sd = worst_sd.max(var.sqrt());
        }
    }
    outcome(
        worst <= 1e-6 && worst_sd <= 1e-10,
        format!("max |value - 1| {worst:e}, max sample sd {worst_sd:e} over 10^4 pairs per cell"),
    )
}

fn universal_bounds(battery: &[NormedSpace]) -> Outcome {
    let opts = EstimatorOptions::default();
    let mut violations = 0;
    let mut uncertified = 0;
    for space in battery {
        for q in default_grid() {
            let est = estimate_skew_nj(space, &q, &opts).unwrap();
            uncertified += usize::from(!est.certified);
            if !bounds_general(&q).contains(est.value, 1e-9) {
                violations += 1;
            }
        }
    }
    outcome(
        violations == 0 && uncertified == 0,
        format!(
            "{} spaces x 9 cells, {violations} violations, {uncertified} uncertified",
            battery.len()
        ),
    )
}

fn inequality_batteries(battery: &[NormedSpace]) -> Outcome {
    let opts = VerifyOptions::default();
    let t = Instant::now();
    let mut failed: Vec<String> = Vec::new();
    let mut checks = 0;
    for space in battery {
        for q in default_grid() {
            let mut reports = vec![
                check_lower_thm28(space, &q, &opts).unwrap(),
                check_james_thm38(space, &q, &opts).unwrap(),
            ];
            if q.p() > 1.0 {
                reports.push(check_sandwich_thm26(space, &q, &opts).unwrap());
            }
            for r in reports {
                checks += 1;
                if !r.passed {
                    failed.push(format!("{} {} {}", r.check_id, space.name(), q));
                }
            }
        }
    }
    let elapsed = t.elapsed();
    outcome(
        failed.is_empty() && elapsed < Duration::from_secs(60),
        format!(
            "{checks} checks, {} failed, {elapsed:.1?} total{}",
            failed.len(),
            failed
                .first()
                .map(|f| format!(", first failure {f}"))
                .unwrap_or_default()
        ),
    )
}

fn sweep_rhs(r: &Report) -> f64 {
    match r.rhs {
        Rhs::Value(v) => v,
        Rhs::Bounds(_) => f64::NAN,
    }
}

fn modulus_formula_lr3() -> Outcome {
    let space = NormedSpace::lp(2, 3.0).unwrap();
    let r = check_delta_formula_thm33(&space, &sp(1.0, 1.0, 1.0), 256, &VerifyOptions::default())
        .unwrap();
    let rhs = sweep_rhs(&r);
    let expect = 2f64.powf(1.0 - 1.0 / 3.0);
    outcome(
        r.passed && (rhs - expect).abs() <= 1e-2,
        format!("sweep {rhs}, direct {}, reference {expect}", r.lhs),
    )
}

fn modulus_formula_l2_p1() -> Outcome {
    let space = NormedSpace::lp(2, 2.0).unwrap();
    let r = check_delta_formula_thm33(&space, &sp(1.0, 1.0, 1.0), 256, &VerifyOptions::default())
        .unwrap();
    let rhs = sweep_rhs(&r);
    outcome(
        (r.lhs - SQRT_2).abs() <= 1e-4 && (rhs - SQRT_2).abs() <= 1e-4,
        format!(
            "direct {} (error {:e}), sweep {rhs} (error {:e})",
            r.lhs,
            (r.lhs - SQRT_2).abs(),
            (rhs - SQRT_2).abs()
        ),
    )
}

fn discrepancy_documentation() -> Outcome {
    let config = SuiteConfig::default().with_seed(7);
    let hex = run_suite(&NormedSpace::l1_linf(), &config).unwrap();
    let at = sp(2.0, 1.0, 2.0);
    let hex_ok = hex.iter().any(|r| {
        r.check_id == "printed_l1_linf"
            && r.params == Some(at)
            && r.informational
            && !r.passed
            && (r.lhs - 0.9).abs() < 1e-12
            && (sweep_rhs(r) - 1.3).abs() < 1e-12
    });
    let l2 = run_suite(&NormedSpace::lp(2, 2.0).unwrap(), &config).unwrap();
    let at = sp(2.0, 1.0, 3.0);
    let l2_ok = l2.iter().any(|r| {
        r.check_id == "printed_lr_bounds"
            && r.params == Some(at)
            && r.informational
            && !r.passed
            && (r.lhs - 0.75).abs() < 1e-12
            && matches!(r.rhs, Rhs::Bounds(b) if (b.lower - 7.0 / 9.0).abs() < 1e-12)
    });
    let exit_zero = suite_passed(&hex) && suite_passed(&l2);
    outcome(
        hex_ok && l2_ok && exit_zero,
        format!("hexagon report {hex_ok}, l2 report {l2_ok}, both suites pass {exit_zero}"),
    )
}

fn classification_coherence() -> Outcome {
    let opts = VerifyOptions::default();
    let q = sp(1.0, 1.0, 2.0);
    let cases = [
        (NormedSpace::lp(2, 1.0).unwrap(), Verdict::SquareLike, 2.0),
        (
            NormedSpace::lp(2, 2.0).unwrap(),
            Verdict::UniformlyNonsquare,
            SQRT_2,
        ),
        (
            NormedSpace::lp(2, f64::INFINITY).unwrap(),
            Verdict::SquareLike,
            2.0,
        ),
        (NormedSpace::l1_linf(), Verdict::UniformlyNonsquare, 1.5),
        (
            NormedSpace::weighted_c0(3).unwrap(),
            Verdict::UniformlyNonsquare,
            f64::NAN,
        ),
    ];
    let mut bad = Vec::new();
    for (space, verdict, james) in cases {
        let c = classify_uniform_nonsquare(&space, &q, &opts).unwrap();
        let j = estimate_james(&space, &opts.estimator).unwrap().value;
        let agrees = c.evidence.iter().all(Report::ok)
            && (c.verdict == Verdict::UniformlyNonsquare) == (j < 2.0 - opts.square_tol);
        let j_ok = james.is_nan() || (j - james).abs() < 1e-6;
        if c.verdict != verdict || !agrees || !j_ok {
            bad.push(format!("{} {:?} J={j}", space.name(), c.verdict));
        }
    }
    outcome(bad.is_empty(), format!("5 spaces, disagreements {bad:?}"))
}

fn normal_structure_certificate() -> Outcome {
    let opts = VerifyOptions::default();
    let l2 = check_normal_structure_thm42(
        &NormedSpace::lp(2, 2.0).unwrap(),
        &[sp(1.0, 1.0, 2.0)],
        &opts,
    )
    .unwrap();
    let l1 =
        check_normal_structure_thm42(&NormedSpace::lp(2, 1.0).unwrap(), &default_grid(), &opts)
            .unwrap();
    let l2_ok =
        l2.verdict == Verdict::NormalStructureCertified && (l2.evidence[0].lhs - 1.0).abs() < 1e-9;
    let l1_ok = l1.verdict == Verdict::NotCertified && l1.evidence.iter().all(|r| !r.passed);
    outcome(
        l2_ok && l1_ok,
        format!("l2 {:?}, l1 {:?} on all 9 cells", l2.verdict, l1.verdict),
    )
}

fn property_suites() -> Outcome {
    let spaces = [
        NormedSpace::lp(2, 1.0).unwrap(),
        NormedSpace::lp(2, 2.0).unwrap(),
        NormedSpace::lp(2, 3.0).unwrap(),
        NormedSpace::lp(2, f64::INFINITY).unwrap(),
        NormedSpace::l1_linf(),
        NormedSpace::weighted_c0(3).unwrap(),
        NormedSpace::lp(3, 1.5).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut norm_violations = 0;
    let mut midpoint_violations = 0;
    for space in &spaces {
        let n = space.dim();
        for _ in 0..10_000 {
            let x: Vec<f64> = (0..n).map(|_| rng.random_range(-5.0..5.0)).collect();
            let y: Vec<f64> = (0..n).map(|_| rng.random_range(-5.0..5.0)).collect();
            let l: f64 = rng.random_range(-5.0..5.0);
            let (nx, ny) = (space.norm(&x).unwrap(), space.norm(&y).unwrap());
            let s: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
            let lx: Vec<f64> = x.iter().map(|a| l * a).collect();
            let tol = 1e-12 * (nx + ny).max(1.0);
            if nx < 0.0
                || space.norm(&s).unwrap() > nx + ny + tol
                || (space.norm(&lx).unwrap() - l.abs() * nx).abs()
                    > 1e-12 * nx.max(1.0) * l.abs().max(1.0)
            {
                norm_violations += 1;
            }
        }
        if !check_convexity_lemma27(space, 1000, 99).unwrap().passed {
            midpoint_violations += 1;
        }
    }
    let mut power_violations = 0;
    for _ in 0..100_000 {
        let x: f64 = rng.random_range(0.0..100.0);
        let y: f64 = rng.random_range(0.0..100.0);
        let p: f64 = rng.random_range(1.0..20.0);
        if !power_mean_check(x, y, p).unwrap() {
            power_violations += 1;
        }
    }

    let opts = EstimatorOptions::default().with_seed(5);
    let mut symmetry_gap = 0.0f64;
    for space in &spaces[..5] {
        for q in default_grid() {
            let est = estimate_skew_nj(space, &q, &opts).unwrap();
            let (x, y) = (&est.witness.x, &est.witness.y);
            let sw = skew_nj_objective(space, &q.swapped(), y, x).unwrap();
            let sc = skew_nj_objective(space, &q.scaled(3.7).unwrap(), x, y).unwrap();
            symmetry_gap = symmetry_gap
                .max((sw - est.value).abs())
                .max((sc - est.value).abs());
        }
    }

    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| {
            let space = NormedSpace::lp(3, 3.0).unwrap();
            let est = estimate_skew_nj(&space, &sp(2.0, 1.0, 2.0), &opts).unwrap();
            let suite =
                run_suite(&NormedSpace::lp(2, 3.0).unwrap(), &SuiteConfig::default()).unwrap();
            serde_json::to_string(&(est, suite)).unwrap()
        })
    };
    let a = run(1);
    let deterministic = a == run(1) && a == run(4);

    outcome(
        norm_violations == 0
            && midpoint_violations == 0
            && power_violations == 0
            && symmetry_gap <= 1e-12
            && deterministic,
        format!(
            "norm axioms {norm_violations}, midpoint convexity {midpoint_violations}, \
             power mean {power_violations} violations; symmetry gap {symmetry_gap:e}; \
             byte-identical runs {deterministic}"
        ),
    )
}

fn main() {
    let battery = polygon_battery(50, 3);
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (
            "closed-form values on the square balls",
            Box::new(closed_form_reproduction),
        ),
        ("Euclidean identity", Box::new(euclidean_identity)),
        (
            "universal bounds on random polygons",
            Box::new(|| universal_bounds(&battery)),
        ),
        (
            "sandwich, symmetric lower and James batteries",
            Box::new(|| inequality_batteries(&battery)),
        ),
        ("modulus formula on l3", Box::new(modulus_formula_lr3)),
        ("l2 value at p = 1", Box::new(modulus_formula_l2_p1)),
        (
            "reference-formula discrepancies",
            Box::new(discrepancy_documentation),
        ),
        (
            "classification coherence",
            Box::new(classification_coherence),
        ),
        (
            "normal structure certificate",
            Box::new(normal_structure_certificate),
        ),
        ("property suites", Box::new(property_suites)),
    ];
    let mut failures = 0;
    let mut out = std::io::stdout().lock();
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        failures += usize::from(!o.passed);
        writeln!(
            out,
            "criterion {:>2} {}: {} ({}; {:.2?})",
            k + 1,
            if o.passed { "PASS" } else { "FAIL" },
            name,
            o.detail,
            t.elapsed()
        )
        .unwrap();
        out.flush().unwrap();
    }
    writeln!(
        out,
        "acceptance: {} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    )
    .unwrap();
    if failures > 0 {
        std::process::exit(1);
    }
}
