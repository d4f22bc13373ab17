mod args;
mod output;

use std::process::ExitCode;

use clap::Parser;
use rayon::prelude::*;
use skewnj::closed_forms::{bounds_general, normal_structure_threshold};
use skewnj::estimators::{
    estimate_convexity_characteristic, estimate_convexity_modulus, estimate_gen_nj_tilde,
    estimate_james, estimate_lyj, estimate_skew_nj, estimate_skew_nj_global, LyjMode,
};
use skewnj::spaces::load_polyhedral;
use skewnj::verifiers::{run_suite, suite_passed, SuiteConfig, SuiteSummary};
use skewnj::{Error, Estimate, EstimatorOptions, MethodChoice, NormedSpace, SkewParams};

use args::{
    CatalogArgs, Cli, Command, ComputeArgs, Constant, MethodArg, RunArgs, SpaceArgs, SpaceKind,
    SweepArgs, VerifyArgs,
};
use output::{CatalogEntry, ComputeRecord, SweepRow};

enum Failure {
    Usage(String),
    Compute(String),
    Verification,
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Compute(format!("output: {e}"))
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn computation(e: Error) -> Failure {
    match e {
        Error::MethodNotApplicable { .. } | Error::NoExtremePoints(_) => {
            Failure::Usage(format!("--method: {e}"))
        }
        e => Failure::Compute(e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute(a) => compute(a),
        Command::Verify(a) => verify(a),
        Command::Sweep(a) => sweep(a),
        Command::Catalog(a) => catalog(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn build_space(a: &SpaceArgs) -> Result<NormedSpace, Failure> {
    if a.space != SpaceKind::Lp && a.r.is_some() {
        return Err(usage("--r applies only to --space lp"));
    }
    if a.space != SpaceKind::Polyhedral && a.points.is_some() {
        return Err(usage("--points applies only to --space polyhedral"));
    }
    let bad = |e: Error| usage(e.to_string());
    match a.space {
        SpaceKind::Lp => {
            let r = a.r.ok_or_else(|| usage("--space lp requires --r"))?;
            NormedSpace::lp(a.dim.unwrap_or(2), r).map_err(|e| usage(format!("--r/--dim: {e}")))
        }
        SpaceKind::L1linf => match a.dim {
            None => Ok(NormedSpace::l1_linf()),
            Some(d) => NormedSpace::l1_linf_with_dim(d).map_err(|e| usage(format!("--dim: {e}"))),
        },
        SpaceKind::WeightedC0 => {
            NormedSpace::weighted_c0(a.dim.unwrap_or(2)).map_err(|e| usage(format!("--dim: {e}")))
        }
        SpaceKind::Polyhedral => {
            if a.dim.is_some() {
                return Err(usage(
                    "--dim does not apply to --space polyhedral; the points file fixes it",
                ));
            }
            let path = a
                .points
                .as_ref()
                .ok_or_else(|| usage("--space polyhedral requires --points"))?;
            load_polyhedral(path).map_err(bad)
        }
    }
}

fn estimator_options(run: &RunArgs) -> Result<EstimatorOptions, Failure> {
    let mut o = EstimatorOptions::default().with_seed(run.seed);
    if let Some(m) = run.method {
        o = o.with_method(match m {
            MethodArg::Auto => MethodChoice::Auto,
            MethodArg::Extreme => MethodChoice::ExtremePoint,
            MethodArg::Grid => MethodChoice::Grid2d,
            MethodArg::Multistart => MethodChoice::Multistart,
        });
    }
    if let Some(v) = run.grid_steps {
        o.grid_steps = v;
    }
    if let Some(v) = run.starts {
        o.starts = v;
    }
    if let Some(v) = run.max_iters {
        o.max_iters = v;
    }
    if let Some(v) = run.step_tol {
        o.step_tol = v;
    }
    if let Some(v) = run.t_grid {
        o.t_grid = v;
    }
    if let Some(v) = run.delta_starts {
        o.delta_starts = v;
    }
    o.validate().map_err(|e| usage(e.to_string()))?;
    Ok(o)
}

fn params(xi: f64, nu: f64, p: f64) -> Result<SkewParams, Failure> {
    SkewParams::new(xi, nu, p).map_err(|e| usage(format!("--xi/--nu/--p: {e}")))
}

fn compute(a: ComputeArgs) -> Result<(), Failure> {
    let space = build_space(&a.space)?;
    let opts = estimator_options(&a.run)?;
    let c = a.constant;
    let name = c.as_str();
    let reject = |flag: &str, present: bool| {
        if present {
            Err(usage(format!("{flag} does not apply to --constant {name}")))
        } else {
            Ok(())
        }
    };
    let uses_weights = matches!(
        c,
        Constant::SkewNj | Constant::SkewNjGlobal | Constant::Lyj | Constant::LyjPrime
    );
    reject("--xi", !uses_weights && a.xi.is_some())?;
    reject("--nu", !uses_weights && a.nu.is_some())?;
    reject(
        "--p",
        !matches!(
            c,
            Constant::SkewNj | Constant::SkewNjGlobal | Constant::GenNj
        ) && a.p.is_some(),
    )?;
    reject("--eps", c != Constant::Delta && a.eps.is_some())?;
    reject(
        "--method",
        matches!(c, Constant::Delta | Constant::Eps0) && a.run.method.is_some(),
    )?;

    let (xi, nu) = (a.xi.unwrap_or(1.0), a.nu.unwrap_or(1.0));
    let p = a.p.unwrap_or(2.0);
    let record = |est: Estimate, q: Option<SkewParams>| {
        let t = est.y_norm.unwrap_or(1.0);
        ComputeRecord {
            space: space.name().to_string(),
            constant: name,
            xi: q.map(|q| q.xi()),
            nu: q.map(|q| q.nu()),
            p: q.map(|q| q.p()),
            value: est.value,
            certified: est.certified,
            method: Some(est.method.to_string()),
            witness_x: Some(est.witness.x.coords().to_vec()),
            witness_y: Some(est.witness.y.iter().map(|v| v * t).collect()),
            evaluations: Some(est.evaluations),
            seed: opts.seed,
        }
    };
    let rec = match c {
        Constant::SkewNj => {
            let q = params(xi, nu, p)?;
            record(
                estimate_skew_nj(&space, &q, &opts).map_err(computation)?,
                Some(q),
            )
        }
        Constant::SkewNjGlobal => {
            let q = params(xi, nu, p)?;
            record(
                estimate_skew_nj_global(&space, &q, &opts).map_err(computation)?,
                Some(q),
            )
        }
        Constant::GenNj => {
            let q = params(1.0, 1.0, p)?;
            record(
                estimate_gen_nj_tilde(&space, p, &opts).map_err(computation)?,
                Some(q),
            )
        }
        Constant::James => record(estimate_james(&space, &opts).map_err(computation)?, None),
        Constant::Lyj | Constant::LyjPrime => {
            let q = params(xi, nu, 2.0)?;
            let mode = if c == Constant::Lyj {
                LyjMode::Global
            } else {
                LyjMode::Sphere
            };
            record(
                estimate_lyj(&space, xi, nu, mode, &opts).map_err(computation)?,
                Some(q),
            )
        }
        Constant::Delta => {
            let eps = a
                .eps
                .ok_or_else(|| usage("--constant delta requires --eps"))?;
            if !(0.0..=2.0).contains(&eps) {
                return Err(usage(format!("--eps = {eps} is outside [0, 2]")));
            }
            let d = estimate_convexity_modulus(&space, eps, &opts).map_err(computation)?;
            ComputeRecord {
                space: space.name().to_string(),
                constant: name,
                xi: None,
                nu: None,
                p: None,
                value: d.delta,
                certified: false,
                method: None,
                witness_x: Some(d.witness.x.coords().to_vec()),
                witness_y: Some(d.witness.y.coords().to_vec()),
                evaluations: Some(d.evaluations),
                seed: opts.seed,
            }
        }
        Constant::Eps0 => ComputeRecord {
            space: space.name().to_string(),
            constant: name,
            xi: None,
            nu: None,
            p: None,
            value: estimate_convexity_characteristic(&space, &opts).map_err(computation)?,
            certified: false,
            method: None,
            witness_x: None,
            witness_y: None,
            evaluations: None,
            seed: opts.seed,
        },
    };
    let w = output::open(a.run.out.as_deref())?;
    output::write_rows(w, a.format, &[rec], ComputeRecord::flat)?;
    Ok(())
}

fn verify(a: VerifyArgs) -> Result<(), Failure> {
    let space = build_space(&a.space)?;
    let mut config = SuiteConfig::default();
    config.verify.estimator = estimator_options(&a.run)?;
    config.eps_grid_size = a.eps_grid;
    if a.eps_grid.is_some_and(|n| n < 16) {
        return Err(usage("--eps-grid must be at least 16"));
    }
    if a.samples == 0 {
        return Err(usage("--samples must be at least 1"));
    }
    config.midpoint_samples = a.samples;
    let reports = run_suite(&space, &config).map_err(computation)?;
    let w = output::open(a.run.out.as_deref())?;
    output::write_rows(w, a.format, &reports, output::report_csv)?;
    let s = SuiteSummary::of(&reports);
    eprintln!(
        "summary: {} checks, {} passed, {} failed, {} informational",
        s.total, s.passed, s.failed, s.informational
    );
    if suite_passed(&reports) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

/// Parses `start:stop:steps`, or a single value.
fn parse_range(flag: &str, text: &str) -> Result<Vec<f64>, Failure> {
    let bad = || usage(format!("{flag} expects start:stop:steps, got `{text}`"));
    let parts: Vec<&str> = text.split(':').collect();
    let (start, stop, steps) = match parts.as_slice() {
        [v] => {
            let v: f64 = v.trim().parse().map_err(|_| bad())?;
            (v, v, 1)
        }
        [a, b, n] => (
            a.trim().parse::<f64>().map_err(|_| bad())?,
            b.trim().parse::<f64>().map_err(|_| bad())?,
            n.trim().parse::<usize>().map_err(|_| bad())?,
        ),
        _ => return Err(bad()),
    };
    if steps == 0 {
        return Err(usage(format!("{flag} range `{text}` is empty")));
    }
    if steps == 1 && start != stop {
        return Err(usage(format!(
            "{flag} range `{text}` has one step but distinct endpoints"
        )));
    }
    Ok((0..steps)
        .map(|k| {
            if steps == 1 {
                start
            } else {
                start + (stop - start) * k as f64 / (steps - 1) as f64
            }
        })
        .collect())
}

fn sweep(a: SweepArgs) -> Result<(), Failure> {
    let space = build_space(&a.space)?;
    let opts = estimator_options(&a.run)?;
    let xis = parse_range("--xi", &a.xi)?;
    let nus = parse_range("--nu", &a.nu)?;
    if a.p.is_empty() {
        return Err(usage("--p list is empty"));
    }
    let mut cells = Vec::new();
    for &xi in &xis {
        for &nu in &nus {
            for &p in &a.p {
                cells.push(params(xi, nu, p)?);
            }
        }
    }
    cells.sort_by(|a, b| {
        a.xi()
            .total_cmp(&b.xi())
            .then(a.nu().total_cmp(&b.nu()))
            .then(a.p().total_cmp(&b.p()))
    });
    cells.dedup();
    let rows = cells
        .par_iter()
        .map(|q| {
            let est = estimate_skew_nj(&space, q, &opts)?;
            let b = bounds_general(q);
            Ok(SweepRow {
                space: space.name().to_string(),
                xi: q.xi(),
                nu: q.nu(),
                p: q.p(),
                value: est.value,
                lower_bound: b.lower,
                upper_bound: b.upper,
                ns_threshold: normal_structure_threshold(q),
                certified: est.certified,
            })
        })
        .collect::<Result<Vec<_>, Error>>()
        .map_err(computation)?;
    let w = output::open(a.run.out.as_deref())?;
    output::write_rows(w, a.format, &rows, SweepRow::clone)?;
    Ok(())
}

fn catalog(a: CatalogArgs) -> Result<(), Failure> {
    let tail = NormedSpace::weighted_c0(2)
        .ok()
        .and_then(|s| s.metadata().truncation_tail_factor)
        .unwrap_or(f64::NAN);
    let entries = vec![
        CatalogEntry {
            kind: "lp",
            parameters: "--r in [1, inf], --dim >= 2 (default 2)",
            certified_constants: "skew-nj, gen-nj, lyj-prime (r = 1 or inf only)",
            notes: "certified only for r in {1, inf}, where the unit ball is a polytope; \
                    strictly convex for 1 < r < inf, estimates are heuristic there"
                .to_string(),
        },
        CatalogEntry {
            kind: "l1linf",
            parameters: "plane only",
            certified_constants: "skew-nj, gen-nj, lyj-prime",
            notes: "max norm on the first and third quadrants, l1 norm on the second and \
                    fourth; six extreme points (1,0), (0,1), (1,1) and their negatives"
                .to_string(),
        },
        CatalogEntry {
            kind: "weighted-c0",
            parameters: "--dim >= 2 (default 2)",
            certified_constants: "none",
            notes: format!(
                "max_i |x_i| + (sum_i x_i^2 / 4^i)^(1/2) truncated to the ambient dimension; \
                 the dropped series tail adds at most c * max_i |x_i| with c = (4^-dim / 3)^(1/2) \
                 ({tail} at dim 2)"
            ),
        },
        CatalogEntry {
            kind: "polyhedral",
            parameters: "--points FILE: one point per line, whitespace separated, \
                         # comments; the ball is the symmetric convex hull",
            certified_constants: "skew-nj, gen-nj, lyj-prime",
            notes: "norm is the Minkowski gauge of the hull".to_string(),
        },
    ];
    let w = output::open(a.out.as_deref())?;
    output::write_rows(w, a.format, &entries, CatalogEntry::clone)?;
    Ok(())
}
