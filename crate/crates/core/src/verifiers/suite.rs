use serde::Serialize;

use super::{
    bounds_report, check_convexity_lemma27, eps_grid, equivalence_report, james_bounds_report,
    modulus_reports, normal_structure_classification, sandwich_report, symmetric_lower_report,
    uniform_nonsquare_classification, Relation, Report, Rhs, VerifyOptions,
};
use crate::closed_forms::{
    bounds_general, value_l1, value_l1_linf_printed, value_lr_printed, value_weighted_c0,
};
use crate::error::{Error, Result};
use crate::estimators::{
    convexity_modulus_sweep, estimate_gen_nj_tilde, estimate_james, estimate_lyj, estimate_skew_nj,
    estimate_skew_nj_global, skew_nj_objective, Estimate, LyjMode,
};
use crate::params::{default_grid, SkewParams};
use crate::spaces::{NormKind, NormedSpace};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub grid: Vec<SkewParams>,
    /// Size of the eps grid for the modulus checks; `None` picks 64 in the
    /// plane and 32 above.
    pub eps_grid_size: Option<usize>,
    pub midpoint_samples: usize,
    pub verify: VerifyOptions,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            grid: default_grid(),
            eps_grid_size: None,
            midpoint_samples: 1000,
            verify: VerifyOptions::default(),
        }
    }
}

impl SuiteConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.verify.estimator.seed = seed;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub informational: usize,
}

impl SuiteSummary {
    pub fn of(reports: &[Report]) -> Self {
        let informational = reports.iter().filter(|r| r.informational).count();
        let failed = reports.iter().filter(|r| !r.ok()).count();
        Self {
            total: reports.len(),
            passed: reports.len() - informational - failed,
            failed,
            informational,
        }
    }
}

/// True iff every non-informational report passed.
pub fn suite_passed(reports: &[Report]) -> bool {
    reports.iter().all(Report::ok)
}

/// Runs every check over `config.grid` and returns the reports ordered by
/// check id, then by position of the parameters in the grid.
pub fn run_suite(space: &NormedSpace, config: &SuiteConfig) -> Result<Vec<Report>> {
    let opts = &config.verify;
    let est = &opts.estimator;
    est.validate()?;
    if config.grid.is_empty() {
        return Err(Error::OutOfRange {
            name: "grid",
            value: 0.0,
            domain: "non-empty",
        });
    }
    let mut out: Vec<(usize, Report)> = Vec::new();

    let skew = config
        .grid
        .iter()
        .map(|q| estimate_skew_nj(space, q, est))
        .collect::<Result<Vec<_>>>()?;
    let mut exponents: Vec<f64> = Vec::new();
    for q in &config.grid {
        if !exponents.contains(&q.p()) {
            exponents.push(q.p());
        }
    }
    let gens = exponents
        .iter()
        .map(|&p| estimate_gen_nj_tilde(space, p, est))
        .collect::<Result<Vec<_>>>()?;
    let gen_for = |q: &SkewParams| -> &Estimate {
        let k = exponents.iter().position(|&p| p == q.p()).unwrap();
        &gens[k]
    };
    let james = estimate_james(space, est)?;
    let eps_count = config
        .eps_grid_size
        .unwrap_or(if space.dim() == 2 { 64 } else { 32 });
    if eps_count < 16 {
        return Err(Error::OutOfRange {
            name: "eps_grid_size",
            value: eps_count as f64,
            domain: ">= 16",
        });
    }
    let sweep = convexity_modulus_sweep(space, &eps_grid(eps_count), est)?;

    for (i, (q, s)) in config.grid.iter().zip(&skew).enumerate() {
        out.push((i, bounds_report(space, q, s, opts)));
        out.push((i, symmetric_lower_report(space, q, s, gen_for(q), opts)));
        out.push((i, james_bounds_report(space, q, s, &james, opts)));
        let (formula, upper) = modulus_reports(space, q, s, &sweep, opts)?;
        out.push((i, formula));
        out.push((i, upper));
        if q.q().is_some() {
            let global = estimate_skew_nj_global(space, q, est)?;
            out.push((i, sandwich_report(space, q, s, &global, opts)?));
        }
        let c = uniform_nonsquare_classification(space, q, s, &james, opts);
        out.extend(c.evidence.into_iter().map(|r| (i, r)));
        out.extend(coherence_reports(space, q, s, gen_for(q), opts)?.map(|r| (i, r)));
        out.extend(printed_reports(space, q, s)?.into_iter().map(|r| (i, r)));
    }

    for (k, &p) in exponents.iter().enumerate() {
        let cells: Vec<(SkewParams, Estimate)> = config
            .grid
            .iter()
            .zip(&skew)
            .filter(|(q, _)| q.p() == p)
            .map(|(q, s)| (*q, s.clone()))
            .collect();
        let first = config.grid.iter().position(|q| q.p() == p).unwrap();
        out.push((first, equivalence_report(space, &cells, &gens[k], opts)));
    }

    let cells: Vec<(SkewParams, Estimate)> = config.grid.iter().copied().zip(skew).collect();
    let ns = normal_structure_classification(space, &cells, opts);
    let mut verdict = Report::new(
        "ns_verdict",
        space,
        None,
        ns.margin,
        Rhs::Value(0.0),
        Relation::Ge,
        0.0,
    )
    .informational()
    .with_verdict(ns.verdict)
    .with_note(format!(
        "largest margin below the threshold over {} cells",
        cells.len()
    ));
    if !ns.notes.is_empty() {
        verdict = verdict.with_note(ns.notes);
    }
    out.extend(ns.evidence.into_iter().enumerate());
    out.push((0, verdict));

    out.push((
        0,
        check_convexity_lemma27(space, config.midpoint_samples.max(1), est.seed)?,
    ));

    out.sort_by(|a, b| a.1.check_id.cmp(&b.1.check_id).then(a.0.cmp(&b.0)));
    Ok(out.into_iter().map(|(_, r)| r).collect())
}

fn coherence_reports(
    space: &NormedSpace,
    q: &SkewParams,
    skew: &Estimate,
    gen: &Estimate,
    opts: &VerifyOptions,
) -> Result<impl Iterator<Item = Report>> {
    let mut v = Vec::new();
    if q.xi() == q.nu() {
        v.push(
            Report::new(
                "coherence_reduction",
                space,
                Some(*q),
                skew.value,
                Rhs::Value(gen.value),
                Relation::Eq,
                1e-12,
            )
            .with_witness(&skew.witness)
            .with_note("skew constant at xi = nu equals the symmetric constant"),
        );
    }
    if q.p() == 2.0 {
        let lyj = estimate_lyj(space, q.xi(), q.nu(), LyjMode::Sphere, &opts.estimator)?;
        let at = skew_nj_objective(space, q, &lyj.witness.x, &lyj.witness.y)?;
        v.push(
            Report::new(
                "coherence_lyj",
                space,
                Some(*q),
                lyj.value,
                Rhs::Value(skew.value),
                Relation::Eq,
                1e-12,
            )
            .with_witness(&lyj.witness)
            .with_note(format!("skew objective at the L'_YJ witness: {at}")),
        );
    }
    Ok(v.into_iter())
}

fn printed_reports(space: &NormedSpace, q: &SkewParams, skew: &Estimate) -> Result<Vec<Report>> {
    let mut v = Vec::new();
    let bounds = bounds_general(q);
    let outside = |x: f64| {
        if bounds.contains(x, 1e-9) {
            "inside"
        } else {
            "outside"
        }
    };
    match space.kind() {
        NormKind::Lp { r } if (*r == 1.0 || r.is_infinite()) && skew.certified => {
            v.push(
                Report::new(
                    "closed_form_square_ball",
                    space,
                    Some(*q),
                    skew.value,
                    Rhs::Value(value_l1(q)),
                    Relation::Eq,
                    1e-9,
                )
                .with_witness(&skew.witness),
            );
        }
        _ => {}
    }
    match space.kind() {
        NormKind::Lp { r } if *r >= 2.0 => {
            let printed = value_lr_printed(q, *r)?;
            let branch = if q.p() < *r { "p < r" } else { "p >= r" };
            let symmetric = q.xi() == q.nu();
            let slack = if skew.certified { 1e-9 } else { 1e-3 };
            v.push(
                Report::new(
                    "printed_lr_bounds",
                    space,
                    Some(*q),
                    printed,
                    Rhs::Bounds(bounds),
                    Relation::Within,
                    1e-9,
                )
                .with_informational(!symmetric)
                .with_note(format!(
                    "reference value {printed} ({branch} branch) is {} [{}, {}]",
                    outside(printed),
                    bounds.lower,
                    bounds.upper
                )),
            );
            v.push(
                Report::new(
                    "printed_lr_direct",
                    space,
                    Some(*q),
                    skew.value,
                    Rhs::Value(printed),
                    Relation::Eq,
                    slack,
                )
                .with_informational(!symmetric)
                .with_witness(&skew.witness)
                .with_note(format!(
                    "direct estimate {} vs reference value {printed} ({branch} branch)",
                    skew.value
                )),
            );
        }
        NormKind::L1Linf if q.xi() >= q.nu() => {
            let printed = value_l1_linf_printed(q)?;
            v.push(
                Report::new(
                    "printed_l1_linf",
                    space,
                    Some(*q),
                    printed,
                    Rhs::Value(skew.value),
                    Relation::Eq,
                    1e-9,
                )
                .informational()
                .with_witness(&skew.witness)
                .with_note(format!(
                    "reference value {printed} vs enumerated {} over the six extreme points; reference is {} [{}, {}]",
                    skew.value,
                    outside(printed),
                    bounds.lower,
                    bounds.upper
                )),
            );
        }
        NormKind::WeightedC0 => {
            let printed = value_weighted_c0(q);
            v.push(
                Report::new(
                    "printed_weighted_c0",
                    space,
                    Some(*q),
                    printed,
                    Rhs::Value(skew.value),
                    Relation::Eq,
                    1e-3,
                )
                .informational()
                .with_witness(&skew.witness)
                .with_note(format!(
                    "reference value {printed} vs direct estimate {} ({})",
                    skew.value, skew.method
                )),
            );
        }
        _ => {}
    }
    Ok(v)
}
