//! Executable checks of the bounds, identities and classifications of the
//! skew constant against numeric estimates.
//!
//! Each check produces a [`Report`] whose `passed` flag follows from its
//! stored `lhs`, `rhs`, `relation` and `slack` alone. Reports flagged
//! `informational` document known mismatches between reference formulas and
//! direct computation, or carry classification evidence; they never count
//! as failures.

mod suite;

use serde::Serialize;

use crate::closed_forms::{
    bounds_general, normal_structure_threshold, thm26_upper, thm28_lower, thm33_objective,
    thm38_bounds, BoundPair,
};
use crate::error::{Error, Result};
use crate::estimators::{
    convexity_modulus_sweep, estimate_gen_nj_tilde, estimate_james, estimate_skew_nj,
    estimate_skew_nj_global, ConvexityEstimate, Estimate, EstimatorOptions, Witness,
};
use crate::params::SkewParams;
use crate::spaces::NormedSpace;

pub use suite::{run_suite, suite_passed, SuiteConfig, SuiteSummary};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Rhs {
    Value(f64),
    Bounds(BoundPair),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `lhs <= rhs + slack`
    Le,
    /// `lhs >= rhs - slack`
    Ge,
    /// `lhs < rhs - slack`
    Lt,
    /// `|lhs - rhs| <= slack`
    Eq,
    /// `lower - slack <= lhs <= upper + slack`
    Within,
    /// The estimate fell in a dead zone; never passes.
    NotDetermined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    UniformlyNonsquare,
    NotDetermined,
    SquareLike,
    NormalStructureCertified,
    NotCertified,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub check_id: String,
    pub space_name: String,
    pub params: Option<SkewParams>,
    pub lhs: f64,
    pub rhs: Rhs,
    pub relation: Relation,
    pub slack: f64,
    pub passed: bool,
    pub informational: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    pub witnesses: Vec<Witness>,
    pub notes: String,
}

impl Report {
    pub fn new(
        check_id: &str,
        space: &NormedSpace,
        params: Option<SkewParams>,
        lhs: f64,
        rhs: Rhs,
        relation: Relation,
        slack: f64,
    ) -> Self {
        let mut r = Self {
            check_id: check_id.to_string(),
            space_name: space.name().to_string(),
            params,
            lhs,
            rhs,
            relation,
            slack,
            passed: false,
            informational: false,
            verdict: None,
            witnesses: Vec::new(),
            notes: String::new(),
        };
        r.passed = r.recompute();
        r
    }

    /// Re-derives `passed` from `lhs`, `rhs`, `relation` and `slack`.
    pub fn recompute(&self) -> bool {
        let (lhs, s) = (self.lhs, self.slack);
        match (self.relation, self.rhs) {
            (Relation::Le, Rhs::Value(r)) => lhs <= r + s,
            (Relation::Ge, Rhs::Value(r)) => lhs >= r - s,
            (Relation::Lt, Rhs::Value(r)) => lhs < r - s,
            (Relation::Eq, Rhs::Value(r)) => (lhs - r).abs() <= s,
            (Relation::Within, Rhs::Bounds(b)) => b.lower - s <= lhs && lhs <= b.upper + s,
            _ => false,
        }
    }

    pub fn informational(mut self) -> Self {
        self.informational = true;
        self
    }

    pub fn with_informational(mut self, flag: bool) -> Self {
        self.informational = flag;
        self
    }

    pub fn with_witness(mut self, w: &Witness) -> Self {
        self.witnesses.push(w.clone());
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        let note = note.into();
        if !self.notes.is_empty() {
            self.notes.push_str("; ");
        }
        self.notes.push_str(&note);
        self
    }

    pub fn with_verdict(mut self, v: Verdict) -> Self {
        self.verdict = Some(v);
        self
    }

    /// True when the report does not count against the run.
    pub fn ok(&self) -> bool {
        self.informational || self.passed
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub margin: f64,
    pub evidence: Vec<Report>,
    pub notes: String,
}

/// Tolerances for the checks. Estimator settings are carried along.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyOptions {
    pub estimator: EstimatorOptions,
    /// Slack for comparisons that rest on certified (enumerated) values.
    pub certified_slack: f64,
    /// Slack for the universal bounds with a heuristic estimate.
    pub heuristic_slack: f64,
    /// Slack for comparisons that rest on heuristic estimates in the risky direction.
    pub loose_slack: f64,
    pub eq_tol: f64,
    pub gap_tol: f64,
    pub gap_margin: f64,
    pub formula_slack: f64,
    pub square_tol: f64,
    pub ns_margin_certified: f64,
    pub ns_margin_heuristic: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            estimator: EstimatorOptions::default(),
            certified_slack: 1e-6,
            heuristic_slack: 1e-3,
            loose_slack: 5e-3,
            eq_tol: 1e-3,
            gap_tol: 0.05,
            gap_margin: 1e-3,
            formula_slack: 1e-2,
            square_tol: 1e-3,
            ns_margin_certified: 1e-6,
            ns_margin_heuristic: 1e-3,
        }
    }
}

impl VerifyOptions {
    fn slack_for(&self, certified: bool) -> f64 {
        if certified {
            self.certified_slack
        } else {
            self.loose_slack
        }
    }
}

pub(crate) fn bounds_report(
    space: &NormedSpace,
    params: &SkewParams,
    est: &Estimate,
    opts: &VerifyOptions,
) -> Report {
    let slack = if est.certified {
        opts.certified_slack
    } else {
        opts.heuristic_slack
    };
    Report::new(
        "bounds",
        space,
        Some(*params),
        est.value,
        Rhs::Bounds(bounds_general(params)),
        Relation::Within,
        slack,
    )
    .with_witness(&est.witness)
    .with_note(format!("estimate method {}", est.method))
}

/// The sphere estimate against the universal lower and upper bounds.
pub fn check_bounds_prop22(
    space: &NormedSpace,
    params: &SkewParams,
    opts: &VerifyOptions,
) -> Result<Report> {
    let est = estimate_skew_nj(space, params, &opts.estimator)?;
    Ok(bounds_report(space, params, &est, opts))
}

pub(crate) fn sandwich_report(
    space: &NormedSpace,
    params: &SkewParams,
    tilde: &Estimate,
    global: &Estimate,
    opts: &VerifyOptions,
) -> Result<Report> {
    let upper = thm26_upper(params, tilde.value)?;
    let slack = opts.slack_for(tilde.certified);
    let mut r = Report::new(
        "global_sandwich",
        space,
        Some(*params),
        global.value,
        Rhs::Bounds(BoundPair {
            lower: tilde.value,
            upper,
        }),
        Relation::Within,
        slack,
    )
    .with_witness(&tilde.witness)
    .with_witness(&global.witness)
    .with_note(format!(
        "sphere estimate {} ({}), unrestricted estimate at ||y|| = {}",
        tilde.value,
        if tilde.certified {
            "certified"
        } else {
            "heuristic"
        },
        global.y_norm.unwrap_or(1.0)
    ));
    if !tilde.certified {
        r = r.with_note(
            "caveat: the upper end is computed from a heuristic lower estimate of the sphere constant",
        );
    }
    Ok(r)
}

/// Sphere constant <= unrestricted constant <= the conjugate-exponent upper estimate.
pub fn check_sandwich_thm26(
    space: &NormedSpace,
    params: &SkewParams,
    opts: &VerifyOptions,
) -> Result<Report> {
    if params.q().is_none() {
        return Err(Error::OutOfRange {
            name: "p",
            value: params.p(),
            domain: "> 1",
        });
    }
    let tilde = estimate_skew_nj(space, params, &opts.estimator)?;
    let global = estimate_skew_nj_global(space, params, &opts.estimator)?;
    sandwich_report(space, params, &tilde, &global, opts)
}

pub(crate) fn symmetric_lower_report(
    space: &NormedSpace,
    params: &SkewParams,
    skew: &Estimate,
    gen: &Estimate,
    opts: &VerifyOptions,
) -> Report {
    Report::new(
        "symmetric_lower",
        space,
        Some(*params),
        skew.value,
        Rhs::Value(thm28_lower(params, gen.value)),
        Relation::Ge,
        opts.slack_for(skew.certified),
    )
    .with_witness(&skew.witness)
    .with_witness(&gen.witness)
    .with_note(format!("symmetric constant estimate {}", gen.value))
}

/// Skew constant >= `2 min(xi,nu)^p / (xi^p + nu^p)` times the symmetric constant.
pub fn check_lower_thm28(
    space: &NormedSpace,
    params: &SkewParams,
    opts: &VerifyOptions,
) -> Result<Report> {
    let skew = estimate_skew_nj(space, params, &opts.estimator)?;
    let gen = estimate_gen_nj_tilde(space, params.p(), &opts.estimator)?;
    Ok(symmetric_lower_report(space, params, &skew, &gen, opts))
}

pub(crate) fn equivalence_report(
    space: &NormedSpace,
    cells: &[(SkewParams, Estimate)],
    gen: &Estimate,
    opts: &VerifyOptions,
) -> Report {
    let p = cells[0].0.p();
    let gaps: Vec<f64> = cells
        .iter()
        .map(|(params, e)| bounds_general(params).upper - e.value)
        .collect();
    let listing = cells
        .iter()
        .zip(&gaps)
        .map(|((params, e), g)| format!("{params}: estimate {} gap {g}", e.value))
        .collect::<Vec<_>>()
        .join(", ");
    let mut r = if gen.value >= 2.0 - opts.eq_tol {
        let worst = gaps.iter().fold(0.0f64, |m, g| m.max(g.abs()));
        Report::new(
            "equivalence_at_two",
            space,
            None,
            worst,
            Rhs::Value(0.0),
            Relation::Le,
            opts.eq_tol,
        )
        .with_note(format!(
            "symmetric constant {} at p={p} is 2: every skew estimate must reach the upper bound",
            gen.value
        ))
    } else if gen.value <= 2.0 - opts.gap_tol {
        let least = gaps.iter().fold(f64::INFINITY, |m, &g| m.min(g));
        Report::new(
            "equivalence_at_two",
            space,
            None,
            least,
            Rhs::Value(opts.gap_margin),
            Relation::Ge,
            0.0,
        )
        .with_note(format!(
            "symmetric constant {} at p={p} is below 2: every skew estimate must stay strictly below the upper bound",
            gen.value
        ))
    } else {
        Report::new(
            "equivalence_at_two",
            space,
            None,
            gen.value,
            Rhs::Value(2.0),
            Relation::NotDetermined,
            opts.eq_tol,
        )
        .informational()
        .with_note(format!(
            "symmetric constant {} at p={p} lies in the dead zone between 2 - {} and 2 - {}",
            gen.value, opts.gap_tol, opts.eq_tol
        ))
    };
    r.params = (cells.len() == 1).then_some(cells[0].0);
    r = r.with_witness(&gen.witness).with_note(listing);
    for (_, e) in cells {
        r = r.with_witness(&e.witness);
    }
    r
}

/// The symmetric constant equals 2 iff every (equivalently some) skew constant
/// attains its upper bound. All entries of `params_list` must share `p`.
pub fn check_equivalence_thm29(
    space: &NormedSpace,
    params_list: &[SkewParams],
    opts: &VerifyOptions,
) -> Result<Report> {
    let Some(first) = params_list.first() else {
        return Err(Error::OutOfRange {
            name: "params_list",
            value: 0.0,
            domain: "non-empty",
        });
    };
    if params_list.iter().any(|q| q.p() != first.p()) {
        return Err(Error::OutOfRange {
            name: "p",
            value: first.p(),
            domain: "shared by every entry of params_list",
        });
    }
    let gen = estimate_gen_nj_tilde(space, first.p(), &opts.estimator)?;
    let cells = params_list
        .iter()
        .map(|q| Ok((*q, estimate_skew_nj(space, q, &opts.estimator)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(equivalence_report(space, &cells, &gen, opts))
}

/// `max_k` of the modulus expression over a sweep, with the maximizing entry.
fn modulus_rhs(params: &SkewParams, sweep: &[ConvexityEstimate]) -> Result<(f64, usize)> {
    let mut best = (f64::NEG_INFINITY, 0);
    for (k, c) in sweep.iter().enumerate() {
        let v = thm33_objective(params, c.eps, c.delta)?;
        if v > best.0 {
            best = (v, k);
        }
    }
    Ok(best)
}

/// `eps_grid_size` equally spaced values covering `[0, 2]`.
pub fn eps_grid(eps_grid_size: usize) -> Vec<f64> {
    (0..eps_grid_size)
        .map(|k| 2.0 * k as f64 / (eps_grid_size - 1) as f64)
        .collect()
}

pub(crate) fn modulus_reports(
    space: &NormedSpace,
    params: &SkewParams,
    skew: &Estimate,
    sweep: &[ConvexityEstimate],
    opts: &VerifyOptions,
) -> Result<(Report, Report)> {
    let (rhs, k) = modulus_rhs(params, sweep)?;
    let at = &sweep[k];
    let symmetric = params.xi() == params.nu();
    let mut equality = Report::new(
        "modulus_formula",
        space,
        Some(*params),
        skew.value,
        Rhs::Value(rhs),
        Relation::Eq,
        opts.formula_slack,
    )
    .with_informational(!symmetric)
    .with_witness(&skew.witness)
    .with_witness(&at.witness)
    .with_note(format!(
        "sweep of {} eps values, maximum at eps={} with delta={}",
        sweep.len(),
        at.eps,
        at.delta
    ));
    if !symmetric {
        equality = equality.with_note(
            "for xi != nu only the upper direction is implied; equality is reported, not enforced",
        );
    }
    let upper = Report::new(
        "modulus_upper",
        space,
        Some(*params),
        skew.value,
        Rhs::Value(rhs),
        Relation::Le,
        opts.formula_slack,
    )
    .with_witness(&skew.witness)
    .with_witness(&at.witness);
    Ok((equality, upper))
}

fn modulus_inputs(
    space: &NormedSpace,
    params: &SkewParams,
    eps_grid_size: usize,
    opts: &VerifyOptions,
) -> Result<(Estimate, Vec<ConvexityEstimate>)> {
    if eps_grid_size < 16 {
        return Err(Error::OutOfRange {
            name: "eps_grid_size",
            value: eps_grid_size as f64,
            domain: ">= 16",
        });
    }
    let skew = estimate_skew_nj(space, params, &opts.estimator)?;
    let sweep = convexity_modulus_sweep(space, &eps_grid(eps_grid_size), &opts.estimator)?;
    Ok((skew, sweep))
}

/// The skew constant against the maximum over an eps grid of the
/// modulus-of-convexity expression. Enforced as an equality at `xi = nu`;
/// informational otherwise (see [`check_delta_bound_thm33`]).
pub fn check_delta_formula_thm33(
    space: &NormedSpace,
    params: &SkewParams,
    eps_grid_size: usize,
    opts: &VerifyOptions,
) -> Result<Report> {
    let (skew, sweep) = modulus_inputs(space, params, eps_grid_size, opts)?;
    Ok(modulus_reports(space, params, &skew, &sweep, opts)?.0)
}

/// One-sided form of [`check_delta_formula_thm33`]: the skew constant does not
/// exceed the modulus expression, for every `(xi, nu)`.
pub fn check_delta_bound_thm33(
    space: &NormedSpace,
    params: &SkewParams,
    eps_grid_size: usize,
    opts: &VerifyOptions,
) -> Result<Report> {
    let (skew, sweep) = modulus_inputs(space, params, eps_grid_size, opts)?;
    Ok(modulus_reports(space, params, &skew, &sweep, opts)?.1)
}

pub(crate) fn james_bounds_report(
    space: &NormedSpace,
    params: &SkewParams,
    skew: &Estimate,
    james: &Estimate,
    opts: &VerifyOptions,
) -> Report {
    Report::new(
        "james_bounds",
        space,
        Some(*params),
        skew.value,
        Rhs::Bounds(thm38_bounds(params, james.value)),
        Relation::Within,
        opts.slack_for(skew.certified && james.certified),
    )
    .with_witness(&skew.witness)
    .with_witness(&james.witness)
    .with_note(format!("James constant estimate {}", james.value))
}

/// The skew constant between the two James-constant bounds.
pub fn check_james_thm38(
    space: &NormedSpace,
    params: &SkewParams,
    opts: &VerifyOptions,
) -> Result<Report> {
    let skew = estimate_skew_nj(space, params, &opts.estimator)?;
    let james = estimate_james(space, &opts.estimator)?;
    Ok(james_bounds_report(space, params, &skew, &james, opts))
}

/// Midpoint convexity of `t -> ||x + t y||^p + ||t x - y||^p` and
/// `t -> ||t x + y||^p + ||x - t y||^p` on random unit pairs.
///
/// Half of the triples straddle a point where a coordinate of `x + t y`
/// changes sign. `lhs` is the largest violation relative to `max(1, mean)`.
pub fn check_convexity_lemma27(
    space: &NormedSpace,
    sample_count: usize,
    seed: u64,
) -> Result<Report> {
    use rand::Rng;

    if sample_count == 0 {
        return Err(Error::OutOfRange {
            name: "sample_count",
            value: 0.0,
            domain: ">= 1",
        });
    }
    let pts = space.sample_unit_sphere(2 * sample_count, seed)?.points;
    let exponents = [1.0, 1.5, 2.0, 3.0];
    let mut worst = f64::NEG_INFINITY;
    for k in 0..sample_count {
        let mut rng = crate::search::substream(seed, k as u64);
        let (x, y) = (&pts[2 * k], &pts[2 * k + 1]);
        let p = exponents[k % exponents.len()];
        let (t1, t2) = if k % 2 == 1 {
            let i = rng.random_range(0..space.dim());
            let kink = if y[i].abs() > 1e-9 { -x[i] / y[i] } else { 0.0 };
            let kink = kink.clamp(-10.0, 10.0);
            (
                kink - rng.random_range(1e-9..1e-2),
                kink + rng.random_range(1e-9..1e-2),
            )
        } else {
            let a: f64 = rng.random_range(-3.0..3.0);
            let b: f64 = rng.random_range(-3.0..3.0);
            (a.min(b), a.max(b))
        };
        let m = 0.5 * (t1 + t2);
        let f1 = |t: f64| {
            let u: Vec<f64> = x.iter().zip(y.iter()).map(|(a, b)| a + t * b).collect();
            let v: Vec<f64> = x.iter().zip(y.iter()).map(|(a, b)| t * a - b).collect();
            space.norm_unchecked(&u).powf(p) + space.norm_unchecked(&v).powf(p)
        };
        let f2 = |t: f64| {
            let u: Vec<f64> = x.iter().zip(y.iter()).map(|(a, b)| t * a + b).collect();
            let v: Vec<f64> = x.iter().zip(y.iter()).map(|(a, b)| a - t * b).collect();
            space.norm_unchecked(&u).powf(p) + space.norm_unchecked(&v).powf(p)
        };
        for f in [&f1 as &dyn Fn(f64) -> f64, &f2] {
            let mean = 0.5 * (f(t1) + f(t2));
            worst = worst.max((f(m) - mean) / mean.max(1.0));
        }
    }
    Ok(Report::new(
        "midpoint_convexity",
        space,
        None,
        worst,
        Rhs::Value(0.0),
        Relation::Le,
        1e-12,
    )
    .with_note(format!(
        "{sample_count} triples, seed {seed}, p cycling over {exponents:?}; violation relative to max(1, mean)"
    )))
}

pub(crate) fn uniform_nonsquare_classification(
    space: &NormedSpace,
    params: &SkewParams,
    skew: &Estimate,
    james: &Estimate,
    opts: &VerifyOptions,
) -> Classification {
    let upper = bounds_general(params).upper;
    let margin = upper - skew.value;
    let verdict = if skew.certified && margin <= 1e-9 {
        Verdict::SquareLike
    } else if margin >= opts.square_tol {
        Verdict::UniformlyNonsquare
    } else {
        Verdict::NotDetermined
    };
    let margin_report = Report::new(
        "uns_margin",
        space,
        Some(*params),
        skew.value,
        Rhs::Value(upper),
        Relation::Le,
        0.0,
    )
    .informational()
    .with_verdict(verdict)
    .with_witness(&skew.witness)
    .with_note(format!(
        "margin {margin} to the upper bound, {} estimate",
        if skew.certified {
            "certified"
        } else {
            "heuristic; a lower estimate of the supremum, so the verdict is a numeric indication"
        }
    ));
    let james_report = match verdict {
        Verdict::UniformlyNonsquare => Report::new(
            "uns_james",
            space,
            Some(*params),
            james.value,
            Rhs::Value(2.0 - opts.square_tol),
            Relation::Le,
            0.0,
        ),
        Verdict::SquareLike => Report::new(
            "uns_james",
            space,
            Some(*params),
            james.value,
            Rhs::Value(2.0),
            Relation::Ge,
            opts.certified_slack,
        ),
        _ => Report::new(
            "uns_james",
            space,
            Some(*params),
            james.value,
            Rhs::Value(2.0),
            Relation::NotDetermined,
            opts.square_tol,
        )
        .informational(),
    }
    .with_verdict(verdict)
    .with_witness(&james.witness)
    .with_note("verdict must agree with J(X) < 2");
    Classification {
        verdict,
        margin,
        evidence: vec![margin_report, james_report],
        notes: String::new(),
    }
}

/// Uniform non-squareness from the margin to the upper bound, cross-checked
/// against the James constant.
pub fn classify_uniform_nonsquare(
    space: &NormedSpace,
    params: &SkewParams,
    opts: &VerifyOptions,
) -> Result<Classification> {
    let skew = estimate_skew_nj(space, params, &opts.estimator)?;
    let james = estimate_james(space, &opts.estimator)?;
    Ok(uniform_nonsquare_classification(
        space, params, &skew, &james, opts,
    ))
}

pub(crate) fn normal_structure_classification(
    space: &NormedSpace,
    cells: &[(SkewParams, Estimate)],
    opts: &VerifyOptions,
) -> Classification {
    let mut evidence = Vec::with_capacity(cells.len());
    let mut margin = f64::NEG_INFINITY;
    let mut certifying: Option<bool> = None;
    for (params, est) in cells {
        let threshold = normal_structure_threshold(params);
        let need = if est.certified {
            opts.ns_margin_certified
        } else {
            opts.ns_margin_heuristic
        };
        let r = Report::new(
            "ns_cell",
            space,
            Some(*params),
            est.value,
            Rhs::Value(threshold),
            Relation::Lt,
            need,
        )
        .informational()
        .with_witness(&est.witness)
        .with_note(format!("estimate method {}", est.method));
        margin = margin.max(threshold - est.value);
        if r.passed && certifying != Some(true) {
            certifying = Some(est.certified);
        }
        evidence.push(r);
    }
    let (verdict, notes) = match certifying {
        Some(true) => (Verdict::NormalStructureCertified, String::new()),
        Some(false) => (
            Verdict::NormalStructureCertified,
            "caveat: certified from a heuristic estimate, which is a lower bound of the supremum"
                .to_string(),
        ),
        None => (Verdict::NotCertified, String::new()),
    };
    for r in &mut evidence {
        r.verdict = Some(verdict);
        if !notes.is_empty() {
            let note = std::mem::take(&mut r.notes);
            *r = r.clone().with_note(note).with_note(notes.clone());
        }
    }
    Classification {
        verdict,
        margin,
        evidence,
        notes,
    }
}

/// Normal structure certificate: some cell of `sweep` whose estimate lies
/// strictly below the threshold by the required margin.
pub fn check_normal_structure_thm42(
    space: &NormedSpace,
    sweep: &[SkewParams],
    opts: &VerifyOptions,
) -> Result<Classification> {
    if sweep.is_empty() {
        return Err(Error::OutOfRange {
            name: "sweep",
            value: 0.0,
            domain: "non-empty",
        });
    }
    let cells = sweep
        .iter()
        .map(|q| Ok((*q, estimate_skew_nj(space, q, &opts.estimator)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(normal_structure_classification(space, &cells, opts))
}
