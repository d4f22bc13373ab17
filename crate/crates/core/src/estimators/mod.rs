//! Estimators for constants defined as suprema or infima over unit-sphere pairs.
//!
//! Spaces with a finite extreme-point set get exact enumeration; other planes
//! get a dense angular grid with local refinement, and higher dimensions get
//! seeded multistart pattern search. Every reported value is an objective
//! evaluated at its witness, so non-enumerated results are lower estimates of
//! a supremum (upper estimates of an infimum).

mod convexity;
mod pairs;

use std::fmt;

use serde::Serialize;

use crate::error::{check_range, Error, Result};
use crate::params::SkewParams;
use crate::spaces::{NormedSpace, Vector};
use pairs::Candidate;

pub use convexity::{
    convexity_modulus_sweep, estimate_convexity_characteristic, estimate_convexity_modulus,
    ConvexityEstimate,
};

/// A pair of unit vectors and the objective value there.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub x: Vector,
    pub y: Vector,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ExtremePoint,
    Multistart,
    Grid2d,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ExtremePoint => "extreme_point",
            Method::Multistart => "multistart",
            Method::Grid2d => "grid2d",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Requested search strategy; `Auto` picks enumeration, grid or multistart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodChoice {
    #[default]
    Auto,
    ExtremePoint,
    Grid2d,
    Multistart,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub witness: Witness,
    /// `||y||` for the unrestricted constants, whose witness `y` is the unit
    /// direction of the second vector. Absent for sphere constants.
    pub y_norm: Option<f64>,
    pub method: Method,
    pub evaluations: u64,
    /// Grid spacing or final refinement step.
    pub resolution: f64,
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimatorOptions {
    pub method: MethodChoice,
    /// Angular grid points per angle for the planar grid.
    pub grid_steps: usize,
    /// Number of grid local maxima refined by pattern search.
    pub refine_top: usize,
    pub step_tol: f64,
    pub starts: usize,
    /// Sweep cap per refinement run.
    pub max_iters: usize,
    pub seed: u64,
    /// Nodes of the `t = ||y||` grid for the unrestricted constants.
    pub t_grid: usize,
    /// Angular grid points for the planar modulus of convexity.
    pub delta_grid_steps: usize,
    /// Multistart runs for the modulus of convexity above dimension 2.
    pub delta_starts: usize,
    pub zero_tol: f64,
    /// Bisection width at which the convexity characteristic search stops.
    pub eps0_tol: f64,
}

impl Default for EstimatorOptions {
    fn default() -> Self {
        Self {
            method: MethodChoice::Auto,
            grid_steps: 720,
            refine_top: 8,
            step_tol: 1e-10,
            starts: 64,
            max_iters: 500,
            seed: 0,
            t_grid: 17,
            delta_grid_steps: 360,
            delta_starts: 16,
            zero_tol: 1e-7,
            eps0_tol: 1e-6,
        }
    }
}

impl EstimatorOptions {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_method(mut self, method: MethodChoice) -> Self {
        self.method = method;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let count = |name, v: usize, min: usize| {
            check_range(name, v as f64, v >= min, "integer above its minimum")
        };
        count("grid_steps", self.grid_steps, 8)?;
        count("refine_top", self.refine_top, 1)?;
        count("starts", self.starts, 1)?;
        count("max_iters", self.max_iters, 1)?;
        count("t_grid", self.t_grid, 2)?;
        count("delta_grid_steps", self.delta_grid_steps, 8)?;
        count("delta_starts", self.delta_starts, 1)?;
        check_range("step_tol", self.step_tol, self.step_tol > 0.0, "> 0")?;
        check_range("zero_tol", self.zero_tol, self.zero_tol > 0.0, "> 0")?;
        check_range("eps0_tol", self.eps0_tol, self.eps0_tol > 0.0, "> 0")?;
        Ok(())
    }
}

/// `||a x + b y||` without allocating for small dimensions.
pub(crate) fn combo_norm(space: &NormedSpace, a: f64, x: &[f64], b: f64, y: &[f64]) -> f64 {
    let n = x.len();
    if n <= 8 {
        let mut buf = [0.0; 8];
        for i in 0..n {
            buf[i] = a * x[i] + b * y[i];
        }
        space.norm_unchecked(&buf[..n])
    } else {
        let v: Vec<f64> = x.iter().zip(y).map(|(xi, yi)| a * xi + b * yi).collect();
        space.norm_unchecked(&v)
    }
}

/// `||xi x + nu t y||^p + ||nu x - xi t y||^p`.
fn skew_numerator(space: &NormedSpace, params: &SkewParams, x: &[f64], y: &[f64], t: f64) -> f64 {
    let (xi, nu, p) = (params.xi(), params.nu(), params.p());
    combo_norm(space, xi, x, nu * t, y).powf(p) + combo_norm(space, nu, x, -xi * t, y).powf(p)
}

pub(crate) fn skew_value(space: &NormedSpace, params: &SkewParams, x: &[f64], y: &[f64]) -> f64 {
    skew_numerator(space, params, x, y, 1.0) / params.sphere_denominator()
}

/// Unrestricted objective at `||x|| = 1`, `||y|| = t`, with `y` given as a unit direction.
pub(crate) fn skew_global_value(
    space: &NormedSpace,
    params: &SkewParams,
    x: &[f64],
    y: &[f64],
    t: f64,
) -> f64 {
    let p = params.p();
    skew_numerator(space, params, x, y, t)
        / (2f64.powf(p - 2.0) * params.weight_power_sum() * (1.0 + t.powf(p)))
}

pub(crate) fn james_value(space: &NormedSpace, x: &[f64], y: &[f64]) -> f64 {
    combo_norm(space, 1.0, x, 1.0, y).min(combo_norm(space, 1.0, x, -1.0, y))
}

fn check_unit_pair(space: &NormedSpace, x: &[f64], y: &[f64]) -> Result<()> {
    space.check_unit(x)?;
    space.check_unit(y)
}

/// `(||xi x + nu y||^p + ||nu x - xi y||^p) / (2^(p-1)(xi^p + nu^p))` for unit `x`, `y`.
pub fn skew_nj_objective(
    space: &NormedSpace,
    params: &SkewParams,
    x: &[f64],
    y: &[f64],
) -> Result<f64> {
    check_unit_pair(space, x, y)?;
    Ok(skew_value(space, params, x, y))
}

/// `(||xi x + nu y||^p + ||nu x - xi y||^p) / (2^(p-2)(xi^p + nu^p)(||x||^p + ||y||^p))`
/// for arbitrary `x`, `y` not both zero.
pub fn skew_nj_ratio(
    space: &NormedSpace,
    params: &SkewParams,
    x: &[f64],
    y: &[f64],
) -> Result<f64> {
    let nx = space.norm(x)?;
    let ny = space.norm(y)?;
    if nx == 0.0 && ny == 0.0 {
        return Err(Error::ZeroVector);
    }
    let p = params.p();
    let (xi, nu) = (params.xi(), params.nu());
    let num = combo_norm(space, xi, x, nu, y).powf(p) + combo_norm(space, nu, x, -xi, y).powf(p);
    Ok(num / (2f64.powf(p - 2.0) * params.weight_power_sum() * (nx.powf(p) + ny.powf(p))))
}

/// `min(||x + y||, ||x - y||)` for unit `x`, `y`.
pub fn james_objective(space: &NormedSpace, x: &[f64], y: &[f64]) -> Result<f64> {
    check_unit_pair(space, x, y)?;
    Ok(james_value(space, x, y))
}

enum Route {
    Extreme(Vec<Vec<f64>>),
    Grid,
    Multistart,
}

fn route(space: &NormedSpace, choice: MethodChoice, enumerate: bool) -> Result<Route> {
    let points = || {
        space
            .extreme_points()
            .map(|v| v.into_iter().map(Vector::into_inner).collect())
    };
    match choice {
        MethodChoice::Auto => Ok(match points().filter(|_| enumerate) {
            Some(p) => Route::Extreme(p),
            None if space.dim() == 2 => Route::Grid,
            None => Route::Multistart,
        }),
        MethodChoice::ExtremePoint => points()
            .map(Route::Extreme)
            .ok_or_else(|| Error::NoExtremePoints(space.name().to_string())),
        MethodChoice::Grid2d if space.dim() == 2 => Ok(Route::Grid),
        MethodChoice::Grid2d => Err(Error::MethodNotApplicable {
            method: "grid2d",
            reason: format!("space has dimension {}", space.dim()),
        }),
        MethodChoice::Multistart => Ok(Route::Multistart),
    }
}

fn to_estimate(
    c: Candidate,
    method: Method,
    evaluations: u64,
    resolution: f64,
    certified: bool,
    scaled: bool,
) -> Estimate {
    Estimate {
        value: c.value,
        witness: Witness {
            x: Vector::from_raw(c.x),
            y: Vector::from_raw(c.y),
            value: c.value,
        },
        y_norm: scaled.then_some(c.t),
        method,
        evaluations,
        resolution,
        certified,
    }
}

fn first_axis_unit(space: &NormedSpace) -> Vec<f64> {
    let mut e = vec![0.0; space.dim()];
    e[0] = 1.0;
    space.normalize_in_place(&mut e);
    e
}

/// Sphere-restricted skew constant.
pub fn estimate_skew_nj(
    space: &NormedSpace,
    params: &SkewParams,
    opts: &EstimatorOptions,
) -> Result<Estimate> {
    opts.validate()?;
    let f = |x: &[f64], y: &[f64], _t: f64| skew_value(space, params, x, y);
    let e = first_axis_unit(space);
    let seeds = [(e.clone(), e, 1.0)];
    Ok(match route(space, opts.method, true)? {
        Route::Extreme(points) => {
            let (c, n) = pairs::extreme_pairs(&points, &f);
            to_estimate(c, Method::ExtremePoint, n, 0.0, true, false)
        }
        Route::Grid => {
            let o = pairs::grid2d(space, &f, false, &seeds, opts);
            to_estimate(
                o.best,
                Method::Grid2d,
                o.evaluations,
                o.resolution,
                false,
                false,
            )
        }
        Route::Multistart => {
            let o = pairs::multistart(space, &f, false, &seeds, opts);
            to_estimate(
                o.best,
                Method::Multistart,
                o.evaluations,
                o.resolution,
                false,
                false,
            )
        }
    })
}

/// Exact sphere-restricted skew constant by enumerating ordered pairs of
/// extreme points.
pub fn extreme_point_supremum(space: &NormedSpace, params: &SkewParams) -> Result<Estimate> {
    let points: Vec<Vec<f64>> = space
        .extreme_points()
        .ok_or_else(|| Error::NoExtremePoints(space.name().to_string()))?
        .into_iter()
        .map(Vector::into_inner)
        .collect();
    let f = |x: &[f64], y: &[f64], _t: f64| skew_value(space, params, x, y);
    let (c, n) = pairs::extreme_pairs(&points, &f);
    Ok(to_estimate(c, Method::ExtremePoint, n, 0.0, true, false))
}

/// Unrestricted skew constant, searched over `||x|| = 1`, `||y|| = t in [0, 1]`.
///
/// The sphere estimate is computed first and its witness seeds the search at
/// `t = 1`, so the result is never below it. Never certified.
pub fn estimate_skew_nj_global(
    space: &NormedSpace,
    params: &SkewParams,
    opts: &EstimatorOptions,
) -> Result<Estimate> {
    let tilde = estimate_skew_nj(space, params, opts)?;
    let f = |x: &[f64], y: &[f64], t: f64| skew_global_value(space, params, x, y, t);
    let seeds = [(tilde.witness.x.to_vec(), tilde.witness.y.to_vec(), 1.0)];
    let est = match route(space, opts.method, true)? {
        Route::Extreme(points) => {
            let (c, n, res) = pairs::extreme_pairs_scaled(&points, &f, opts);
            let seed = seeds_value(&f, &seeds[0]);
            let c = if seed.value > c.value { seed } else { c };
            to_estimate(c, Method::ExtremePoint, n + 1, res, false, true)
        }
        Route::Grid => {
            let o = pairs::grid2d(space, &f, true, &seeds, opts);
            to_estimate(
                o.best,
                Method::Grid2d,
                o.evaluations,
                o.resolution,
                false,
                true,
            )
        }
        Route::Multistart => {
            let o = pairs::multistart(space, &f, true, &seeds, opts);
            to_estimate(
                o.best,
                Method::Multistart,
                o.evaluations,
                o.resolution,
                false,
                true,
            )
        }
    };
    Ok(Estimate {
        evaluations: est.evaluations + tilde.evaluations,
        ..est
    })
}

fn seeds_value<F>(f: &F, seed: &(Vec<f64>, Vec<f64>, f64)) -> Candidate
where
    F: Fn(&[f64], &[f64], f64) -> f64,
{
    Candidate {
        x: seed.0.clone(),
        y: seed.1.clone(),
        t: seed.2,
        value: f(&seed.0, &seed.1, seed.2),
    }
}

/// Sphere constant `sup (||x + y||^p + ||x - y||^p) / 2^p`; the skew constant at `xi = nu = 1`.
pub fn estimate_gen_nj_tilde(
    space: &NormedSpace,
    p: f64,
    opts: &EstimatorOptions,
) -> Result<Estimate> {
    estimate_skew_nj(space, &SkewParams::new(1.0, 1.0, p)?, opts)
}

/// James constant `sup min(||x + y||, ||x - y||)` over unit pairs.
///
/// Extreme-point pairs, when available, seed the search but the result is
/// never certified: the objective is a minimum of convex functions.
pub fn estimate_james(space: &NormedSpace, opts: &EstimatorOptions) -> Result<Estimate> {
    opts.validate()?;
    let f = |x: &[f64], y: &[f64], _t: f64| james_value(space, x, y);
    let points: Option<Vec<Vec<f64>>> = space
        .extreme_points()
        .map(|v| v.into_iter().map(Vector::into_inner).collect());
    let mut seeds = Vec::new();
    let mut seed_evals = 0;
    if let Some(points) = &points {
        let (c, n) = pairs::extreme_pairs(points, &f);
        seeds.push((c.x, c.y, 1.0));
        seed_evals = n;
    }
    let (method, o) = match opts.method {
        MethodChoice::ExtremePoint => {
            let points = points.ok_or_else(|| Error::NoExtremePoints(space.name().to_string()))?;
            let (c, n) = pairs::extreme_pairs(&points, &f);
            return Ok(to_estimate(c, Method::ExtremePoint, n, 0.0, false, false));
        }
        MethodChoice::Auto | MethodChoice::Grid2d if space.dim() == 2 => (
            Method::Grid2d,
            pairs::grid2d(space, &f, false, &seeds, opts),
        ),
        MethodChoice::Grid2d => {
            return Err(Error::MethodNotApplicable {
                method: "grid2d",
                reason: format!("space has dimension {}", space.dim()),
            })
        }
        MethodChoice::Auto | MethodChoice::Multistart => (
            Method::Multistart,
            pairs::multistart(space, &f, false, &seeds, opts),
        ),
    };
    Ok(to_estimate(
        o.best,
        method,
        o.evaluations + seed_evals,
        o.resolution,
        false,
        false,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LyjMode {
    /// Unrestricted `L_YJ(xi, nu, X)`.
    Global,
    /// Sphere-restricted `L'_YJ(xi, nu, X)`.
    Sphere,
}

/// `L_YJ` / `L'_YJ`: the skew constants at `p = 2`.
pub fn estimate_lyj(
    space: &NormedSpace,
    xi: f64,
    nu: f64,
    mode: LyjMode,
    opts: &EstimatorOptions,
) -> Result<Estimate> {
    let params = SkewParams::new(xi, nu, 2.0)?;
    match mode {
        LyjMode::Global => estimate_skew_nj_global(space, &params, opts),
        LyjMode::Sphere => estimate_skew_nj(space, &params, opts),
    }
}
