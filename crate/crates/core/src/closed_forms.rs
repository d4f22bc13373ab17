//! Closed-form values, bounds and thresholds for the skew constant.
//!
//! Every function evaluates its formula verbatim, including the
//! ones known to disagree with direct computation (the `*_printed`
//! functions). Comparing them against numeric estimates is the job of
//! [`crate::verifiers`].

use serde::Serialize;

use crate::error::{check_range, Error, Result};
use crate::params::SkewParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundPair {
    pub lower: f64,
    pub upper: f64,
}

impl BoundPair {
    pub fn contains(&self, v: f64, slack: f64) -> bool {
        self.lower - slack <= v && v <= self.upper + slack
    }
}

/// Universal bounds on the skew constant:
/// `((xi+nu)^p + |nu-xi|^p) / (2^(p-1)(xi^p+nu^p))` and
/// `(xi+nu)^p / (2^(p-2)(xi^p+nu^p))`.
pub fn bounds_general(params: &SkewParams) -> BoundPair {
    let p = params.p();
    let sum = params.xi() + params.nu();
    let d = params.sphere_denominator();
    BoundPair {
        lower: (sum.powf(p) + params.weight_gap().powf(p)) / d,
        upper: 2.0 * sum.powf(p) / d,
    }
}

/// Value on the `l_1` plane: `(xi+nu)^p / (2^(p-2)(xi^p+nu^p))`.
pub fn value_l1(params: &SkewParams) -> f64 {
    let p = params.p();
    (params.xi() + params.nu()).powf(p) / (2f64.powf(p - 2.0) * params.weight_power_sum())
}

/// Value on the `l_inf` plane; same formula as [`value_l1`].
pub fn value_linf(params: &SkewParams) -> f64 {
    value_l1(params)
}

/// Reference value for the `l1_linf` plane,
/// `(xi^p + (xi^p + nu^p)) / (2^(p-1)(xi^p+nu^p))`, stated for `xi >= nu`.
///
/// Falls below [`bounds_general`]'s lower end whenever `xi != nu`; the
/// extreme-point enumeration on the actual plane gives a different value.
pub fn value_l1_linf_printed(params: &SkewParams) -> Result<f64> {
    if params.xi() < params.nu() {
        return Err(Error::OutOfRange {
            name: "xi",
            value: params.xi(),
            domain: ">= nu",
        });
    }
    let p = params.p();
    let s = params.weight_power_sum();
    Ok((params.xi().powf(p) + s) / params.sphere_denominator())
}

/// Reference piecewise value for `l_r`, `r >= 2`:
/// `[2^(1-1/r) min(xi,nu) + |xi-nu|]^p / (2^(p-2)(xi^p+nu^p))` for `p < r`,
/// `(xi+nu)^p / (2^(p-1)(xi^p+nu^p))` for `p >= r`.
pub fn value_lr_printed(params: &SkewParams, r: f64) -> Result<f64> {
    if r.is_nan() || r < 2.0 {
        return Err(Error::OutOfRange {
            name: "r",
            value: r,
            domain: "[2, inf]",
        });
    }
    let p = params.p();
    let s = params.weight_power_sum();
    if p < r {
        let base = 2f64.powf(1.0 - 1.0 / r) * params.min_weight() + params.weight_gap();
        Ok(base.powf(p) / (2f64.powf(p - 2.0) * s))
    } else {
        Ok((params.xi() + params.nu()).powf(p) / (2f64.powf(p - 1.0) * s))
    }
}

/// Reference value for the weighted `c_0` norm,
/// `(|xi-nu|^p + (xi+nu)^p) / (2^(p-1)(xi^p+nu^p))`.
pub fn value_weighted_c0(params: &SkewParams) -> f64 {
    let p = params.p();
    (params.weight_gap().powf(p) + (params.xi() + params.nu()).powf(p))
        / params.sphere_denominator()
}

/// Modulus of convexity of `l_r`, `r >= 2`: `1 - (1 - (eps/2)^r)^(1/r)`.
pub fn delta_lr(eps: f64, r: f64) -> Result<f64> {
    check_range("eps", eps, (0.0..=2.0).contains(&eps), "[0, 2]")?;
    if r.is_nan() || r < 2.0 {
        return Err(Error::OutOfRange {
            name: "r",
            value: r,
            domain: "[2, inf]",
        });
    }
    if r.is_infinite() {
        return Ok(if eps == 2.0 { 1.0 } else { 0.0 });
    }
    Ok(1.0 - (1.0 - (eps / 2.0).powf(r)).powf(1.0 / r))
}

/// Upper estimate of the unrestricted skew constant from the sphere one:
/// `2^(2-p) [1 + (2^(1/q) tilde^(1/p) - 1)^q]^(p-1)`. Requires `p > 1`.
pub fn thm26_upper(params: &SkewParams, tilde_value: f64) -> Result<f64> {
    let Some(q) = params.q() else {
        return Err(Error::OutOfRange {
            name: "p",
            value: params.p(),
            domain: "> 1",
        });
    };
    check_range("tilde_value", tilde_value, tilde_value > 0.0, "> 0")?;
    let p = params.p();
    let inner = 2f64.powf(1.0 / q) * tilde_value.powf(1.0 / p) - 1.0;
    Ok(2f64.powf(2.0 - p) * (1.0 + inner.powf(q)).powf(p - 1.0))
}

/// Lower estimate from the symmetric constant:
/// `2 min(xi,nu)^p / (xi^p+nu^p) * gen_tilde`.
pub fn thm28_lower(params: &SkewParams, gen_tilde_value: f64) -> f64 {
    2.0 * params.min_weight().powf(params.p()) / params.weight_power_sum() * gen_tilde_value
}

/// Bounds from the James constant:
/// lower `[max(xi,nu) J - |xi-nu|]^p / (2^(p-2)(xi^p+nu^p))`,
/// upper `1 + [min(xi,nu) J + |xi-nu|]^p / (2^(p-1)(xi^p+nu^p))`.
pub fn thm38_bounds(params: &SkewParams, james_value: f64) -> BoundPair {
    let p = params.p();
    let s = params.weight_power_sum();
    let gap = params.weight_gap();
    BoundPair {
        lower: (params.max_weight() * james_value - gap).powf(p) / (2f64.powf(p - 2.0) * s),
        upper: 1.0 + (params.min_weight() * james_value + gap).powf(p) / (2f64.powf(p - 1.0) * s),
    }
}

/// The modulus-of-convexity expression
/// `([2 min(xi,nu)(1-delta) + |xi-nu|]^p + [min(xi,nu) eps + |xi-nu|]^p) / (2^(p-1)(xi^p+nu^p))`.
///
/// The first bracket is `2 min(xi,nu) (1 - delta) + |xi - nu|`.
pub fn thm33_objective(params: &SkewParams, eps: f64, delta_eps: f64) -> Result<f64> {
    check_range("eps", eps, (0.0..=2.0).contains(&eps), "[0, 2]")?;
    check_range(
        "delta",
        delta_eps,
        (0.0..=1.0).contains(&delta_eps),
        "[0, 1]",
    )?;
    let p = params.p();
    let m = params.min_weight();
    let gap = params.weight_gap();
    let a = 2.0 * m * (1.0 - delta_eps) + gap;
    let b = m * eps + gap;
    Ok((a.powf(p) + b.powf(p)) / params.sphere_denominator())
}

/// Normal-structure threshold `((xi+nu)^p + nu^p) / (2^(p-1)(xi^p+nu^p))`.
pub fn normal_structure_threshold(params: &SkewParams) -> f64 {
    let p = params.p();
    ((params.xi() + params.nu()).powf(p) + params.nu().powf(p)) / params.sphere_denominator()
}

/// `(x + y)^p <= 2^(p-1)(x^p + y^p)` with `1e-12` relative slack.
pub fn power_mean_check(x: f64, y: f64, p: f64) -> Result<bool> {
    check_range("x", x, x >= 0.0, ">= 0")?;
    check_range("y", y, y >= 0.0, ">= 0")?;
    check_range("p", p, p >= 1.0, "[1, inf)")?;
    let lhs = (x + y).powf(p);
    let rhs = 2f64.powf(p - 1.0) * (x.powf(p) + y.powf(p));
    Ok(lhs <= rhs + 1e-12 * rhs.max(1.0))
}
