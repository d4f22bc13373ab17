//! Modulus of convexity `delta(eps) = inf { 1 - ||x + y|| / 2 : x, y unit, ||x - y|| >= eps }`
//! and its characteristic `eps_0 = sup { eps : delta(eps) = 0 }`.
//!
//! For a fixed unit `x` and a plane through `x`, let `y(phi)` travel along
//! the unit circle of that plane from `x` to `-x`. Then `||x - y(phi)||`
//! is non-decreasing and `||x + y(phi)||` non-increasing, so the infimum
//! over that arc is reached at the first point with `||x - y|| >= eps`,
//! which bisection on `phi` locates.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use serde::Serialize;

use super::{combo_norm, EstimatorOptions, Witness};
use crate::error::{check_range, Error, Result};
use crate::search::{
    angles_from_direction, axes, coordinate_ascent, direction_from_angles, golden_max, substream,
    AscentConfig,
};
use crate::spaces::{NormedSpace, Vector};

const FEAS_TOL: f64 = 1e-12;
const ARC_TOL: f64 = 1e-14;
const DELTA_STREAM: u64 = 0xD3_17A0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexityEstimate {
    pub eps: f64,
    pub delta: f64,
    /// `witness.value` is `1 - ||x + y|| / 2`.
    pub witness: Witness,
    pub evaluations: u64,
    pub resolution: f64,
}

struct Arc<'a> {
    space: &'a NormedSpace,
    eps: f64,
}

impl Arc<'_> {
    /// Walks from `x = N(u)` towards `-x` in the plane `span(u, w)` (`u`, `w`
    /// Euclidean-orthonormal). Writes `x`, the first feasible `y`, and returns
    /// `(1 - ||x + y|| / 2, evaluations)`.
    fn boundary(&self, u: &[f64], w: &[f64], x: &mut [f64], y: &mut [f64]) -> (f64, u64) {
        x.copy_from_slice(u);
        self.space.normalize_in_place(x);
        let set_y = |phi: f64, y: &mut [f64]| {
            let (s, c) = phi.sin_cos();
            for ((yi, ui), wi) in y.iter_mut().zip(u).zip(w) {
                *yi = c * ui + s * wi;
            }
            self.space.normalize_in_place(y);
        };
        let (mut lo, mut hi) = (0.0, PI);
        let mut evals = 0u64;
        while hi - lo > ARC_TOL {
            let mid = 0.5 * (lo + hi);
            set_y(mid, y);
            evals += 2;
            if combo_norm(self.space, 1.0, x, -1.0, y) >= self.eps - FEAS_TOL {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        set_y(hi, y);
        let value = (1.0 - 0.5 * combo_norm(self.space, 1.0, x, 1.0, y)).clamp(0.0, 1.0);
        (value, evals + 2)
    }
}

fn trivial(space: &NormedSpace) -> ConvexityEstimate {
    let mut x = vec![0.0; space.dim()];
    x[0] = 1.0;
    space.normalize_in_place(&mut x);
    ConvexityEstimate {
        eps: 0.0,
        delta: 0.0,
        witness: Witness {
            x: Vector::from_raw(x.clone()),
            y: Vector::from_raw(x),
            value: 0.0,
        },
        evaluations: 1,
        resolution: 0.0,
    }
}

struct Found {
    x: Vec<f64>,
    y: Vec<f64>,
    value: f64,
    resolution: f64,
}

fn planar(space: &NormedSpace, eps: f64, opts: &EstimatorOptions) -> (Found, u64) {
    let arc = Arc { space, eps };
    let n = opts.delta_grid_steps;
    let h = TAU / n as f64;
    let eval = |theta: f64, side: f64| {
        let (s, c) = theta.sin_cos();
        let u = [c, s];
        let w = [-side * s, side * c];
        let mut x = [0.0; 2];
        let mut y = [0.0; 2];
        let (v, e) = arc.boundary(&u, &w, &mut x, &mut y);
        (v, e, x, y)
    };
    let sides = [1.0, -1.0];
    let grid: Vec<[(f64, u64); 2]> = (0..n)
        .into_par_iter()
        .map(|i| {
            let theta = i as f64 * h;
            let a = eval(theta, sides[0]);
            let b = eval(theta, sides[1]);
            [(a.0, a.1), (b.0, b.1)]
        })
        .collect();
    let mut evaluations: u64 = grid.iter().map(|c| c[0].1 + c[1].1).sum();

    let mut valleys: Vec<(f64, usize, usize)> = Vec::new();
    for s in 0..2 {
        for i in 0..n {
            let v = grid[i][s].0;
            if grid[(i + n - 1) % n][s].0 >= v && grid[(i + 1) % n][s].0 >= v {
                valleys.push((v, i, s));
            }
        }
    }
    valleys.sort_by(|a, b| a.0.total_cmp(&b.0).then((a.1, a.2).cmp(&(b.1, b.2))));
    valleys.truncate(opts.refine_top.max(1));

    let refined: Vec<(f64, u64, f64)> = valleys
        .par_iter()
        .map(|&(_, i, s)| {
            let c = i as f64 * h;
            let mut evals = 0;
            let (theta, neg, _) = golden_max(
                |t| {
                    let (v, e, _, _) = eval(t, sides[s]);
                    evals += e;
                    -v
                },
                c - h,
                c + h,
                ARC_TOL,
                80,
            );
            (theta, evals, -neg)
        })
        .collect();

    let (v0, i0, s0) = valleys[0];
    let (_, _, x, y) = eval(i0 as f64 * h, sides[s0]);
    let mut best = Found {
        x: x.to_vec(),
        y: y.to_vec(),
        value: v0,
        resolution: h,
    };
    for (k, (theta, evals, value)) in refined.into_iter().enumerate() {
        evaluations += evals;
        if value < best.value {
            let (v, e, x, y) = eval(theta, sides[valleys[k].2]);
            evaluations += e;
            best = Found {
                x: x.to_vec(),
                y: y.to_vec(),
                value: v,
                resolution: ARC_TOL,
            };
        }
    }
    (best, evaluations)
}

/// Euclidean-unit `w` orthogonal to `u` along `d`; `None` when `d` is parallel to `u`.
fn orthogonal_part(u: &[f64], d: &[f64], w: &mut [f64]) -> bool {
    let dot: f64 = u.iter().zip(d).map(|(a, b)| a * b).sum();
    for ((wi, ui), di) in w.iter_mut().zip(u).zip(d) {
        *wi = di - dot * ui;
    }
    let len = w.iter().map(|c| c * c).sum::<f64>().sqrt();
    if len < 1e-9 {
        return false;
    }
    w.iter_mut().for_each(|c| *c /= len);
    true
}

fn spatial(space: &NormedSpace, eps: f64, opts: &EstimatorOptions) -> (Found, u64) {
    let arc = Arc { space, eps };
    let n = space.dim();
    let k = n - 1;
    let directions = axes(2 * k);
    let bounds = vec![(f64::NEG_INFINITY, f64::INFINITY); 2 * k];
    let step_tol = opts.step_tol.max(1e-6);
    let runs: Vec<(Found, u64)> = (0..opts.delta_starts as u64)
        .into_par_iter()
        .map(|s| {
            let mut rng = substream(opts.seed ^ DELTA_STREAM, s);
            let mut start = Vec::with_capacity(2 * k);
            for _ in 0..2 {
                let g: Vec<f64> = (0..n)
                    .map(|_| rand::Rng::sample(&mut rng, rand_distr::StandardNormal))
                    .collect();
                start.extend(angles_from_direction(&g));
            }
            let (mut u, mut d, mut w) = (vec![0.0; n], vec![0.0; n], vec![0.0; n]);
            let (mut x, mut y) = (vec![0.0; n], vec![0.0; n]);
            let mut arc_evals = 0u64;
            let mut objective = |theta: &[f64]| {
                direction_from_angles(&theta[..k], &mut u);
                direction_from_angles(&theta[k..], &mut d);
                if !orthogonal_part(&u, &d, &mut w) {
                    return f64::NEG_INFINITY;
                }
                let (v, e) = arc.boundary(&u, &w, &mut x, &mut y);
                arc_evals += e;
                -v
            };
            let cfg = AscentConfig {
                directions: &directions,
                bounds: &bounds,
                initial_step: 0.5,
                step_tol,
                max_sweeps: opts.max_iters,
            };
            let r = coordinate_ascent(&mut objective, start, &cfg);
            let _ = objective(&r.point);
            let found = Found {
                x: x.clone(),
                y: y.clone(),
                value: 1.0 - 0.5 * combo_norm(space, 1.0, &x, 1.0, &y),
                resolution: r.step,
            };
            (
                Found {
                    value: found.value.clamp(0.0, 1.0),
                    ..found
                },
                arc_evals,
            )
        })
        .collect();
    let mut evaluations = 0;
    let mut best: Option<Found> = None;
    for (f, e) in runs {
        evaluations += e;
        if f.value.is_finite() && best.as_ref().map_or(true, |b| f.value < b.value) {
            best = Some(f);
        }
    }
    (best.expect("at least one feasible start"), evaluations)
}

/// Estimate of `delta(eps)` with a witness pair satisfying `||x - y|| >= eps`
/// up to `1e-12`. The value is attained, hence an upper estimate of the infimum.
pub fn estimate_convexity_modulus(
    space: &NormedSpace,
    eps: f64,
    opts: &EstimatorOptions,
) -> Result<ConvexityEstimate> {
    check_range("eps", eps, (0.0..=2.0).contains(&eps), "[0, 2]")?;
    opts.validate()?;
    if eps == 0.0 {
        return Ok(trivial(space));
    }
    let (found, evaluations) = if space.dim() == 2 {
        planar(space, eps, opts)
    } else {
        spatial(space, eps, opts)
    };
    Ok(ConvexityEstimate {
        eps,
        delta: found.value,
        witness: Witness {
            x: Vector::from_raw(found.x),
            y: Vector::from_raw(found.y),
            value: found.value,
        },
        evaluations,
        resolution: found.resolution,
    })
}

/// `delta` over a non-decreasing list of `eps` values.
///
/// A witness for `eps_(k+1)` is feasible for `eps_k`, so each entry is
/// tightened to the smallest value found at or beyond it; the returned
/// sequence is non-decreasing.
pub fn convexity_modulus_sweep(
    space: &NormedSpace,
    eps_values: &[f64],
    opts: &EstimatorOptions,
) -> Result<Vec<ConvexityEstimate>> {
    if eps_values.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::OutOfRange {
            name: "eps",
            value: f64::NAN,
            domain: "non-decreasing sequence",
        });
    }
    let mut out = eps_values
        .par_iter()
        .map(|&eps| estimate_convexity_modulus(space, eps, opts))
        .collect::<Result<Vec<_>>>()?;
    for k in (0..out.len().saturating_sub(1)).rev() {
        if out[k + 1].delta < out[k].delta {
            out[k].delta = out[k + 1].delta;
            out[k].witness = out[k + 1].witness.clone();
        }
    }
    Ok(out)
}

/// `eps_0` by bisection on `delta(eps) <= opts.zero_tol`, to width `opts.eps0_tol`.
pub fn estimate_convexity_characteristic(
    space: &NormedSpace,
    opts: &EstimatorOptions,
) -> Result<f64> {
    let is_zero = |eps: f64| -> Result<bool> {
        Ok(estimate_convexity_modulus(space, eps, opts)?.delta <= opts.zero_tol)
    };
    if is_zero(2.0)? {
        return Ok(2.0);
    }
    let (mut lo, mut hi) = (0.0, 2.0);
    while hi - lo > opts.eps0_tol {
        let mid = 0.5 * (lo + hi);
        if is_zero(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_forms::delta_lr;

    fn quick() -> EstimatorOptions {
        EstimatorOptions {
            delta_grid_steps: 90,
            delta_starts: 4,
            ..Default::default()
        }
    }

    #[test]
    fn euclidean_modulus() {
        let s = NormedSpace::lp(2, 2.0).unwrap();
        let d = estimate_convexity_modulus(&s, 1.0, &quick()).unwrap();
        assert!((d.delta - (1.0 - 3f64.sqrt() / 2.0)).abs() < 1e-9);
        let diff = combo_norm(&s, 1.0, &d.witness.x, -1.0, &d.witness.y);
        assert!(diff >= 1.0 - 1e-12);
    }

    #[test]
    fn lr_modulus_matches_formula() {
        let s = NormedSpace::lp(2, 3.0).unwrap();
        let d = estimate_convexity_modulus(&s, 1.0, &quick()).unwrap();
        assert!(
            (d.delta - delta_lr(1.0, 3.0).unwrap()).abs() < 1e-7,
            "{}",
            d.delta
        );
    }

    #[test]
    fn zero_eps_is_zero() {
        let s = NormedSpace::weighted_c0(3).unwrap();
        let d = estimate_convexity_modulus(&s, 0.0, &quick()).unwrap();
        assert_eq!(d.delta, 0.0);
        assert!(estimate_convexity_modulus(&s, 2.5, &quick()).is_err());
    }

    #[test]
    fn square_modulus_vanishes() {
        let s = NormedSpace::lp(2, 1.0).unwrap();
        for eps in [0.5, 1.5, 2.0] {
            let d = estimate_convexity_modulus(&s, eps, &quick()).unwrap();
            assert!(d.delta < 1e-9, "eps {eps}: {}", d.delta);
        }
    }

    #[test]
    fn euclidean_modulus_in_three_dimensions() {
        let s = NormedSpace::lp(3, 2.0).unwrap();
        let d = estimate_convexity_modulus(&s, 1.0, &quick()).unwrap();
        assert!((d.delta - (1.0 - 3f64.sqrt() / 2.0)).abs() < 1e-7);
    }

    #[test]
    fn sweep_is_monotone() {
        let s = NormedSpace::l1_linf();
        let eps: Vec<f64> = (0..=16).map(|k| k as f64 / 8.0).collect();
        let out = convexity_modulus_sweep(&s, &eps, &quick()).unwrap();
        assert_eq!(out[0].delta, 0.0);
        for w in out.windows(2) {
            assert!(w[0].delta <= w[1].delta);
        }
        assert!(convexity_modulus_sweep(&s, &[1.0, 0.5], &quick()).is_err());
    }

    #[test]
    fn characteristic_values() {
        let o = quick();
        let l1 = NormedSpace::lp(2, 1.0).unwrap();
        assert_eq!(estimate_convexity_characteristic(&l1, &o).unwrap(), 2.0);
        let l2 = NormedSpace::lp(2, 2.0).unwrap();
        assert!(estimate_convexity_characteristic(&l2, &o).unwrap() < 1e-3);
    }
}
