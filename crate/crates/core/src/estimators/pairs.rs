//! Grid and multistart search over pairs of unit vectors, optionally with a
//! scale `t in [0, 1]` on the second vector.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::EstimatorOptions;
use crate::search::{
    angles_from_direction, axes, coordinate_ascent, direction_from_angles, golden_max, sanitize,
    substream, AscentConfig,
};
use crate::spaces::NormedSpace;

#[derive(Debug, Clone)]
pub(crate) struct Candidate {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub t: f64,
    pub value: f64,
}

pub(crate) struct Outcome {
    pub best: Candidate,
    pub evaluations: u64,
    pub resolution: f64,
}

/// Best of `candidates` by value; the earliest wins ties.
fn pick(candidates: Vec<(Candidate, f64)>) -> Option<(Candidate, f64)> {
    let mut best: Option<(Candidate, f64)> = None;
    for c in candidates {
        if best.as_ref().map_or(true, |b| c.0.value > b.0.value) {
            best = Some(c);
        }
    }
    best
}

fn evaluate_seeds<F>(f: &F, seeds: &[(Vec<f64>, Vec<f64>, f64)]) -> Vec<(Candidate, f64)>
where
    F: Fn(&[f64], &[f64], f64) -> f64,
{
    seeds
        .iter()
        .map(|(x, y, t)| {
            let value = sanitize(f(x, y, *t));
            (
                Candidate {
                    x: x.clone(),
                    y: y.clone(),
                    t: *t,
                    value,
                },
                0.0,
            )
        })
        .collect()
}

/// Unit vector of `space` in the Euclidean direction given by `angles`.
fn unit_from_angles(space: &NormedSpace, angles: &[f64], out: &mut [f64]) -> bool {
    direction_from_angles(angles, out);
    space.normalize_in_place(out)
}

/// Evaluates `f` at the pair encoded by `theta = [angles_x, angles_y, (t)]`.
struct PairMap<'a, F> {
    space: &'a NormedSpace,
    f: &'a F,
    free_t: bool,
}

impl<F> PairMap<'_, F>
where
    F: Fn(&[f64], &[f64], f64) -> f64,
{
    fn decode(&self, theta: &[f64], x: &mut [f64], y: &mut [f64]) -> Option<f64> {
        let k = self.space.dim() - 1;
        if !unit_from_angles(self.space, &theta[..k], x)
            || !unit_from_angles(self.space, &theta[k..2 * k], y)
        {
            return None;
        }
        Some(if self.free_t { theta[2 * k] } else { 1.0 })
    }

    fn ascend(
        &self,
        start: Vec<f64>,
        directions: &[Vec<f64>],
        initial_step: f64,
        opts: &EstimatorOptions,
    ) -> (Candidate, u64, f64) {
        let n = self.space.dim();
        let mut bounds = vec![(f64::NEG_INFINITY, f64::INFINITY); 2 * (n - 1)];
        if self.free_t {
            bounds.push((0.0, 1.0));
        }
        let cfg = AscentConfig {
            directions,
            bounds: &bounds,
            initial_step,
            step_tol: opts.step_tol,
            max_sweeps: opts.max_iters,
        };
        let mut x = vec![0.0; n];
        let mut y = vec![0.0; n];
        let r = coordinate_ascent(
            |theta| match self.decode(theta, &mut x, &mut y) {
                Some(t) => (self.f)(&x, &y, t),
                None => f64::NEG_INFINITY,
            },
            start,
            &cfg,
        );
        let t = self.decode(&r.point, &mut x, &mut y).unwrap_or(1.0);
        let value = sanitize((self.f)(&x, &y, t));
        (Candidate { x, y, t, value }, r.evaluations + 1, r.step)
    }
}

/// Dense angular grid over `(theta_x, theta_y)` (and a `t` grid when `free_t`),
/// followed by pattern-search refinement of the best local maxima.
pub(crate) fn grid2d<F>(
    space: &NormedSpace,
    f: &F,
    free_t: bool,
    seeds: &[(Vec<f64>, Vec<f64>, f64)],
    opts: &EstimatorOptions,
) -> Outcome
where
    F: Fn(&[f64], &[f64], f64) -> f64 + Sync,
{
    debug_assert_eq!(space.dim(), 2);
    let n = if free_t {
        (opts.grid_steps / 4).max(16)
    } else {
        opts.grid_steps
    };
    let h = TAU / n as f64;
    let units: Vec<[f64; 2]> = (0..n)
        .map(|i| {
            let a = i as f64 * h;
            let mut v = [a.cos(), a.sin()];
            space.normalize_in_place(&mut v);
            v
        })
        .collect();
    let ts: Vec<f64> = if free_t {
        let m = opts.t_grid.max(2);
        (0..m).map(|k| k as f64 / (m - 1) as f64).collect()
    } else {
        vec![1.0]
    };

    let cells: Vec<Vec<(f64, usize)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut best = (f64::NEG_INFINITY, 0);
                    for (k, &t) in ts.iter().enumerate() {
                        let v = sanitize(f(&units[i], &units[j], t));
                        if v > best.0 {
                            best = (v, k);
                        }
                    }
                    best
                })
                .collect()
        })
        .collect();
    let mut evaluations = (n * n * ts.len()) as u64;

    let mut peaks: Vec<(f64, usize, usize)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = cells[i][j].0;
            let is_peak = (-1i64..=1).all(|di| {
                (-1i64..=1).all(|dj| {
                    let a = (i as i64 + di).rem_euclid(n as i64) as usize;
                    let b = (j as i64 + dj).rem_euclid(n as i64) as usize;
                    cells[a][b].0 <= v
                })
            });
            if is_peak {
                peaks.push((v, i, j));
            }
        }
    }
    peaks.sort_by(|a, b| b.0.total_cmp(&a.0).then((a.1, a.2).cmp(&(b.1, b.2))));
    peaks.truncate(opts.refine_top.max(1));

    let mut directions = vec![
        vec![1.0, 0.0],
        vec![0.0, 1.0],
        vec![FRAC_1_SQRT_2, FRAC_1_SQRT_2],
        vec![FRAC_1_SQRT_2, -FRAC_1_SQRT_2],
    ];
    if free_t {
        for d in &mut directions {
            d.push(0.0);
        }
        directions.push(vec![0.0, 0.0, 1.0]);
    }
    let map = PairMap { space, f, free_t };
    let refined: Vec<(Candidate, u64, f64)> = peaks
        .par_iter()
        .map(|&(_, i, j)| {
            let mut start = vec![i as f64 * h, j as f64 * h];
            if free_t {
                start.push(ts[cells[i][j].1]);
            }
            map.ascend(start, &directions, h, opts)
        })
        .collect();

    let mut all = evaluate_seeds(f, seeds);
    evaluations += seeds.len() as u64;
    if let Some(&(v, i, j)) = peaks.first() {
        all.push((
            Candidate {
                x: units[i].to_vec(),
                y: units[j].to_vec(),
                t: ts[cells[i][j].1],
                value: v,
            },
            h,
        ));
    }
    for (c, evals, step) in refined {
        evaluations += evals;
        all.push((c, step));
    }
    let (best, resolution) = pick(all).expect("grid search yields at least one candidate");
    Outcome {
        best,
        evaluations,
        resolution,
    }
}

fn gaussian_direction(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        if v.iter().any(|c: &f64| c.abs() > 1e-12) {
            return v;
        }
    }
}

/// Independent pattern-search ascents from `opts.starts` random pairs in
/// hyperspherical coordinates. Start `s` draws from its own substream of
/// `opts.seed`, so the outcome does not depend on scheduling.
pub(crate) fn multistart<F>(
    space: &NormedSpace,
    f: &F,
    free_t: bool,
    seeds: &[(Vec<f64>, Vec<f64>, f64)],
    opts: &EstimatorOptions,
) -> Outcome
where
    F: Fn(&[f64], &[f64], f64) -> f64 + Sync,
{
    let n = space.dim();
    let m = 2 * (n - 1) + usize::from(free_t);
    let directions = axes(m);
    let map = PairMap { space, f, free_t };
    let runs: Vec<(Candidate, u64, f64)> = (0..opts.starts as u64)
        .into_par_iter()
        .map(|s| {
            let mut rng = substream(opts.seed, s);
            let mut start = angles_from_direction(&gaussian_direction(&mut rng, n));
            start.extend(angles_from_direction(&gaussian_direction(&mut rng, n)));
            if free_t {
                start.push(rng.random::<f64>());
            }
            map.ascend(start, &directions, 0.5, opts)
        })
        .collect();
    let mut all = evaluate_seeds(f, seeds);
    let mut evaluations = seeds.len() as u64;
    for (c, evals, step) in runs {
        evaluations += evals;
        all.push((c, step));
    }
    let (best, resolution) = pick(all).expect("multistart yields at least one candidate");
    Outcome {
        best,
        evaluations,
        resolution,
    }
}

/// Best ordered pair of `points` under `f` at fixed `t = 1`.
pub(crate) fn extreme_pairs<F>(points: &[Vec<f64>], f: &F) -> (Candidate, u64)
where
    F: Fn(&[f64], &[f64], f64) -> f64,
{
    let mut best: Option<Candidate> = None;
    for x in points {
        for y in points {
            let value = sanitize(f(x, y, 1.0));
            if best.as_ref().map_or(true, |b| value > b.value) {
                best = Some(Candidate {
                    x: x.clone(),
                    y: y.clone(),
                    t: 1.0,
                    value,
                });
            }
        }
    }
    let k = points.len() as u64;
    (best.expect("non-empty extreme point set"), k * k)
}

/// Best ordered pair of `points` with the second vector scaled by `t in [0, 1]`:
/// a `t` grid per pair, then golden-section refinement around the best node.
pub(crate) fn extreme_pairs_scaled<F>(
    points: &[Vec<f64>],
    f: &F,
    opts: &EstimatorOptions,
) -> (Candidate, u64, f64)
where
    F: Fn(&[f64], &[f64], f64) -> f64 + Sync,
{
    let m = (4 * opts.t_grid).max(2);
    let dt = 1.0 / (m - 1) as f64;
    let per_x: Vec<Vec<(Candidate, u64, f64)>> = points
        .par_iter()
        .map(|x| {
            points
                .iter()
                .map(|y| {
                    let mut best = (f64::NEG_INFINITY, 1.0);
                    for k in 0..m {
                        let t = if k + 1 == m { 1.0 } else { k as f64 * dt };
                        let v = sanitize(f(x, y, t));
                        if v > best.0 {
                            best = (v, t);
                        }
                    }
                    let lo = (best.1 - dt).max(0.0);
                    let hi = (best.1 + dt).min(1.0);
                    let (t, v, evals) = golden_max(|t| f(x, y, t), lo, hi, opts.step_tol, 200);
                    let (value, t, width) = if v > best.0 {
                        (v, t, opts.step_tol.max((hi - lo) * 1e-16))
                    } else {
                        (best.0, best.1, dt)
                    };
                    (
                        Candidate {
                            x: x.clone(),
                            y: y.clone(),
                            t,
                            value,
                        },
                        m as u64 + evals,
                        width,
                    )
                })
                .collect()
        })
        .collect();
    let mut evaluations = 0;
    let mut all = Vec::new();
    for (c, evals, width) in per_x.into_iter().flatten() {
        evaluations += evals;
        all.push((c, width));
    }
    let (best, resolution) = pick(all).expect("non-empty extreme point set");
    (best, evaluations, resolution)
}
