//! Derivative-free local search primitives shared by the estimators.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// NaN-safe value for maximization.
#[inline]
pub(crate) fn sanitize(v: f64) -> f64 {
    if v.is_nan() {
        f64::NEG_INFINITY
    } else {
        v
    }
}

/// Golden-section maximization of `f` on `[a, b]`, also probing the endpoints.
/// Returns `(argmax, max, evaluations)`.
pub(crate) fn golden_max(
    mut f: impl FnMut(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
    max_evals: usize,
) -> (f64, f64, u64) {
    let mut evals = 0u64;
    let mut eval = |x: f64| {
        evals += 1;
        sanitize(f(x))
    };
    let (mut lo, mut hi) = (a, b);
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = eval(c);
    let mut fd = eval(d);
    let (mut best_x, mut best_f) = if fc >= fd { (c, fc) } else { (d, fd) };
    let mut n = 2;
    while hi - lo > tol && n < max_evals {
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = eval(c);
            if fc > best_f {
                best_x = c;
                best_f = fc;
            }
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = eval(d);
            if fd > best_f {
                best_x = d;
                best_f = fd;
            }
        }
        n += 1;
    }
    for x in [a, b] {
        let fx = eval(x);
        if fx > best_f {
            best_x = x;
            best_f = fx;
        }
    }
    (best_x, best_f, evals)
}

pub(crate) struct Ascent {
    pub point: Vec<f64>,
    pub evaluations: u64,
    pub step: f64,
}

/// Settings for [`coordinate_ascent`].
pub(crate) struct AscentConfig<'a> {
    pub directions: &'a [Vec<f64>],
    /// Per-coordinate box; use infinities for unbounded coordinates.
    pub bounds: &'a [(f64, f64)],
    pub initial_step: f64,
    pub step_tol: f64,
    pub max_sweeps: usize,
}

/// Pattern search along fixed directions with golden-section line searches.
/// The step halves after each sweep without improvement and the search stops
/// once it drops below `step_tol` or after `max_sweeps` sweeps.
pub(crate) fn coordinate_ascent(
    mut f: impl FnMut(&[f64]) -> f64,
    start: Vec<f64>,
    cfg: &AscentConfig<'_>,
) -> Ascent {
    let mut point = start;
    let mut value = sanitize(f(&point));
    let mut evaluations = 1u64;
    let mut h = cfg.initial_step;
    let mut trial = point.clone();
    let mut sweeps = 0;
    while h > cfg.step_tol && sweeps < cfg.max_sweeps {
        sweeps += 1;
        let mut improved = false;
        for d in cfg.directions {
            let (mut lo, mut hi) = (-h, h);
            for ((&x, &di), &(bl, bu)) in point.iter().zip(d).zip(cfg.bounds) {
                if di > 0.0 {
                    lo = lo.max((bl - x) / di);
                    hi = hi.min((bu - x) / di);
                } else if di < 0.0 {
                    lo = lo.max((bu - x) / di);
                    hi = hi.min((bl - x) / di);
                }
            }
            if hi - lo <= 0.0 {
                continue;
            }
            let (s, v, n) = golden_max(
                |s| {
                    for ((t, &x), &di) in trial.iter_mut().zip(&point).zip(d) {
                        *t = x + s * di;
                    }
                    f(&trial)
                },
                lo,
                hi,
                (hi - lo) * 1e-4,
                32,
            );
            evaluations += n;
            if v > value {
                for (x, &di) in point.iter_mut().zip(d) {
                    *x += s * di;
                }
                value = v;
                improved = true;
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
    Ascent {
        point,
        evaluations,
        step: h,
    }
}

/// Coordinate axes of `R^n`.
pub(crate) fn axes(n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|i| {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            e
        })
        .collect()
}

/// Hyperspherical angles to a Euclidean unit vector in `R^(angles.len() + 1)`.
pub(crate) fn direction_from_angles(angles: &[f64], out: &mut [f64]) {
    let n = angles.len() + 1;
    debug_assert_eq!(out.len(), n);
    let mut s = 1.0;
    for (k, &a) in angles.iter().enumerate() {
        out[k] = s * a.cos();
        s *= a.sin();
    }
    out[n - 1] = s;
}

/// Inverse of [`direction_from_angles`] for a nonzero vector.
pub(crate) fn angles_from_direction(v: &[f64]) -> Vec<f64> {
    let n = v.len();
    let mut out = Vec::with_capacity(n - 1);
    for k in 0..n - 2 {
        let tail: f64 = v[k + 1..].iter().map(|x| x * x).sum::<f64>().sqrt();
        out.push(tail.atan2(v[k]));
    }
    out.push(v[n - 1].atan2(v[n - 2]));
    out
}

/// Mixes a base seed with a stream index (splitmix64 finalizer).
pub(crate) fn mix_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent generator for stream `index` under `seed`.
pub(crate) fn substream(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix_seed(seed, index))
}
