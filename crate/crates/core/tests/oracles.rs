//! Estimates against values computed independently of the estimators:
//! brute-force grids, explicit formulas for Euclidean and square balls, and
//! edge lengths of polygonal balls.

use std::f64::consts::{PI, SQRT_2};

use skewnj::closed_forms::{delta_lr, value_l1};
use skewnj::estimators::{
    estimate_convexity_characteristic, estimate_convexity_modulus, estimate_james,
    estimate_skew_nj, estimate_skew_nj_global, skew_nj_objective,
};
use skewnj::spaces::minkowski_gauge;
use skewnj::{EstimatorOptions, Method, NormedSpace, SkewParams, Vector};

fn sp(xi: f64, nu: f64, p: f64) -> SkewParams {
    SkewParams::new(xi, nu, p).unwrap()
}

fn unit(space: &NormedSpace, theta: f64) -> Vec<f64> {
    let v = [theta.cos(), theta.sin()];
    let n = space.norm(&v).unwrap();
    vec![v[0] / n, v[1] / n]
}

/// `n` equally spaced directions on the unit sphere, plus the vertices when
/// the ball is a polygon.
fn sphere_grid(space: &NormedSpace, n: usize) -> Vec<Vec<f64>> {
    let mut pts: Vec<Vec<f64>> = (0..n)
        .map(|k| unit(space, 2.0 * PI * k as f64 / n as f64))
        .collect();
    if let Some(v) = space.extreme_points() {
        pts.extend(v.into_iter().map(Vector::into_inner));
    }
    pts
}

/// Maximum of the sphere objective over an `n x n` angular grid.
fn brute_skew(space: &NormedSpace, q: &SkewParams, n: usize) -> f64 {
    let pts = sphere_grid(space, n);
    let mut best = f64::NEG_INFINITY;
    for x in &pts {
        for y in &pts {
            best = best.max(skew_nj_objective(space, q, x, y).unwrap());
        }
    }
    best
}

fn brute_james(space: &NormedSpace, n: usize) -> f64 {
    let pts = sphere_grid(space, n);
    let mut best = f64::NEG_INFINITY;
    for x in &pts {
        for y in &pts {
            let s = space.norm(&[x[0] + y[0], x[1] + y[1]]).unwrap();
            let d = space.norm(&[x[0] - y[0], x[1] - y[1]]).unwrap();
            best = best.max(s.min(d));
        }
    }
    best
}

fn hexagon() -> NormedSpace {
    NormedSpace::polyhedral(&[vec![1.0, 0.0], vec![0.5, 0.9], vec![-0.4, 1.0]]).unwrap()
}

#[test]
fn planar_estimates_match_brute_force_grid() {
    let opts = EstimatorOptions::default();
    for space in [
        NormedSpace::lp(2, 3.0).unwrap(),
        NormedSpace::lp(2, 1.5).unwrap(),
        NormedSpace::weighted_c0(2).unwrap(),
        hexagon(),
        NormedSpace::l1_linf(),
    ] {
        for q in [sp(1.0, 1.0, 2.0), sp(2.0, 1.0, 3.0), sp(1.0, 3.0, 1.0)] {
            let est = estimate_skew_nj(&space, &q, &opts).unwrap();
            let brute = brute_skew(&space, &q, 600);
            assert!(
                est.value >= brute - 1e-9,
                "{} {q}: estimate {} below grid {brute}",
                space.name(),
                est.value
            );
            assert!(
                est.value - brute < 2e-4,
                "{} {q}: estimate {} far above grid {brute}",
                space.name(),
                est.value
            );
            let again = skew_nj_objective(&space, &q, &est.witness.x, &est.witness.y).unwrap();
            assert_eq!(again, est.value);
        }
    }
}

#[test]
fn euclidean_closed_forms() {
    // On l2 with xi = nu the objective is (a^p + b^p) / 2^p with a^2 + b^2 = 4.
    let l2 = NormedSpace::lp(2, 2.0).unwrap();
    let opts = EstimatorOptions::default();
    for (p, expect) in [
        (1.0, SQRT_2),
        (1.5, 2f64.powf(0.25)),
        (2.0, 1.0),
        (3.0, 1.0),
    ] {
        let est = estimate_skew_nj(&l2, &sp(1.0, 1.0, p), &opts).unwrap();
        assert!((est.value - expect).abs() < 1e-9, "p={p}: {}", est.value);
    }
    let l2_3d = NormedSpace::lp(3, 2.0).unwrap();
    let est = estimate_skew_nj(&l2_3d, &sp(1.0, 1.0, 1.0), &opts).unwrap();
    assert!((est.value - SQRT_2).abs() < 1e-6);
}

#[test]
fn square_balls_reach_the_upper_bound_in_any_dimension() {
    let opts = EstimatorOptions::default();
    for space in [
        NormedSpace::lp(3, 1.0).unwrap(),
        NormedSpace::lp(4, f64::INFINITY).unwrap(),
    ] {
        for q in skewnj::params::default_grid() {
            let est = estimate_skew_nj(&space, &q, &opts).unwrap();
            assert_eq!(est.method, Method::ExtremePoint);
            assert!((est.value - value_l1(&q)).abs() < 1e-12);
        }
    }
}

#[test]
fn gauge_of_cross_polytope_and_cube() {
    let octahedron: Vec<Vector> = (0..3)
        .map(|i| {
            let mut e = vec![0.0; 3];
            e[i] = 1.0;
            Vector::new(e).unwrap()
        })
        .collect();
    let cube: Vec<Vector> = (0..8)
        .map(|m| {
            Vector::new(
                (0..3)
                    .map(|i| if m >> i & 1 == 1 { 1.0 } else { -1.0 })
                    .collect(),
            )
            .unwrap()
        })
        .collect();
    let mut s = 0x2545_f491_4f6c_dd1du64;
    let mut next = move || {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        (s >> 11) as f64 / (1u64 << 53) as f64 * 4.0 - 2.0
    };
    for _ in 0..500 {
        let v = [next(), next(), next()];
        let l1: f64 = v.iter().map(|x| x.abs()).sum();
        let linf = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        assert!((minkowski_gauge(&octahedron, &v).unwrap() - l1).abs() < 1e-12 * l1.max(1.0));
        assert!((minkowski_gauge(&cube, &v).unwrap() - linf).abs() < 1e-12 * linf.max(1.0));
    }
}

#[test]
fn james_constants() {
    let opts = EstimatorOptions::default();
    let cases = [
        (NormedSpace::lp(2, 2.0).unwrap(), SQRT_2),
        (NormedSpace::lp(2, 1.0).unwrap(), 2.0),
        (NormedSpace::lp(2, f64::INFINITY).unwrap(), 2.0),
        (NormedSpace::l1_linf(), 1.5),
        (NormedSpace::lp(3, 2.0).unwrap(), SQRT_2),
    ];
    for (space, expect) in cases {
        let j = estimate_james(&space, &opts).unwrap();
        assert!(
            (j.value - expect).abs() < 1e-6,
            "{}: {}",
            space.name(),
            j.value
        );
    }
    // On a polygon the objective has kinks off the vertices, so the grid
    // error is first order in the spacing.
    for (space, n, tol) in [
        (hexagon(), 2000, 3e-3),
        (NormedSpace::lp(2, 3.0).unwrap(), 720, 1e-4),
    ] {
        let j = estimate_james(&space, &opts).unwrap().value;
        let brute = brute_james(&space, n);
        assert!(
            j >= brute - 1e-9 && j - brute < tol,
            "{}: {j} vs {brute}",
            space.name()
        );
    }
}

#[test]
fn modulus_of_convexity_formulas() {
    let opts = EstimatorOptions::default();
    for r in [2.0, 3.0, 4.0] {
        let space = NormedSpace::lp(2, r).unwrap();
        for eps in [0.3, 1.0, 1.7] {
            let d = estimate_convexity_modulus(&space, eps, &opts).unwrap();
            let expect = delta_lr(eps, r).unwrap();
            assert!(
                (d.delta - expect).abs() < 1e-6,
                "r={r} eps={eps}: {}",
                d.delta
            );
        }
    }
    let l2_3d = NormedSpace::lp(3, 2.0).unwrap();
    let d = estimate_convexity_modulus(&l2_3d, 1.2, &opts).unwrap();
    assert!((d.delta - (1.0 - 0.64f64.sqrt())).abs() < 1e-5);
}

/// Longest edge of a polygonal unit ball, measured in its own norm. The
/// modulus vanishes exactly up to this length.
fn longest_edge(space: &NormedSpace) -> f64 {
    let mut pts = space.extreme_points().unwrap();
    pts.sort_by(|a, b| a[1].atan2(a[0]).total_cmp(&b[1].atan2(b[0])));
    let n = pts.len();
    (0..n)
        .map(|i| {
            let (a, b) = (&pts[i], &pts[(i + 1) % n]);
            space.norm(&[a[0] - b[0], a[1] - b[1]]).unwrap()
        })
        .fold(0.0, f64::max)
}

#[test]
fn characteristic_of_convexity_matches_edge_length() {
    let opts = EstimatorOptions::default();
    let h = NormedSpace::l1_linf();
    assert!((longest_edge(&h) - 1.0).abs() < 1e-15);
    let e0 = estimate_convexity_characteristic(&h, &opts).unwrap();
    assert!((e0 - 1.0).abs() < 1e-5, "{e0}");
    let hex = hexagon();
    let e0 = estimate_convexity_characteristic(&hex, &opts).unwrap();
    let edge = longest_edge(&hex);
    assert!(edge < 2.0);
    assert!((e0 - edge).abs() < 1e-5, "{e0} vs {edge}");
    let sq = NormedSpace::lp(2, 1.0).unwrap();
    assert_eq!(estimate_convexity_characteristic(&sq, &opts).unwrap(), 2.0);
}

#[test]
fn unrestricted_constant_on_euclidean_and_square_planes() {
    let opts = EstimatorOptions::default();
    let l2 = NormedSpace::lp(2, 2.0).unwrap();
    let g = estimate_skew_nj_global(&l2, &sp(1.0, 1.0, 2.0), &opts).unwrap();
    assert!((g.value - 1.0).abs() < 1e-9);
    let l1 = NormedSpace::lp(2, 1.0).unwrap();
    for q in [sp(1.0, 1.0, 2.0), sp(2.0, 1.0, 3.0)] {
        let g = estimate_skew_nj_global(&l1, &q, &opts).unwrap();
        let tilde = estimate_skew_nj(&l1, &q, &opts).unwrap();
        assert!(g.value >= tilde.value);
        let y: Vec<f64> = g.witness.y.iter().map(|v| v * g.y_norm.unwrap()).collect();
        let r = skewnj::estimators::skew_nj_ratio(&l1, &q, &g.witness.x, &y).unwrap();
        assert!((r - g.value).abs() < 1e-12);
    }
}
