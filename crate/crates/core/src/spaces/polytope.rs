//! Symmetric convex polytopes and their Minkowski gauges.
//!
//! A polytope is stored twice: as its vertex set (the extreme points of the
//! unit ball it defines) and as a facet list `a_k` with `a_k · x <= 1`. The
//! gauge of `v` is then `max_k a_k · v`. In the plane the facets come from
//! the hull edges (one 2x2 solve per edge) and evaluation is an angular
//! lookup of the single edge whose cone contains `v`; in higher dimensions
//! the facets are enumerated from vertex subsets.

use crate::error::{Error, Result};

/// Coordinates closer than this are treated as the same point when building
/// hulls.
const MERGE_TOL: f64 = 1e-12;
/// Slack for the "all vertices on the inner side" facet test.
const FACET_TOL: f64 = 1e-9;
/// Upper limit on vertex subsets examined by facet enumeration.
const MAX_SUBSETS: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Vec<f64>>,
    facets: Vec<Vec<f64>>,
    /// Polar angles of `vertices` (planar case only), ascending in `[-pi, pi)`.
    angles: Vec<f64>,
}

impl Polytope {
    /// Builds the symmetric hull of `points`.
    ///
    /// The negation of every point is added when missing, zero and duplicate
    /// points are dropped, and points that are not extreme are discarded.
    pub fn from_points(points: &[Vec<f64>]) -> Result<Self> {
        let dim = match points.first() {
            Some(p) => p.len(),
            None => return Err(Error::DegenerateHull("no points given".into())),
        };
        if dim < 2 {
            return Err(Error::DimensionTooSmall(dim));
        }
        let mut pts: Vec<Vec<f64>> = Vec::with_capacity(points.len() * 2);
        for p in points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.len(),
                });
            }
            if let Some(i) = p.iter().position(|c| !c.is_finite()) {
                return Err(Error::NonFinite(i));
            }
            if p.iter().all(|c| c.abs() <= MERGE_TOL) {
                continue;
            }
            for cand in [p.clone(), p.iter().map(|c| -c).collect()] {
                if !pts.iter().any(|q| same_point(q, &cand)) {
                    pts.push(cand);
                }
            }
        }
        if rank(&pts, dim) < dim {
            return Err(Error::DegenerateHull(format!(
                "{} points do not span R^{dim}",
                pts.len()
            )));
        }
        if dim == 2 {
            Self::planar(pts)
        } else {
            Self::general(pts, dim)
        }
    }

    fn planar(pts: Vec<Vec<f64>>) -> Result<Self> {
        let hull = convex_hull_2d(&pts);
        if hull.len() < 4 {
            return Err(Error::DegenerateHull("hull has empty interior".into()));
        }
        let mut tagged: Vec<(f64, Vec<f64>)> =
            hull.into_iter().map(|v| (v[1].atan2(v[0]), v)).collect();
        tagged.sort_by(|a, b| a.0.total_cmp(&b.0));
        let angles: Vec<f64> = tagged.iter().map(|t| t.0).collect();
        let vertices: Vec<Vec<f64>> = tagged.into_iter().map(|t| t.1).collect();
        let m = vertices.len();
        let mut facets = Vec::with_capacity(m);
        for i in 0..m {
            let a = &vertices[i];
            let b = &vertices[(i + 1) % m];
            // Solve [a; b] n = [1; 1].
            let det = a[0] * b[1] - a[1] * b[0];
            if det <= 0.0 {
                return Err(Error::DegenerateHull(
                    "origin is not interior to the hull".into(),
                ));
            }
            facets.push(vec![(b[1] - a[1]) / det, (a[0] - b[0]) / det]);
        }
        Ok(Self {
            dim: 2,
            vertices,
            facets,
            angles,
        })
    }

    fn general(pts: Vec<Vec<f64>>, dim: usize) -> Result<Self> {
        let subsets = binomial(pts.len() as u64, dim as u64);
        if subsets > MAX_SUBSETS {
            return Err(Error::DegenerateHull(format!(
                "{} points in dimension {dim} exceed the facet enumeration limit",
                pts.len()
            )));
        }
        let mut facets: Vec<Vec<f64>> = Vec::new();
        for_each_combination(pts.len(), dim, |idx| {
            let rows: Vec<&[f64]> = idx.iter().map(|&i| pts[i].as_slice()).collect();
            let Some(a) = solve_ones(&rows) else {
                return;
            };
            let supporting = pts.iter().all(|p| dot(&a, p) <= 1.0 + FACET_TOL);
            if supporting && !facets.iter().any(|f| same_point(f, &a)) {
                facets.push(a);
            }
        });
        // A point is a vertex iff the facets through it have full-rank normals.
        let vertices: Vec<Vec<f64>> = pts
            .into_iter()
            .filter(|p| {
                let active: Vec<Vec<f64>> = facets
                    .iter()
                    .filter(|a| (dot(a, p) - 1.0).abs() <= FACET_TOL)
                    .cloned()
                    .collect();
                rank(&active, dim) == dim
            })
            .collect();
        Ok(Self {
            dim,
            vertices,
            facets,
            angles: Vec::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Extreme points of the unit ball.
    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    /// Facet normals `a` with `a . x <= 1` on the ball.
    pub fn facets(&self) -> &[Vec<f64>] {
        &self.facets
    }

    /// Minkowski gauge of `v`. Caller guarantees `v.len() == self.dim()`.
    pub fn gauge(&self, v: &[f64]) -> f64 {
        if self.dim == 2 {
            if v[0] == 0.0 && v[1] == 0.0 {
                return 0.0;
            }
            let theta = v[1].atan2(v[0]);
            let m = self.angles.len();
            // Edge k joins vertex k to vertex k+1 and covers angles [angle_k, angle_{k+1}).
            let k = match self.angles.partition_point(|&a| a <= theta) {
                0 => m - 1,
                i => i - 1,
            };
            let a = &self.facets[k];
            // Neighbouring edges agree on the shared vertex ray; take the max
            // so angle round-off at a vertex never under-reports.
            let prev = &self.facets[(k + m - 1) % m];
            let next = &self.facets[(k + 1) % m];
            (a[0] * v[0] + a[1] * v[1])
                .max(prev[0] * v[0] + prev[1] * v[1])
                .max(next[0] * v[0] + next[1] * v[1])
        } else {
            self.facets.iter().map(|a| dot(a, v)).fold(0.0, f64::max)
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn same_point(a: &[f64], b: &[f64]) -> bool {
    let scale = a.iter().chain(b).fold(1.0_f64, |m, c| m.max(c.abs()));
    a.iter()
        .zip(b)
        .all(|(x, y)| (x - y).abs() <= MERGE_TOL * scale)
}

/// Numerical rank by Gaussian elimination with partial pivoting.
fn rank(rows: &[Vec<f64>], dim: usize) -> usize {
    let mut m: Vec<Vec<f64>> = rows.to_vec();
    let scale = m.iter().flatten().fold(0.0_f64, |acc, c| acc.max(c.abs()));
    if scale == 0.0 {
        return 0;
    }
    let tol = 1e-10 * scale;
    let mut r = 0;
    for col in 0..dim {
        let Some(piv) = (r..m.len()).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
        else {
            break;
        };
        if m[piv][col].abs() <= tol {
            continue;
        }
        m.swap(r, piv);
        for i in (r + 1)..m.len() {
            let f = m[i][col] / m[r][col];
            for c in col..dim {
                m[i][c] -= f * m[r][c];
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Solves `rows * a = 1` for square `rows`; `None` when singular.
fn solve_ones(rows: &[&[f64]]) -> Option<Vec<f64>> {
    let n = rows.len();
    let mut m: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| {
            let mut row = r.to_vec();
            row.push(1.0);
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[piv][col].abs() < 1e-12 {
            return None;
        }
        m.swap(col, piv);
        for i in 0..n {
            if i != col {
                let f = m[i][col] / m[col][col];
                for c in col..=n {
                    m[i][c] -= f * m[col][c];
                }
            }
        }
    }
    Some((0..n).map(|i| m[i][n] / m[i][i]).collect())
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in (i + 1)..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Andrew's monotone chain; collinear boundary points are dropped.
fn convex_hull_2d(pts: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut p: Vec<&Vec<f64>> = pts.iter().collect();
    p.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let cross = |o: &[f64], a: &[f64], b: &[f64]| {
        (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    };
    let scale = pts.iter().flatten().fold(1.0_f64, |m, c| m.max(c.abs()));
    let eps = 1e-12 * scale * scale;
    let mut hull: Vec<&Vec<f64>> = Vec::with_capacity(p.len() * 2);
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &&Vec<f64>>> = if pass == 0 {
            Box::new(p.iter())
        } else {
            Box::new(p.iter().rev())
        };
        for q in iter {
            while hull.len() >= start + 2
                && cross(hull[hull.len() - 2], hull[hull.len() - 1], q) <= eps
            {
                hull.pop();
            }
            hull.push(q);
        }
        hull.pop();
    }
    hull.into_iter().cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Polytope {
        Polytope::from_points(&[vec![1.0, 1.0], vec![1.0, -1.0]]).unwrap()
    }

    #[test]
    fn symmetric_closure_and_vertices() {
        let p = square();
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.facets().len(), 4);
    }

    #[test]
    fn interior_points_are_dropped() {
        let p = Polytope::from_points(&[
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![0.25, 0.25],
            vec![0.5, 0.5],
        ])
        .unwrap();
        // (0.5, 0.5) lies on the edge from (1,0) to (0,1).
        assert_eq!(p.vertices().len(), 4);
    }

    #[test]
    fn square_gauge_is_sup_norm() {
        let p = square();
        assert_eq!(p.gauge(&[1.0, 0.0]), 1.0);
        assert_eq!(p.gauge(&[0.3, -0.7]), 0.7);
        assert_eq!(p.gauge(&[0.0, 0.0]), 0.0);
    }

    #[test]
    fn collinear_points_are_degenerate() {
        let err = Polytope::from_points(&[vec![1.0, 1.0], vec![2.0, 2.0]]).unwrap_err();
        assert!(matches!(err, Error::DegenerateHull(_)));
    }

    #[test]
    fn cube_facets_in_three_dimensions() {
        let mut pts = Vec::new();
        for s in 0..8u32 {
            pts.push(
                (0..3)
                    .map(|i| if s >> i & 1 == 1 { 1.0 } else { -1.0 })
                    .collect(),
            );
        }
        let p = Polytope::from_points(&pts).unwrap();
        assert_eq!(p.facets().len(), 6);
        assert_eq!(p.vertices().len(), 8);
        assert!((p.gauge(&[0.2, -0.9, 0.5]) - 0.9).abs() < 1e-15);
    }

    #[test]
    fn octahedron_gauge_is_one_norm() {
        let p = Polytope::from_points(&[
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ])
        .unwrap();
        assert_eq!(p.facets().len(), 8);
        assert!((p.gauge(&[0.2, -0.9, 0.5]) - 1.6).abs() < 1e-14);
    }

    #[test]
    fn combinations_are_enumerated_in_order() {
        let mut seen = Vec::new();
        for_each_combination(4, 2, |c| seen.push(c.to_vec()));
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![0, 1]);
        assert_eq!(seen[5], vec![2, 3]);
        assert_eq!(binomial(8, 3), 56);
    }
}
