//! Finite-dimensional real normed spaces and the catalog of concrete norms.

mod polytope;

use std::fmt;
use std::ops::Deref;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use polytope::Polytope;

/// Unit-norm tolerance for norms evaluated by a closed formula.
pub const TOL_NORM_DIRECT: f64 = 1e-12;
/// Unit-norm tolerance for gauge-evaluated (polyhedral) norms.
pub const TOL_NORM_GAUGE: f64 = 1e-9;

/// A point of `R^n`, `n >= 2`, with finite coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::DimensionTooSmall(coords.len()));
        }
        if let Some(i) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self(coords))
    }

    pub(crate) fn from_raw(coords: Vec<f64>) -> Self {
        Self(coords)
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for Vector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for Vector {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Vector> for Vec<f64> {
    fn from(v: Vector) -> Self {
        v.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum NormKind {
    /// `(sum |x_i|^r)^(1/r)`; `r = f64::INFINITY` is the max norm.
    Lp { r: f64 },
    /// The plane with `||x||_inf` when `x1 x2 >= 0` and `||x||_1` when `x1 x2 <= 0`.
    /// Also known as the `l_inf - l_1` plane.
    L1Linf,
    /// `max_i |x_i| + (sum_i x_i^2 / 4^i)^(1/2)`, the weighted `c_0` norm
    /// truncated to the ambient dimension.
    WeightedC0,
    /// Minkowski gauge of the symmetric hull of a finite point set.
    Polyhedral(Polytope),
}

/// A real normed space of finite dimension `>= 2`. Immutable after
/// construction.
#[derive(Debug, Clone, PartialEq)]
pub struct NormedSpace {
    dim: usize,
    kind: NormKind,
    name: String,
}

/// Descriptive facts about a space, used by the catalog listing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpaceMetadata {
    pub name: String,
    pub dim: usize,
    pub tol_norm: f64,
    pub strictly_convex: bool,
    pub extreme_point_count: Option<usize>,
    /// For the truncated weighted norm: `c` such that the discarded series
    /// tail contributes at most `c * max_i |x_i|`.
    pub truncation_tail_factor: Option<f64>,
}

impl NormedSpace {
    pub fn lp(dim: usize, r: f64) -> Result<Self> {
        check_dim(dim)?;
        if r.is_nan() || r < 1.0 {
            return Err(Error::OutOfRange {
                name: "r",
                value: r,
                domain: "[1, inf]",
            });
        }
        let name = if r.is_infinite() {
            format!("lp(r=inf,dim={dim})")
        } else {
            format!("lp(r={r},dim={dim})")
        };
        Ok(Self {
            dim,
            kind: NormKind::Lp { r },
            name,
        })
    }

    pub fn l1_linf() -> Self {
        Self {
            dim: 2,
            kind: NormKind::L1Linf,
            name: "l1_linf".into(),
        }
    }

    /// Same as [`NormedSpace::l1_linf`] but validates a requested dimension.
    pub fn l1_linf_with_dim(dim: usize) -> Result<Self> {
        if dim != 2 {
            return Err(Error::MixedNormDimension(dim));
        }
        Ok(Self::l1_linf())
    }

    pub fn weighted_c0(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            kind: NormKind::WeightedC0,
            name: format!("weighted_c0(dim={dim})"),
        })
    }

    pub fn polyhedral(points: &[Vec<f64>]) -> Result<Self> {
        let poly = Polytope::from_points(points)?;
        let name = format!(
            "polyhedral(dim={},vertices={})",
            poly.dim(),
            poly.vertices().len()
        );
        Ok(Self {
            dim: poly.dim(),
            kind: NormKind::Polyhedral(poly),
            name,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &NormKind {
        &self.kind
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn tol_norm(&self) -> f64 {
        match self.kind {
            NormKind::Polyhedral(_) => TOL_NORM_GAUGE,
            _ => TOL_NORM_DIRECT,
        }
    }

    pub fn is_strictly_convex(&self) -> bool {
        match self.kind {
            NormKind::Lp { r } => r > 1.0 && r.is_finite(),
            NormKind::WeightedC0 => true,
            NormKind::L1Linf | NormKind::Polyhedral(_) => false,
        }
    }

    pub fn metadata(&self) -> SpaceMetadata {
        SpaceMetadata {
            name: self.name.clone(),
            dim: self.dim,
            tol_norm: self.tol_norm(),
            strictly_convex: self.is_strictly_convex(),
            extreme_point_count: self.extreme_points().map(|e| e.len()),
            truncation_tail_factor: match self.kind {
                NormKind::WeightedC0 => Some((4f64.powi(-(self.dim as i32)) / 3.0).sqrt()),
                _ => None,
            },
        }
    }

    /// Norm of `v`, validating length and finiteness.
    pub fn norm(&self, v: &[f64]) -> Result<f64> {
        self.check_vector(v)?;
        Ok(self.norm_unchecked(v))
    }

    pub(crate) fn check_vector(&self, v: &[f64]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        if let Some(i) = v.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(())
    }

    /// Norm of `v` without input validation; `v.len()` must equal `dim()`.
    pub fn norm_unchecked(&self, v: &[f64]) -> f64 {
        match &self.kind {
            NormKind::Lp { r } => lp_norm(v, *r),
            NormKind::L1Linf => {
                let (a, b) = (v[0], v[1]);
                if a == 0.0 || b == 0.0 || (a > 0.0) == (b > 0.0) {
                    a.abs().max(b.abs())
                } else {
                    a.abs() + b.abs()
                }
            }
            NormKind::WeightedC0 => {
                let m = max_abs(v);
                if m == 0.0 {
                    return 0.0;
                }
                let mut w = 1.0;
                let mut s = 0.0;
                for c in v {
                    w *= 0.25;
                    let t = c / m;
                    s += t * t * w;
                }
                m + m * s.sqrt()
            }
            NormKind::Polyhedral(p) => p.gauge(v),
        }
    }

    /// `v / ||v||`.
    pub fn normalize(&self, v: &[f64]) -> Result<Vector> {
        let n = self.norm(v)?;
        if n == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(Vector(v.iter().map(|c| c / n).collect()))
    }

    /// Normalizes `v` in place; returns false for the zero vector.
    pub(crate) fn normalize_in_place(&self, v: &mut [f64]) -> bool {
        let n = self.norm_unchecked(v);
        if n == 0.0 || !n.is_finite() {
            return false;
        }
        v.iter_mut().for_each(|c| *c /= n);
        true
    }

    /// Errors unless `|‖v‖ - 1| <= tol_norm`.
    pub fn check_unit(&self, v: &[f64]) -> Result<()> {
        let n = self.norm(v)?;
        if (n - 1.0).abs() > self.tol_norm() {
            return Err(Error::NotUnit { norm: n });
        }
        Ok(())
    }

    /// `count` unit vectors obtained by normalizing Gaussian directions.
    /// Output depends only on `(self, count, seed)`.
    pub fn sample_unit_sphere(&self, count: usize, seed: u64) -> Result<UnitSample> {
        if count == 0 {
            return Err(Error::OutOfRange {
                name: "count",
                value: 0.0,
                domain: ">= 1",
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut points = Vec::with_capacity(count);
        while points.len() < count {
            let mut g: Vec<f64> = (0..self.dim)
                .map(|_| StandardNormal.sample(&mut rng))
                .collect();
            if g.iter().map(|c| c * c).sum::<f64>() < 1e-200 {
                continue;
            }
            if self.normalize_in_place(&mut g) {
                points.push(Vector(g));
            }
        }
        Ok(UnitSample {
            points,
            seed,
            tol_norm: self.tol_norm(),
        })
    }

    /// Extreme points of the unit ball when the ball is a polytope; `None`
    /// for strictly convex norms.
    pub fn extreme_points(&self) -> Option<Vec<Vector>> {
        let n = self.dim;
        match &self.kind {
            NormKind::Lp { r } if *r == 1.0 => {
                let mut out = Vec::with_capacity(2 * n);
                for i in 0..n {
                    for s in [1.0, -1.0] {
                        let mut e = vec![0.0; n];
                        e[i] = s;
                        out.push(Vector(e));
                    }
                }
                Some(out)
            }
            NormKind::Lp { r } if r.is_infinite() => Some(
                (0..1u64 << n)
                    .map(|bits| {
                        Vector(
                            (0..n)
                                .map(|i| if bits >> i & 1 == 1 { -1.0 } else { 1.0 })
                                .collect(),
                        )
                    })
                    .collect(),
            ),
            NormKind::Lp { .. } | NormKind::WeightedC0 => None,
            NormKind::L1Linf => Some(
                L1_LINF_EXTREME_POINTS
                    .iter()
                    .map(|p| Vector(p.to_vec()))
                    .collect(),
            ),
            NormKind::Polyhedral(p) => {
                Some(p.vertices().iter().map(|v| Vector(v.clone())).collect())
            }
        }
    }
}

impl fmt::Display for NormedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

pub const L1_LINF_EXTREME_POINTS: [[f64; 2]; 6] = [
    [1.0, 0.0],
    [0.0, 1.0],
    [-1.0, 0.0],
    [0.0, -1.0],
    [1.0, 1.0],
    [-1.0, -1.0],
];

/// A deterministic sample of unit vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitSample {
    pub points: Vec<Vector>,
    pub seed: u64,
    pub tol_norm: f64,
}

/// Minkowski gauge of the symmetric hull of `extreme_points`, evaluated at `v`.
pub fn minkowski_gauge(extreme_points: &[Vector], v: &[f64]) -> Result<f64> {
    let pts: Vec<Vec<f64>> = extreme_points.iter().map(|p| p.0.clone()).collect();
    let poly = Polytope::from_points(&pts)?;
    if v.len() != poly.dim() {
        return Err(Error::DimensionMismatch {
            expected: poly.dim(),
            got: v.len(),
        });
    }
    if let Some(i) = v.iter().position(|c| !c.is_finite()) {
        return Err(Error::NonFinite(i));
    }
    Ok(poly.gauge(v))
}

/// Parses an extreme-point file: one point per line, whitespace-separated
/// decimals. Blank lines and `#` comments are ignored.
pub fn parse_extreme_points(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let coords = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<f64>().map_err(|e| Error::Parse {
                    line: i + 1,
                    msg: format!("`{tok}`: {e}"),
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        if let Some(first) = out.first() {
            if first.len() != coords.len() {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!(
                        "expected {} coordinates, found {}",
                        first.len(),
                        coords.len()
                    ),
                });
            }
        }
        out.push(coords);
    }
    if out.is_empty() {
        return Err(Error::Parse {
            line: 0,
            msg: "no points".into(),
        });
    }
    Ok(out)
}

/// Loads a polyhedral space from an extreme-point file.
pub fn load_polyhedral(path: &std::path::Path) -> Result<NormedSpace> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "file".into());
    let space = NormedSpace::polyhedral(&parse_extreme_points(&text)?)?;
    let name = format!("polyhedral:{stem}");
    Ok(space.with_name(name))
}

fn check_dim(dim: usize) -> Result<()> {
    if dim < 2 {
        return Err(Error::DimensionTooSmall(dim));
    }
    Ok(())
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
}

fn lp_norm(v: &[f64], r: f64) -> f64 {
    if r == 1.0 {
        return v.iter().map(|c| c.abs()).sum();
    }
    let m = max_abs(v);
    if r.is_infinite() || m == 0.0 {
        return m;
    }
    if r == 2.0 {
        return m * v.iter().map(|c| (c / m) * (c / m)).sum::<f64>().sqrt();
    }
    m * v
        .iter()
        .map(|c| (c.abs() / m).powf(r))
        .sum::<f64>()
        .powf(1.0 / r)
}
