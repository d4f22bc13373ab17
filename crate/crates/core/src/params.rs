use serde::Serialize;

use crate::error::{check_range, Result};

/// The skew weights `(xi, nu)` and exponent `p` of the skew
/// von Neumann-Jordan objective.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SkewParams {
    xi: f64,
    nu: f64,
    p: f64,
}

impl SkewParams {
    pub fn new(xi: f64, nu: f64, p: f64) -> Result<Self> {
        check_range("xi", xi, xi > 0.0, "> 0")?;
        check_range("nu", nu, nu > 0.0, "> 0")?;
        check_range("p", p, p >= 1.0, "[1, inf)")?;
        Ok(Self { xi, nu, p })
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Conjugate exponent `p / (p - 1)`; absent at `p = 1`.
    pub fn q(&self) -> Option<f64> {
        (self.p > 1.0).then(|| self.p / (self.p - 1.0))
    }

    pub fn min_weight(&self) -> f64 {
        self.xi.min(self.nu)
    }

    pub fn max_weight(&self) -> f64 {
        self.xi.max(self.nu)
    }

    /// `|xi - nu|`.
    pub fn weight_gap(&self) -> f64 {
        (self.xi - self.nu).abs()
    }

    /// `xi^p + nu^p`.
    pub fn weight_power_sum(&self) -> f64 {
        self.xi.powf(self.p) + self.nu.powf(self.p)
    }

    /// `2^(p-1) (xi^p + nu^p)`, the normalizer of the sphere-restricted objective.
    pub fn sphere_denominator(&self) -> f64 {
        2f64.powf(self.p - 1.0) * self.weight_power_sum()
    }

    /// `(nu, xi, p)`.
    pub fn swapped(&self) -> Self {
        Self {
            xi: self.nu,
            nu: self.xi,
            p: self.p,
        }
    }

    /// `(c xi, c nu, p)` for `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(c * self.xi, c * self.nu, self.p)
    }
}

impl std::fmt::Display for SkewParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(xi={}, nu={}, p={})", self.xi, self.nu, self.p)
    }
}

/// The default `(xi, nu) x p` grid used by the verification suite:
/// `{(1,1), (2,1), (1,3)} x {1, 2, 3}`.
pub fn default_grid() -> Vec<SkewParams> {
    let mut out = Vec::with_capacity(9);
    for (xi, nu) in [(1.0, 1.0), (2.0, 1.0), (1.0, 3.0)] {
        for p in [1.0, 2.0, 3.0] {
            out.push(SkewParams { xi, nu, p });
        }
    }
    out
}
