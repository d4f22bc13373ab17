//! Numerical estimation and verification of skew von Neumann-Jordan type
//! constants on finite-dimensional normed spaces.

pub mod closed_forms;
pub mod error;
pub mod estimators;
pub mod params;
mod search;
pub mod spaces;
pub mod verifiers;

pub use error::{Error, Result};
pub use estimators::{Estimate, EstimatorOptions, Method, MethodChoice, Witness};
pub use params::SkewParams;
pub use spaces::{NormKind, NormedSpace, Vector};
