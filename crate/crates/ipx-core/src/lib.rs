//! Executable verification and extremal exploration for a family of
//! inner-product-space inequalities (Cauchy-Schwarz refinements, Buzano- and
//! Richard-type bounds, Selberg operators), with an exact Gaussian-rational
//! backend for identity checks and a float backend for randomized fuzzing,
//! spectral norms and tightness search.

pub mod catalog;
pub mod error;
pub mod identity;
pub mod linalg;
pub mod operator;
pub mod par;
pub mod sample;
pub mod scalar;
pub mod search;
pub mod spectral;

pub use error::CoreError;
pub use scalar::{approx_eq, approx_le, exact_eq, GaussRational, Scalar, TolerancePolicy};
