//! Verification engine for Clifford-algebra, conformal-representation,
//! R-matrix and star-triangle identities.
//!
//! The crate is split into an exact layer (arbitrary-precision rationals,
//! gamma matrices, a normal-ordered Weyl algebra, L-operators, the spinorial
//! R-matrix) and a numeric layer (Monte-Carlo and deterministic quadrature
//! for the integral identities with Gamma-function constants). Exact checks
//! report residuals that are identically zero; numeric checks report an
//! estimate with a statistical error under a fixed seed.

pub mod clifford;
pub mod conformal;
pub mod error;
pub mod gammafn;
pub mod loperators;
pub mod matrix;
pub mod numint;
pub mod report;
pub mod rmatrix;
pub mod rng;
pub mod scalar;
pub mod startriangle;
pub mod weyl;

pub use error::CheckError;
pub use matrix::{Matrix, NumMatrix, RingElem};
pub use scalar::{parse_rational, rat, GaussianRational, Rational};
pub use report::{CheckReport, ReportBundle, Residual, Status};
pub use weyl::{SpaceRef, VariableSpace, WeylElement};
