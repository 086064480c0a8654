//! Curves whose coordinates are the real fundamental solutions of
//! `y^(n) - y = 0`, together with their speed, first curvature and
//! certified total-curvature integrals.
//!
//! The curve `C_n` lives in Euclidean n-space. Its coordinates are
//! `e^{a_k t} cos(b_k t)`, `e^{a_k t} sin(b_k t)` for each non-real
//! conjugate pair `a_k ± b_k i` of n-th roots of unity, followed by `e^t`
//! (and `e^{-t}` when n is even).
//!
//! ```
//! use ncurve::{CurveSpec, QuadConfig, analysis};
//!
//! let spec = CurveSpec::new(2).unwrap();
//! let verdict = analysis::classify(&spec, &QuadConfig::default()).unwrap();
//! assert!(verdict.total_finite);
//! assert!((verdict.total().unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-6);
//! ```

pub mod analysis;
pub mod cli;
pub mod curvature;
pub mod curve;
mod error;
pub mod fmt;
pub mod integrate;
mod logsum;
pub mod oracle;
pub mod report;
pub mod roots;

pub use analysis::{BoundConstants, ConvergenceVerdict, NegativeTail};
pub use curvature::CurvatureSample;
pub use curve::{CaseTag, CurveSpec, DerivCoeffs, PointN};
pub use error::{Error, Result};
pub use integrate::{IntegralResult, QuadConfig};
pub use oracle::FDConfig;
pub use report::{Check, ValidationReport};
pub use roots::{RootPair, RootSet};

/// Largest dimension accepted by default.
pub const DEFAULT_MAX_N: usize = 64;
