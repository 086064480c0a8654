//! Brute-force reference computations for cross-checking.
//!
//! Nothing in here calls into the curve or quadrature code; callers pass in
//! the function under test.

use crate::curve::PointN;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FDConfig {
    pub h: f64,
    pub richardson_levels: usize,
}

impl Default for FDConfig {
    fn default() -> Self {
        FDConfig { h: 1e-5, richardson_levels: 2 }
    }
}

impl FDConfig {
    pub fn validate(&self) -> Result<()> {
        if self.h > 1e-9 && self.h < 1e-2 {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("finite-difference step {} outside (1e-9, 1e-2)", self.h)))
        }
    }
}

/// Central difference `(f(t+h) - f(t-h)) / 2h`, refined by Richardson
/// extrapolation over `richardson_levels` halvings of `h`.
pub fn fd_derivative<F>(f: F, t: f64, cfg: &FDConfig) -> PointN
where
    F: Fn(f64) -> PointN,
{
    let central = |h: f64| -> Vec<f64> {
        let (plus, minus) = (f(t + h), f(t - h));
        plus.0.iter().zip(&minus.0).map(|(p, m)| (p - m) / (2.0 * h)).collect()
    };
    // Neville-style tableau; only the previous row is kept.
    let mut prev: Vec<Vec<f64>> = vec![central(cfg.h)];
    for level in 1..=cfg.richardson_levels {
        let h = cfg.h / f64::powi(2.0, level as i32);
        let mut row = vec![central(h)];
        for k in 1..=level {
            let factor = f64::powi(4.0, k as i32) - 1.0;
            let refined = row[k - 1]
                .iter()
                .zip(&prev[k - 1])
                .map(|(fine, coarse)| fine + (fine - coarse) / factor)
                .collect();
            row.push(refined);
        }
        prev = row;
    }
    PointN(prev.pop().expect("tableau row"))
}

/// Composite trapezoid rule with `panels` equal panels.
///
/// # Panics
///
/// If `a >= b` or `panels == 0`.
pub fn reference_trapezoid<F>(f: F, a: f64, b: f64, panels: usize) -> f64
where
    F: Fn(f64) -> f64,
{
    assert!(a < b, "reference_trapezoid needs a < b");
    assert!(panels >= 1, "reference_trapezoid needs at least one panel");
    let h = (b - a) / panels as f64;
    let interior: f64 = (1..panels).map(|i| f(a + h * i as f64)).sum();
    h * (0.5 * (f(a) + f(b)) + interior)
}
