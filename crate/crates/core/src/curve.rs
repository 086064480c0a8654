//! The curve `x(t)` and its exact derivatives of any order.
//!
//! Coordinate layout, for the sorted pairs `a_k ± b_k i`:
//!
//! | case      | coordinates                                                   |
//! |-----------|---------------------------------------------------------------|
//! | n = 2     | `e^t, e^{-t}`                                                 |
//! | n = 2m+1  | `e^{a_1 t}cos b_1 t, e^{a_1 t}sin b_1 t, …, e^t`              |
//! | n = 2m+2  | `e^{a_1 t}cos b_1 t, e^{a_1 t}sin b_1 t, …, e^t, e^{-t}`      |

use std::ops::{Index, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::roots::{characteristic_roots, RootSet};
use crate::DEFAULT_MAX_N;

/// Largest exponent argument accepted by the raw-coordinate evaluators.
pub const MAX_EXPONENT: f64 = 700.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    Two,
    Odd { m: usize },
    EvenGe4 { m: usize },
}

impl CaseTag {
    pub fn for_dimension(n: usize) -> Result<Self> {
        match n {
            0 | 1 => Err(Error::InvalidDimension(n)),
            2 => Ok(CaseTag::Two),
            n if n % 2 == 1 => Ok(CaseTag::Odd { m: (n - 1) / 2 }),
            n => Ok(CaseTag::EvenGe4 { m: (n - 2) / 2 }),
        }
    }

    pub fn is_even(self) -> bool {
        !matches!(self, CaseTag::Odd { .. })
    }

    /// Whether the layout ends with an `e^{-t}` coordinate.
    pub fn has_decaying_exp(self) -> bool {
        self.is_even()
    }
}

/// A fully resolved curve `C_n`. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSpec {
    n: usize,
    case: CaseTag,
    roots: RootSet,
}

impl CurveSpec {
    /// Builds `C_n` for `2 <= n <= DEFAULT_MAX_N`.
    pub fn new(n: usize) -> Result<Self> {
        Self::with_cap(n, DEFAULT_MAX_N)
    }

    /// Builds `C_n` with a custom upper limit on `n`.
    pub fn with_cap(n: usize, cap: usize) -> Result<Self> {
        let case = CaseTag::for_dimension(n)?;
        if n > cap {
            return Err(Error::DimensionCap { n, cap });
        }
        let roots = characteristic_roots(n)?;
        Ok(CurveSpec { n, case, roots })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn case(&self) -> CaseTag {
        self.case
    }

    pub fn roots(&self) -> &RootSet {
        &self.roots
    }

    pub fn m(&self) -> usize {
        self.roots.m()
    }

    fn check_range(&self, t: f64) -> Result<()> {
        if !t.is_finite() {
            return Err(Error::InvalidArgument(format!("t must be finite, got {t}")));
        }
        // Every layout carries e^t and all |a_k| < 1, so |t| is the largest
        // exponent argument.
        if t.abs() > MAX_EXPONENT {
            return Err(Error::Overflow { t, exponent: t.abs() });
        }
        Ok(())
    }
}

/// A point (or derivative vector) in Euclidean n-space.
#[derive(Debug, Clone, PartialEq)]
pub struct PointN(pub Vec<f64>);

impl PointN {
    pub fn zeros(n: usize) -> Self {
        PointN(vec![0.0; n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dot(&self, other: &PointN) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        // hypot-style scaling keeps the norm finite for large coordinates.
        let scale = self.0.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        if scale == 0.0 || !scale.is_finite() {
            return scale;
        }
        scale * self.0.iter().map(|v| (v / scale).powi(2)).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }
}

impl Index<usize> for PointN {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Sub for &PointN {
    type Output = PointN;
    fn sub(self, rhs: &PointN) -> PointN {
        PointN(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

/// Derivative coefficients of one root pair at order `p`:
///
/// `d^p/dt^p e^{at}cos bt = A_p e^{at}cos bt + B_p e^{at}sin bt`
/// `d^p/dt^p e^{at}sin bt = C_p e^{at}sin bt + D_p e^{at}cos bt`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivCoeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl DerivCoeffs {
    pub const IDENTITY: DerivCoeffs = DerivCoeffs { a: 1.0, b: 0.0, c: 1.0, d: 0.0 };

    /// `(A_p, B_p) = (α - βi)^p` and `(C_p, D_p) = (α + βi)^p`, by repeated
    /// complex multiplication.
    pub fn from_complex_power(alpha: f64, beta: f64, p: usize) -> Self {
        let lower = Complex64::new(alpha, -beta);
        let upper = Complex64::new(alpha, beta);
        let mut lp = Complex64::new(1.0, 0.0);
        let mut up = Complex64::new(1.0, 0.0);
        for _ in 0..p {
            lp *= lower;
            up *= upper;
        }
        DerivCoeffs { a: lp.re, b: lp.im, c: up.re, d: up.im }
    }

    /// The same coefficients from the first-order recurrences
    /// `A' = αA + βB, B' = -βA + αB` and `C' = αC - βD, D' = βC + αD`.
    pub fn from_recurrence(alpha: f64, beta: f64, p: usize) -> Self {
        let mut k = DerivCoeffs::IDENTITY;
        for _ in 0..p {
            k = DerivCoeffs {
                a: alpha * k.a + beta * k.b,
                b: -beta * k.a + alpha * k.b,
                c: alpha * k.c - beta * k.d,
                d: beta * k.c + alpha * k.d,
            };
        }
        k
    }

    pub fn max_abs_diff(&self, other: &DerivCoeffs) -> f64 {
        [
            self.a - other.a,
            self.b - other.b,
            self.c - other.c,
            self.d - other.d,
        ]
        .iter()
        .fold(0.0, |acc, v| acc.max(v.abs()))
    }
}

/// `x(t)`.
pub fn curve_point(spec: &CurveSpec, t: f64) -> Result<PointN> {
    curve_derivative(spec, t, 0)
}

/// `x^(p)(t)`, exact up to rounding.
pub fn curve_derivative(spec: &CurveSpec, t: f64, p: usize) -> Result<PointN> {
    spec.check_range(t)?;
    let mut out = Vec::with_capacity(spec.n);
    for pair in &spec.roots.pairs {
        let k = DerivCoeffs::from_complex_power(pair.alpha, pair.beta, p);
        let growth = (pair.alpha * t).exp();
        let (s, c) = (pair.beta * t).sin_cos();
        let (ec, es) = (growth * c, growth * s);
        out.push(k.a * ec + k.b * es);
        out.push(k.c * es + k.d * ec);
    }
    out.push(t.exp());
    if spec.case.has_decaying_exp() {
        let sign = if p.is_multiple_of(2) { 1.0 } else { -1.0 };
        out.push(sign * (-t).exp());
    }
    debug_assert_eq!(out.len(), spec.n);
    Ok(PointN(out))
}

/// The fixed property-test grid: 41 points on `[-5, 5]` plus `±10, ±20`.
pub fn standard_grid() -> Vec<f64> {
    let mut grid: Vec<f64> = (0..=40).map(|i| -5.0 + 0.25 * i as f64).collect();
    grid.extend([-20.0, -10.0, 10.0, 20.0]);
    grid
}
