//! Non-real n-th roots of unity, one entry per conjugate pair.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fmt::g17;
use crate::report::{Check, ValidationReport};

/// The conjugate pair `alpha ± beta i`, stored with `beta > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootPair {
    /// 1-based rank after sorting by `alpha` descending.
    pub index: usize,
    pub alpha: f64,
    pub beta: f64,
}

/// All non-real roots of `λ^n = 1`, sorted strictly descending in `alpha`.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub n: usize,
    pub pairs: Vec<RootPair>,
}

impl RootSet {
    /// Number of conjugate pairs.
    pub fn m(&self) -> usize {
        self.pairs.len()
    }

    pub fn alphas(&self) -> impl Iterator<Item = f64> + '_ {
        self.pairs.iter().map(|p| p.alpha)
    }

    /// Largest real part `alpha_1`, if there is a pair at all.
    pub fn alpha_max(&self) -> Option<f64> {
        self.pairs.first().map(|p| p.alpha)
    }

    /// Smallest real part `alpha_m`.
    pub fn alpha_min(&self) -> Option<f64> {
        self.pairs.last().map(|p| p.alpha)
    }

    /// One `k alpha beta` line per pair, 17 significant digits.
    pub fn to_table(&self) -> String {
        self.pairs
            .iter()
            .map(|p| format!("{} {} {}\n", p.index, g17(p.alpha), g17(p.beta)))
            .collect()
    }

    /// Parses the output of [`RootSet::to_table`]. The caller supplies `n`
    /// since the table does not carry it.
    pub fn from_table(n: usize, table: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (lineno, line) in table.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::InvalidArgument(format!("root table line {}: {line:?}", lineno + 1));
            if fields.len() != 3 {
                return Err(bad());
            }
            let index = fields[0].parse().map_err(|_| bad())?;
            let alpha = fields[1].parse().map_err(|_| bad())?;
            let beta = fields[2].parse().map_err(|_| bad())?;
            pairs.push(RootPair { index, alpha, beta });
        }
        Ok(RootSet { n, pairs })
    }
}

/// Expected number of conjugate pairs for dimension `n`.
pub fn expected_pairs(n: usize) -> usize {
    if n % 2 == 1 {
        (n - 1) / 2
    } else {
        (n - 2) / 2
    }
}

/// The non-real roots of `λ^n = 1` from `(cos 2πk/n, sin 2πk/n)`.
///
/// Indices `k` with `0 < 2k < n` give exactly one representative of each
/// conjugate pair with positive imaginary part; `k = 0` and `2k = n` (the
/// real roots ±1) are excluded by integer arithmetic.
pub fn characteristic_roots(n: usize) -> Result<RootSet> {
    if n < 2 {
        return Err(Error::InvalidDimension(n));
    }
    let mut pairs: Vec<RootPair> = (1..n)
        .filter(|&k| 2 * k < n)
        .map(|k| {
            let theta = 2.0 * PI * k as f64 / n as f64;
            RootPair {
                index: 0,
                alpha: theta.cos(),
                beta: theta.sin(),
            }
        })
        .collect();
    // Ties cannot occur for roots of unity; larger beta wins if they did.
    pairs.sort_by(|a, b| b.alpha.total_cmp(&a.alpha).then(b.beta.total_cmp(&a.beta)));
    for (i, p) in pairs.iter_mut().enumerate() {
        p.index = i + 1;
    }
    Ok(RootSet { n, pairs })
}

/// Recomputes every [`RootSet`] invariant and reports the residuals.
///
/// Nothing is asserted here; the caller decides what to do with failures.
pub fn verify_root_structure(rs: &RootSet) -> ValidationReport {
    const UNIT_TOL: f64 = 1e-12;
    const SORT_GAP: f64 = 1e-12;
    let n = rs.n;
    let mut report = ValidationReport::new(format!("root structure n={n}"));

    let m_expected = if n >= 2 { expected_pairs(n) } else { 0 };
    report.push(
        Check::new(
            "pair_count",
            n >= 2 && rs.m() == m_expected,
            rs.m() as f64,
            m_expected as f64,
        )
        .with_detail(format!("n={n}")),
    );

    let unit = rs
        .pairs
        .iter()
        .map(|p| (p.alpha * p.alpha + p.beta * p.beta - 1.0).abs())
        .fold(0.0, f64::max);
    report.push(Check::at_most("unit_modulus", unit, UNIT_TOL));

    // Distance inside (-1, 1): positive when all alphas are strictly inside.
    let range_margin = rs
        .pairs
        .iter()
        .map(|p| 1.0 - p.alpha.abs())
        .fold(f64::INFINITY, f64::min);
    let range_margin = if rs.pairs.is_empty() { 1.0 } else { range_margin };
    report.push(Check::above("alpha_in_open_interval", range_margin, 0.0));

    let beta_min = rs.pairs.iter().map(|p| p.beta).fold(f64::INFINITY, f64::min);
    let beta_min = if rs.pairs.is_empty() { 1.0 } else { beta_min };
    report.push(Check::above("beta_positive", beta_min, 0.0));

    let min_gap = rs
        .pairs
        .windows(2)
        .map(|w| w[0].alpha - w[1].alpha)
        .fold(f64::INFINITY, f64::min);
    let min_gap = if rs.pairs.len() < 2 { 1.0 } else { min_gap };
    report.push(Check::above("strictly_descending", min_gap, SORT_GAP));

    let indices_ok = rs.pairs.iter().enumerate().all(|(i, p)| p.index == i + 1);
    report.push(Check::new("indices_ranked", indices_ok, 0.0, 0.0));

    // The full root set (pairs twice plus the real roots) sums to zero.
    let real_roots = if n.is_multiple_of(2) { 0.0 } else { 1.0 };
    let root_sum = 2.0 * rs.alphas().sum::<f64>() + real_roots;
    report.push(Check::at_most("roots_sum_to_zero", root_sum.abs(), 1e-10));

    if n % 2 == 1 {
        if let Some(am) = rs.alpha_min() {
            report.push(
                Check::at_most("odd_alpha_m_le_minus_half", am, -0.5 + 1e-15)
                    .with_detail(format!("alpha_m={}", g17(am))),
            );
            let max_abs = rs.alphas().map(f64::abs).fold(0.0, f64::max);
            report.push(Check::at_most(
                "odd_alpha_m_max_modulus",
                max_abs - am.abs(),
                0.0,
            ));
        }
    } else if n >= 4 {
        let m = rs.m();
        let sym = (0..m)
            .map(|j| (rs.pairs[j].alpha + rs.pairs[m - 1 - j].alpha).abs())
            .fold(0.0, f64::max);
        report.push(Check::at_most("even_alpha_symmetry", sym, 1e-12));
        let has_zero = rs.alphas().any(|a| a.abs() < 1e-12);
        report.push(
            Check::new("even_zero_iff_m_odd", has_zero == (m % 2 == 1), m as f64, 0.0)
                .with_detail(format!("zero_present={has_zero}")),
        );
    }
    report
}
