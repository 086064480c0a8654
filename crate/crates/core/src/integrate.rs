//! Adaptive quadrature and the arc-length / total-curvature drivers.

use crate::analysis::bound_constants;
use crate::curvature::{integrand_k1, speed};
use crate::curve::CurveSpec;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_depth: usize,
    pub max_evals: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            abs_tol: 1e-10,
            rel_tol: 1e-8,
            max_depth: 60,
            max_evals: 10_000_000,
        }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.abs_tol > 0.0 && self.rel_tol > 0.0 && self.max_depth >= 10 && self.max_evals > 0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("invalid quadrature config {self:?}")))
        }
    }

    /// The tolerance a converged result must meet for a given value.
    pub fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evals: usize,
    pub converged: bool,
}

impl IntegralResult {
    fn merge(self, other: IntegralResult) -> IntegralResult {
        IntegralResult {
            value: self.value + other.value,
            error_estimate: self.error_estimate + other.error_estimate,
            evals: self.evals + other.evals,
            converged: self.converged && other.converged,
        }
    }
}

// 15-point Kronrod abscissae on [-1, 1] (nonnegative half) and weights; the
// odd-indexed abscissae together with 0 are the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Kronrod and Gauss estimates on `[a, b]`.
fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, gauss * half)
}

const RULE_POINTS: usize = 15;

struct Leaf {
    value: f64,
    error: f64,
    accepted: bool,
}

struct Subdivider<'a, F> {
    f: &'a F,
    cfg: &'a QuadConfig,
    /// Allowed error per unit length.
    density: f64,
    evals: usize,
    leaves: Vec<Leaf>,
}

impl<F: Fn(f64) -> f64> Subdivider<'_, F> {
    fn run(&mut self, a: f64, b: f64, estimate: (f64, f64), depth: usize) {
        let (kronrod, gauss) = estimate;
        let error = (kronrod - gauss).abs();
        let allowed = self.density * (b - a);
        let mid = 0.5 * (a + b);
        let finite = kronrod.is_finite() && gauss.is_finite();
        if error <= allowed || !finite {
            self.leaves.push(Leaf { value: kronrod, error, accepted: finite });
            return;
        }
        let exhausted = depth >= self.cfg.max_depth
            || self.evals + 2 * RULE_POINTS > self.cfg.max_evals
            || mid <= a
            || mid >= b;
        if exhausted {
            self.leaves.push(Leaf { value: kronrod, error, accepted: false });
            return;
        }
        let left = gauss_kronrod(self.f, a, mid);
        let right = gauss_kronrod(self.f, mid, b);
        self.evals += 2 * RULE_POINTS;
        self.run(a, mid, left, depth + 1);
        self.run(mid, b, right, depth + 1);
    }
}

/// Sums in a fixed binary tree over index order.
fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        n => pairwise_sum(&values[..n / 2]) + pairwise_sum(&values[n / 2..]),
    }
}

/// Integrates `f` over `[a, b]` with a Gauss–Kronrod 7/15 pair.
///
/// Intervals are halved until each one's `|K15 - G7|` is at most its share
/// of the tolerance, the share being proportional to its length. On running
/// out of depth or evaluations the best estimate is returned with
/// `converged = false`.
pub fn adaptive_quad<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<IntegralResult> {
    cfg.validate()?;
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidInterval { lo: a, hi: b });
    }
    let first = gauss_kronrod(&f, a, b);
    let mut evals = RULE_POINTS;
    let mut tol = cfg.target(first.0);
    let mut result = IntegralResult { value: first.0, error_estimate: (first.0 - first.1).abs(), evals, converged: false };
    // The relative part of the tolerance is pinned to the coarse estimate;
    // rerun when the refined value turns out much smaller.
    for _ in 0..4 {
        let mut sub = Subdivider { f: &f, cfg, density: tol / (b - a), evals, leaves: Vec::new() };
        sub.run(a, b, first, 0);
        evals = sub.evals;
        let values: Vec<f64> = sub.leaves.iter().map(|l| l.value).collect();
        let errors: Vec<f64> = sub.leaves.iter().map(|l| l.error).collect();
        let value = pairwise_sum(&values);
        let error_estimate = pairwise_sum(&errors);
        let all_accepted = sub.leaves.iter().all(|l| l.accepted);
        let target = cfg.target(value);
        result = IntegralResult {
            value,
            error_estimate,
            evals,
            converged: all_accepted && value.is_finite() && error_estimate <= target,
        };
        if result.converged || !all_accepted || target >= tol {
            break;
        }
        tol = target;
    }
    Ok(result)
}

/// Arc length `∫_{t0}^{t1} ‖ẋ(t)‖ dt`.
pub fn arc_length(spec: &CurveSpec, t0: f64, t1: f64, cfg: &QuadConfig) -> Result<IntegralResult> {
    if !(t0 < t1) {
        return Err(Error::InvalidInterval { lo: t0, hi: t1 });
    }
    adaptive_quad(|t| speed(spec, t), t0, t1, cfg)
}

/// `∫_a^b K1(t) dt` with `K1 = k1 ‖ẋ‖`.
pub fn truncated_total_curvature(spec: &CurveSpec, a: f64, b: f64, cfg: &QuadConfig) -> Result<IntegralResult> {
    if !(a < b) {
        return Err(Error::InvalidInterval { lo: a, hi: b });
    }
    adaptive_quad(|t| integrand_k1(spec, t), a, b, cfg)
}

/// Default analytic tail tolerance for [`positive_tail_total_curvature`].
pub const DEFAULT_TAIL_TOL: f64 = 1e-8;

/// Truncation points are `1, 2, 4, …` up to this bound.
const MAX_LADDER_EXPONENT: u32 = 40;

/// `∫_0^∞ K1(t) dt`, certified by the analytic tail cap.
///
/// The integral is accumulated over `[0,1], [1,2], [2,4], …` and stops at the
/// first truncation point `b` whose tail cap (see
/// [`BoundConstants::tail_cap`](crate::BoundConstants::tail_cap)) is below
/// `tail_tol`. The reported value excludes the tail; `error_estimate` is the
/// summed quadrature error plus the cap. `converged` is set only when the cap
/// criterion was met and every segment converged.
pub fn positive_tail_total_curvature(spec: &CurveSpec, cfg: &QuadConfig, tail_tol: f64) -> Result<IntegralResult> {
    if !(tail_tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tail_tol must be positive, got {tail_tol}")));
    }
    let bounds = bound_constants(spec);
    let integrand = |t: f64| integrand_k1(spec, t);
    let mut total = adaptive_quad(integrand, 0.0, 1.0, cfg)?;
    let mut b = 1.0;
    let mut exponent = 0;
    loop {
        let cap = bounds.tail_cap(b);
        if cap < tail_tol {
            total.error_estimate += cap;
            return Ok(total);
        }
        if exponent >= MAX_LADDER_EXPONENT || total.evals >= cfg.max_evals {
            total.error_estimate += cap;
            total.converged = false;
            return Ok(total);
        }
        let remaining = QuadConfig { max_evals: cfg.max_evals - total.evals, ..*cfg };
        total = total.merge(adaptive_quad(integrand, b, 2.0 * b, &remaining)?);
        b *= 2.0;
        exponent += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, PI};

    fn cfg() -> QuadConfig {
        QuadConfig::default()
    }

    #[test]
    fn constant_and_monomials() {
        let r = adaptive_quad(|_| 1.0, 0.0, 1.0, &cfg()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-15);
        assert!(r.error_estimate < 1e-15);
        assert!(r.converged);
        assert_eq!(r.evals, 15);
        for k in 0..=13 {
            let r = adaptive_quad(|x| x.powi(k), 0.0, 1.0, &cfg()).unwrap();
            assert!((r.value - 1.0 / (k as f64 + 1.0)).abs() < 1e-13, "degree {k}");
            // The Gauss rule is exact to degree 13, so no subdivision happens.
            assert_eq!(r.evals, 15, "degree {k}");
        }
        // Kronrod alone is exact to degree 22.
        let (k, _) = gauss_kronrod(&|x: f64| x.powi(22), -1.0, 1.0);
        assert!((k - 2.0 / 23.0).abs() < 1e-13);
    }

    #[test]
    fn rational_tail_tends_to_quarter_pi() {
        for &(x_max, tail) in &[(10.0f64, (1.0f64 / 100.0).atan()), (1e3, 1e-6f64.atan())] {
            let r = adaptive_quad(|x| 2.0 * x / (1.0 + x.powi(4)), 1.0, x_max, &cfg()).unwrap();
            assert!(r.converged);
            assert!((r.value - (FRAC_PI_4 - tail)).abs() < 1e-9, "{x_max}");
        }
    }

    #[test]
    fn two_dimensional_integrand() {
        let s = CurveSpec::new(2).unwrap();
        let r = truncated_total_curvature(&s, 0.0, 1.0, &cfg()).unwrap();
        // arctan(e^2) - π/4, 40-digit reference.
        assert!((r.value - 0.65088016802300755).abs() < 1e-9);
        let r = truncated_total_curvature(&s, -1.0, 1.0, &cfg()).unwrap();
        assert!((r.value - 1.3017603360460151).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_intervals() {
        let s = CurveSpec::new(2).unwrap();
        assert!(matches!(arc_length(&s, 0.0, 0.0, &cfg()), Err(Error::InvalidInterval { .. })));
        assert!(adaptive_quad(|x| x, 1.0, 0.0, &cfg()).is_err());
        assert!(adaptive_quad(|x| x, 0.0, f64::INFINITY, &cfg()).is_err());
        let bad = QuadConfig { max_depth: 3, ..cfg() };
        assert!(adaptive_quad(|x| x, 0.0, 1.0, &bad).is_err());
    }

    #[test]
    fn reports_non_convergence() {
        let tight = QuadConfig { max_evals: 100, ..cfg() };
        let r = adaptive_quad(|x: f64| (1.0 / x).sin(), 1e-6, 1.0, &tight).unwrap();
        assert!(!r.converged);
        assert!(r.evals <= 100);
        assert!(r.value.is_finite());
    }

    #[test]
    fn relative_tolerance_for_large_values() {
        let r = adaptive_quad(|x: f64| x.exp(), 0.0, 50.0, &cfg()).unwrap();
        assert!(r.converged);
        assert!(((r.value - (50f64.exp() - 1.0)) / r.value).abs() < 1e-12);
        assert!(r.error_estimate <= cfg().target(r.value));
    }

    #[test]
    fn arc_length_lower_bound_and_symmetry() {
        let s2 = CurveSpec::new(2).unwrap();
        for &b in &[1.0, 3.0] {
            let l = arc_length(&s2, 0.0, b, &cfg()).unwrap();
            assert!(l.value >= b.exp() - 1.0);
        }
        let s4 = CurveSpec::new(4).unwrap();
        let lhs = arc_length(&s4, -2.5, 0.0, &cfg()).unwrap().value;
        let rhs = arc_length(&s4, 0.0, 2.5, &cfg()).unwrap().value;
        assert!(((lhs - rhs) / rhs).abs() < 1e-10);
    }

    #[test]
    fn positive_tail_two_dimensional() {
        let s = CurveSpec::new(2).unwrap();
        let r = positive_tail_total_curvature(&s, &cfg(), DEFAULT_TAIL_TOL).unwrap();
        assert!(r.converged);
        assert!((r.value - PI / 4.0).abs() < 2e-8);
    }

    #[test]
    fn positive_tail_within_certified_caps() {
        // References: 40-digit quadrature of the explicit-vector integrand.
        let cases = [(3, 0.93688581256180213, 5f64.sqrt() / 0.75), (4, 1.3245270752723591, 8.0)];
        for (n, reference, cap) in cases {
            let s = CurveSpec::new(n).unwrap();
            let r = positive_tail_total_curvature(&s, &cfg(), DEFAULT_TAIL_TOL).unwrap();
            assert!(r.converged);
            assert!((r.value - reference).abs() < 1e-7, "n={n}: {}", r.value);
            assert!(r.value <= cap);
        }
    }

    #[test]
    fn monotone_truncation() {
        let s = CurveSpec::new(5).unwrap();
        let mut prev = 0.0;
        for &b in &[0.5, 1.0, 2.0, 4.0, 8.0] {
            let v = truncated_total_curvature(&s, 0.0, b, &cfg()).unwrap().value;
            assert!(v >= prev);
            prev = v;
        }
        let mut prev = 0.0;
        for &a in &[-0.5, -1.0, -2.0, -4.0, -8.0] {
            let v = truncated_total_curvature(&s, a, 0.0, &cfg()).unwrap().value;
            assert!(v >= prev);
            prev = v;
        }
    }
}
