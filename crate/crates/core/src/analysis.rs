//! Executable certificates for the finiteness of the total first curvature.
//!
//! After `x = e^t` the total-curvature integrand becomes a rational-power
//! function `K(x)`. With `ε = 1 - a_1` and `δ = ε/2` it obeys, for `x >= 1`,
//!
//! ```text
//! odd n = 2m+1:  K(x) < A / x^{1+δ},   A = sqrt(m² + 4m)
//! even n = 2m+2: K(x) < B / x^{1+δ},   B = sqrt(8m² + 8m)
//! n = 2:         K(x) < 2 / x²
//! ```
//!
//! and for odd n and `0 < x <= 1`, `K(x) > Â / x` with `Â = sqrt((1 - a_1)/2)`.
//! The majorants give closed-form caps on the `t -> +∞` tail; the minorant
//! forces `∫_a^0 K1 dt >= Â |a|`, a divergence witness on the negative side.

use crate::curvature::{k1_closed, k1_general, integrand_k1, speed, substituted_integrand, wedge_norm_sq};
use crate::curve::{curve_derivative, curve_point, standard_grid, CaseTag, CurveSpec, DerivCoeffs};
use crate::error::{Error, Result};
use crate::fmt::g17;
use crate::integrate::{
    adaptive_quad, arc_length, positive_tail_total_curvature, IntegralResult, QuadConfig, DEFAULT_TAIL_TOL,
};
use crate::oracle::{fd_derivative, FDConfig};
use crate::report::{Check, ValidationReport};
use crate::roots::verify_root_structure;

/// Comparison constants for one curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundConstants {
    /// `1 - a_1`; 2 for n = 2, so that `1 + δ` is the exponent 2 of `2/x²`.
    pub epsilon: f64,
    /// `ε / 2`, the excess decay exponent of the majorant.
    pub delta: f64,
    /// `A`, `B`, or 2 for n = 2.
    pub majorant_const: f64,
    /// `Â`, odd n only.
    pub minorant_const: Option<f64>,
}

impl BoundConstants {
    /// `majorant_const / x^{1+δ}`.
    pub fn majorant(&self, x: f64) -> f64 {
        self.majorant_const / x.powf(1.0 + self.delta)
    }

    /// `Â / x`, if the curve has a minorant.
    pub fn minorant(&self, x: f64) -> Option<f64> {
        self.minorant_const.map(|c| c / x)
    }

    /// Cap on `∫_b^∞ K1(t) dt`: the majorant integrated over `[e^b, ∞)`,
    /// `majorant_const / (δ e^{bδ})`.
    pub fn tail_cap(&self, b: f64) -> f64 {
        self.majorant_const / (self.delta * (b * self.delta).exp())
    }

    /// Cap on `∫_0^∞ K1(t) dt`, i.e. `tail_cap(0)`.
    pub fn positive_tail_cap(&self) -> f64 {
        self.tail_cap(0.0)
    }
}

pub fn bound_constants(spec: &CurveSpec) -> BoundConstants {
    let m = spec.m() as f64;
    match spec.case() {
        CaseTag::Two => BoundConstants {
            epsilon: 2.0,
            delta: 1.0,
            majorant_const: 2.0,
            minorant_const: None,
        },
        CaseTag::Odd { .. } => {
            let epsilon = 1.0 - spec.roots().alpha_max().expect("odd n has a root pair");
            BoundConstants {
                epsilon,
                delta: 0.5 * epsilon,
                majorant_const: (m * m + 4.0 * m).sqrt(),
                minorant_const: Some((0.5 * epsilon).sqrt()),
            }
        }
        CaseTag::EvenGe4 { .. } => {
            let epsilon = 1.0 - spec.roots().alpha_max().expect("even n >= 4 has a root pair");
            BoundConstants {
                epsilon,
                delta: 0.5 * epsilon,
                majorant_const: (8.0 * m * m + 8.0 * m).sqrt(),
                minorant_const: None,
            }
        }
    }
}

/// Checks the majorant at every `x >= 1` and, for odd n, the minorant at
/// every `x <= 1`. Each check's value is the margin, positive when the
/// inequality holds.
pub fn pointwise_bound_check(spec: &CurveSpec, xs: &[f64]) -> ValidationReport {
    let bounds = bound_constants(spec);
    let mut report = ValidationReport::new(format!("pointwise bounds n={}", spec.n()));
    for &x in xs {
        let value = match substituted_integrand(spec, x) {
            Ok(v) => v,
            Err(e) => {
                report.push(Check::new(format!("domain@x={}", g17(x)), false, x, 0.0).with_detail(e.to_string()));
                continue;
            }
        };
        if x >= 1.0 {
            let margin = bounds.majorant(x) - value;
            report.push(Check::above(format!("majorant@x={}", g17(x)), margin, 0.0));
        }
        if x <= 1.0 {
            if let Some(lower) = bounds.minorant(x) {
                let margin = value - lower;
                report.push(Check::above(format!("minorant@x={}", g17(x)), margin, 0.0));
            }
        }
    }
    report
}

/// `count` log-spaced points on `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    assert!(lo > 0.0 && lo < hi && count >= 2);
    let (l0, l1) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| match i {
            0 => lo,
            i if i == count - 1 => hi,
            i => (l0 + (l1 - l0) * i as f64 / (count - 1) as f64).exp(),
        })
        .collect()
}

/// One rung of the divergence ladder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderRung {
    pub a: f64,
    /// `∫_a^0 K1(t) dt`.
    pub integral: IntegralResult,
    /// `Â |a|`.
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum NegativeTail {
    /// `∫_{-∞}^0 K1 dt`, equal to the positive tail by `t -> -t` symmetry.
    Finite(IntegralResult),
    /// Truncations growing at least linearly with slope `Â`.
    DivergentWitness { slope: f64, ladder: Vec<LadderRung> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceVerdict {
    pub n: usize,
    pub total_finite: bool,
    pub positive_tail: IntegralResult,
    pub negative_tail: NegativeTail,
    /// `2 · majorant_const / δ`, even n only.
    pub certified_upper_bound: Option<f64>,
    pub bounds: BoundConstants,
}

impl ConvergenceVerdict {
    /// The total first curvature, when it is finite.
    pub fn total(&self) -> Option<f64> {
        match &self.negative_tail {
            NegativeTail::Finite(neg) => Some(self.positive_tail.value + neg.value),
            NegativeTail::DivergentWitness { .. } => None,
        }
    }

    /// Whether every quadrature behind the verdict converged.
    pub fn converged(&self) -> bool {
        self.positive_tail.converged
            && match &self.negative_tail {
                NegativeTail::Finite(r) => r.converged,
                NegativeTail::DivergentWitness { ladder, .. } => ladder.iter().all(|r| r.integral.converged),
            }
    }

    /// `key=value` lines, one datum per line.
    pub fn to_key_values(&self) -> String {
        let mut kv: Vec<(String, String)> = vec![
            ("n".into(), self.n.to_string()),
            ("total_finite".into(), self.total_finite.to_string()),
        ];
        if let Some(total) = self.total() {
            kv.push(("total".into(), g17(total)));
        }
        kv.push(("positive_tail".into(), g17(self.positive_tail.value)));
        kv.push(("positive_tail_error".into(), g17(self.positive_tail.error_estimate)));
        kv.push(("positive_tail_cap".into(), g17(self.bounds.positive_tail_cap())));
        kv.push(("epsilon".into(), g17(self.bounds.epsilon)));
        kv.push(("delta".into(), g17(self.bounds.delta)));
        kv.push(("majorant_const".into(), g17(self.bounds.majorant_const)));
        if let Some(c) = self.bounds.minorant_const {
            kv.push(("minorant_const".into(), g17(c)));
        }
        if let Some(bound) = self.certified_upper_bound {
            kv.push(("certified_upper_bound".into(), g17(bound)));
        }
        match &self.negative_tail {
            NegativeTail::Finite(_) => kv.push(("negative_tail".into(), "finite".into())),
            NegativeTail::DivergentWitness { slope, ladder } => {
                kv.push(("negative_tail".into(), "divergent".into()));
                kv.push(("divergence_slope".into(), g17(*slope)));
                for (i, rung) in ladder.iter().enumerate() {
                    kv.push((format!("rung.{i}.a"), g17(rung.a)));
                    kv.push((format!("rung.{i}.integral"), g17(rung.integral.value)));
                    kv.push((format!("rung.{i}.bound"), g17(rung.bound)));
                }
            }
        }
        kv.push(("converged".into(), self.converged().to_string()));
        kv.into_iter().map(|(k, v)| format!("{k}={v}\n")).collect()
    }

    /// Human-readable certificate.
    pub fn to_text(&self) -> String {
        let b = &self.bounds;
        let mut out = format!("curve C_{} in E^{}\n", self.n, self.n);
        out.push_str(&format!(
            "bound constants: epsilon={} delta={} majorant_const={}",
            g17(b.epsilon),
            g17(b.delta),
            g17(b.majorant_const)
        ));
        if let Some(c) = b.minorant_const {
            out.push_str(&format!(" minorant_const={}", g17(c)));
        }
        out.push('\n');
        out.push_str(&format!(
            "integral over [0, inf): {} (error <= {}, analytic cap {})\n",
            g17(self.positive_tail.value),
            g17(self.positive_tail.error_estimate),
            g17(b.positive_tail_cap())
        ));
        match &self.negative_tail {
            NegativeTail::Finite(neg) => {
                out.push_str(&format!("integral over (-inf, 0]: {} (mirror of the positive side)\n", g17(neg.value)));
                out.push_str(&format!(
                    "total first curvature: FINITE, value {} <= certified bound {}\n",
                    g17(self.total().unwrap_or(f64::NAN)),
                    g17(self.certified_upper_bound.unwrap_or(f64::NAN))
                ));
            }
            NegativeTail::DivergentWitness { slope, ladder } => {
                out.push_str(&format!("integral over (-inf, 0]: DIVERGENT, slope {}\n", g17(*slope)));
                out.push_str("  a            integral_a^0           slope*|a|\n");
                for r in ladder {
                    out.push_str(&format!(
                        "  {:<12} {:<22} {}\n",
                        g17(r.a),
                        g17(r.integral.value),
                        g17(r.bound)
                    ));
                }
                out.push_str("total first curvature: INFINITE\n");
            }
        }
        out
    }
}

/// Ladder points for the odd-n divergence witness.
pub const DIVERGENCE_LADDER: [f64; 4] = [-5.0, -10.0, -20.0, -40.0];

/// Classifies the total first curvature of `C_n` as finite or infinite.
///
/// Even n: the positive tail is certified by its analytic cap and doubled by
/// the `t -> -t` symmetry. Odd n: the positive tail is certified the same way
/// and the negative side gets a divergence ladder, each rung checked against
/// `Â |a|`. A rung falling short of its minorant by more than the quadrature
/// tolerance is reported as [`Error::Consistency`].
pub fn classify(spec: &CurveSpec, cfg: &QuadConfig) -> Result<ConvergenceVerdict> {
    let bounds = bound_constants(spec);
    let positive_tail = positive_tail_total_curvature(spec, cfg, DEFAULT_TAIL_TOL)?;
    if positive_tail.value > bounds.positive_tail_cap() + positive_tail.error_estimate {
        return Err(Error::Consistency(format!(
            "positive tail {} exceeds its analytic cap {}",
            positive_tail.value,
            bounds.positive_tail_cap()
        )));
    }

    match spec.case() {
        CaseTag::Two | CaseTag::EvenGe4 { .. } => {
            let certified = 2.0 * bounds.positive_tail_cap();
            let total = 2.0 * positive_tail.value;
            if total > certified + 2.0 * positive_tail.error_estimate {
                return Err(Error::Consistency(format!("total {total} exceeds certified bound {certified}")));
            }
            Ok(ConvergenceVerdict {
                n: spec.n(),
                total_finite: positive_tail.converged,
                positive_tail,
                negative_tail: NegativeTail::Finite(positive_tail),
                certified_upper_bound: Some(certified),
                bounds,
            })
        }
        CaseTag::Odd { .. } => {
            let slope = bounds.minorant_const.expect("odd n has a minorant");
            let ladder = divergence_ladder(spec, cfg, slope, &DIVERGENCE_LADDER)?;
            Ok(ConvergenceVerdict {
                n: spec.n(),
                total_finite: false,
                positive_tail,
                negative_tail: NegativeTail::DivergentWitness { slope, ladder },
                certified_upper_bound: None,
                bounds,
            })
        }
    }
}

/// `∫_a^0 K1 dt` at each `a` (descending), accumulated segment by segment.
fn divergence_ladder(spec: &CurveSpec, cfg: &QuadConfig, slope: f64, points: &[f64]) -> Result<Vec<LadderRung>> {
    let mut ladder = Vec::with_capacity(points.len());
    let mut acc = IntegralResult { value: 0.0, error_estimate: 0.0, evals: 0, converged: true };
    let mut upper = 0.0;
    for &a in points {
        let piece = adaptive_quad(|t| integrand_k1(spec, t), a, upper, cfg)?;
        acc = IntegralResult {
            value: acc.value + piece.value,
            error_estimate: acc.error_estimate + piece.error_estimate,
            evals: acc.evals + piece.evals,
            converged: acc.converged && piece.converged,
        };
        let bound = slope * a.abs();
        let slack = acc.error_estimate + cfg.target(acc.value);
        if acc.value < bound - slack {
            return Err(Error::Consistency(format!(
                "ladder rung a={a}: integral {} below minorant {bound}",
                acc.value
            )));
        }
        ladder.push(LadderRung { a, integral: acc, bound });
        upper = a;
    }
    Ok(ladder)
}

/// Checks the arc-length minorants on `[0, b]` and `[-b, 0]` for each `b`.
///
/// Positive side: `‖ẋ‖ > e^t`, so length `>= e^b - 1`. Negative side:
/// `‖ẋ‖ > e^{a_m t}` for odd n, giving `(e^{b|a_m|} - 1)/|a_m|`, and
/// `‖ẋ‖ > e^{-t}` for even n, giving `e^b - 1`.
pub fn infinite_length_check(spec: &CurveSpec, bs: &[f64], cfg: &QuadConfig) -> ValidationReport {
    let mut report = ValidationReport::new(format!("infinite length n={}", spec.n()));
    for &b in bs {
        if b == 0.0 {
            report.push(Check::new(format!("length_pos@b={}", g17(b)), true, 0.0, 0.0).with_detail("empty interval"));
            report.push(Check::new(format!("length_neg@b={}", g17(b)), true, 0.0, 0.0).with_detail("empty interval"));
            continue;
        }
        if !(b > 0.0) {
            report.push(Check::new(format!("length@b={}", g17(b)), false, b, 0.0).with_detail("need b >= 0"));
            continue;
        }
        let pos_bound = b.exp_m1();
        let neg_bound = match (spec.case(), spec.roots().alpha_min()) {
            (CaseTag::Odd { .. }, Some(am)) => (b * am.abs()).exp_m1() / am.abs(),
            _ => b.exp_m1(),
        };
        for (name, lo, hi, bound) in [("length_pos", 0.0, b, pos_bound), ("length_neg", -b, 0.0, neg_bound)] {
            let check = match arc_length(spec, lo, hi, cfg) {
                Ok(r) => Check::new(format!("{name}@b={}", g17(b)), r.value >= bound, r.value, bound)
                    .with_detail(format!("converged={}", r.converged)),
                Err(e) => Check::new(format!("{name}@b={}", g17(b)), false, f64::NAN, bound).with_detail(e.to_string()),
            };
            report.push(check);
        }
    }
    report
}

fn rel_dev(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// Runs the full invariant battery for one curve. `quick` thins out the
/// grids and skips the quadrature-heavy checks.
pub fn verify_battery(spec: &CurveSpec, quick: bool, cfg: &QuadConfig) -> ValidationReport {
    let n = spec.n();
    let mut report = ValidationReport::new(format!("verify n={n}{}", if quick { " (quick)" } else { "" }));
    let grid: Vec<f64> = if quick {
        standard_grid().into_iter().step_by(4).collect()
    } else {
        standard_grid()
    };

    for mut c in verify_root_structure(spec.roots()).checks {
        c.name = format!("roots.{}", c.name);
        report.push(c);
    }

    // Raw-coordinate checks.
    let mut ode = 0.0f64;
    let mut below_order = vec![0.0f64; n];
    let mut fd = 0.0f64;
    let fd_cfg = FDConfig::default();
    let mut raw_failure = None;
    for &t in &grid {
        let x = match curve_point(spec, t) {
            Ok(x) => x,
            Err(e) => {
                raw_failure = Some(e);
                break;
            }
        };
        let xn = x.norm();
        let mut prev = x.clone();
        for p in 1..=n {
            let d = curve_derivative(spec, t, p).expect("t already validated");
            let dev = (&d - &x).norm() / xn;
            if p == n {
                ode = ode.max(dev);
            } else {
                below_order[p] = below_order[p].max(dev);
            }
            let approx = fd_derivative(|s| curve_derivative(spec, s, p - 1).expect("finite t"), t, &fd_cfg);
            fd = fd.max((&approx - &d).norm() / d.norm());
            prev = d;
        }
        let _ = prev;
    }
    if let Some(e) = raw_failure {
        report.push(Check::new("raw_coordinates", false, f64::NAN, 0.0).with_detail(e.to_string()));
    }
    report.push(Check::at_most("ode_identity", ode, 1e-9));
    for (q, dev) in below_order.iter().enumerate().skip(1) {
        report.push(Check::above(format!("ode_non_identity.q{q}"), *dev, 1e-6));
    }
    report.push(Check::at_most("fd_oracle", fd, 1e-6));

    let closure = spec
        .roots()
        .pairs
        .iter()
        .flat_map(|pr| {
            (0..=4 * n).map(move |p| {
                DerivCoeffs::from_complex_power(pr.alpha, pr.beta, p)
                    .max_abs_diff(&DerivCoeffs::from_recurrence(pr.alpha, pr.beta, p))
            })
        })
        .fold(0.0, f64::max);
    report.push(Check::at_most("coefficient_closure", closure, 1e-13));

    let mut closed_general = 0.0f64;
    let mut product = 0.0f64;
    let mut substitution = 0.0f64;
    let mut lagrange = 0.0f64;
    let mut speed_deriv = 0.0f64;
    let mut min_k1 = f64::INFINITY;
    // Strict in exact arithmetic; at |t| = 20 the excess is below f64
    // resolution, so the numerical check is non-strict.
    let mut minorant_speed = f64::NEG_INFINITY;
    for &t in &grid {
        let kc = k1_closed(spec, t);
        min_k1 = min_k1.min(kc);
        if let Ok(kg) = k1_general(spec, t) {
            closed_general = closed_general.max((kc - kg).abs() / kc.max(1e-300));
        }
        let sp = speed(spec, t);
        let k = integrand_k1(spec, t);
        product = product.max(rel_dev(k, kc * sp));
        if let Ok(sub) = substituted_integrand(spec, t.exp()) {
            substitution = substitution.max(rel_dev(sub * t.exp(), k));
        }
        if let (Ok(u), Ok(v)) = (curve_derivative(spec, t, 1), curve_derivative(spec, t, 2)) {
            speed_deriv = speed_deriv.max(rel_dev(sp, u.norm()));
            if n >= 3 {
                let mut pairs = 0.0;
                for i in 0..n {
                    for j in i + 1..n {
                        pairs += (u[i] * v[j] - u[j] * v[i]).powi(2);
                    }
                }
                if let Ok(w) = wedge_norm_sq(&u, &v) {
                    lagrange = lagrange.max(rel_dev(w, pairs));
                }
            }
        }
        let mut lower = t.exp();
        if spec.case().is_even() {
            lower = lower.max((-t).exp());
        }
        minorant_speed = minorant_speed.max(lower / sp - 1.0);
    }
    report.push(Check::at_most("k1_closed_vs_general", closed_general, 1e-9));
    report.push(Check::at_most("integrand_vs_product", product, 1e-11));
    report.push(Check::at_most("substitution_identity", substitution, 1e-11));
    report.push(Check::at_most("speed_vs_derivative_norm", speed_deriv, 1e-12));
    if n >= 3 {
        report.push(Check::at_most("wedge_vs_lagrange", lagrange, 1e-10));
    }
    report.push(Check::above("k1_positive", min_k1, 0.0));
    report.push(Check::at_most("speed_minorant", minorant_speed, 0.0));

    if spec.case().is_even() {
        let mut k1_par = 0.0f64;
        let mut speed_par = 0.0f64;
        for &t in &grid {
            k1_par = k1_par.max(rel_dev(k1_closed(spec, -t), k1_closed(spec, t)));
            speed_par = speed_par.max(rel_dev(speed(spec, -t), speed(spec, t)));
        }
        report.push(Check::at_most("parity_k1", k1_par, 1e-12));
        report.push(Check::at_most("parity_speed", speed_par, 1e-12));
    }

    let xs = log_grid(1e-4, 1e4, if quick { 50 } else { 200 });
    let bounds = pointwise_bound_check(spec, &xs);
    let summarize = |prefix: &str| {
        let relevant: Vec<&Check> = bounds.checks.iter().filter(|c| c.name.starts_with(prefix)).collect();
        let worst = relevant
            .iter()
            .min_by(|a, b| a.value.total_cmp(&b.value))
            .map(|c| (c.value, c.name.clone()));
        let all = relevant.iter().all(|c| c.passed);
        (relevant.len(), worst, all)
    };
    for prefix in ["majorant", "minorant"] {
        let (count, worst, all) = summarize(prefix);
        if count > 0 {
            let (value, at) = worst.expect("non-empty");
            report.push(
                Check::new(format!("pointwise_{prefix}"), all, value, 0.0)
                    .with_detail(format!("{count} points, smallest margin at {at}")),
            );
        }
    }

    if !quick {
        for mut c in infinite_length_check(spec, &[1.0, 3.0, 5.0], cfg).checks {
            c.name = format!("infinite_length.{}", c.name);
            report.push(c);
        }
        match classify(spec, cfg) {
            Ok(v) => {
                let expected = spec.case().is_even();
                report.push(
                    Check::new("classify_parity", v.total_finite == expected, v.total_finite as u8 as f64, expected as u8 as f64)
                        .with_detail(format!("converged={}", v.converged())),
                );
            }
            Err(e) => report.push(Check::new("classify_parity", false, f64::NAN, 0.0).with_detail(e.to_string())),
        }
    }
    report
}
