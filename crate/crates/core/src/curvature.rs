//! First curvature `k1(t)`, speed, and the total-curvature integrand.
//!
//! Writing `S = Σ e^{2a_k t}`, `T = Σ a_k e^{2a_k t}`, `P = e^{2t}` and
//! `Q = e^{-2t}`, the squared wedge norm `‖ẋ ∧ ẍ‖²` is
//!
//! ```text
//! odd n:  (S - T)(S + T) + 2P(S - T)
//! even n: (S - T)(S + T) + 2P(S - T) + 2Q(S + T) + 4
//! n = 2:  4
//! ```
//!
//! and `‖ẋ‖² = S + P (+ Q)`. Since `|a_k| < 1`, the sums `S ± T` have only
//! positive terms, so every bracket is a sum of positive exponentials and is
//! evaluated in the log domain without cancellation.

use crate::curve::{curve_derivative, CaseTag, CurveSpec, PointN};
use crate::error::{Error, Result};
use crate::fmt::csv_row;
use crate::logsum::log_sum_exp;

const LN_2: f64 = std::f64::consts::LN_2;

/// One row of sampled curvature data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureSample {
    pub t: f64,
    pub speed: f64,
    pub k1: f64,
    /// `k1 · speed`, the integrand of the total first curvature.
    pub integrand: f64,
}

impl CurvatureSample {
    pub const CSV_HEADER: &'static str = "t,speed,k1,K1";

    pub fn to_csv_row(&self) -> String {
        csv_row(&[self.t, self.speed, self.k1, self.integrand])
    }
}

/// `ln(Σ w_k e^{c_k t})` over the root pairs with weights `w_k = weight(a_k)`
/// and rates `c_k = rate(a_k)`.
fn pair_lse(spec: &CurveSpec, t: f64, weight: impl Fn(f64) -> f64, rate: impl Fn(f64) -> f64) -> f64 {
    let terms: Vec<f64> = spec
        .roots()
        .alphas()
        .map(|a| weight(a).ln() + rate(a) * t)
        .collect();
    log_sum_exp(terms)
}

/// `(ln ‖ẋ∧ẍ‖², ln ‖ẋ‖²)` in the original parameter.
fn log_wedge_and_speed_sq(spec: &CurveSpec, t: f64) -> (f64, f64) {
    let ln_diff = pair_lse(spec, t, |a| 1.0 - a, |a| 2.0 * a);
    let ln_sum = pair_lse(spec, t, |a| 1.0 + a, |a| 2.0 * a);
    let even = spec.case().is_even();

    let mut wedge = vec![ln_diff + ln_sum, LN_2 + 2.0 * t + ln_diff];
    let mut speed_sq: Vec<f64> = spec.roots().alphas().map(|a| 2.0 * a * t).collect();
    speed_sq.push(2.0 * t);
    if even {
        wedge.push(LN_2 - 2.0 * t + ln_sum);
        wedge.push(2.0 * LN_2);
        speed_sq.push(-2.0 * t);
    }
    (log_sum_exp(wedge), log_sum_exp(speed_sq))
}

/// `ln ‖ẋ(t)‖`.
pub fn log_speed(spec: &CurveSpec, t: f64) -> f64 {
    0.5 * log_wedge_and_speed_sq(spec, t).1
}

/// `‖ẋ(t)‖` from the closed form; `inf` once `ln ‖ẋ‖` passes ~709.
pub fn speed(spec: &CurveSpec, t: f64) -> f64 {
    log_speed(spec, t).exp()
}

/// `ln k1(t)` from the closed form.
pub fn log_k1_closed(spec: &CurveSpec, t: f64) -> f64 {
    let (w, s) = log_wedge_and_speed_sq(spec, t);
    0.5 * w - 1.5 * s
}

/// `k1(t) = ‖ẋ∧ẍ‖ / ‖ẋ‖³` from the closed form. For n = 2 this is the
/// signed curvature `det[ẋ ẍ]/‖ẋ‖³`, whose determinant is the constant 2.
pub fn k1_closed(spec: &CurveSpec, t: f64) -> f64 {
    log_k1_closed(spec, t).exp()
}

/// `‖u‖²‖v‖² - ⟨u,v⟩²`, evaluated as `‖u‖² ‖v - proj_u v‖²` with one
/// reorthogonalization step. This avoids the catastrophic cancellation of
/// the raw Gram determinant when `u` and `v` are nearly parallel.
pub fn wedge_norm_sq(u: &PointN, v: &PointN) -> Result<f64> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch { left: u.dim(), right: v.dim() });
    }
    let uu = u.dot(u);
    if uu == 0.0 {
        return Ok(0.0);
    }
    let mut w = v.clone();
    for _ in 0..2 {
        let c = w.dot(u) / uu;
        for (wi, ui) in w.0.iter_mut().zip(&u.0) {
            *wi -= c * ui;
        }
    }
    Ok(uu * w.dot(&w))
}

/// The raw 2×2 Gram determinant `⟨u,u⟩⟨v,v⟩ - ⟨u,v⟩²`.
///
/// Negative values within `1e-10 · ⟨u,u⟩⟨v,v⟩` are rounding and are clamped
/// to 0; anything more negative is reported as a consistency error.
pub fn gram_determinant(u: &PointN, v: &PointN) -> Result<f64> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch { left: u.dim(), right: v.dim() });
    }
    let (uu, vv, uv) = (u.dot(u), v.dot(v), u.dot(v));
    let det = uu * vv - uv * uv;
    if det >= 0.0 {
        Ok(det)
    } else if -det <= 1e-10 * uu * vv {
        Ok(0.0)
    } else {
        Err(Error::Consistency(format!("Gram determinant {det} is negative")))
    }
}

fn scaled(p: &PointN) -> (PointN, f64) {
    let norm = p.norm();
    if norm == 0.0 {
        return (p.clone(), 0.0);
    }
    (PointN(p.0.iter().map(|v| v / norm).collect()), norm)
}

/// `k1(t)` from the explicit derivative vectors `ẋ(t)` and `ẍ(t)`.
///
/// Only valid where the raw coordinates are representable (`|t| <= 700`).
pub fn k1_general(spec: &CurveSpec, t: f64) -> Result<f64> {
    let d1 = curve_derivative(spec, t, 1)?;
    let d2 = curve_derivative(spec, t, 2)?;
    let (u, nu) = scaled(&d1);
    let (v, nv) = scaled(&d2);
    let unit_wedge = if spec.case() == CaseTag::Two {
        u[0] * v[1] - u[1] * v[0]
    } else {
        wedge_norm_sq(&u, &v)?.sqrt()
    };
    Ok(unit_wedge * nv / (nu * nu))
}

/// `ln K1(t)` for `K1 = k1 ‖ẋ‖`, using the brackets rescaled by `e^{2t}`:
/// with `S' = Σ e^{2(1+a_k)t}` and `T' = Σ a_k e^{2(1+a_k)t}`,
///
/// ```text
/// odd n:  K1 = [(S'-T')(S'+T') + 2e^{4t}(S'-T')]^{1/2} / (S' + e^{4t})
/// even n: K1 = [(S'-T')(S'+T') + 2e^{4t}(S'-T') + 2(S'+T') + 4e^{4t}]^{1/2} / (S' + e^{4t} + 1)
/// ```
pub fn log_integrand_k1(spec: &CurveSpec, t: f64) -> f64 {
    let ln_diff = pair_lse(spec, t, |a| 1.0 - a, |a| 2.0 * (1.0 + a));
    let ln_sum = pair_lse(spec, t, |a| 1.0 + a, |a| 2.0 * (1.0 + a));
    let mut num = vec![ln_diff + ln_sum, LN_2 + 4.0 * t + ln_diff];
    let mut den: Vec<f64> = spec.roots().alphas().map(|a| 2.0 * (1.0 + a) * t).collect();
    den.push(4.0 * t);
    if spec.case().is_even() {
        num.push(LN_2 + ln_sum);
        num.push(2.0 * LN_2 + 4.0 * t);
        den.push(0.0);
    }
    0.5 * log_sum_exp(num) - log_sum_exp(den)
}

/// `K1(t) = k1(t) ‖ẋ(t)‖`, the integrand of the total first curvature.
pub fn integrand_k1(spec: &CurveSpec, t: f64) -> f64 {
    log_integrand_k1(spec, t).exp()
}

/// The integrand after the substitution `x = e^t`, so that
/// `∫ K1(t) dt = ∫ substituted_integrand(x) dx`.
///
/// For n = 2 this is `2x/(1+x⁴)`; otherwise it is the rational-power
/// expression in `x`, evaluated after dividing through by its dominant power.
pub fn substituted_integrand(spec: &CurveSpec, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::InvalidArgument(format!("substituted integrand needs x > 0, got {x}")));
    }
    let alphas: Vec<f64> = spec.roots().alphas().collect();
    let even = spec.case().is_even();

    if spec.case() == CaseTag::Two {
        return Ok(if x <= 1.0 {
            2.0 * x / (1.0 + x.powi(4))
        } else {
            2.0 / (x.powi(3) * (1.0 + x.powi(-4)))
        });
    }

    // Bracket pieces relative to a common scale power x^s:
    // diff = Σ(1-a)x^{2(1+a)-s}, sum = Σ(1+a)x^{2(1+a)-s}, quartic = x^{4-s},
    // unit = x^{-s}.
    let scale = if x >= 1.0 {
        4.0
    } else if even {
        0.0
    } else {
        2.0 * (1.0 + alphas[alphas.len() - 1])
    };
    let power = |e: f64| x.powf(e - scale);
    let plain: f64 = alphas.iter().map(|&a| power(2.0 * (1.0 + a))).sum();
    let diff: f64 = alphas.iter().map(|&a| (1.0 - a) * power(2.0 * (1.0 + a))).sum();
    let sum: f64 = alphas.iter().map(|&a| (1.0 + a) * power(2.0 * (1.0 + a))).sum();
    let quartic = power(4.0);

    // The numerator bracket scales with x^{2s} and the denominator with x^s.
    let mut num = diff * sum + 2.0 * quartic * diff;
    let mut den = plain + quartic;
    if even {
        let unit = power(0.0);
        num += 2.0 * unit * sum + 4.0 * unit * quartic;
        den += unit;
    }
    Ok(num.sqrt() / (x * den))
}

/// Speed, curvature and integrand at `t`.
pub fn sample(spec: &CurveSpec, t: f64) -> CurvatureSample {
    CurvatureSample {
        t,
        speed: speed(spec, t),
        k1: k1_closed(spec, t),
        integrand: integrand_k1(spec, t),
    }
}

/// `steps + 1` equally spaced samples on `[t0, t1]`, in order.
pub fn sample_range(spec: &CurveSpec, t0: f64, t1: f64, steps: usize) -> Result<Vec<CurvatureSample>> {
    if !(t0 < t1) {
        return Err(Error::InvalidInterval { lo: t0, hi: t1 });
    }
    if steps < 2 {
        return Err(Error::InvalidArgument(format!("steps must be >= 2, got {steps}")));
    }
    let h = (t1 - t0) / steps as f64;
    Ok((0..=steps)
        .map(|i| {
            let t = if i == steps { t1 } else { t0 + h * i as f64 };
            sample(spec, t)
        })
        .collect())
}

/// CSV with header `t,speed,k1,K1` and one row per sample.
pub fn samples_to_csv(samples: &[CurvatureSample]) -> String {
    let mut out = String::with_capacity(80 * (samples.len() + 1));
    out.push_str(CurvatureSample::CSV_HEADER);
    out.push('\n');
    for s in samples {
        out.push_str(&s.to_csv_row());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::standard_grid;

    fn spec(n: usize) -> CurveSpec {
        CurveSpec::new(n).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn wedge_examples() {
        let p = |v: &[f64]| PointN(v.to_vec());
        assert_eq!(wedge_norm_sq(&p(&[1.0, 0.0]), &p(&[0.0, 1.0])).unwrap(), 1.0);
        assert_eq!(wedge_norm_sq(&p(&[3.0, 4.0]), &p(&[3.0, 4.0])).unwrap(), 0.0);
        assert!((wedge_norm_sq(&p(&[1.0, 0.0, 0.0]), &p(&[1.0, 1.0, 0.0])).unwrap() - 1.0).abs() < 1e-15);
        assert!(matches!(
            wedge_norm_sq(&p(&[1.0]), &p(&[1.0, 2.0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn gram_guard() {
        let p = |v: &[f64]| PointN(v.to_vec());
        assert_eq!(gram_determinant(&p(&[0.1, 0.2]), &p(&[0.1, 0.2])).unwrap(), 0.0);
        assert_eq!(gram_determinant(&p(&[1.0, 0.0, 0.0]), &p(&[1.0, 1.0, 0.0])).unwrap(), 1.0);
    }

    #[test]
    fn speeds_at_zero() {
        assert!(rel(speed(&spec(2), 0.0), 2f64.sqrt()) < 1e-15);
        assert!(rel(speed(&spec(3), 0.0), 2f64.sqrt()) < 1e-15);
        assert!(rel(speed(&spec(4), 0.0), 3f64.sqrt()) < 1e-15);
    }

    #[test]
    fn speed_matches_derivative_norm() {
        for n in 2..=10 {
            let s = spec(n);
            for i in 0..=60 {
                let t = -30.0 + i as f64;
                let d = curve_derivative(&s, t, 1).unwrap();
                assert!(rel(speed(&s, t), d.norm()) < 1e-12, "n={n} t={t}");
            }
        }
    }

    #[test]
    fn k1_reference_values() {
        // 40-digit evaluations from the explicit derivative vectors.
        assert!(rel(k1_closed(&spec(2), 0.0), std::f64::consts::FRAC_1_SQRT_2) < 1e-14);
        assert!(rel(k1_closed(&spec(3), 0.0), 0.68465319688145764) < 1e-14);
        assert!(rel(k1_closed(&spec(4), 0.0), 0.57735026918962576) < 1e-14);
        assert!(rel(k1_closed(&spec(2), 10.0), 1.8715245937680349e-13) < 1e-13);
        assert!(rel(k1_general(&spec(2), 0.0).unwrap(), std::f64::consts::FRAC_1_SQRT_2) < 1e-14);
        for n in [3, 4] {
            let s = spec(n);
            assert!(rel(k1_general(&s, 0.0).unwrap(), k1_closed(&s, 0.0)) < 1e-12);
        }
    }

    #[test]
    fn closed_and_general_agree_on_grid() {
        for n in 2..=10 {
            let s = spec(n);
            for t in standard_grid() {
                let c = k1_closed(&s, t);
                let g = k1_general(&s, t).unwrap();
                assert!((c - g).abs() <= 1e-9 * c.max(1e-300), "n={n} t={t}: {c} vs {g}");
            }
        }
    }

    #[test]
    fn wedge_matches_lagrange_pair_sum() {
        for n in 3..=8 {
            let s = spec(n);
            for t in standard_grid() {
                let u = curve_derivative(&s, t, 1).unwrap();
                let v = curve_derivative(&s, t, 2).unwrap();
                let mut pairs = 0.0;
                for i in 0..n {
                    for j in i + 1..n {
                        pairs += (u[i] * v[j] - u[j] * v[i]).powi(2);
                    }
                }
                let w = wedge_norm_sq(&u, &v).unwrap();
                assert!(rel(w, pairs) < 1e-10, "n={n} t={t}: {w} vs {pairs}");
            }
        }
    }

    #[test]
    fn even_parity() {
        for n in [4, 6, 8] {
            let s = spec(n);
            for &t in &[0.5, 1.3, 7.0] {
                assert!(rel(k1_closed(&s, -t), k1_closed(&s, t)) < 1e-12);
                assert!(rel(speed(&s, -t), speed(&s, t)) < 1e-12);
            }
        }
    }

    #[test]
    fn integrand_matches_product() {
        for n in 2..=10 {
            let s = spec(n);
            for t in standard_grid() {
                let prod = k1_closed(&s, t) * speed(&s, t);
                assert!(rel(integrand_k1(&s, t), prod) < 1e-11, "n={n} t={t}");
            }
        }
        assert!(rel(integrand_k1(&spec(2), 0.0), 1.0) < 1e-15);
    }

    #[test]
    fn substitution_identity() {
        for n in 2..=10 {
            let s = spec(n);
            for t in standard_grid() {
                let x = t.exp();
                let lhs = substituted_integrand(&s, x).unwrap() * x;
                assert!(rel(lhs, integrand_k1(&s, t)) < 1e-11, "n={n} t={t}");
            }
        }
        let s3 = spec(3);
        assert!(rel(substituted_integrand(&s3, 1.0).unwrap(), integrand_k1(&s3, 0.0)) < 1e-12);
        assert!(substituted_integrand(&s3, 0.0).is_err());
        assert!(substituted_integrand(&s3, -1.0).is_err());
    }

    #[test]
    fn two_dimensional_substituted_form() {
        let s = spec(2);
        assert_eq!(substituted_integrand(&s, 1.0).unwrap(), 1.0);
        for &x in &[1.0, 1.5, 3.0, 10.0, 1e3] {
            assert!(substituted_integrand(&s, x).unwrap() < 2.0 / (x * x));
        }
    }

    #[test]
    fn far_negative_tail_is_finite() {
        let s = spec(3);
        let v = integrand_k1(&s, -40.0);
        assert!(v.is_finite() && v > 0.0);
        let x = (-40f64).exp();
        assert!(rel(v, substituted_integrand(&s, x).unwrap() * x) < 1e-12);
        // K1 tends to beta_m = sqrt(3)/2 as t -> -inf.
        assert!((v - 3f64.sqrt() / 2.0).abs() < 1e-12);
        assert!(integrand_k1(&spec(6), 500.0).is_finite());
    }

    #[test]
    fn positivity_on_grid() {
        for n in 2..=10 {
            let s = spec(n);
            for t in standard_grid() {
                assert!(k1_closed(&s, t) > 0.0);
            }
        }
    }

    #[test]
    fn csv_shape() {
        let rows = sample_range(&spec(3), -1.0, 1.0, 4).unwrap();
        assert_eq!(rows.len(), 5);
        assert_eq!(rows[4].t, 1.0);
        let csv = samples_to_csv(&rows);
        assert!(csv.starts_with("t,speed,k1,K1\n-1,"));
        assert_eq!(csv.lines().count(), 6);
        assert!(sample_range(&spec(3), 1.0, 1.0, 4).is_err());
        assert!(sample_range(&spec(3), 0.0, 1.0, 1).is_err());
    }
}
