use ncurve_web::{curvature_series, projection, verdict_text, SERIES_STRIDE, WEB_MAX_N};

#[test]
fn series_layout() {
    let v = curvature_series(3, -1.0, 1.0, 10).unwrap();
    assert_eq!(v.len(), 11 * SERIES_STRIDE);
    assert_eq!(v[0], -1.0);
    assert_eq!(v[10 * SERIES_STRIDE], 1.0);
    // k1 at t = 0 for n = 3.
    let mid = &v[5 * SERIES_STRIDE..6 * SERIES_STRIDE];
    assert!((mid[2] - 0.68465319688145764).abs() < 1e-12);
    assert!(v.iter().all(|x| x.is_finite()));
}

#[test]
fn series_rejects_bad_input() {
    assert!(curvature_series(1, 0.0, 1.0, 10).is_err());
    assert!(curvature_series(WEB_MAX_N + 1, 0.0, 1.0, 10).is_err());
    assert!(curvature_series(4, 1.0, 0.0, 10).is_err());
}

#[test]
fn projection_of_circle_factor() {
    // For n = 4 the first two coordinates trace the unit circle (cos t, sin t).
    let p = projection(4, 0, 1, 0.0, 6.0, 60, false).unwrap();
    assert_eq!(p.len(), 122);
    for (k, uv) in p.chunks(2).enumerate() {
        let t = 0.1 * k as f64;
        assert!((uv[0] - t.cos()).abs() < 1e-12);
        assert!((uv[1] - t.sin()).abs() < 1e-12);
    }
}

#[test]
fn normalized_projection_is_bounded() {
    let p = projection(7, 0, 6, -30.0, 30.0, 200, true).unwrap();
    assert!(p.iter().all(|x| x.abs() <= 1.0 + 1e-12));
    assert!(projection(5, 0, 5, 0.0, 1.0, 10, true).is_err());
}

#[test]
fn verdicts_follow_parity() {
    assert!(verdict_text(2).unwrap().contains("FINITE, value"));
    assert!(verdict_text(5).unwrap().contains("INFINITE"));
}
