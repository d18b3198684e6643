use darboux_web::{eigenfunction, scan_curve, scan_minima, transformed_potential};

#[test]
fn scan_curve_is_ik_plus_a_for_the_free_case() {
    let curve = scan_curve(-0.5, 2.0, 0.0, 1.0, -4.0, 4.0, 81).unwrap();
    // The sample at k = 0 is dropped.
    assert_eq!(curve.len(), 160);
    for pair in curve.chunks(2) {
        let (k, m) = (pair[0], pair[1]);
        assert!((m - (0.25 + (k + 2.0) * (k + 2.0)).sqrt()).abs() < 1e-10, "{k}: {m}");
    }
}

#[test]
fn minima_flag_the_singularity() {
    let minima = scan_minima(0.0, 2.0, 0.0, 1.0, -4.0, 4.0, 81).unwrap();
    let flagged: Vec<_> = minima.chunks(3).filter(|m| m[2] == 1.0).collect();
    assert_eq!(flagged.len(), 1);
    assert!((flagged[0][0] + 2.0).abs() < 1e-4);
}

#[test]
fn eigenfunction_layout() {
    let phi = eigenfunction(-0.5, 1.0, 2.0, 1.0, 1.5).unwrap();
    assert_eq!(phi.len(), 3 * 2001);
    assert_eq!(phi[0], 0.0);
    assert!(phi.chunks(3).all(|p| p.iter().all(|v| v.is_finite())));
    let v = transformed_potential(0.0, 1.3, 2.0, 1.0).unwrap();
    assert_eq!(v.len(), 3 * 2001);
}
