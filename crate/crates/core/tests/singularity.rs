mod common;

use darboux_core::singularity::boundary_functional;
use darboux_core::{
    binorm_functional, build_system, path_to_singularity, scan_singularities, tol, transformed_jost,
    Complex64, Error, Grid, PairingOptions, Potential, TestFunction, Verdict,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn well() -> Potential {
    Potential::square_well(2.0, 1.0).unwrap()
}

#[test]
fn free_singular_scan_finds_minus_b() {
    let sys = build_system(&Potential::zero(), c(0.0, 2.0), &Grid::default()).unwrap();
    let scan = scan_singularities(&sys, (-5.0, 5.0), 401).unwrap();
    let found: Vec<_> = scan.singularities().collect();
    assert_eq!(found.len(), 1, "{:?}", scan.minima);
    assert!((found[0].k + 2.0).abs() < 1e-4, "{}", found[0].k);
    assert!(found[0].modulus < tol::ZERO);
    assert!(found[0].curvature > 0.0);
    // k = 2 itself degenerates; its neighbors do not vanish.
    let degenerate = scan.samples.iter().filter(|s| s.functional.is_none()).count();
    assert!(degenerate <= 1);
}

#[test]
fn free_regular_scan_is_clear() {
    let a = c(-0.5, 2.0);
    let sys = build_system(&Potential::zero(), a, &Grid::default()).unwrap();
    let scan = scan_singularities(&sys, (-5.0, 5.0), 401).unwrap();
    assert!(scan.minima.iter().all(|m| m.verdict == Verdict::Clear));
    let (k, modulus) = scan.min_modulus().unwrap();
    assert!((k + 2.0).abs() < 1e-3, "{k}");
    assert!((modulus - 0.5).abs() < 1e-6, "{modulus}");
    // The sampled functional is ik + a.
    for s in &scan.samples {
        let exact = c(0.0, s.k) + a;
        assert!((s.functional.unwrap() - exact).norm() < 1e-10);
    }
}

#[test]
fn square_well_singularity_matches_binorm_zero() {
    let b = 1.3;
    let sys = build_system(&well(), c(0.0, b), &Grid::default()).unwrap();
    let scan = scan_singularities(&sys, (-4.0, 4.0), 321).unwrap();
    let found: Vec<_> = scan.singularities().collect();
    assert_eq!(found.len(), 1, "{:?}", scan.minima);
    assert!((found[0].k + b).abs() < 1e-4, "{}", found[0].k);

    // The prefactor vanishes there, and the smeared binorm vanishes at k = |k*|.
    let k_star = found[0].k;
    assert!(sys.factorization.prefactor(k_star).norm() < tol::SINGULAR);
    let binorm = binorm_functional(&sys, k_star.abs(), &TestFunction::gaussian(b, 1.0), &PairingOptions::default())
        .unwrap();
    assert!(binorm.value.norm() < tol::QUAD, "{}", binorm.value);
}

#[test]
fn singular_mode_is_the_jost_solution_at_minus_b() {
    for (pot, b) in [(Potential::zero(), 2.0), (well(), 1.3), (well(), -0.9)] {
        let sys = build_system(&pot, c(0.0, b), &Grid::default()).unwrap();
        let mode = sys.singular_mode();
        let jost = transformed_jost(&sys, -b).unwrap();
        let i_ref = sys.grid().nearest(3.0);
        let ratio = jost.values[i_ref] / mode.values[i_ref];
        let worst = mode
            .values
            .iter()
            .zip(&jost.values)
            .map(|(m, j)| (m * ratio - j).norm() / j.norm())
            .fold(0.0, f64::max);
        assert!(worst < 1e-6, "b = {b}: {worst}");
    }
}

#[test]
fn negative_b_moves_the_zero_to_plus_b() {
    let sys = build_system(&Potential::zero(), c(0.0, -1.5), &Grid::default()).unwrap();
    let scan = scan_singularities(&sys, (-3.0, 3.0), 241).unwrap();
    let found: Vec<_> = scan.singularities().collect();
    assert_eq!(found.len(), 1);
    assert!((found[0].k - 1.5).abs() < 1e-4);
}

#[test]
fn no_false_positives_in_the_regular_regime() {
    let grid = Grid::default();
    for a in [c(-0.05, 1.0), c(-0.05, -1.3), c(-0.2, 2.0)] {
        let sys = build_system(&Potential::zero(), a, &grid).unwrap();
        let scan = scan_singularities(&sys, (-4.0, 4.0), 161).unwrap();
        assert_eq!(scan.singularities().count(), 0);
        let (_, modulus) = scan.min_modulus().unwrap();
        assert!(modulus > 0.04, "a = {a}: {modulus}");
    }
}

#[test]
fn square_well_functional_is_ik_plus_a_times_jost_function() {
    // The functional carries the base Jost function as a factor, so near k = -b it
    // sits at |d| |F(-b)| rather than |d|.
    let grid = Grid::default();
    for a in [c(-0.05, 1.0), c(-0.05, -1.3), c(-0.2, 2.0)] {
        let sys = build_system(&well(), a, &grid).unwrap();
        for k in [-3.1, -1.3, -1.0, 0.4, 2.2] {
            let got = boundary_functional(&sys, k).unwrap();
            let expected = (c(0.0, k) + a) * common::well_jost_function(2.0, 1.0, c(k, 0.0));
            assert!((got - expected).norm() < 1e-8 * (1.0 + expected.norm()), "a = {a}, k = {k}");
        }
        let scan = scan_singularities(&sys, (-4.0, 4.0), 161).unwrap();
        assert_eq!(scan.singularities().count(), 0);
        let (k, modulus) = scan.min_modulus().unwrap();
        let floor = a.re.abs() * common::well_jost_function(2.0, 1.0, c(-a.im, 0.0)).norm();
        assert!(modulus > 0.9 * floor, "a = {a}: {modulus} at {k}");
    }
}

#[test]
fn free_path_follows_closed_forms() {
    let ds = [-0.4, -0.2, -0.1, -0.05];
    let report =
        path_to_singularity(&Potential::zero(), 1.0, &ds, &Grid::default(), (-3.0, 3.0), 121).unwrap();
    assert!(report.is_monotone());
    for (p, d) in report.points.iter().zip(ds) {
        assert!((p.min_modulus - d.abs()).abs() < 1e-6, "{p:?}");
        assert!((p.prefactor - d.abs() * (d * d + 4.0).sqrt()).abs() < 1e-12, "{p:?}");
    }
}

#[test]
fn free_path_ends_at_zero() {
    let report =
        path_to_singularity(&Potential::zero(), 1.0, &[0.0], &Grid::default(), (-3.0, 3.0), 121).unwrap();
    assert!(report.points[0].min_modulus < tol::ZERO);
    assert_eq!(report.points[0].prefactor, 0.0);
}

#[test]
fn square_well_path_is_monotone() {
    let report = path_to_singularity(
        &well(),
        1.3,
        &[-0.4, -0.2, -0.1, -0.05, -0.01],
        &Grid::default(),
        (-3.0, 3.0),
        121,
    )
    .unwrap();
    assert!(report.is_monotone(), "{report:?}");
    assert!(report.points.last().unwrap().min_modulus < 0.05);
}

#[test]
fn functional_rejects_zero_wavenumber() {
    let sys = build_system(&Potential::zero(), c(-0.5, 1.0), &Grid::default()).unwrap();
    assert!(matches!(boundary_functional(&sys, 0.0), Err(Error::InvalidWavenumber { .. })));
    assert!(scan_singularities(&sys, (1.0, 0.5), 11).is_err());
}
