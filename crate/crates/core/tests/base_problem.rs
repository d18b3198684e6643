mod common;

use std::f64::consts::PI;

use darboux_core::distributional::PairingOptions;
use darboux_core::tol;
use darboux_core::{
    base_eigenfunction, smeared_orthonormality, solve_jost, Complex64, Grid, Potential, TestFunction,
};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

#[test]
fn square_well_jost_function_matches_plane_wave_matching() {
    let well = Potential::square_well(2.0, 1.0).unwrap();
    let grid = Grid::default();
    for k in [0.3, 1.5, 4.0] {
        let jost = solve_jost(&well, c(k), &grid).unwrap();
        let exact = common::well_jost_function(2.0, 1.0, c(k));
        assert!((jost.jost_function_value - exact).norm() < 1e-8, "k = {k}");
        assert_eq!(jost.jost_function_value, jost.solution.values[0]);
        for x in [0.25, 0.999, 1.0, 2.0, 10.0] {
            let i = grid.nearest(x);
            let (f, df) = common::well_jost(2.0, 1.0, c(k), grid.point(i));
            assert!((jost.solution.values[i] - f).norm() < 1e-8);
            assert!((jost.solution.derivatives[i] - df).norm() < 1e-8);
        }
    }
}

#[test]
fn jost_solution_for_complex_momentum_matches_matching() {
    let well = Potential::square_well(2.0, 1.0).unwrap();
    let grid = Grid::default();
    let k = Complex64::new(1.3, 0.5);
    let jost = solve_jost(&well, k, &grid).unwrap();
    let exact = common::well_jost_function(2.0, 1.0, k);
    assert!((jost.jost_function_value - exact).norm() < 1e-8 * exact.norm());
}

#[test]
fn asymptotic_data_is_exact_at_x_max() {
    let grid = Grid::default();
    let well = Potential::square_well(2.0, 1.0).unwrap();
    let k = 1.7;
    let jost = solve_jost(&well, c(k), &grid).unwrap();
    let last = *jost.solution.values.last().unwrap();
    let expected = Complex64::from_polar(1.0, k * grid.x_max());
    assert!((last - expected).norm() < tol::ASYMPTOTIC);
}

#[test]
fn jost_asymptotics_approach_plane_wave_monotonically() {
    let xs: Vec<f64> = (0..=300).map(|i| i as f64 * 0.1).collect();
    let values: Vec<f64> = xs.iter().map(|x| -2.0 * (-x).exp()).collect();
    let pot = Potential::from_table(xs, values).unwrap();
    let grid = Grid::default();
    let k = 1.2;
    let jost = solve_jost(&pot, c(k), &grid).unwrap();
    let deviation = |x: f64| {
        let i = grid.nearest(x);
        (jost.solution.values[i] - Complex64::from_polar(1.0, k * grid.point(i))).norm()
    };
    let samples: Vec<f64> = (5..=25).map(|x| deviation(x as f64)).collect();
    for w in samples.windows(2) {
        assert!(w[1] <= w[0] + 1e-12, "{samples:?}");
    }
    assert!(samples[0] > 1e-4);
}

#[test]
fn free_eigenfunction_is_sine() {
    let grid = Grid::default();
    let psi = base_eigenfunction(&Potential::zero(), 2.0, &grid).unwrap();
    assert_eq!(psi.values[0], c(0.0));
    let norm = (2.0 / PI).sqrt();
    for (i, x) in grid.points().enumerate().step_by(37) {
        assert!((psi.values[i] - c(norm * (2.0 * x).sin())).norm() < 1e-12);
    }
}

#[test]
fn square_well_eigenfunction_matches_matching() {
    let grid = Grid::default();
    let well = Potential::square_well(2.0, 1.0).unwrap();
    let psi = base_eigenfunction(&well, 1.0, &grid).unwrap();
    let worst = grid
        .points()
        .enumerate()
        .map(|(i, x)| (psi.values[i] - c(common::well_eigenfunction(2.0, 1.0, 1.0, x))).norm())
        .fold(0.0, f64::max);
    assert!(worst < 1e-8, "{worst}");
    assert!(psi.values[0].norm() < 1e-12);
}

#[test]
fn shipped_potentials_have_no_real_jost_zeros() {
    let grid = Grid::default();
    for pot in [Potential::zero(), Potential::square_well(2.0, 1.0).unwrap()] {
        for i in 1..=50 {
            let k = 0.2 * i as f64;
            let f = solve_jost(&pot, c(k), &grid).unwrap().jost_function_value;
            assert!(f.norm() > tol::ZERO);
        }
    }
}

#[test]
fn table_potential_loads_from_file() {
    let path = std::env::temp_dir().join(format!("darboux-table-{}.txt", std::process::id()));
    std::fs::write(&path, "# x v0\n0.0 -1.0\n0.5 -0.5\n1.0 0.0\n").unwrap();
    let pot = Potential::load_table(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(pot.value(0.25), -0.75);
    assert_eq!(pot.value(3.0), 0.0);
    assert!(pot.decay_radius() <= 1.0);
}

#[test]
fn smeared_orthonormality_matches_brute_force_and_delta() {
    let grid = Grid::default();
    let phi = TestFunction::gaussian(1.0, 1.0);
    let got = smeared_orthonormality(&Potential::zero(), 1.0, &phi, &grid, &PairingOptions::default()).unwrap();
    assert!(got.converged);
    assert!((got.value - 1.0).norm() < tol::QUAD, "{}", got.value);

    let norm = 2.0 / PI;
    let (eta0, partial) = got.eta_table[0];
    let (_, hi) = phi.support().unwrap();
    let brute = common::brute_force_pairing(
        |k, x| c(norm.sqrt() * (k * x).sin()),
        |k| phi.value(k),
        1.0,
        (tol::K_MIN, hi),
        eta0,
    );
    assert!((brute - partial).norm() < 1e-8, "{brute} vs {partial}");
}

#[test]
fn smeared_orthonormality_far_test_function() {
    let grid = Grid::default();
    let phi = TestFunction::gaussian(5.0, 1.0);
    let got = smeared_orthonormality(&Potential::zero(), 1.0, &phi, &grid, &PairingOptions::default()).unwrap();
    assert!((got.value - (-16.0f64).exp()).norm() < tol::QUAD);
}

#[test]
fn smeared_orthonormality_zero_and_square_well() {
    let grid = Grid::default();
    let opts = PairingOptions::default();
    let well = Potential::square_well(2.0, 1.0).unwrap();
    let zero = smeared_orthonormality(&well, 1.0, &TestFunction::Zero, &grid, &opts).unwrap();
    assert_eq!(zero.value, c(0.0));
    let phi = TestFunction::gaussian(1.2, 0.8);
    let got = smeared_orthonormality(&well, 1.5, &phi, &grid, &opts).unwrap();
    assert!((got.value - phi.value(1.5)).norm() < tol::QUAD, "{}", got.value);
}
