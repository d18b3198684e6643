//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use darboux_core::distributional::battery_points;
use darboux_core::schwartz::{analytic_phi, tabulated_integrals, kernel_bracket};
use darboux_core::test_function::{gaussian_battery, residual_battery};
use darboux_core::{
    binorm_functional, build_system, identity_kernel_batch, path_to_singularity, scan_singularities,
    Complex64, Grid, PairingOptions, Potential, RegularizationParams, Result, SusySystem, TestFunction,
};

type Criterion = (&'static str, fn() -> Result<Outcome>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Result<Outcome> {
    Ok(Outcome { pass, detail })
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn free(a: Complex64) -> Result<SusySystem> {
    build_system(&Potential::zero(), a, &Grid::default())
}

fn shipped_potentials() -> Result<Vec<Potential>> {
    Ok(vec![Potential::zero(), Potential::square_well(2.0, 1.0)?])
}

fn shipped_factorizations() -> Vec<Complex64> {
    vec![c(-0.5, 1.0), c(-0.1, 2.0), c(0.0, 2.0), c(0.0, 1.0), c(0.0, 1.3), c(-0.3, 1.3), c(-0.05, -1.0)]
}

fn battery_error(sys: &SusySystem, reg: &RegularizationParams) -> Result<(f64, Vec<f64>)> {
    let battery = gaussian_battery();
    let xs = battery_points();
    let batch = identity_kernel_batch(sys, &battery, &xs, reg)?;
    let per_member: Vec<f64> = battery
        .iter()
        .zip(&batch.values)
        .map(|(f, row)| {
            xs.iter()
                .zip(row)
                .map(|(&x, s)| (s.value - f.value(x)).norm())
                .fold(0.0, f64::max)
        })
        .collect();
    Ok((per_member.iter().copied().fold(0.0, f64::max), per_member))
}

fn oracle_equivalence() -> Result<Outcome> {
    let grid = Grid::default();
    let mut worst = 0.0f64;
    for a in [c(-0.5, 1.0), c(-0.1, 2.0), c(0.0, 2.0)] {
        let sys = build_system(&Potential::zero(), a, &grid)?;
        for k in [0.5, 1.0, 2.0, 3.0] {
            if a == c(0.0, 2.0) && k == 2.0 {
                continue;
            }
            let phi = sys.normalized_phi(k)?.phi;
            for (i, x) in grid.points().enumerate() {
                worst = worst.max((phi.values[i] - analytic_phi(a, k, x)?).norm());
            }
        }
    }
    outcome(worst < 1e-8, format!("max |φ_num - φ_exact| = {worst:.3e} (tol 1e-8)"))
}

fn kernel_property() -> Result<Outcome> {
    let mut worst = 0.0f64;
    for pot in shipped_potentials()? {
        for a in shipped_factorizations() {
            let sys = build_system(&pot, a, &Grid::default())?;
            let lu = sys.apply_l(&sys.u)?;
            worst = worst.max(lu.max_abs() / sys.u.max_abs());
        }
    }
    outcome(worst < 1e-9, format!("max ‖Lu‖∞/max|u| = {worst:.3e} (tol 1e-9)"))
}

fn residuals() -> Result<Outcome> {
    let (mut inter, mut fact) = (0.0f64, 0.0f64);
    for pot in shipped_potentials()? {
        for a in [c(-0.5, 1.0), c(0.0, 2.0), c(0.0, 1.3)] {
            let sys = build_system(&pot, a, &Grid::default())?;
            for f in residual_battery() {
                inter = inter.max(sys.intertwining_residual(&f));
                fact = fact.max(sys.factorization_residual(&f));
            }
        }
    }
    outcome(
        inter < 1e-6 && fact < 1e-6,
        format!("intertwining {inter:.3e}, factorization {fact:.3e} (tol 1e-6)"),
    )
}

fn regular_completeness() -> Result<Outcome> {
    let sys = free(c(-0.5, 1.0))?;
    let (err, _) = battery_error(&sys, &RegularizationParams::with_epsilon(0.0))?;
    outcome(err < 5e-3, format!("max |I - Φ| = {err:.3e} over 5 gaussians x 8 points (tol 5e-3)"))
}

fn zero_binorm() -> Result<Outcome> {
    let sys = free(c(0.0, 2.0))?;
    let opts = PairingOptions::default();
    let at_two = binorm_functional(&sys, 2.0, &TestFunction::gaussian(2.0, 1.0), &opts)?.value;
    let at_one = binorm_functional(&sys, 1.0, &TestFunction::gaussian(1.0, 1.0), &opts)?.value;
    let dev = (at_one + 3.0).norm();
    outcome(
        at_two.norm() < 1e-5 && dev < 1e-4,
        format!("|B(2)| = {:.3e} (tol 1e-5), |B(1) + 3| = {dev:.3e} (tol 1e-4)", at_two.norm()),
    )
}

fn regularized_resolution() -> Result<Outcome> {
    let sys = free(c(0.0, 1.0))?;
    let (e1, _) = battery_error(&sys, &RegularizationParams::with_epsilon(1e-3))?;
    let (e2, _) = battery_error(&sys, &RegularizationParams::with_epsilon(5e-4))?;
    outcome(
        e1 < 5e-3 && e2 <= e1,
        format!("error {e1:.3e} at ε = 1e-3, {e2:.3e} at ε = 5e-4 (tol 5e-3, non-increasing)"),
    )
}

fn epsilon_sign_rule() -> Result<Outcome> {
    let sys = free(c(0.0, 1.0))?;
    let wrong = |eps: f64| RegularizationParams {
        override_sign: true,
        ..RegularizationParams::with_epsilon(eps)
    };
    let (e1, members) = battery_error(&sys, &wrong(-1e-3))?;
    let (e2, _) = battery_error(&sys, &wrong(-5e-4))?;
    let exceeding = members.iter().filter(|&&m| m > 0.05).count();
    outcome(
        exceeding >= 1 && e2 >= e1,
        format!("error {e1:.3e} at ε = -1e-3 ({exceeding}/5 members > 0.05), {e2:.3e} at ε = -5e-4"),
    )
}

fn bracket_identity() -> Result<Outcome> {
    let pairs = [
        (1.0, 1e-2),
        (1.0, 1e-3),
        (2.0, 1e-3),
        (0.5, 0.2),
        (3.0, 1e-4),
        (1.7, 0.05),
        (-1.0, -1e-2),
        (-2.5, -1e-3),
        (-0.3, -0.1),
        (-4.0, -1e-5),
    ];
    let (mut zero, mut flipped_ok) = (0.0f64, true);
    for (b, eps) in pairs {
        zero = zero.max(kernel_bracket(b, eps)?.norm());
        flipped_ok &= kernel_bracket(b, -eps)?.norm() > b * b;
    }
    outcome(
        zero < 1e-14 && flipped_ok,
        format!("max |bracket| = {zero:.3e} for bε > 0 (tol 1e-14); flipped all > b²: {flipped_ok}"),
    )
}

fn singularity_scan() -> Result<Outcome> {
    let singular = scan_singularities(&free(c(0.0, 2.0))?, (-5.0, 5.0), 401)?;
    let found: Vec<_> = singular.singularities().collect();
    let located = found.len() == 1 && (found[0].k + 2.0).abs() < 1e-4 && found[0].modulus < 1e-8;
    let regular = scan_singularities(&free(c(-0.05, 2.0))?, (-5.0, 5.0), 401)?;
    let none = regular.singularities().count() == 0;
    let (_, min) = regular.min_modulus().unwrap_or((f64::NAN, f64::NAN));
    let k_star = found.first().map_or(f64::NAN, |m| m.k);
    let modulus = found.first().map_or(f64::NAN, |m| m.modulus);
    outcome(
        located && none && (min - 0.05).abs() < 1e-4,
        format!("a = 2i: k* = {k_star:.8}, |f| = {modulus:.3e}; d = -0.05: no singularity = {none}, min = {min:.8}"),
    )
}

fn path_monotonicity() -> Result<Outcome> {
    let ds = [-0.4, -0.2, -0.1, -0.05, -0.01];
    let report = path_to_singularity(&Potential::zero(), 1.0, &ds, &Grid::default(), (-3.0, 3.0), 121)?;
    let mut worst = 0.0f64;
    for (p, d) in report.points.iter().zip(ds) {
        worst = worst
            .max((p.min_modulus - d.abs()).abs())
            .max((p.prefactor - d.abs() * (d * d + 4.0).sqrt()).abs());
    }
    let monotone = report.is_monotone();
    outcome(
        monotone && worst < 1e-6,
        format!("monotone = {monotone}, max deviation from closed forms {worst:.3e} (tol 1e-6)"),
    )
}

fn tabulated_vs_quadrature() -> Result<Outcome> {
    let mut worst = 0.0f64;
    let draws = common::tabulated_draws(20);
    for &(beta, a, cc) in &draws {
        let (cos_int, sin_int) = tabulated_integrals(beta, a, cc)?;
        let peak = beta.im.abs();
        let cos_ref = common::abel_integral(|x| c((a * x).cos(), 0.0) / (beta * beta + x * x), peak);
        let sin_ref = common::abel_integral(|x| c(x * (cc * x).sin(), 0.0) / (beta * beta + x * x), peak);
        worst = worst.max((cos_int - cos_ref).norm()).max((sin_int - sin_ref).norm());
    }
    let min_re = draws.iter().map(|d| d.0.re.abs()).fold(f64::INFINITY, f64::min);
    outcome(
        worst < 1e-6,
        format!("{} draws, min |Re β| = {min_re:.3}, max deviation {worst:.3e} (tol 1e-6)", draws.len()),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("closed-form eigenfunctions match the pipeline", oracle_equivalence),
        ("transformation function lies in the kernel of L", kernel_property),
        ("intertwining and factorization residuals", residuals),
        ("completeness in the regular regime", regular_completeness),
        ("binorm vanishes at the singular point", zero_binorm),
        ("regularized resolution of the identity", regularized_resolution),
        ("wrong-sign epsilon leaves a residual", epsilon_sign_rule),
        ("bracket vanishes iff b*epsilon > 0", bracket_identity),
        ("singularity scan", singularity_scan),
        ("path toward the singular point", path_monotonicity),
        ("tabulated integrals vs damped quadrature", tabulated_vs_quadrature),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (pass, detail) = match run() {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failures += 1;
        }
        println!(
            "{} {:>2} {name}: {detail} [{:.1}s]",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            start.elapsed().as_secs_f64()
        );
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
