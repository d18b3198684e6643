//! The six subcommands. Each returns its output files and a verdict; nothing is
//! written here.

use std::collections::BTreeMap;

use darboux_core::io::{eta_table_csv, fmt_f64, identity_csv, minima_csv, scan_csv, wave_csv, CsvTable};
use darboux_core::schwartz::{analytic_phi, smeared_kernel_residual, kernel_bracket};
use darboux_core::sturm_liouville::{solve_jost_with, JostOptions};
use darboux_core::{
    binorm_functional, build_system, identity_kernel_batch, scan_singularities, tol, Complex64, Grid,
    PairingOptions, Potential, RegularizationParams, SusySystem, TestFunction,
};
use serde::Serialize;

use crate::config::Loaded;
use crate::error::Result;

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub command: &'static str,
    pub verdict: &'static str,
    pub claim: &'static str,
    pub tolerance: f64,
    pub metrics: BTreeMap<String, f64>,
    pub files: Vec<String>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }
}

pub struct Outcome {
    pub files: Vec<(String, String)>,
    pub verdict: Verdict,
}

struct Builder {
    command: &'static str,
    claim: &'static str,
    tolerance: f64,
    metrics: BTreeMap<String, f64>,
    files: Vec<(String, String)>,
}

impl Builder {
    fn new(command: &'static str, claim: &'static str, tolerance: f64) -> Self {
        Self {
            command,
            claim,
            tolerance,
            metrics: BTreeMap::new(),
            files: Vec::new(),
        }
    }

    fn metric(&mut self, name: impl Into<String>, value: f64) {
        self.metrics.insert(name.into(), value);
    }

    fn file(&mut self, name: impl Into<String>, contents: String) {
        self.files.push((name.into(), contents));
    }

    fn finish(self, pass: bool) -> Outcome {
        let names = self.files.iter().map(|(n, _)| n.clone()).collect();
        Outcome {
            verdict: Verdict {
                command: self.command,
                verdict: if pass { "pass" } else { "fail" },
                claim: self.claim,
                tolerance: self.tolerance,
                metrics: self.metrics,
                files: names,
            },
            files: self.files,
        }
    }
}

fn system(run: &Loaded, command: &str) -> Result<SusySystem> {
    let f = run.factorization(command)?;
    Ok(build_system(&run.potential, f.a(), &run.grid)?)
}

pub fn jost(run: &Loaded) -> Result<Outcome> {
    let cfg = &run.config.jost;
    let k = Complex64::new(cfg.k, cfg.k_im);
    let data = solve_jost_with(&run.potential, k, &run.grid, &JostOptions { ode_tol: cfg.ode_tol })?;
    let mut b = Builder::new(
        "jost",
        "the Jost solution solves -f'' + v0 f = k^2 f with f ~ e^{ikx} at large x; F(k) = f(k, 0)",
        tol::FD,
    );
    let scale = data.solution.max_abs();
    let residual = data.solution.eigen_residual(&run.potential).unwrap_or(f64::NAN) / scale;
    b.metric("jost_function_re", data.jost_function_value.re);
    b.metric("jost_function_im", data.jost_function_value.im);
    b.metric("jost_function_abs", data.jost_function_value.norm());
    b.metric("relative_eigen_residual", residual);
    b.metric("accepted_steps", data.stats.accepted as f64);
    b.metric("rejected_steps", data.stats.rejected as f64);
    b.file("jost.csv", wave_csv(&data.solution));
    Ok(b.finish(residual < tol::FD))
}

pub fn transform(run: &Loaded) -> Result<Outcome> {
    let sys = system(run, "transform")?;
    let mut b = Builder::new(
        "transform",
        "u is a nodeless solution of L u = 0, and each normalized phi_k satisfies phi'(0) + w(0) phi(0) = 0",
        tol::ODE,
    );
    let lu = sys.apply_l(&sys.u)?.max_abs() / sys.u.max_abs();
    b.metric("lu_relative", lu);

    let mut table = CsvTable::new(&["x", "re_u", "im_u", "re_w", "im_w", "re_v", "im_v"]);
    for (i, x) in sys.grid().points().enumerate() {
        let (u, w, v) = (sys.u.values[i], sys.w[i], sys.v[i]);
        table.numbers(&[x, u.re, u.im, w.re, w.im, v.re, v.im]);
    }
    b.file("system.json", sys.to_json()?);
    b.file("superpotential.csv", table.into_string());

    let mut norms = CsvTable::new(&["k", "re_n_k", "im_n_k", "boundary_residual"]);
    let mut worst_boundary = 0.0f64;
    for (i, &k) in run.config.transform.k.iter().enumerate() {
        let n = sys.normalized_phi(k)?;
        let boundary = sys.boundary_residual(&n.phi).norm() / n.phi.max_abs();
        worst_boundary = worst_boundary.max(boundary);
        norms.numbers(&[k, n.n_k.re, n.n_k.im, boundary]);
        b.file(format!("phi_k{i}.csv"), wave_csv(&n.phi));
    }
    b.file("normalization.csv", norms.into_string());
    b.metric("boundary_relative", worst_boundary);
    // The kernel property is checked against the looser stencil-limited bound.
    Ok(b.finish(lu < 1e-9 && worst_boundary < tol::ODE))
}

pub fn identity(run: &Loaded) -> Result<Outcome> {
    let sys = system(run, "identity")?;
    let reg = run.regularization();
    let cfg = &run.config.identity;
    let battery = &run.config.test_functions;
    let batch = identity_kernel_batch(&sys, battery, &cfg.xs, &reg)?;
    let mut b = Builder::new(
        "identity",
        "the regularized eigenfunction expansion reproduces each test function at every sample point",
        cfg.tolerance,
    );
    let mut worst = 0.0f64;
    let mut estimate = 0.0f64;
    let mut unconverged = 0;
    for (f, row) in battery.iter().zip(&batch.values) {
        for (&x, s) in cfg.xs.iter().zip(row) {
            worst = worst.max((s.value - f.value(x)).norm());
            estimate = estimate.max(s.estimated_error);
            unconverged += usize::from(!s.converged);
        }
    }
    b.metric("epsilon", batch.epsilon);
    b.metric("max_abs_err", worst);
    b.metric("max_estimated_error", estimate);
    b.metric("unconverged", unconverged as f64);
    b.file("identity.csv", identity_csv(&batch, battery));
    Ok(b.finish(worst < cfg.tolerance))
}

pub fn binorm(run: &Loaded) -> Result<Outcome> {
    let sys = system(run, "binorm")?;
    let cfg = &run.config.binorm;
    let opts = PairingOptions {
        tolerance: cfg.tolerance,
        ..PairingOptions::default()
    };
    let mut b = Builder::new(
        "binorm",
        "pairing L psi_k against L psi_k' and smearing in k' gives (k^2 - alpha) times the test function at k",
        cfg.tolerance,
    );
    let mut table = CsvTable::new(&[
        "k",
        "re_value",
        "im_value",
        "re_expected",
        "im_expected",
        "abs_err",
        "estimated_error",
    ]);
    let mut worst = 0.0f64;
    let mut pass = true;
    for (i, &k) in cfg.k.iter().enumerate() {
        let test_fn = TestFunction::gaussian(k, cfg.width);
        let got = binorm_functional(&sys, k, &test_fn, &opts)?;
        let shift = k * k - sys.alpha();
        let expected = shift * test_fn.value(k);
        let err = (got.value - expected).norm();
        pass &= err < cfg.tolerance * (1.0 + shift.norm());
        worst = worst.max(err / (1.0 + shift.norm()));
        table.numbers(&[k, got.value.re, got.value.im, expected.re, expected.im, err, got.estimated_error]);
        b.file(format!("eta_k{i}.csv"), eta_table_csv(&got));
    }
    b.metric("max_scaled_err", worst);
    b.file("binorm.csv", table.into_string());
    Ok(b.finish(pass))
}

pub fn scan(run: &Loaded) -> Result<Outcome> {
    let sys = system(run, "scan")?;
    let cfg = run.config.scan;
    let result = scan_singularities(&sys, (cfg.k_min, cfg.k_max), cfg.samples)?;
    let mut b = Builder::new(
        "scan",
        "the boundary functional of the transformed Jost solution vanishes on the real axis only at k = -b, and only when Re(a) = 0",
        tol::ZERO,
    );
    let found: Vec<_> = result.singularities().collect();
    let expected_k = -sys.factorization.b();
    let inside = expected_k > cfg.k_min && expected_k < cfg.k_max;
    let pass = if sys.factorization.is_singular() && inside {
        found.len() == 1 && (found[0].k - expected_k).abs() < 1e-4
    } else {
        found.is_empty()
    };
    let (k_min, modulus) = result.min_modulus().unwrap_or((f64::NAN, f64::NAN));
    b.metric("expected_k", expected_k);
    b.metric("k_at_min", k_min);
    b.metric("min_modulus", modulus);
    b.metric("singularities", found.len() as f64);
    b.file("scan.csv", scan_csv(&result));
    b.file("minima.csv", minima_csv(&result));
    Ok(b.finish(pass))
}

pub fn schwartz_check(run: &Loaded) -> Result<Outcome> {
    let cfg = &run.config.schwartz;
    let mut b = Builder::new(
        "schwartz-check",
        "closed-form eigenfunctions of the transformed free operator match the numerical pipeline, the regularized bracket vanishes exactly when b and epsilon share a sign, and the regularized kernel minus the identity matches its exact form",
        cfg.phi_tolerance,
    );
    let mut table = CsvTable::new(&["check", "d", "b", "parameter", "deviation", "tolerance", "pass"]);
    let row = |table: &mut CsvTable, check: &str, a: Complex64, p: f64, dev: f64, tol: f64, ok: bool| {
        table.row(&[
            check.to_string(),
            fmt_f64(a.re),
            fmt_f64(a.im),
            fmt_f64(p),
            fmt_f64(dev),
            fmt_f64(tol),
            ok.to_string(),
        ]);
        ok
    };
    let grid: Grid = run.grid;
    let mut pass = true;
    let (mut phi_worst, mut bracket_worst, mut kernel_worst) = (0.0f64, 0.0f64, 0.0f64);
    let factorizations: Vec<Complex64> = cfg.factorizations.iter().map(|[d, b]| Complex64::new(*d, *b)).collect();

    for &a in &factorizations {
        let sys = build_system(&Potential::zero(), a, &grid)?;
        for &k in &cfg.k {
            if (k * k + a * a).norm() < tol::SINGULAR {
                continue;
            }
            let phi = sys.normalized_phi(k)?.phi;
            let mut dev = 0.0f64;
            for (i, x) in grid.points().enumerate() {
                dev = dev.max((phi.values[i] - analytic_phi(a, k, x)?).norm());
            }
            phi_worst = phi_worst.max(dev);
            pass &= row(&mut table, "phi", a, k, dev, cfg.phi_tolerance, dev < cfg.phi_tolerance);
        }
    }

    for &a in &factorizations {
        for &eps in &cfg.epsilons {
            let bracket = kernel_bracket(a.im, eps)?.norm();
            let ok = if a.im * eps > 0.0 {
                bracket_worst = bracket_worst.max(bracket);
                bracket < cfg.bracket_tolerance
            } else {
                bracket > a.im * a.im
            };
            pass &= row(&mut table, "bracket", a, eps, bracket, cfg.bracket_tolerance, ok);
        }
    }

    let xs = &run.config.identity.xs;
    for &a in &factorizations {
        let sys = build_system(&Potential::zero(), a, &grid)?;
        for &eps in &cfg.epsilons {
            let reg = RegularizationParams {
                override_sign: true,
                ..run.regularization()
            };
            let reg = RegularizationParams { epsilon: eps, ..reg };
            let batch = identity_kernel_batch(&sys, &run.config.test_functions, xs, &reg)?;
            let mut dev = 0.0f64;
            for (f, values) in run.config.test_functions.iter().zip(&batch.values) {
                for (&x, s) in xs.iter().zip(values) {
                    let exact = smeared_kernel_residual(a, eps, f, x)?;
                    dev = dev.max((s.value - f.value(x) - exact).norm());
                }
            }
            kernel_worst = kernel_worst.max(dev);
            let ok = dev < cfg.kernel_tolerance;
            pass &= row(&mut table, "kernel", a, eps, dev, cfg.kernel_tolerance, ok);
        }
    }
    b.metric("phi_max_deviation", phi_worst);
    b.metric("bracket_max_same_sign", bracket_worst);
    b.metric("kernel_max_deviation", kernel_worst);
    b.file("schwartz.csv", table.into_string());
    Ok(b.finish(pass))
}
