//! The base half-line problem `h0 = -d²/dx² + v0(x)` with a Dirichlet condition at
//! the origin: Jost solutions, the Jost function and delta-normalized continuum
//! eigenfunctions.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::distributional::{smeared_pairing, Pairing, PairingOptions, SmearedFunctional};
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::ode::{self, State, StepControl, StepStats};
use crate::potential::Potential;
use crate::test_function::TestFunction;
use crate::tol;
use crate::wave::WaveSample;

/// A Jost solution `f(k, x) → e^{ikx}` and its value at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct JostData {
    pub solution: WaveSample,
    /// `F(k) = f(k, 0)`.
    pub jost_function_value: Complex64,
    pub k: Complex64,
    pub stats: StepStats,
}

#[derive(Debug, Clone, Copy)]
pub struct JostOptions {
    pub ode_tol: f64,
}

impl Default for JostOptions {
    fn default() -> Self {
        Self { ode_tol: tol::ODE }
    }
}

pub fn solve_jost(potential: &Potential, k: Complex64, grid: &Grid) -> Result<JostData> {
    solve_jost_with(potential, k, grid, &JostOptions::default())
}

/// Integrates inward from `x_max` with exact asymptotic data.
///
/// The stepper works on the modulated amplitude `g = f e^{-ikx}`, which obeys
/// `g'' = v0 g - 2ik g'` with `g(x_max) = 1`, `g'(x_max) = 0`. For a vanishing
/// potential `g` stays identically 1, and for `Im k > 0` the amplitude does not
/// underflow the way `e^{ikx}` does.
pub fn solve_jost_with(
    potential: &Potential,
    k: Complex64,
    grid: &Grid,
    opts: &JostOptions,
) -> Result<JostData> {
    if k.norm() == 0.0 || !k.is_finite() {
        return Err(Error::InvalidWavenumber {
            k,
            reason: "Jost solutions need a finite nonzero k",
        });
    }
    if k.im < 0.0 {
        return Err(Error::InvalidWavenumber {
            k,
            reason: "Jost solutions are defined here for Im k >= 0",
        });
    }
    if grid.x_max() <= potential.decay_radius() {
        return Err(Error::AsymptoticRegionTooSmall {
            x_max: grid.x_max(),
            decay_radius: potential.decay_radius(),
        });
    }

    let ik = Complex64::i() * k;
    let two_ik = 2.0 * ik;
    let n = grid.len();
    let h = grid.spacing();
    let ctl = StepControl::new(opts.ode_tol, h);
    let breakpoints = potential.breakpoints();
    let mut stats = StepStats::default();

    let mut amp = vec![[Complex64::new(0.0, 0.0); 2]; n];
    let mut state: State = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
    amp[n - 1] = state;
    let mut step = h;
    let zero_potential = potential.is_zero();

    for i in (0..n - 1).rev() {
        let (lo, hi) = (grid.point(i), grid.point(i + 1));
        if zero_potential {
            // g ≡ 1 solves the modulated equation exactly.
            amp[i] = state;
            continue;
        }
        let mut cuts: Vec<f64> = breakpoints
            .iter()
            .copied()
            .filter(|&b| b > lo && b < hi)
            .collect();
        cuts.sort_by(|a, b| b.total_cmp(a));
        let mut from = hi;
        for to in cuts.into_iter().chain(std::iter::once(lo)) {
            let side = 0.5 * (from + to);
            let rhs = |x: f64, y: &State| -> State {
                let v = potential.value_on(x, side);
                [y[1], y[0] * v - two_ik * y[1]]
            };
            state = ode::integrate(&rhs, from, to, state, &mut step, &ctl, &mut stats)?;
            from = to;
        }
        amp[i] = state;
    }

    let mut values = Vec::with_capacity(n);
    let mut derivatives = Vec::with_capacity(n);
    for (i, [g, dg]) in amp.into_iter().enumerate() {
        let e = (ik * grid.point(i)).exp();
        values.push(e * g);
        derivatives.push(e * (ik * g + dg));
    }
    let jost_function_value = values[0];
    let solution = WaveSample::new(*grid, values, derivatives, Some(k))?;
    Ok(JostData {
        solution,
        jost_function_value,
        k,
        stats,
    })
}

/// Real, delta-normalized continuum eigenfunction `ψ_k` with `ψ_k(0) = 0`.
///
/// Built from the Jost combination `F(-k) f(k,x) - F(k) f(-k,x)`, rotated by the
/// global phase that makes `ψ'_k(0)` real and positive and scaled so the
/// asymptotic amplitude is `√(2/π)`. For a real potential and real `k`,
/// `f(-k, x)` is the complex conjugate of `f(k, x)`.
pub fn base_eigenfunction(potential: &Potential, k: f64, grid: &Grid) -> Result<WaveSample> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::InvalidWavenumber {
            k: Complex64::new(k, 0.0),
            reason: "continuum eigenfunctions need k > 0",
        });
    }
    let jost = solve_jost(potential, Complex64::new(k, 0.0), grid)?;
    let big_f = jost.jost_function_value;
    if big_f.norm() < tol::ZERO {
        return Err(Error::JostZeroOnRealAxis {
            k,
            modulus: big_f.norm(),
        });
    }
    let f = &jost.solution;
    let combine = |v: Complex64| big_f.conj() * v - big_f * v.conj();
    let slope0 = combine(f.derivatives[0]);
    let phase = slope0.conj() / slope0.norm();

    let raw_values: Vec<Complex64> = f.values.iter().map(|&v| combine(v) * phase).collect();
    let raw_derivs: Vec<Complex64> = f.derivatives.iter().map(|&v| combine(v) * phase).collect();
    // Past x_max the combination is A e^{ikx} + conj(A) e^{-ikx}: amplitude 2|A|.
    let raw = WaveSample::new(*grid, raw_values, raw_derivs, Some(Complex64::new(k, 0.0)))?;
    let tail = raw.plane_wave_tail().expect("real nonzero wavenumber");
    let amplitude = 2.0 * tail.forward.norm();
    let scale = (2.0 / PI).sqrt() / amplitude;

    Ok(raw.scaled(Complex64::new(scale, 0.0)))
}

/// `∫dk' [∫dx ψ_k(x) ψ_k'(x)] Φ(k')`, which should return `Φ(k)`.
pub fn smeared_orthonormality(
    potential: &Potential,
    k: f64,
    test_fn: &TestFunction,
    grid: &Grid,
    opts: &PairingOptions,
) -> Result<SmearedFunctional> {
    let left = base_eigenfunction(potential, k, grid)?;
    smeared_pairing(
        &left,
        |kp| base_eigenfunction(potential, kp, grid),
        test_fn,
        k,
        opts,
        Pairing::Bilinear,
    )
}
