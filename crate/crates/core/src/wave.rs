//! Complex functions sampled together with their derivatives on a [`Grid`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::potential::Potential;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveSample {
    pub grid: Grid,
    pub values: Vec<Complex64>,
    pub derivatives: Vec<Complex64>,
    /// The `k` for which the sample solves its Schrödinger equation with eigenvalue `k^2`.
    pub wavenumber: Option<Complex64>,
}

/// Exact continuation `A e^{ikx} + B e^{-ikx}` of a sample past `x_max`, valid once
/// the potential (and the superpotential's derivative) have vanished.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWaveTail {
    pub k: f64,
    pub forward: Complex64,
    pub backward: Complex64,
}

impl PlaneWaveTail {
    pub fn value(&self, x: f64) -> Complex64 {
        let phase = Complex64::from_polar(1.0, self.k * x);
        self.forward * phase + self.backward * phase.conj()
    }
}

impl WaveSample {
    pub fn new(
        grid: Grid,
        values: Vec<Complex64>,
        derivatives: Vec<Complex64>,
        wavenumber: Option<Complex64>,
    ) -> Result<Self> {
        if values.len() != grid.len() || derivatives.len() != grid.len() {
            return Err(Error::GridMismatch);
        }
        Ok(Self {
            grid,
            values,
            derivatives,
            wavenumber,
        })
    }

    /// Samples a closed-form function and its derivative.
    pub fn from_fn(
        grid: Grid,
        wavenumber: Option<Complex64>,
        f: impl Fn(f64) -> (Complex64, Complex64),
    ) -> Self {
        let (values, derivatives) = grid.points().map(f).unzip();
        Self {
            grid,
            values,
            derivatives,
            wavenumber,
        }
    }

    pub fn zeros(grid: Grid) -> Self {
        let zero = vec![Complex64::new(0.0, 0.0); grid.len()];
        Self {
            grid,
            values: zero.clone(),
            derivatives: zero,
            wavenumber: None,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|v| v * factor).collect(),
            derivatives: self.derivatives.iter().map(|v| v * factor).collect(),
            wavenumber: self.wavenumber,
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|v| v.conj()).collect(),
            derivatives: self.derivatives.iter().map(|v| v.conj()).collect(),
            wavenumber: self.wavenumber.map(|k| -k.conj()),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Cubic Hermite interpolation from values and derivatives.
    pub fn interpolate(&self, x: f64) -> Complex64 {
        let h = self.grid.spacing();
        let i = self.grid.cell(x);
        let t = ((x - self.grid.point(i)) / h).clamp(0.0, 1.0);
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        self.values[i] * h00
            + self.derivatives[i] * (h10 * h)
            + self.values[i + 1] * h01
            + self.derivatives[i + 1] * (h11 * h)
    }

    /// Fits the plane-wave continuation at `x_max` from the last value and derivative.
    /// Requires a real, nonzero wavenumber.
    pub fn plane_wave_tail(&self) -> Option<PlaneWaveTail> {
        let k = self.wavenumber?;
        if k.im != 0.0 || k.re == 0.0 {
            return None;
        }
        let k = k.re;
        let x = self.grid.x_max();
        let v = *self.values.last()?;
        let d = *self.derivatives.last()?;
        let ratio = d / Complex64::new(0.0, k);
        let phase = Complex64::from_polar(1.0, -k * x);
        Some(PlaneWaveTail {
            k,
            forward: 0.5 * (v + ratio) * phase,
            backward: 0.5 * (v - ratio) * phase.conj(),
        })
    }

    /// Max over interior nodes of `|-y'' + (v0 - k^2) y|`, with `y''` from a sixth-order
    /// centered difference of the derivative samples. Nodes whose stencil straddles a
    /// potential jump are skipped.
    pub fn eigen_residual(&self, potential: &Potential) -> Option<f64> {
        let k = self.wavenumber?;
        let second = centered_derivative(&self.derivatives, self.grid.spacing());
        let skip = jump_mask(&self.grid, potential, 4);
        let k2 = k * k;
        let mut worst = 0.0f64;
        for i in STENCIL..self.len() - STENCIL {
            if skip[i] {
                continue;
            }
            let x = self.grid.point(i);
            let r = -second[i] + (potential.value(x) - k2) * self.values[i];
            worst = worst.max(r.norm());
        }
        Some(worst)
    }
}

/// Half-width of the centered stencils below.
pub const STENCIL: usize = 3;

const D1: [f64; 7] = [
    -1.0 / 60.0,
    3.0 / 20.0,
    -3.0 / 4.0,
    0.0,
    3.0 / 4.0,
    -3.0 / 20.0,
    1.0 / 60.0,
];
const D2: [f64; 7] = [
    1.0 / 90.0,
    -3.0 / 20.0,
    3.0 / 2.0,
    -49.0 / 18.0,
    3.0 / 2.0,
    -3.0 / 20.0,
    1.0 / 90.0,
];

fn apply_stencil(values: &[Complex64], weights: &[f64; 7], scale: f64) -> Vec<Complex64> {
    let n = values.len();
    let mut out = vec![Complex64::new(f64::NAN, f64::NAN); n];
    if n < 2 * STENCIL + 1 {
        return out;
    }
    for (i, slot) in out.iter_mut().enumerate().take(n - STENCIL).skip(STENCIL) {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, w) in weights.iter().enumerate() {
            acc += values[i + j - STENCIL] * *w;
        }
        *slot = acc * scale;
    }
    out
}

/// Sixth-order centered first derivative; the outer `STENCIL` nodes are NaN.
pub fn centered_derivative(values: &[Complex64], h: f64) -> Vec<Complex64> {
    apply_stencil(values, &D1, 1.0 / h)
}

/// Sixth-order centered second derivative; the outer `STENCIL` nodes are NaN.
pub fn centered_second_derivative(values: &[Complex64], h: f64) -> Vec<Complex64> {
    apply_stencil(values, &D2, 1.0 / (h * h))
}

/// Fourth-order first derivative: centered in the interior, one-sided at the ends.
pub fn fourth_order_derivative(values: &[Complex64], h: f64) -> Vec<Complex64> {
    let n = values.len();
    assert!(n >= 5, "fourth-order differences need five nodes");
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for i in 2..n - 2 {
        out[i] = (values[i - 2] - values[i - 1] * 8.0 + values[i + 1] * 8.0 - values[i + 2])
            / (12.0 * h);
    }
    let fwd = |v: &[Complex64]| {
        (v[0] * -25.0 + v[1] * 48.0 - v[2] * 36.0 + v[3] * 16.0 - v[4] * 3.0) / (12.0 * h)
    };
    let mixed = |v: &[Complex64]| {
        (v[0] * -3.0 - v[1] * 10.0 + v[2] * 18.0 - v[3] * 6.0 + v[4]) / (12.0 * h)
    };
    out[0] = fwd(&values[0..5]);
    out[1] = mixed(&values[0..5]);
    let tail: Vec<Complex64> = values[n - 5..].iter().rev().copied().collect();
    out[n - 1] = -fwd(&tail);
    out[n - 2] = -mixed(&tail);
    out
}

/// Marks nodes within `reach` cells of a jump in the potential.
pub fn jump_mask(grid: &Grid, potential: &Potential, reach: usize) -> Vec<bool> {
    let mut mask = vec![false; grid.len()];
    for x in potential.jumps() {
        if x < 0.0 || x > grid.x_max() {
            continue;
        }
        let c = grid.nearest(x);
        let lo = c.saturating_sub(reach + 1);
        let hi = (c + reach + 1).min(grid.len() - 1);
        mask[lo..=hi].iter_mut().for_each(|m| *m = true);
    }
    mask
}

/// `∫_0^{x_max} f dx` by the trapezoid rule with the Euler–Maclaurin end correction
/// at the origin. The integrand is assumed negligible, with negligible slope, at `x_max`.
pub fn integrate_from_origin(values: &[Complex64], slope_at_origin: Complex64, h: f64) -> Complex64 {
    let n = values.len();
    let interior: Complex64 = values[1..n - 1].iter().sum();
    (interior + 0.5 * (values[0] + values[n - 1])) * h + slope_at_origin * (h * h / 12.0)
}
