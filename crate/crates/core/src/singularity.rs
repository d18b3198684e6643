//! Spectral singularities of the transformed Hamiltonian, located as real zeros of
//! the boundary functional `f_H'(0) + w(0) f_H(0)` of its Jost solution.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::darboux::{build_system, SusySystem};
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::par;
use crate::potential::Potential;
use crate::sturm_liouville::solve_jost;
use crate::tol;
use crate::wave::WaveSample;

/// Minima with `|functional|` below this but above `tol::ZERO` are flagged as near misses.
pub const NEAR_SINGULARITY: f64 = 1e-2;

/// Jost solution of `H` at real `k`: `Lf(k, x)` divided by its asymptotic amplitude.
pub fn transformed_jost(system: &SusySystem, k: f64) -> Result<WaveSample> {
    let (solution, _) = transformed_jost_with_amplitude(system, k)?;
    Ok(solution)
}

fn transformed_jost_with_amplitude(system: &SusySystem, k: f64) -> Result<(WaveSample, Complex64)> {
    if !(k.is_finite() && k != 0.0) {
        return Err(Error::InvalidWavenumber {
            k: Complex64::new(k, 0.0),
            reason: "transformed Jost solutions need a finite nonzero real k",
        });
    }
    let f = solve_jost(&system.base_potential, Complex64::new(k, 0.0), system.grid())?.solution;
    let lf = system.apply_l(&f)?;
    let amplitude = lf
        .plane_wave_tail()
        .map(|t| t.forward)
        .expect("real nonzero wavenumber");
    if amplitude.norm() < tol::ZERO {
        return Err(Error::DegenerateJost {
            k,
            amplitude: amplitude.norm(),
        });
    }
    Ok((lf.scaled(amplitude.inv()), amplitude))
}

/// `f_H'(0) + w(0) f_H(0)`; its real zeros are spectral singularities of `H`.
pub fn boundary_functional(system: &SusySystem, k: f64) -> Result<Complex64> {
    let f_h = transformed_jost(system, k)?;
    Ok(system.boundary_residual(&f_h))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Singularity,
    NearSingularity,
    Clear,
}

impl Verdict {
    pub fn classify(modulus: f64) -> Self {
        if modulus < tol::ZERO {
            Verdict::Singularity
        } else if modulus < NEAR_SINGULARITY {
            Verdict::NearSingularity
        } else {
            Verdict::Clear
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Singularity => "singularity",
            Verdict::NearSingularity => "near_singularity",
            Verdict::Clear => "clear",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanSample {
    pub k: f64,
    /// `None` where the transformed Jost solution degenerates.
    pub functional: Option<Complex64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanMinimum {
    pub k: f64,
    pub modulus: f64,
    /// Second-order coefficient of the quadratic fit of `|functional|^2`.
    pub curvature: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingularityScan {
    pub samples: Vec<ScanSample>,
    pub minima: Vec<ScanMinimum>,
}

impl SingularityScan {
    /// Smallest modulus over fitted minima and raw samples.
    pub fn min_modulus(&self) -> Option<(f64, f64)> {
        let fitted = self.minima.iter().map(|m| (m.k, m.modulus));
        let raw = self
            .samples
            .iter()
            .filter_map(|s| s.functional.map(|v| (s.k, v.norm())));
        fitted.chain(raw).min_by(|a, b| a.1.total_cmp(&b.1))
    }

    pub fn singularities(&self) -> impl Iterator<Item = &ScanMinimum> {
        self.minima.iter().filter(|m| m.verdict == Verdict::Singularity)
    }

    /// Verdict of the sample at index `i`: that of a fitted minimum within one step,
    /// else by its own modulus.
    pub fn sample_verdict(&self, i: usize) -> Option<Verdict> {
        let s = self.samples[i];
        let v = s.functional?;
        let step = if self.samples.len() > 1 {
            (self.samples[1].k - self.samples[0].k).abs()
        } else {
            0.0
        };
        let near = self
            .minima
            .iter()
            .filter(|m| (m.k - s.k).abs() <= 0.5 * step)
            .min_by(|a, b| a.modulus.total_cmp(&b.modulus));
        Some(near.map_or_else(|| Verdict::classify(v.norm()), |m| m.verdict))
    }
}

/// Evaluates the boundary functional on `n_samples` points of `[k_lo, k_hi]` and
/// refines every interior local minimum of its modulus by a five-point quadratic
/// least-squares fit of `|functional|^2`.
pub fn scan_singularities(
    system: &SusySystem,
    window: (f64, f64),
    n_samples: usize,
) -> Result<SingularityScan> {
    let (lo, hi) = window;
    if lo.is_nan() || hi.is_nan() || lo >= hi || n_samples < 5 {
        return Err(Error::InvalidArgument(
            "scan needs lo < hi and at least five samples".into(),
        ));
    }
    let ks: Vec<f64> = (0..n_samples)
        .map(|i| lo + (hi - lo) * i as f64 / (n_samples - 1) as f64)
        .filter(|k| *k != 0.0)
        .collect();
    let samples = par::try_map(&ks, |&k| -> Result<ScanSample> {
        let functional = match boundary_functional(system, k) {
            Ok(v) => Some(v),
            Err(Error::DegenerateJost { .. }) => None,
            Err(e) => return Err(e),
        };
        Ok(ScanSample { k, functional })
    })?;

    let modulus: Vec<Option<f64>> = samples.iter().map(|s| s.functional.map(|v| v.norm())).collect();
    let mut minima = Vec::new();
    for i in 2..samples.len().saturating_sub(2) {
        let Some(window): Option<Vec<f64>> = modulus[i - 2..=i + 2].iter().copied().collect() else {
            continue;
        };
        if !(window[2] < window[1] && window[2] <= window[3]) {
            continue;
        }
        let ks: Vec<f64> = samples[i - 2..=i + 2].iter().map(|s| s.k).collect();
        let sq: Vec<f64> = window.iter().map(|m| m * m).collect();
        let (k_star, curvature) = refine_minimum(system, &ks, &sq)?;
        let modulus = match boundary_functional(system, k_star) {
            Ok(v) => v.norm(),
            Err(Error::DegenerateJost { .. }) => window[2],
            Err(e) => return Err(e),
        };
        minima.push(ScanMinimum {
            k: k_star,
            modulus,
            curvature,
            verdict: Verdict::classify(modulus),
        });
    }
    Ok(SingularityScan { samples, minima })
}

/// Quadratic fits on successively narrower five-point stencils around the vertex.
/// A single fit on the scan stencil is biased by the variation of the Jost function
/// across it; each narrowing by `REFINE` shrinks that bias by `REFINE^2`.
fn refine_minimum(system: &SusySystem, ks: &[f64], sq: &[f64]) -> Result<(f64, f64)> {
    const REFINE: f64 = 8.0;
    const ROUNDS: usize = 4;
    let (lo, hi) = (ks[0], ks[4]);
    let clamp = |k: f64, fallback: f64| if k.is_finite() && k != 0.0 { k.clamp(lo, hi) } else { fallback };
    let (vertex, curvature) = quadratic_vertex(ks, sq);
    let mut k_star = clamp(vertex, ks[2]);
    let mut step = ks[1] - ks[0];
    for _ in 0..ROUNDS {
        step /= REFINE;
        let stencil: Vec<f64> = (-2..=2).map(|j| k_star + j as f64 * step).collect();
        let mut values = Vec::with_capacity(5);
        for &k in &stencil {
            if k == 0.0 {
                return Ok((k_star, curvature));
            }
            match boundary_functional(system, k) {
                Ok(v) => values.push(v.norm_sqr()),
                Err(Error::DegenerateJost { .. }) => return Ok((k_star, curvature)),
                Err(e) => return Err(e),
            }
        }
        let (vertex, _) = quadratic_vertex(&stencil, &values);
        k_star = clamp(vertex, k_star);
    }
    Ok((k_star, curvature))
}

/// Vertex and leading coefficient of the least-squares parabola through `(x, y)`.
fn quadratic_vertex(x: &[f64], y: &[f64]) -> (f64, f64) {
    let x0 = x[x.len() / 2];
    let scale = (x[x.len() - 1] - x[0]).abs().max(f64::MIN_POSITIVE);
    // Normal equations in the centered, scaled variable t = (x - x0)/scale.
    let mut s = [0.0f64; 5];
    let mut r = [0.0f64; 3];
    for (&xi, &yi) in x.iter().zip(y) {
        let t = (xi - x0) / scale;
        let mut p = 1.0;
        for (m, sm) in s.iter_mut().enumerate() {
            *sm += p;
            if m < 3 {
                r[m] += p * yi;
            }
            p *= t;
        }
    }
    let m = [[s[0], s[1], s[2]], [s[1], s[2], s[3]], [s[2], s[3], s[4]]];
    let c = solve3(m, r);
    let vertex = x0 - scale * c[1] / (2.0 * c[2]);
    (vertex, c[2] / (scale * scale))
}

fn solve3(mut m: [[f64; 3]; 3], mut r: [f64; 3]) -> [f64; 3] {
    for col in 0..3 {
        let pivot = (col..3).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs())).unwrap();
        m.swap(col, pivot);
        r.swap(col, pivot);
        for row in col + 1..3 {
            let f = m[row][col] / m[col][col];
            let pivot_row = m[col];
            for (dst, src) in m[row].iter_mut().zip(pivot_row).skip(col) {
                *dst -= f * src;
            }
            r[row] -= f * r[col];
        }
    }
    let mut out = [0.0; 3];
    for row in (0..3).rev() {
        let tail: f64 = (row + 1..3).map(|c| m[row][c] * out[c]).sum();
        out[row] = (r[row] - tail) / m[row][row];
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathPoint {
    pub d: f64,
    pub k_at_min: f64,
    pub min_modulus: f64,
    /// `|k^2 - α|` at `k = |b|`.
    pub prefactor: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathReport {
    pub b: f64,
    pub points: Vec<PathPoint>,
}

impl PathReport {
    /// Both tracked quantities are non-increasing along the path.
    pub fn is_monotone(&self) -> bool {
        self.points.windows(2).all(|w| {
            w[1].min_modulus <= w[0].min_modulus && w[1].prefactor <= w[0].prefactor
        })
    }
}

/// Follows `a = d + ib` along `d_sequence` toward the singular regime.
pub fn path_to_singularity(
    potential: &Potential,
    b: f64,
    d_sequence: &[f64],
    grid: &Grid,
    window: (f64, f64),
    n_samples: usize,
) -> Result<PathReport> {
    let mut points = Vec::with_capacity(d_sequence.len());
    for &d in d_sequence {
        let system = build_system(potential, Complex64::new(d, b), grid)?;
        let scan = scan_singularities(&system, window, n_samples)?;
        let (k_at_min, min_modulus) = scan.min_modulus().unwrap_or((f64::NAN, f64::NAN));
        let prefactor = system.factorization.prefactor(b.abs()).norm();
        points.push(PathPoint {
            d,
            k_at_min,
            min_modulus,
            prefactor,
        });
    }
    Ok(PathReport { b, points })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_fit_recovers_vertex() {
        let x = [0.9, 0.95, 1.0, 1.05, 1.1];
        let y: Vec<f64> = x.iter().map(|t| 3.0 * (t - 0.987f64).powi(2) + 0.25).collect();
        let (v, c) = quadratic_vertex(&x, &y);
        assert!((v - 0.987).abs() < 1e-12);
        assert!((c - 3.0).abs() < 1e-9);
    }

    #[test]
    fn free_functional_is_ik_plus_a() {
        let grid = Grid::new(10.0, 1001).unwrap();
        let a = Complex64::new(-0.3, 1.2);
        let sys = build_system(&Potential::zero(), a, &grid).unwrap();
        for k in [-2.0, -0.5, 0.7, 3.0] {
            let v = boundary_functional(&sys, k).unwrap();
            assert!((v - (Complex64::new(0.0, k) + a)).norm() < 1e-12);
        }
    }

    #[test]
    fn degenerate_at_singular_wavenumber() {
        let grid = Grid::new(10.0, 1001).unwrap();
        let sys = build_system(&Potential::zero(), Complex64::new(0.0, 2.0), &grid).unwrap();
        assert!(matches!(transformed_jost(&sys, 2.0), Err(Error::DegenerateJost { .. })));
        assert!(boundary_functional(&sys, -2.0).unwrap().norm() < 1e-14);
    }
}
