//! First-order Darboux (SUSY) transformation `L = -d/dx + w` built from the Jost
//! solution `u(x) = f(-ia, x)` of the base problem.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::potential::Potential;
use crate::sturm_liouville::{base_eigenfunction, solve_jost};
use crate::test_function::TestFunction;
use crate::tol;
use crate::wave::{self, WaveSample};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `d < 0`: no spectral singularity.
    Regular,
    /// `d = 0`: spectral singularity at `k^2 = b^2`.
    Singular,
}

/// `a = d + ib` with `b != 0`, `d <= 0`, and `alpha = -a^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FactorizationConstant {
    a: Complex64,
    alpha: Complex64,
    regime: Regime,
}

impl FactorizationConstant {
    pub fn new(a: Complex64) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::InvalidFactorization { a, reason: "must be finite" });
        }
        if a.im == 0.0 {
            return Err(Error::InvalidFactorization { a, reason: "b = Im(a) must be nonzero" });
        }
        if a.re > 0.0 {
            return Err(Error::InvalidFactorization { a, reason: "d = Re(a) must not be positive" });
        }
        let regime = if a.re < 0.0 { Regime::Regular } else { Regime::Singular };
        Ok(Self {
            a,
            alpha: -a * a,
            regime,
        })
    }

    pub fn from_parts(d: f64, b: f64) -> Result<Self> {
        Self::new(Complex64::new(d, b))
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn d(&self) -> f64 {
        self.a.re
    }

    pub fn b(&self) -> f64 {
        self.a.im
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn is_singular(&self) -> bool {
        self.regime == Regime::Singular
    }

    /// `k^2 - alpha`.
    pub fn prefactor(&self, k: f64) -> Complex64 {
        k * k - self.alpha
    }
}

/// The transformation `h0 -> H = -d²/dx² + V` with everything sampled on one grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SusySystem {
    pub base_potential: Potential,
    pub factorization: FactorizationConstant,
    /// `u = f(-ia, x)`.
    pub u: WaveSample,
    /// `w = u'/u`.
    pub w: Vec<Complex64>,
    /// `w'`, from the Riccati equation `w' = v0 - alpha - w^2`.
    pub w_prime: Vec<Complex64>,
    /// `V = v0 - 2w'`.
    pub v: Vec<Complex64>,
}

/// `φ_k = N_k^{-1} L ψ_k` with `N_k` the principal root of `k^2 - alpha`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizedEigenfunction {
    pub k: f64,
    pub n_k: Complex64,
    /// `k² - α` as computed, so that the square of `n_k` need not be formed.
    pub n_k_squared: Complex64,
    pub phi: WaveSample,
}

pub fn build_system(potential: &Potential, a: Complex64, grid: &Grid) -> Result<SusySystem> {
    let factorization = FactorizationConstant::new(a)?;
    let k = -Complex64::i() * a;
    let u = solve_jost(potential, k, grid)?.solution;

    // u ~ e^{ax} decays when d < 0; judge nodes on the envelope-free |u| e^{-dx}.
    let d = a.re;
    let scaled: Vec<f64> = grid
        .points()
        .zip(&u.values)
        .map(|(x, v)| v.norm() * (-d * x).exp())
        .collect();
    let peak = scaled.iter().copied().fold(0.0, f64::max);
    if let Some((index, &modulus)) = scaled
        .iter()
        .enumerate()
        .skip(1)
        .find(|(_, m)| **m <= tol::NODE * peak || !m.is_finite())
    {
        return Err(Error::NodalTransformationFunction {
            x: grid.point(index),
            index,
            modulus: modulus / peak,
        });
    }

    let alpha = factorization.alpha();
    let w: Vec<Complex64> = u
        .values
        .iter()
        .zip(&u.derivatives)
        .map(|(v, dv)| dv / v)
        .collect();
    let w_prime: Vec<Complex64> = grid
        .points()
        .zip(&w)
        .map(|(x, w)| potential.value(x) - alpha - w * w)
        .collect();
    let v = grid
        .points()
        .zip(&w_prime)
        .map(|(x, wp)| potential.value(x) - 2.0 * wp)
        .collect();
    Ok(SusySystem {
        base_potential: potential.clone(),
        factorization,
        u,
        w,
        w_prime,
        v,
    })
}

impl SusySystem {
    pub fn grid(&self) -> &Grid {
        &self.u.grid
    }

    pub fn a(&self) -> Complex64 {
        self.factorization.a()
    }

    pub fn alpha(&self) -> Complex64 {
        self.factorization.alpha()
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string(self).map_err(|e| Error::InvalidArgument(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(e.to_string()))
    }

    fn check_grid(&self, sample: &WaveSample) -> Result<()> {
        if sample.grid != *self.grid() {
            return Err(Error::GridMismatch);
        }
        Ok(())
    }

    /// `Lψ = -ψ' + wψ`. For samples carrying a wavenumber the derivative uses
    /// `ψ'' = (v0 - k^2)ψ`, giving `(Lψ)' = (k^2 - alpha - w^2)ψ + wψ'`; otherwise
    /// it is differenced.
    pub fn apply_l(&self, psi: &WaveSample) -> Result<WaveSample> {
        self.check_grid(psi)?;
        let values: Vec<Complex64> = psi
            .values
            .iter()
            .zip(&psi.derivatives)
            .zip(&self.w)
            .map(|((p, dp), w)| -dp + w * p)
            .collect();
        let derivatives = match psi.wavenumber {
            Some(k) => {
                let shift = k * k - self.alpha();
                psi.values
                    .iter()
                    .zip(&psi.derivatives)
                    .zip(&self.w)
                    .map(|((p, dp), w)| (shift - w * w) * p + w * dp)
                    .collect()
            }
            None => wave::fourth_order_derivative(&values, self.grid().spacing()),
        };
        WaveSample::new(*self.grid(), values, derivatives, psi.wavenumber)
    }

    /// `(L^*)^† φ = φ' + wφ`. For eigenfunctions of `H` the derivative uses
    /// `φ'' = (V - k^2)φ`, giving `(α + w^2 - k^2)φ + wφ'`.
    pub fn apply_l_star_adjoint(&self, phi: &WaveSample) -> Result<WaveSample> {
        self.check_grid(phi)?;
        let values: Vec<Complex64> = phi
            .values
            .iter()
            .zip(&phi.derivatives)
            .zip(&self.w)
            .map(|((p, dp), w)| dp + w * p)
            .collect();
        let derivatives = match phi.wavenumber {
            Some(k) => {
                let shift = self.alpha() - k * k;
                phi.values
                    .iter()
                    .zip(&phi.derivatives)
                    .zip(&self.w)
                    .map(|((p, dp), w)| (shift + w * w) * p + w * dp)
                    .collect()
            }
            None => wave::fourth_order_derivative(&values, self.grid().spacing()),
        };
        WaveSample::new(*self.grid(), values, derivatives, phi.wavenumber)
    }

    /// `Lψ_k` for the base continuum eigenfunction.
    pub fn transformed_eigenfunction(&self, k: f64) -> Result<WaveSample> {
        let psi = base_eigenfunction(&self.base_potential, k, self.grid())?;
        self.apply_l(&psi)
    }

    pub fn normalized_phi(&self, k: f64) -> Result<NormalizedEigenfunction> {
        let n2 = self.factorization.prefactor(k);
        if self.factorization.is_singular() && n2.norm() < tol::SINGULAR {
            return Err(Error::SpectralSingularityPoint { k, distance: n2.norm() });
        }
        let n_k = n2.sqrt();
        let phi = self.transformed_eigenfunction(k)?.scaled(n_k.inv());
        Ok(NormalizedEigenfunction {
            k,
            n_k,
            n_k_squared: n2,
            phi,
        })
    }

    /// `1/u`, which solves `Hφ = αφ`.
    pub fn singular_mode(&self) -> WaveSample {
        let values: Vec<Complex64> = self.u.values.iter().map(|v| v.inv()).collect();
        let derivatives = values.iter().zip(&self.w).map(|(r, w)| -w * r).collect();
        WaveSample {
            grid: *self.grid(),
            values,
            derivatives,
            wavenumber: Some(Complex64::i() * self.a()),
        }
    }

    /// Max over interior nodes of `|-φ'' + Vφ - k^2 φ|`, with `φ''` differenced from
    /// the derivative samples. Nodes near potential jumps are skipped.
    pub fn eigen_residual(&self, phi: &WaveSample) -> Result<f64> {
        self.check_grid(phi)?;
        let k = phi
            .wavenumber
            .ok_or_else(|| Error::InvalidArgument("sample carries no wavenumber".into()))?;
        let second = wave::centered_derivative(&phi.derivatives, self.grid().spacing());
        let skip = wave::jump_mask(self.grid(), &self.base_potential, 2 * wave::STENCIL);
        let k2 = k * k;
        let mut worst = 0.0f64;
        for i in wave::STENCIL..phi.len() - wave::STENCIL {
            if !skip[i] {
                worst = worst.max((-second[i] + (self.v[i] - k2) * phi.values[i]).norm());
            }
        }
        Ok(worst)
    }

    /// `|φ'(0) + w(0)φ(0)|`.
    pub fn boundary_residual(&self, phi: &WaveSample) -> Complex64 {
        phi.derivatives[0] + self.w[0] * phi.values[0]
    }

    /// `‖L h0 ψ - H L ψ‖ / ‖ψ‖` (discrete L² norms) for a smooth test function.
    pub fn intertwining_residual(&self, psi: &TestFunction) -> f64 {
        let grid = *self.grid();
        let h = grid.spacing();
        let (p, dp) = sample_test_function(psi, &grid);
        let norm = l2(&p, h);
        if norm == 0.0 {
            return 0.0;
        }
        let v0: Vec<f64> = grid.points().map(|x| self.base_potential.value(x)).collect();

        let ddp = wave::centered_derivative(&dp, h);
        let h0p: Vec<Complex64> = (0..p.len()).map(|i| -ddp[i] + v0[i] * p[i]).collect();
        let dh0p = wave::centered_derivative(&h0p, h);
        let lhs: Vec<Complex64> = (0..p.len()).map(|i| -dh0p[i] + self.w[i] * h0p[i]).collect();

        let lp: Vec<Complex64> = (0..p.len()).map(|i| -dp[i] + self.w[i] * p[i]).collect();
        let ddlp = wave::centered_second_derivative(&lp, h);
        let rhs: Vec<Complex64> = (0..p.len()).map(|i| -ddlp[i] + self.v[i] * lp[i]).collect();

        let diff = self.masked_difference(&lhs, &rhs, 2 * wave::STENCIL);
        l2(&diff, h) / norm
    }

    /// `‖(L^*)^† L ψ - (h0 - α) ψ‖ / ‖ψ‖` for a smooth test function.
    pub fn factorization_residual(&self, psi: &TestFunction) -> f64 {
        let grid = *self.grid();
        let h = grid.spacing();
        let (p, dp) = sample_test_function(psi, &grid);
        let norm = l2(&p, h);
        if norm == 0.0 {
            return 0.0;
        }
        let alpha = self.alpha();
        let lp: Vec<Complex64> = (0..p.len()).map(|i| -dp[i] + self.w[i] * p[i]).collect();
        let dlp = wave::centered_derivative(&lp, h);
        let lhs: Vec<Complex64> = (0..p.len()).map(|i| dlp[i] + self.w[i] * lp[i]).collect();
        let ddp = wave::centered_derivative(&dp, h);
        let rhs: Vec<Complex64> = grid
            .points()
            .enumerate()
            .map(|(i, x)| -ddp[i] + (self.base_potential.value(x) - alpha) * p[i])
            .collect();
        let diff = self.masked_difference(&lhs, &rhs, wave::STENCIL);
        l2(&diff, h) / norm
    }

    fn masked_difference(&self, lhs: &[Complex64], rhs: &[Complex64], edge: usize) -> Vec<Complex64> {
        let skip = wave::jump_mask(self.grid(), &self.base_potential, edge + 1);
        let n = lhs.len();
        (0..n)
            .map(|i| {
                if i < edge || i + edge >= n || skip[i] {
                    Complex64::new(0.0, 0.0)
                } else {
                    lhs[i] - rhs[i]
                }
            })
            .collect()
    }
}

fn sample_test_function(psi: &TestFunction, grid: &Grid) -> (Vec<Complex64>, Vec<Complex64>) {
    grid.points()
        .map(|x| (Complex64::new(psi.value(x), 0.0), Complex64::new(psi.derivative(x), 0.0)))
        .unzip()
}

fn l2(values: &[Complex64], h: f64) -> f64 {
    (values.iter().map(|v| v.norm_sqr()).sum::<f64>() * h).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn factorization_constant_validation() {
        assert!(FactorizationConstant::new(c(-0.5, 0.0)).is_err());
        assert!(FactorizationConstant::new(c(0.1, 1.0)).is_err());
        let f = FactorizationConstant::new(c(-0.5, 1.0)).unwrap();
        assert_eq!(f.alpha(), c(0.75, 1.0));
        assert_eq!(f.regime(), Regime::Regular);
        let s = FactorizationConstant::new(c(0.0, 2.0)).unwrap();
        assert_eq!(s.alpha(), c(4.0, 0.0));
        assert!(s.is_singular());
    }

    #[test]
    fn free_system_has_constant_superpotential() {
        let grid = Grid::new(10.0, 2001).unwrap();
        let a = c(-0.5, 1.0);
        let sys = build_system(&Potential::zero(), a, &grid).unwrap();
        for (w, v) in sys.w.iter().zip(&sys.v) {
            assert!((w - a).norm() < 1e-13);
            assert!(v.norm() < 1e-12);
        }
        let prod: Vec<Complex64> = sys
            .u
            .values
            .iter()
            .zip(&sys.singular_mode().values)
            .map(|(u, r)| u * r)
            .collect();
        assert!(prod.iter().all(|p| (p - 1.0).norm() < 1e-13));
    }

    #[test]
    fn u_is_in_the_kernel_of_l() {
        let grid = Grid::new(10.0, 2001).unwrap();
        let well = Potential::square_well(2.0, 1.0).unwrap();
        let sys = build_system(&well, c(0.0, 1.3), &grid).unwrap();
        let lu = sys.apply_l(&sys.u).unwrap();
        assert!(lu.max_abs() < 1e-12 * sys.u.max_abs());
    }

    #[test]
    fn grid_mismatch_is_reported() {
        let sys = build_system(&Potential::zero(), c(-0.5, 1.0), &Grid::new(10.0, 101).unwrap()).unwrap();
        let other = WaveSample::zeros(Grid::new(10.0, 201).unwrap());
        assert_eq!(sys.apply_l(&other), Err(Error::GridMismatch));
    }

    #[test]
    fn json_round_trip() {
        let sys = build_system(&Potential::zero(), c(0.0, 2.0), &Grid::new(5.0, 51).unwrap()).unwrap();
        let back = SusySystem::from_json(&sys.to_json().unwrap()).unwrap();
        assert_eq!(back, sys);
    }
}
