//! Distribution-valued statements evaluated against test functions: delta-type
//! pairings with Gaussian damping in x and Richardson extrapolation in the damping
//! strength, and the (regularized) resolution of the identity applied smear-first.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::darboux::SusySystem;
use crate::error::{Error, Result};
use crate::par;
use crate::quadrature::{graded_edges, CompositeRule, Richardson};
use crate::test_function::TestFunction;
use crate::tol;
use crate::wave::WaveSample;

/// How the x-integral combines the two factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pairing {
    /// `∫ f g dx`.
    Bilinear,
    /// `∫ conj(f) g dx`.
    Sesquilinear,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairingOptions {
    /// Largest damping strength; `None` picks `min(1e-2, k^2/100)`.
    pub eta0: Option<f64>,
    /// Number of halvings of the damping strength.
    pub levels: usize,
    pub tolerance: f64,
    /// Gauss–Legendre nodes per k' panel.
    pub order: usize,
    pub coarsest_panel: f64,
    pub k_min: f64,
    /// The damped x-integral is cut where `η_min x^2` reaches this value.
    pub damping_cutoff: f64,
}

impl Default for PairingOptions {
    fn default() -> Self {
        Self {
            eta0: None,
            levels: 6,
            tolerance: tol::QUAD,
            order: 16,
            coarsest_panel: 0.5,
            k_min: tol::K_MIN,
            damping_cutoff: 40.0,
        }
    }
}

impl PairingOptions {
    pub fn etas(&self, k: f64) -> Vec<f64> {
        let eta0 = self.eta0.unwrap_or_else(|| (k * k / 100.0).min(1e-2));
        (0..self.levels).map(|j| eta0 / (1u64 << j) as f64).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmearedFunctional {
    pub value: Complex64,
    /// Raw partial values at each damping strength.
    pub eta_table: Vec<(f64, Complex64)>,
    pub converged: bool,
    pub estimated_error: f64,
    pub tolerance: f64,
}

impl SmearedFunctional {
    pub fn exact_zero(tolerance: f64) -> Self {
        Self {
            value: Complex64::new(0.0, 0.0),
            eta_table: Vec::new(),
            converged: true,
            estimated_error: 0.0,
            tolerance,
        }
    }

    pub fn require_converged(self) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::QuadratureNotConverged {
                estimated_error: self.estimated_error,
                tolerance: self.tolerance,
            })
        }
    }
}

/// `∫dk' [∫dx g_k(x) g_{k'}(x)] Φ(k')` with `g_{k'} = family(k')`.
///
/// The x-integral is damped by `e^{-ηx²}`: trapezoid with an end correction on the
/// grid, continued past `x_max` by the exact plane-wave tails of both factors. The
/// k'-integral uses Gauss–Legendre panels graded toward `k` down to the width of the
/// narrowest nascent delta. The result is extrapolated to `η → 0`.
pub fn smeared_pairing<F>(
    left: &WaveSample,
    family: F,
    test_fn: &TestFunction,
    k: f64,
    opts: &PairingOptions,
    pairing: Pairing,
) -> Result<SmearedFunctional>
where
    F: Fn(f64) -> Result<WaveSample> + Sync + Send,
{
    if opts.levels < 2 {
        return Err(Error::InvalidArgument("need at least two damping levels".into()));
    }
    let Some((lo, hi)) = test_fn.support() else {
        return Ok(SmearedFunctional::exact_zero(opts.tolerance));
    };
    let lo = lo.max(opts.k_min);
    if hi <= lo {
        return Ok(SmearedFunctional::exact_zero(opts.tolerance));
    }

    let etas = opts.etas(k);
    let eta_min = *etas.last().unwrap();
    let edges = graded_edges(lo, hi, Some(k), eta_min.sqrt(), opts.coarsest_panel);
    let rule = CompositeRule::on_panels(&edges, opts.order);

    let left = match pairing {
        Pairing::Bilinear => left.clone(),
        Pairing::Sesquilinear => left.conj(),
    };
    let damped = DampedSum::new(&left, &etas, (opts.damping_cutoff / eta_min).sqrt())?;

    let per_node = par::try_map(&rule.nodes, |&kp| -> Result<Vec<Complex64>> {
        let right = family(kp)?;
        damped.pair(&right)
    })?;

    let mut sums = vec![Complex64::new(0.0, 0.0); etas.len()];
    for ((d, &kp), &wt) in per_node.iter().zip(&rule.nodes).zip(&rule.weights) {
        let f = wt * test_fn.value(kp);
        for (s, v) in sums.iter_mut().zip(d) {
            *s += v * f;
        }
    }
    let diag = Richardson::new(&sums).diagonal();
    let n = diag.len();
    let estimated_error = (diag[n - 1] - diag[n - 2]).norm();
    Ok(SmearedFunctional {
        value: diag[n - 1],
        eta_table: etas.iter().copied().zip(sums).collect(),
        converged: estimated_error < opts.tolerance,
        estimated_error,
        tolerance: opts.tolerance,
    })
}

/// Precomputed left factor and damping weights for `∫ e^{-ηx²} f g dx` at several `η`.
struct DampedSum {
    left: WaveSample,
    grid_weights: Vec<Vec<f64>>,
    tail_left: Vec<Complex64>,
    tail_weights: Vec<Vec<f64>>,
}

impl DampedSum {
    fn new(left: &WaveSample, etas: &[f64], x_ext: f64) -> Result<Self> {
        let grid = left.grid;
        let h = grid.spacing();
        let grid_weights = etas
            .iter()
            .map(|eta| {
                grid.points()
                    .enumerate()
                    .map(|(i, x)| if i == 0 { 0.5 * h } else { h } * (-eta * x * x).exp())
                    .collect()
            })
            .collect();
        let x_max = grid.x_max();
        let count = if x_ext > x_max { ((x_ext - x_max) / h).ceil() as usize } else { 0 };
        let (tail_left, tail_weights) = if count == 0 {
            (Vec::new(), vec![Vec::new(); etas.len()])
        } else {
            let tail = left.plane_wave_tail().ok_or_else(|| {
                Error::InvalidArgument("damped pairing needs samples with a real wavenumber".into())
            })?;
            let xs: Vec<f64> = (1..=count).map(|m| x_max + m as f64 * h).collect();
            let values = xs.iter().map(|&x| tail.value(x)).collect();
            let weights = etas
                .iter()
                .map(|eta| xs.iter().map(|x| h * (-eta * x * x).exp()).collect())
                .collect();
            (values, weights)
        };
        Ok(Self {
            left: left.clone(),
            grid_weights,
            tail_left,
            tail_weights,
        })
    }

    fn pair(&self, right: &WaveSample) -> Result<Vec<Complex64>> {
        if right.grid != self.left.grid {
            return Err(Error::GridMismatch);
        }
        let h = self.left.grid.spacing();
        let products: Vec<Complex64> = self
            .left
            .values
            .iter()
            .zip(&right.values)
            .map(|(a, b)| a * b)
            .collect();
        // Euler–Maclaurin end correction at the origin; the damping factor is flat there.
        let slope0 = self.left.derivatives[0] * right.values[0] + self.left.values[0] * right.derivatives[0];
        let correction = slope0 * (h * h / 12.0);

        let mut out: Vec<Complex64> = self
            .grid_weights
            .iter()
            .map(|w| products.iter().zip(w).map(|(p, w)| p * w).sum::<Complex64>() + correction)
            .collect();

        if !self.tail_left.is_empty() {
            let tail = right.plane_wave_tail().ok_or_else(|| {
                Error::InvalidArgument("damped pairing needs samples with a real wavenumber".into())
            })?;
            let x_max = self.left.grid.x_max();
            let step = Complex64::from_polar(1.0, tail.k * h);
            let mut phase = Complex64::from_polar(1.0, tail.k * (x_max + h));
            for (m, l) in self.tail_left.iter().enumerate() {
                if m % 256 == 0 {
                    phase = Complex64::from_polar(1.0, tail.k * (x_max + (m + 1) as f64 * h));
                }
                let g = tail.forward * phase + tail.backward / phase;
                let p = l * g;
                for (acc, w) in out.iter_mut().zip(&self.tail_weights) {
                    *acc += p * w[m];
                }
                phase *= step;
            }
        }
        Ok(out)
    }
}

/// Biorthonormality `∫dk' [∫dx φ_k φ_{k'}] Φ(k') = Φ(k)` in the regular regime.
pub fn smeared_biorthonormality(
    system: &SusySystem,
    k: f64,
    test_fn: &TestFunction,
    opts: &PairingOptions,
) -> Result<SmearedFunctional> {
    smeared_biorthonormality_with(system, k, test_fn, opts, Pairing::Bilinear)?.require_converged()
}

/// As [`smeared_biorthonormality`] with an explicit pairing and without the
/// convergence requirement.
pub fn smeared_biorthonormality_with(
    system: &SusySystem,
    k: f64,
    test_fn: &TestFunction,
    opts: &PairingOptions,
    pairing: Pairing,
) -> Result<SmearedFunctional> {
    if system.factorization.is_singular() {
        return Err(Error::WrongRegime { expected: "regular" });
    }
    if test_fn.is_zero() {
        return Ok(SmearedFunctional::exact_zero(opts.tolerance));
    }
    let left = system.normalized_phi(k)?.phi;
    smeared_pairing(
        &left,
        |kp| system.normalized_phi(kp).map(|n| n.phi),
        test_fn,
        k,
        opts,
        pairing,
    )
}

/// `∫dk' [∫dx (Lψ_k)(Lψ_{k'})] Φ(k')`, expected to equal `(k^2 - α) Φ(k)`.
pub fn binorm_functional(
    system: &SusySystem,
    k: f64,
    test_fn: &TestFunction,
    opts: &PairingOptions,
) -> Result<SmearedFunctional> {
    if test_fn.is_zero() {
        return Ok(SmearedFunctional::exact_zero(opts.tolerance));
    }
    let left = system.transformed_eigenfunction(k)?;
    smeared_pairing(
        &left,
        |kp| system.transformed_eigenfunction(kp),
        test_fn,
        k,
        opts,
        Pairing::Bilinear,
    )?
    .require_converged()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegularizationParams {
    pub epsilon: f64,
    /// Use `epsilon` as given instead of `sign(b)·|epsilon|`.
    pub override_sign: bool,
    pub k_min: f64,
    pub k_max: f64,
    pub panel_width: f64,
    pub high_order: usize,
    pub low_order: usize,
    pub tolerance: f64,
}

impl Default for RegularizationParams {
    fn default() -> Self {
        Self {
            epsilon: 1e-3,
            override_sign: false,
            k_min: tol::K_MIN,
            k_max: 16.0,
            panel_width: 0.25,
            high_order: 20,
            low_order: 14,
            tolerance: tol::IDENTITY,
        }
    }
}

impl RegularizationParams {
    pub fn with_epsilon(epsilon: f64) -> Self {
        Self {
            epsilon,
            ..Self::default()
        }
    }

    pub fn effective_epsilon(&self, b: f64) -> f64 {
        if self.override_sign {
            self.epsilon
        } else {
            self.epsilon.abs().copysign(b)
        }
    }
}

/// Values `I(x)` of the resolution of the identity for every (test function, x) pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityBatch {
    pub epsilon: f64,
    pub xs: Vec<f64>,
    /// `values[f][j]` is the result for `battery[f]` at `xs[j]`.
    pub values: Vec<Vec<SmearedFunctional>>,
}

/// `I(x) = ∫ dk (Lψ_k)(x) c_k / (k^2 - α - iε)` with `c_k = ∫ dy (Lψ_k)(y) Φ(y)`.
pub fn identity_kernel_apply(
    system: &SusySystem,
    test_fn: &TestFunction,
    x: f64,
    reg: &RegularizationParams,
) -> Result<SmearedFunctional> {
    let batch = identity_kernel_batch(system, std::slice::from_ref(test_fn), &[x], reg)?;
    batch.values[0][0].clone().require_converged()
}

/// Batched [`identity_kernel_apply`]: the k-nodes and `Lψ_k` are shared by all
/// test functions and sample points.
pub fn identity_kernel_batch(
    system: &SusySystem,
    battery: &[TestFunction],
    xs: &[f64],
    reg: &RegularizationParams,
) -> Result<IdentityBatch> {
    let grid = *system.grid();
    if let Some(&x) = xs.iter().find(|&&x| !(x > 0.0 && x <= grid.x_max())) {
        return Err(Error::InvalidArgument(format!("sample point x = {x} outside (0, x_max]")));
    }
    if !(reg.k_min > 0.0 && reg.k_max > reg.k_min) {
        return Err(Error::InvalidArgument("need 0 < k_min < k_max".into()));
    }
    let eps = reg.effective_epsilon(system.factorization.b());
    if system.factorization.is_singular() && eps == 0.0 {
        return Err(Error::PoleOnContour);
    }
    let windows: Vec<Option<(usize, usize)>> = battery
        .iter()
        .map(|f| match f.support() {
            None => Ok(None),
            Some((lo, hi)) if hi <= grid.x_max() => {
                Ok(Some((grid.cell(lo), grid.nearest(hi).max(grid.cell(lo) + 1))))
            }
            Some(_) => Err(Error::InvalidArgument(
                "test function support extends past the grid".into(),
            )),
        })
        .collect::<Result<_>>()?;

    let shifted = system.alpha() + Complex64::new(0.0, eps);
    let pole = shifted.sqrt();
    let center = (pole.im.abs() < reg.panel_width).then_some(pole.re);
    let finest = (pole.im.abs() / 4.0).max(1e-12).min(reg.panel_width);
    let edges = graded_edges(reg.k_min, reg.k_max, center, finest, reg.panel_width);
    let high = CompositeRule::on_panels(&edges, reg.high_order);
    let low = CompositeRule::on_panels(&edges, reg.low_order);

    let mut nodes: Vec<f64> = Vec::with_capacity(high.len() + low.len() + 2);
    nodes.push(reg.k_min);
    nodes.push(reg.k_max);
    nodes.extend(&high.nodes);
    nodes.extend(&low.nodes);

    let h = grid.spacing();
    // For each node: integrand factors (c_k per test function, Lψ_k(x) per sample point).
    let per_node = par::try_map(&nodes, |&k| -> Result<(Vec<Complex64>, Vec<Complex64>)> {
        let lpsi = system.transformed_eigenfunction(k)?;
        let coeffs = battery
            .iter()
            .zip(&windows)
            .map(|(f, win)| match win {
                None => Complex64::new(0.0, 0.0),
                Some((i0, i1)) => smear_on_window(&lpsi, f, *i0, *i1, h),
            })
            .collect();
        let values = xs.iter().map(|&x| lpsi.interpolate(x)).collect();
        Ok((coeffs, values))
    })?;

    let denom = |k: f64| k * k - shifted;
    let integrand = |n: usize, f: usize, j: usize| -> Complex64 {
        let (c, v) = &per_node[n];
        v[j] * c[f] / denom(nodes[n])
    };
    let n_high = high.len();
    let mut values = Vec::with_capacity(battery.len());
    for (f, test_fn) in battery.iter().enumerate() {
        let mut row = Vec::with_capacity(xs.len());
        for j in 0..xs.len() {
            if test_fn.is_zero() {
                row.push(SmearedFunctional::exact_zero(reg.tolerance));
                continue;
            }
            let i_high: Complex64 = (0..n_high).map(|m| integrand(2 + m, f, j) * high.weights[m]).sum();
            let i_low: Complex64 = (0..low.len())
                .map(|m| integrand(2 + n_high + m, f, j) * low.weights[m])
                .sum();
            // The integrand vanishes like k^2 at the origin; the k_max tail is bounded
            // by one unit of the last sampled magnitude.
            let origin = integrand(0, f, j).norm() * reg.k_min / 3.0;
            let tail = integrand(1, f, j).norm();
            let estimated_error = (i_high - i_low).norm() + origin + tail;
            row.push(SmearedFunctional {
                value: i_high,
                eta_table: Vec::new(),
                converged: estimated_error < reg.tolerance,
                estimated_error,
                tolerance: reg.tolerance,
            });
        }
        values.push(row);
    }
    Ok(IdentityBatch {
        epsilon: eps,
        xs: xs.to_vec(),
        values,
    })
}

/// `∫ g Φ dy` over grid cells `[i0, i1]`, trapezoid with the end correction when the
/// window starts at the origin.
fn smear_on_window(g: &WaveSample, f: &TestFunction, i0: usize, i1: usize, h: f64) -> Complex64 {
    let grid = g.grid;
    let mut acc = Complex64::new(0.0, 0.0);
    for i in i0..=i1 {
        let w = if i == i0 || i == i1 { 0.5 } else { 1.0 };
        acc += g.values[i] * (w * f.value(grid.point(i)));
    }
    acc *= h;
    if i0 == 0 {
        let slope = g.derivatives[0] * f.value(0.0) + g.values[0] * f.derivative(0.0);
        acc += slope * (h * h / 12.0);
    }
    acc
}

/// Something that maps a test function to a function of x, ideally the identity.
pub trait SmearingKernel {
    fn smear(&self, test_fn: &TestFunction, x: f64) -> Result<Complex64>;

    /// `out[f][j]` for `battery[f]` at `xs[j]`.
    fn smear_batch(&self, battery: &[TestFunction], xs: &[f64]) -> Result<Vec<Vec<Complex64>>> {
        battery
            .iter()
            .map(|f| xs.iter().map(|&x| self.smear(f, x)).collect())
            .collect()
    }
}

/// `δ(x - y)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExactDelta;

impl SmearingKernel for ExactDelta {
    fn smear(&self, test_fn: &TestFunction, x: f64) -> Result<Complex64> {
        Ok(Complex64::new(test_fn.value(x), 0.0))
    }
}

/// Kernel values `K(x_i, y_j)` on a product grid, applied with quadrature weights in `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledKernel {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub weights: Vec<f64>,
    /// `values[i][j] = K(xs[i], ys[j])`.
    pub values: Vec<Vec<Complex64>>,
}

impl SampledKernel {
    pub fn from_fn(
        xs: Vec<f64>,
        ys: Vec<f64>,
        weights: Vec<f64>,
        kernel: impl Fn(f64, f64) -> Complex64,
    ) -> Self {
        let values = xs
            .iter()
            .map(|&x| ys.iter().map(|&y| kernel(x, y)).collect())
            .collect();
        Self { xs, ys, weights, values }
    }
}

impl SmearingKernel for SampledKernel {
    fn smear(&self, test_fn: &TestFunction, x: f64) -> Result<Complex64> {
        let i = self
            .xs
            .iter()
            .position(|&xi| xi == x)
            .ok_or_else(|| Error::InvalidArgument(format!("x = {x} is not a kernel row")))?;
        Ok(self.values[i]
            .iter()
            .zip(&self.ys)
            .zip(&self.weights)
            .map(|((k, &y), &w)| k * (w * test_fn.value(y)))
            .sum())
    }
}

/// The numerical resolution of the identity of a transformed system.
#[derive(Debug, Clone)]
pub struct IdentityKernel<'a> {
    pub system: &'a SusySystem,
    pub reg: RegularizationParams,
}

impl SmearingKernel for IdentityKernel<'_> {
    fn smear(&self, test_fn: &TestFunction, x: f64) -> Result<Complex64> {
        Ok(identity_kernel_apply(self.system, test_fn, x, &self.reg)?.value)
    }

    fn smear_batch(&self, battery: &[TestFunction], xs: &[f64]) -> Result<Vec<Vec<Complex64>>> {
        let batch = identity_kernel_batch(self.system, battery, xs, &self.reg)?;
        batch
            .values
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|s| s.require_converged().map(|s| s.value))
                    .collect()
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeRow {
    pub member: usize,
    pub x: f64,
    pub value: Complex64,
    pub expected: f64,
    pub abs_err: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaProbeProfile {
    pub rows: Vec<ProbeRow>,
    pub max_deviation: f64,
}

impl DeltaProbeProfile {
    /// Largest deviation for one battery member.
    pub fn member_deviation(&self, member: usize) -> f64 {
        self.rows
            .iter()
            .filter(|r| r.member == member)
            .map(|r| r.abs_err)
            .fold(0.0, f64::max)
    }
}

/// Applies `kernel` to every battery member at every `x` and compares with `Φ(x)`.
pub fn delta_family_probe(
    kernel: &dyn SmearingKernel,
    battery: &[TestFunction],
    xs: &[f64],
) -> Result<DeltaProbeProfile> {
    let values = kernel.smear_batch(battery, xs)?;
    let mut rows = Vec::with_capacity(battery.len() * xs.len());
    for (member, (f, row)) in battery.iter().zip(values).enumerate() {
        for (&x, value) in xs.iter().zip(row) {
            let expected = f.value(x);
            rows.push(ProbeRow {
                member,
                x,
                value,
                expected,
                abs_err: (value - expected).norm(),
            });
        }
    }
    let max_deviation = rows.iter().map(|r| r.abs_err).fold(0.0, f64::max);
    Ok(DeltaProbeProfile { rows, max_deviation })
}

/// Sample points used with [`crate::test_function::gaussian_battery`].
pub fn battery_points() -> Vec<f64> {
    vec![1.5, 2.5, 3.0, 3.5, 4.0, 5.0, 6.0, 7.0]
}
