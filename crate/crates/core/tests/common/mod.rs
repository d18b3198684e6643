#![allow(dead_code)]

use num_complex::Complex64;

/// Square well `-depth` on `[0, width)`: Jost solution by matching plane waves at
/// the edge. Returns `f(k, x)` and `f'(k, x)`.
pub fn well_jost(depth: f64, width: f64, k: Complex64, x: f64) -> (Complex64, Complex64) {
    let i = Complex64::i();
    if x >= width {
        let e = (i * k * x).exp();
        return (e, i * k * e);
    }
    let q = (k * k + depth).sqrt();
    let edge = (i * k * width).exp();
    let a = 0.5 * edge * (1.0 + k / q) * (-i * q * width).exp();
    let b = 0.5 * edge * (1.0 - k / q) * (i * q * width).exp();
    let (ep, em) = ((i * q * x).exp(), (-i * q * x).exp());
    (a * ep + b * em, i * q * (a * ep - b * em))
}

pub fn well_jost_function(depth: f64, width: f64, k: Complex64) -> Complex64 {
    well_jost(depth, width, k, 0.0).0
}

/// Real delta-normalized eigenfunction with positive slope at the origin.
pub fn well_eigenfunction(depth: f64, width: f64, k: f64, x: f64) -> f64 {
    let kc = Complex64::new(k, 0.0);
    let f0 = well_jost_function(depth, width, kc);
    let slope = (f0.conj() * well_jost(depth, width, kc, 0.0).1).im;
    let sign = slope.signum();
    sign * (2.0 / std::f64::consts::PI).sqrt() * (f0.conj() * well_jost(depth, width, kc, x).0).im
        / f0.norm()
}

/// Composite Simpson on `[a, b]` with an even number of intervals at most `h` wide.
pub fn simpson<T>(a: f64, b: f64, h: f64, f: impl Fn(f64) -> T) -> T
where
    T: std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T> + Copy + Default,
{
    let mut n = ((b - a) / h).ceil() as usize;
    if n % 2 == 1 {
        n += 1;
    }
    let n = n.max(2);
    let step = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for j in 1..n {
        let w = if j % 2 == 1 { 4.0 } else { 2.0 };
        acc = acc + f(a + j as f64 * step) * w;
    }
    acc * (step / 3.0)
}

/// Richardson extrapolation of values at `η, η/2, η/4, ...` assuming integer powers.
pub fn richardson(values: &[Complex64]) -> Complex64 {
    let mut row: Vec<Complex64> = values.to_vec();
    let mut factor = 2.0;
    while row.len() > 1 {
        row = row
            .windows(2)
            .map(|w| (w[1] * factor - w[0]) / (factor - 1.0))
            .collect();
        factor *= 2.0;
    }
    row[0]
}

/// `∫dk' Φ(k') ∫dx e^{-ηx²} f(k, x) f(k', x)` by nested Simpson sums over
/// `k' ∈ [k_lo, k_hi]` and `x ∈ [0, sqrt(40/η)]`.
pub fn brute_force_pairing(
    f: impl Fn(f64, f64) -> Complex64 + Sync,
    phi: impl Fn(f64) -> f64,
    k: f64,
    (k_lo, k_hi): (f64, f64),
    eta: f64,
) -> Complex64 {
    let x_end = (40.0 / eta).sqrt();
    let hx = 0.005;
    let nx = {
        let n = (x_end / hx).ceil() as usize;
        n + n % 2
    };
    let step = x_end / nx as f64;
    let weights: Vec<(f64, f64, Complex64)> = (0..=nx)
        .map(|j| {
            let x = j as f64 * step;
            let w = if j == 0 || j == nx { 1.0 } else if j % 2 == 1 { 4.0 } else { 2.0 };
            (x, w * step / 3.0 * (-eta * x * x).exp(), f(k, x))
        })
        .collect();
    simpson(k_lo, k_hi, (eta.sqrt() / 8.0).min(0.01), |kp| {
        let inner: Complex64 = weights.iter().map(|(x, w, l)| l * f(kp, *x) * *w).sum();
        inner * phi(kp)
    })
}

fn simpson_panel(f: &impl Fn(f64) -> Complex64, a: f64, fa: Complex64, b: f64, fb: Complex64) -> (Complex64, f64, Complex64) {
    let m = 0.5 * (a + b);
    let fm = f(m);
    ((fa + fm * 4.0 + fb) * ((b - a) / 6.0), m, fm)
}

#[allow(clippy::too_many_arguments)]
fn adaptive_step(
    f: &impl Fn(f64) -> Complex64,
    a: f64,
    fa: Complex64,
    b: f64,
    fb: Complex64,
    m: f64,
    fm: Complex64,
    whole: Complex64,
    tol: f64,
    depth: usize,
) -> Complex64 {
    let (left, lm, flm) = simpson_panel(f, a, fa, m, fm);
    let (right, rm, frm) = simpson_panel(f, m, fm, b, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.norm() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    adaptive_step(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1)
        + adaptive_step(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1)
}

/// Adaptive Simpson quadrature on `[a, b]`, split into unit-length panels first.
pub fn adaptive(f: impl Fn(f64) -> Complex64, a: f64, b: f64, tol: f64) -> Complex64 {
    let panels = ((b - a).ceil() as usize).max(1);
    let width = (b - a) / panels as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let (lo, hi) = (a + p as f64 * width, a + (p + 1) as f64 * width);
        let (fa, fb) = (f(lo), f(hi));
        let (whole, m, fm) = simpson_panel(&f, lo, fa, hi, fb);
        acc += adaptive_step(&f, lo, fa, hi, fb, m, fm, whole, tol / panels as f64, 40);
    }
    acc
}

/// `∫_0^∞ g(x) dx` as the Abel limit of `∫ e^{-ηx} g(x) dx`, extrapolated from
/// `η = 0.04, 0.02, 0.01, 0.005`. Panels are refined around `peak`.
pub fn abel_integral(g: impl Fn(f64) -> Complex64, peak: f64) -> Complex64 {
    use gauss_quad::GaussLegendre;
    let rule = GaussLegendre::new(std::num::NonZeroUsize::new(16).unwrap());
    let pairs: Vec<(f64, f64)> = rule.as_node_weight_pairs().to_vec();
    let end = 32.0 / 0.005;
    let mut edges: Vec<f64> = (0..=end as usize).map(|i| i as f64).collect();
    for j in 0..12 {
        let r = 0.5f64.powi(j);
        edges.extend([peak - r, peak + r].into_iter().filter(|e| *e > 0.0 && *e < end));
    }
    edges.sort_by(f64::total_cmp);
    edges.dedup();
    // Nodes and weights on every panel, shared by all damping strengths.
    let mut samples = Vec::with_capacity(16 * edges.len());
    for w in edges.windows(2) {
        let (mid, half) = (0.5 * (w[0] + w[1]), 0.5 * (w[1] - w[0]));
        for &(t, wt) in &pairs {
            let x = mid + half * t;
            samples.push((x, wt * half, g(x)));
        }
    }
    let values: Vec<Complex64> = [0.04, 0.02, 0.01, 0.005]
        .iter()
        .map(|&eta: &f64| {
            samples
                .iter()
                .filter(|(x, _, _)| eta * x < 40.0)
                .map(|(x, w, v)| v * (w * (-eta * x).exp()))
                .sum()
        })
        .collect();
    richardson(&values)
}

/// `∫_0^∞ g(x) dx` for absolutely integrable `g`, through `x = tan θ`.
pub fn tan_integral(g: impl Fn(f64) -> Complex64) -> Complex64 {
    let half_pi = std::f64::consts::FRAC_PI_2;
    adaptive(
        |t| {
            if t >= half_pi {
                return Complex64::new(0.0, 0.0);
            }
            let c = t.cos();
            g(t.tan()) / (c * c)
        },
        0.0,
        half_pi,
        1e-13,
    )
}

/// Deterministic draws of `(β, a, c)` with `0.05 <= |Re β| <= 2`, `|Im β| <= 2`,
/// `0.2 <= a <= 3` and `0.2 <= c <= 3`.
pub fn tabulated_draws(n: usize) -> Vec<(Complex64, f64, f64)> {
    use proptest::strategy::{Strategy, ValueTree};
    use proptest::test_runner::TestRunner;

    let mut runner = TestRunner::deterministic();
    let strategy = (0.05f64..2.0, proptest::bool::ANY, -2.0f64..2.0, 0.2f64..3.0, 0.2f64..3.0)
        .prop_map(|(re, neg, im, a, c)| (Complex64::new(if neg { -re } else { re }, im), a, c));
    (0..n)
        .map(|_| strategy.new_tree(&mut runner).unwrap().current())
        .collect()
}
