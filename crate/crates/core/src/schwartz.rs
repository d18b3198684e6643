//! Closed forms for the free transformed problem `H = -d²/dx²` with the complex
//! Robin condition `φ'(0) + aφ(0) = 0`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{graded_edges, CompositeRule};
use crate::test_function::TestFunction;
use crate::tol;

fn sqrt_2_over_pi() -> f64 {
    (2.0 / PI).sqrt()
}

/// Parameters of the free example; `z` is the shift used by the approximate kernel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchwartzSystem {
    pub a: Complex64,
    pub alpha: Complex64,
    pub epsilon: f64,
    /// `ε/(2b) - ib`.
    pub z: Complex64,
}

impl SchwartzSystem {
    pub fn new(a: Complex64, epsilon: f64) -> Result<Self> {
        if a.im == 0.0 {
            return Err(Error::InvalidFactorization { a, reason: "b = Im(a) must be nonzero" });
        }
        let b = a.im;
        Ok(Self {
            a,
            alpha: -a * a,
            epsilon,
            z: Complex64::new(epsilon / (2.0 * b), -b),
        })
    }
}

fn check_k(a: Complex64, k: f64) -> Result<Complex64> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::InvalidWavenumber {
            k: Complex64::new(k, 0.0),
            reason: "closed-form eigenfunctions need k > 0",
        });
    }
    let n2 = k * k + a * a;
    if n2.norm() < tol::SINGULAR {
        return Err(Error::AtSingularPoint { k });
    }
    Ok(n2.sqrt())
}

/// `(k^2 - α)^{-1/2} sqrt(2/π) [a sin(kx) - k cos(kx)]`, principal root.
pub fn analytic_phi(a: Complex64, k: f64, x: f64) -> Result<Complex64> {
    let n = check_k(a, k)?;
    let (s, c) = (k * x).sin_cos();
    Ok((a * s - k * c) * sqrt_2_over_pi() / n)
}

/// x-derivative of [`analytic_phi`].
pub fn analytic_phi_derivative(a: Complex64, k: f64, x: f64) -> Result<Complex64> {
    let n = check_k(a, k)?;
    let (s, c) = (k * x).sin_cos();
    Ok((a * k * c + k * k * s) * sqrt_2_over_pi() / n)
}

fn branch_sign(beta: Complex64) -> Result<f64> {
    if beta.re == 0.0 || !beta.is_finite() {
        return Err(Error::OnBranchBoundary);
    }
    Ok(beta.re.signum())
}

/// `∫_0^∞ cos(ax) / (β² + x²) dx`.
pub fn cosine_integral(beta: Complex64, a: f64) -> Result<Complex64> {
    let s = branch_sign(beta)?;
    Ok(s * PI / (2.0 * beta) * (-s * a.abs() * beta).exp())
}

/// `∫_0^∞ x sin(cx) / (β² + x²) dx`, odd in `c` and zero at `c = 0`.
pub fn sine_integral(beta: Complex64, c: f64) -> Result<Complex64> {
    let s = branch_sign(beta)?;
    if c == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(c.signum() * PI / 2.0 * (-s * c.abs() * beta).exp())
}

/// Both tabulated integrals at once.
pub fn tabulated_integrals(beta: Complex64, a: f64, c: f64) -> Result<(Complex64, Complex64)> {
    Ok((cosine_integral(beta, a)?, sine_integral(beta, c)?))
}

/// The bracket multiplying `e^{∓z(x+y)}/z` in the approximate kernel: `b² - ibz + iε/2`
/// when `bε > 0` and `-b² - ibz - iε/2` when `bε < 0`.
pub fn kernel_bracket(b: f64, epsilon: f64) -> Result<Complex64> {
    let sign = sign_of_product(b, epsilon)?;
    let z = Complex64::new(epsilon / (2.0 * b), -b);
    let i = Complex64::i();
    Ok(sign * b * b - i * b * z + sign * i * epsilon / 2.0)
}

fn sign_of_product(b: f64, epsilon: f64) -> Result<f64> {
    let p = b * epsilon;
    if p == 0.0 || !p.is_finite() {
        return Err(Error::InvalidArgument("need b != 0 and epsilon != 0".into()));
    }
    Ok(p.signum())
}

/// Approximate regularized kernel minus `δ(x - y)` for `a = ib`:
/// `(e^{∓z(x+y)}/z)[bracket] ± (iε/2z) e^{∓z|x-y|}`.
pub fn first_order_kernel(b: f64, epsilon: f64, x: f64, y: f64) -> Result<Complex64> {
    let sign = sign_of_product(b, epsilon)?;
    let z = Complex64::new(epsilon / (2.0 * b), -b);
    let bracket = kernel_bracket(b, epsilon)?;
    let i = Complex64::i();
    Ok((-sign * z * (x + y)).exp() / z * bracket
        + sign * i * epsilon / (2.0 * z) * (-sign * z * (x - y).abs()).exp())
}

/// Exact `∫_0^∞ dk (Lψ_k)(x)(Lψ_k)(y)/(k² - α - iε)` minus `δ(x - y)` for the free
/// base problem, any admissible `a`:
/// `((a²-β²)/2β) e^{-β|x-y|} - ((a²+β²)/2β + a) e^{-β(x+y)}` with `β² = -α - iε`,
/// `Re β > 0`.
pub fn regularized_kernel_residual(a: Complex64, epsilon: f64, x: f64, y: f64) -> Result<Complex64> {
    let beta = kernel_beta(a, epsilon)?;
    let a2 = a * a;
    let b2 = beta * beta;
    Ok((a2 - b2) / (2.0 * beta) * (-beta * (x - y).abs()).exp()
        - ((a2 + b2) / (2.0 * beta) + a) * (-beta * (x + y)).exp())
}

fn kernel_beta(a: Complex64, epsilon: f64) -> Result<Complex64> {
    let beta = (a * a - Complex64::new(0.0, epsilon)).sqrt();
    let beta = if beta.re < 0.0 { -beta } else { beta };
    if beta.re == 0.0 {
        return Err(Error::OnBranchBoundary);
    }
    Ok(beta)
}

/// `∫_0^∞ R(x, y) Φ(y) dy` for a kernel with a kink at `y = x`.
pub fn smear_residual(
    test_fn: &TestFunction,
    x: f64,
    residual: impl Fn(f64) -> Result<Complex64>,
) -> Result<Complex64> {
    let Some((lo, hi)) = test_fn.support() else {
        return Ok(Complex64::new(0.0, 0.0));
    };
    let edges = graded_edges(lo, hi, Some(x), 0.05, 0.25);
    let rule = CompositeRule::on_panels(&edges, 20);
    let mut acc = Complex64::new(0.0, 0.0);
    for (&y, &w) in rule.nodes.iter().zip(&rule.weights) {
        acc += residual(y)? * (w * test_fn.value(y));
    }
    Ok(acc)
}

/// The exact residual of the regularized identity smeared against `Φ`.
pub fn smeared_kernel_residual(
    a: Complex64,
    epsilon: f64,
    test_fn: &TestFunction,
    x: f64,
) -> Result<Complex64> {
    kernel_beta(a, epsilon)?;
    smear_residual(test_fn, x, |y| regularized_kernel_residual(a, epsilon, x, y))
}

/// The approximate residual for `a = ib` smeared against `Φ`.
pub fn smeared_first_order_residual(b: f64, epsilon: f64, test_fn: &TestFunction, x: f64) -> Result<Complex64> {
    sign_of_product(b, epsilon)?;
    smear_residual(test_fn, x, |y| first_order_kernel(b, epsilon, x, y))
}

/// `(k² + a²) Φ(k)`.
pub fn binorm_closed_form(a: Complex64, k: f64, test_fn: &TestFunction) -> Complex64 {
    (k * k + a * a) * test_fn.value(k)
}
