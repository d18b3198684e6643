//! Smooth decaying probes used to evaluate distribution-valued statements.

use serde::{Deserialize, Serialize};

use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum TestFunction {
    Zero,
    /// `exp(-((y - center) / width)^2)`.
    Gaussian { center: f64, width: f64 },
    /// `exp(1 - 1/(1 - t^2))` with `t = (y - center) / radius`, zero for `|t| >= 1`.
    CompactBump { center: f64, radius: f64 },
    /// `y exp(-(y / width)^2)`; vanishes at the origin.
    RampGaussian { width: f64 },
}

impl TestFunction {
    pub fn gaussian(center: f64, width: f64) -> Self {
        assert!(width > 0.0, "gaussian width must be positive");
        TestFunction::Gaussian { center, width }
    }

    pub fn bump(center: f64, radius: f64) -> Self {
        assert!(radius > 0.0, "bump radius must be positive");
        TestFunction::CompactBump { center, radius }
    }

    pub fn ramp(width: f64) -> Self {
        assert!(width > 0.0, "ramp width must be positive");
        TestFunction::RampGaussian { width }
    }

    pub fn value(&self, y: f64) -> f64 {
        match *self {
            TestFunction::Zero => 0.0,
            TestFunction::Gaussian { center, width } => {
                let t = (y - center) / width;
                (-t * t).exp()
            }
            TestFunction::CompactBump { center, radius } => {
                let t = (y - center) / radius;
                if t.abs() >= 1.0 {
                    0.0
                } else {
                    (1.0 - 1.0 / (1.0 - t * t)).exp()
                }
            }
            TestFunction::RampGaussian { width } => {
                let t = y / width;
                y * (-t * t).exp()
            }
        }
    }

    pub fn derivative(&self, y: f64) -> f64 {
        match *self {
            TestFunction::Zero => 0.0,
            TestFunction::Gaussian { center, width } => {
                -2.0 * (y - center) / (width * width) * self.value(y)
            }
            TestFunction::CompactBump { center, radius } => {
                let t = (y - center) / radius;
                if t.abs() >= 1.0 {
                    0.0
                } else {
                    let s = 1.0 - t * t;
                    -2.0 * t / (s * s * radius) * self.value(y)
                }
            }
            TestFunction::RampGaussian { width } => {
                let t = y / width;
                (1.0 - 2.0 * t * t) * (-t * t).exp()
            }
        }
    }

    /// Window on `[0, ∞)` outside of which `|Φ| < tol::TAIL`; `None` for the zero function.
    pub fn support(&self) -> Option<(f64, f64)> {
        let reach = (1.0 / tol::TAIL).ln().sqrt();
        match *self {
            TestFunction::Zero => None,
            TestFunction::Gaussian { center, width } => {
                let hi = center + reach * width;
                (hi > 0.0).then(|| ((center - reach * width).max(0.0), hi))
            }
            TestFunction::CompactBump { center, radius } => {
                let hi = center + radius;
                (hi > 0.0).then(|| ((center - radius).max(0.0), hi))
            }
            TestFunction::RampGaussian { width } => Some((0.0, width * (reach + 1.0))),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, TestFunction::Zero)
    }
}

/// The five gaussians used by the reconstruction checks. All have `Φ(0) < 1e-6`.
pub fn gaussian_battery() -> Vec<TestFunction> {
    vec![
        TestFunction::gaussian(3.0, 0.8),
        TestFunction::gaussian(4.0, 1.0),
        TestFunction::gaussian(5.0, 1.2),
        TestFunction::gaussian(3.5, 0.6),
        TestFunction::gaussian(6.0, 1.5),
    ]
}

/// Smooth, compactly supported functions with `ψ(0) = 0` for residual checks.
/// Narrow bumps have derivatives too large for sixth-order differencing on the
/// default grid, so the bumps here are wide.
pub fn residual_battery() -> Vec<TestFunction> {
    vec![
        TestFunction::ramp(1.0),
        TestFunction::bump(6.5, 5.0),
        TestFunction::bump(6.0, 5.5),
    ]
}
