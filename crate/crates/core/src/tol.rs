//! Default numerical tolerances shared across modules.

/// Relative tolerance of the adaptive ODE stepper and of eigen-residual checks.
pub const ODE: f64 = 1e-10;
/// Jost-function zero test and the scan's singularity verdict.
pub const ZERO: f64 = 1e-8;
/// Nodelessness of the transformation function, relative to its envelope.
pub const NODE: f64 = 1e-10;
/// Proximity of `k^2` to the factorization constant.
pub const SINGULAR: f64 = 1e-6;
/// Convergence of damped pairings and Richardson tables.
pub const QUAD: f64 = 1e-6;
/// Finite-difference residual checks.
pub const FD: f64 = 1e-6;
/// Magnitude below which the potential counts as vanished.
pub const ASYMPTOTIC: f64 = 1e-12;
/// Test-function tail bound used to cut quadrature windows.
pub const TAIL: f64 = 1e-16;
/// Lower end of every k-integration window.
pub const K_MIN: f64 = 1e-3;
/// Convergence of the resolution of the identity. Test functions that do not vanish
/// at the origin give `c_k ~ 1/k`, so the cut at `k_max` costs more than `QUAD`.
pub const IDENTITY: f64 = 1e-5;
