//! Adaptive Dormand–Prince 5(4) stepping for complex second-order systems
//! written as `(y, y')`.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type State = [Complex64; 2];

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// Fifth- minus fourth-order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

#[derive(Debug, Clone, Copy)]
pub struct StepControl {
    pub rtol: f64,
    pub atol: f64,
    /// Largest step magnitude ever taken.
    pub h_max: f64,
}

impl StepControl {
    pub fn new(tol: f64, h_max: f64) -> Self {
        Self {
            rtol: tol,
            atol: tol,
            h_max,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StepStats {
    pub accepted: usize,
    pub rejected: usize,
}

#[inline]
fn axpy(y: &State, terms: &[(f64, &State)], h: f64) -> State {
    let mut out = *y;
    for (c, k) in terms {
        out[0] += k[0] * (c * h);
        out[1] += k[1] * (c * h);
    }
    out
}

/// Integrates `y' = rhs(x, y)` from `x0` to `x1` (either direction).
///
/// `h` carries the step size between calls: it is used as the first trial step
/// and updated to the last accepted step on return.
pub fn integrate<F>(
    rhs: &F,
    x0: f64,
    x1: f64,
    y0: State,
    h: &mut f64,
    ctl: &StepControl,
    stats: &mut StepStats,
) -> Result<State>
where
    F: Fn(f64, &State) -> State,
{
    let span = x1 - x0;
    if span == 0.0 {
        return Ok(y0);
    }
    let dir = span.signum();
    let h_min = 1e-14 * span.abs().max(x0.abs()).max(1.0);
    let mut x = x0;
    let mut y = y0;
    let mut step = h.abs().min(ctl.h_max).max(h_min);
    let mut k1 = rhs(x, &y);

    loop {
        let remaining = (x1 - x) * dir;
        if remaining <= h_min {
            break;
        }
        let last = step >= remaining;
        let hs = if last { remaining } else { step } * dir;

        let k2 = rhs(x + C2 * hs, &axpy(&y, &[(A21, &k1)], hs));
        let k3 = rhs(x + C3 * hs, &axpy(&y, &[(A31, &k1), (A32, &k2)], hs));
        let k4 = rhs(
            x + C4 * hs,
            &axpy(&y, &[(A41, &k1), (A42, &k2), (A43, &k3)], hs),
        );
        let k5 = rhs(
            x + C5 * hs,
            &axpy(&y, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)], hs),
        );
        let xe = if last { x1 } else { x + hs };
        let k6 = rhs(
            xe,
            &axpy(
                &y,
                &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
                hs,
            ),
        );
        let y_new = axpy(
            &y,
            &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)],
            hs,
        );
        let k7 = rhs(xe, &y_new);

        let mut err = 0.0f64;
        for c in 0..2 {
            let e = (k1[c] * E1 + k3[c] * E3 + k4[c] * E4 + k5[c] * E5 + k6[c] * E6 + k7[c] * E7)
                * hs;
            let scale = ctl.atol + ctl.rtol * y[c].norm().max(y_new[c].norm());
            err = err.max(e.norm() / scale);
        }
        if !err.is_finite() || !y_new[0].is_finite() || !y_new[1].is_finite() {
            return Err(Error::IntegrationDiverged { x });
        }

        if err <= 1.0 {
            stats.accepted += 1;
            x = xe;
            y = y_new;
            k1 = k7;
            if !last {
                *h = step;
            }
            let grow = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            step = (step * grow).min(ctl.h_max);
            if last {
                break;
            }
        } else {
            stats.rejected += 1;
            step *= (0.9 * err.powf(-0.2)).clamp(0.1, 0.9);
            if step < h_min {
                return Err(Error::IntegrationDiverged { x });
            }
        }
    }
    Ok(y)
}
