use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform discretization of `[0, x_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    x_max: f64,
    n_points: usize,
}

impl Grid {
    pub const DEFAULT_X_MAX: f64 = 40.0;
    pub const DEFAULT_POINTS: usize = 8001;

    pub fn new(x_max: f64, n_points: usize) -> Result<Self> {
        if !(x_max.is_finite() && x_max > 0.0) {
            return Err(Error::InvalidGrid(format!("x_max must be positive, got {x_max}")));
        }
        if n_points < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 points, got {n_points}"
            )));
        }
        Ok(Self { x_max, n_points })
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        self.x_max / (self.n_points - 1) as f64
    }

    /// The `i`-th node. The last node is exactly `x_max`.
    pub fn point(&self, i: usize) -> f64 {
        if i + 1 == self.n_points {
            self.x_max
        } else {
            i as f64 * self.spacing()
        }
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.n_points).map(move |i| self.point(i))
    }

    /// Index of the cell `[x_i, x_{i+1}]` containing `x` (clamped to the grid).
    pub fn cell(&self, x: f64) -> usize {
        let i = (x / self.spacing()).floor();
        if i < 0.0 {
            0
        } else {
            (i as usize).min(self.n_points - 2)
        }
    }

    /// Index of the node nearest to `x`.
    pub fn nearest(&self, x: f64) -> usize {
        let i = (x / self.spacing()).round();
        if i < 0.0 {
            0
        } else {
            (i as usize).min(self.n_points - 1)
        }
    }
}

impl Default for Grid {
    fn default() -> Self {
        Self {
            x_max: Self::DEFAULT_X_MAX,
            n_points: Self::DEFAULT_POINTS,
        }
    }
}
