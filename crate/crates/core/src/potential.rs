//! Real scattering potentials on the half-line.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PotentialKind {
    Zero,
    /// `v0(x) = -depth` on `[0, width)`, zero beyond.
    SquareWell { depth: f64, width: f64 },
    /// Piecewise-linear interpolation of `(x, v0)` samples, zero past the last sample.
    Table { xs: Vec<f64>, values: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Potential {
    kind: PotentialKind,
    decay_radius: f64,
}

impl Potential {
    pub fn zero() -> Self {
        Self {
            kind: PotentialKind::Zero,
            decay_radius: 0.0,
        }
    }

    pub fn square_well(depth: f64, width: f64) -> Result<Self> {
        if !depth.is_finite() || !(width.is_finite() && width > 0.0) {
            return Err(Error::InvalidPotential(format!(
                "square well needs finite depth and positive width, got ({depth}, {width})"
            )));
        }
        Ok(Self {
            kind: PotentialKind::SquareWell { depth, width },
            decay_radius: width,
        })
    }

    pub fn from_table(xs: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if xs.len() != values.len() || xs.len() < 2 {
            return Err(Error::InvalidPotential(
                "table needs at least two (x, v0) rows".into(),
            ));
        }
        if xs[0] < 0.0 || xs.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidPotential(
                "table abscissae must be non-negative and strictly increasing".into(),
            ));
        }
        if xs.iter().chain(values.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidPotential("table contains non-finite values".into()));
        }
        // The interpolant is zero past the last row, so the last node carrying a
        // value above the asymptotic tolerance bounds the support.
        let last_nonzero = values
            .iter()
            .rposition(|v| v.abs() >= tol::ASYMPTOTIC)
            .map(|i| (i + 1).min(xs.len() - 1))
            .map(|i| xs[i])
            .unwrap_or(0.0);
        Ok(Self {
            kind: PotentialKind::Table { xs, values },
            decay_radius: last_nonzero,
        })
    }

    /// Parses a whitespace-separated two-column `(x, v0)` table. Blank lines and
    /// lines starting with `#` are skipped.
    pub fn parse_table(text: &str) -> Result<Self> {
        let mut xs = Vec::new();
        let mut values = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split_whitespace().collect();
            if cols.len() != 2 {
                return Err(Error::TableParse {
                    line: lineno + 1,
                    message: format!("expected 2 columns, found {}", cols.len()),
                });
            }
            let parse = |s: &str| {
                s.parse::<f64>().map_err(|e| Error::TableParse {
                    line: lineno + 1,
                    message: format!("{s:?}: {e}"),
                })
            };
            let x = parse(cols[0])?;
            if let Some(&prev) = xs.last() {
                if x <= prev {
                    return Err(Error::TableParse {
                        line: lineno + 1,
                        message: format!("x = {x} does not increase past {prev}"),
                    });
                }
            }
            xs.push(x);
            values.push(parse(cols[1])?);
        }
        Self::from_table(xs, values)
    }

    pub fn load_table(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse_table(&text)
    }

    pub fn kind(&self) -> &PotentialKind {
        &self.kind
    }

    pub fn decay_radius(&self) -> f64 {
        self.decay_radius
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.kind, PotentialKind::Zero)
    }

    pub fn value(&self, x: f64) -> f64 {
        self.value_on(x, x)
    }

    /// Value at `x` where a jump sitting exactly at `x` is resolved toward `side`.
    /// The ODE stepper passes the midpoint of the current step so that stages on a
    /// discontinuity see the one-sided limit of the cell being integrated.
    pub fn value_on(&self, x: f64, side: f64) -> f64 {
        match &self.kind {
            PotentialKind::Zero => 0.0,
            PotentialKind::SquareWell { depth, width } => {
                let inside = x < *width || (x == *width && side < *width);
                if inside {
                    -depth
                } else {
                    0.0
                }
            }
            PotentialKind::Table { xs, values } => interpolate(xs, values, x),
        }
    }

    /// Points where `v0` or its derivative jumps. Integrators end steps on them.
    pub fn breakpoints(&self) -> Vec<f64> {
        match &self.kind {
            PotentialKind::Zero => Vec::new(),
            PotentialKind::SquareWell { width, .. } => vec![*width],
            PotentialKind::Table { xs, .. } => xs.clone(),
        }
    }

    /// Points where `v0` itself is discontinuous.
    pub fn jumps(&self) -> Vec<f64> {
        match &self.kind {
            PotentialKind::SquareWell { width, .. } => vec![*width],
            PotentialKind::Table { xs, values } => {
                if values.last().is_some_and(|v| *v != 0.0) {
                    vec![*xs.last().unwrap()]
                } else {
                    Vec::new()
                }
            }
            PotentialKind::Zero => Vec::new(),
        }
    }
}

fn interpolate(xs: &[f64], values: &[f64], x: f64) -> f64 {
    let last = xs.len() - 1;
    if x > xs[last] {
        return 0.0;
    }
    if x <= xs[0] {
        return values[0];
    }
    let i = xs.partition_point(|&t| t <= x).saturating_sub(1).min(last - 1);
    let t = (x - xs[i]) / (xs[i + 1] - xs[i]);
    values[i] + t * (values[i + 1] - values[i])
}
