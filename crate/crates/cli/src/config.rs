//! TOML run configuration and its validation.

use std::fs;
use std::path::{Path, PathBuf};

use darboux_core::distributional::battery_points;
use darboux_core::test_function::gaussian_battery;
use darboux_core::{tol, Complex64, FactorizationConstant, Grid, Potential, RegularizationParams, TestFunction};
use serde::Deserialize;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub potential: PotentialConfig,
    pub factorization: Option<FactorizationConfig>,
    pub grid: GridConfig,
    #[serde(default)]
    pub jost: JostConfig,
    #[serde(default)]
    pub transform: TransformConfig,
    #[serde(default)]
    pub scan: ScanConfig,
    #[serde(default)]
    pub regularization: RegularizationConfig,
    #[serde(default)]
    pub identity: IdentityConfig,
    #[serde(default)]
    pub binorm: BinormConfig,
    #[serde(default)]
    pub schwartz: SchwartzConfig,
    /// Defaults to the reconstruction battery.
    #[serde(default)]
    pub test_functions: Vec<TestFunction>,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PotentialConfig {
    Zero,
    SquareWell { depth: f64, width: f64 },
    /// Two-column `(x, v0)` text table, relative to the config file.
    Table { path: PathBuf },
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorizationConfig {
    pub d: f64,
    pub b: f64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub x_max: f64,
    pub n_points: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct JostConfig {
    pub k: f64,
    pub k_im: f64,
    pub ode_tol: f64,
}

impl Default for JostConfig {
    fn default() -> Self {
        Self {
            k: 1.0,
            k_im: 0.0,
            ode_tol: tol::ODE,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TransformConfig {
    pub k: Vec<f64>,
}

impl Default for TransformConfig {
    fn default() -> Self {
        Self { k: vec![0.5, 1.0, 3.0] }
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScanConfig {
    pub k_min: f64,
    pub k_max: f64,
    pub samples: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            k_min: -5.0,
            k_max: 5.0,
            samples: 401,
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RegularizationConfig {
    pub epsilon: f64,
    pub override_sign: bool,
    pub k_max: f64,
    pub panel_width: f64,
    pub tolerance: f64,
}

impl Default for RegularizationConfig {
    fn default() -> Self {
        let d = RegularizationParams::default();
        Self {
            epsilon: d.epsilon,
            override_sign: d.override_sign,
            k_max: d.k_max,
            panel_width: d.panel_width,
            tolerance: d.tolerance,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IdentityConfig {
    pub xs: Vec<f64>,
    /// Bound on `|I(x) - Φ(x)|`.
    pub tolerance: f64,
}

impl Default for IdentityConfig {
    fn default() -> Self {
        Self {
            xs: battery_points(),
            tolerance: 5e-3,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BinormConfig {
    /// Each `k` is paired against a gaussian centred on it.
    pub k: Vec<f64>,
    pub width: f64,
    pub tolerance: f64,
}

impl Default for BinormConfig {
    fn default() -> Self {
        Self {
            k: vec![0.5, 1.0, 2.0],
            width: 1.0,
            tolerance: tol::QUAD,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SchwartzConfig {
    /// `[d, b]` pairs; `b` also sets the sign of the bracket check.
    pub factorizations: Vec<[f64; 2]>,
    pub k: Vec<f64>,
    pub epsilons: Vec<f64>,
    pub phi_tolerance: f64,
    pub bracket_tolerance: f64,
    pub kernel_tolerance: f64,
}

impl Default for SchwartzConfig {
    fn default() -> Self {
        Self {
            factorizations: vec![[-0.5, 1.0], [-0.1, 2.0], [0.0, 2.0]],
            k: vec![0.5, 1.0, 2.0, 3.0],
            epsilons: vec![1e-2, 1e-3, -1e-3],
            phi_tolerance: 1e-8,
            bracket_tolerance: 1e-14,
            kernel_tolerance: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: Option<PathBuf>,
}

/// A parsed config together with the objects built from it.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub path: PathBuf,
    pub text: String,
    pub config: RunConfig,
    pub potential: Potential,
    pub grid: Grid,
}

/// Command-line overrides applied before validation.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub epsilon: Option<f64>,
    pub override_epsilon_sign: bool,
}

pub fn load(path: &Path, overrides: Overrides) -> Result<Loaded> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let mut config: RunConfig = toml::from_str(&text).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        message: e.to_string().trim_end().to_string(),
    })?;
    if let Some(eps) = overrides.epsilon {
        config.regularization.epsilon = eps;
    }
    config.regularization.override_sign |= overrides.override_epsilon_sign;
    if config.test_functions.is_empty() {
        config.test_functions = gaussian_battery();
    }

    let v = Validator { path, text: &text };
    v.check(&config)?;
    let grid = Grid::new(config.grid.x_max, config.grid.n_points)
        .map_err(|e| v.invalid("grid", "n_points", e.to_string()))?;
    let potential = match &config.potential {
        PotentialConfig::Zero => Potential::zero(),
        PotentialConfig::SquareWell { depth, width } => Potential::square_well(*depth, *width)
            .map_err(|e| v.invalid("potential", "depth", e.to_string()))?,
        PotentialConfig::Table { path: table } => {
            let resolved = path.parent().unwrap_or(Path::new(".")).join(table);
            Potential::load_table(&resolved)
                .map_err(|e| v.invalid("potential", "path", format!("{}: {e}", resolved.display())))?
        }
    };
    Ok(Loaded {
        path: path.to_path_buf(),
        text,
        config,
        potential,
        grid,
    })
}

impl Loaded {
    /// The factorization constant, for commands that need one.
    pub fn factorization(&self, command: &str) -> Result<FactorizationConstant> {
        let v = Validator {
            path: &self.path,
            text: &self.text,
        };
        let f = self.config.factorization.ok_or_else(|| {
            v.invalid("factorization", "", format!("table is required by `{command}`"))
        })?;
        Ok(FactorizationConstant::new(Complex64::new(f.d, f.b))?)
    }

    pub fn regularization(&self) -> RegularizationParams {
        let r = self.config.regularization;
        RegularizationParams {
            epsilon: r.epsilon,
            override_sign: r.override_sign,
            k_max: r.k_max,
            panel_width: r.panel_width,
            tolerance: r.tolerance,
            ..RegularizationParams::default()
        }
    }
}

struct Validator<'a> {
    path: &'a Path,
    text: &'a str,
}

impl Validator<'_> {
    /// `section.key`, with the line of its definition when it appears in the file.
    fn invalid(&self, section: &str, key: &str, reason: impl Into<String>) -> CliError {
        let name = if key.is_empty() {
            section.to_string()
        } else {
            format!("{section}.{key}")
        };
        CliError::Invalid {
            path: self.path.to_path_buf(),
            line: locate(self.text, section, key),
            field: name,
            reason: reason.into(),
        }
    }

    fn require(&self, ok: bool, section: &str, key: &str, reason: &str) -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(self.invalid(section, key, reason))
        }
    }

    fn check(&self, c: &RunConfig) -> Result<()> {
        let g = c.grid;
        self.require(g.x_max.is_finite() && g.x_max > 0.0, "grid", "x_max", "must be positive and finite")?;
        self.require(g.n_points >= 16, "grid", "n_points", "must be at least 16")?;

        match &c.potential {
            PotentialConfig::Zero | PotentialConfig::Table { .. } => {}
            PotentialConfig::SquareWell { depth, width } => {
                self.require(depth.is_finite(), "potential", "depth", "must be finite")?;
                self.require(width.is_finite() && *width > 0.0, "potential", "width", "must be positive")?;
            }
        }

        if let Some(f) = c.factorization {
            self.require(f.d.is_finite() && f.d <= 0.0, "factorization", "d", "Re(a) = d must satisfy d <= 0")?;
            self.require(f.b.is_finite() && f.b != 0.0, "factorization", "b", "Im(a) = b must be nonzero")?;
        }

        let j = &c.jost;
        let k = Complex64::new(j.k, j.k_im);
        self.require(k.is_finite() && k.norm() > 0.0, "jost", "k", "must be finite and nonzero")?;
        self.require(j.k_im >= 0.0, "jost", "k_im", "must be nonnegative")?;
        self.require(j.ode_tol > 0.0, "jost", "ode_tol", "must be positive")?;

        self.require(
            c.transform.k.iter().all(|&k| k.is_finite() && k > 0.0),
            "transform",
            "k",
            "every k must be positive and finite",
        )?;

        let s = c.scan;
        self.require(s.k_min.is_finite() && s.k_min < s.k_max && s.k_max.is_finite(), "scan", "k_max", "must exceed k_min")?;
        self.require(s.samples >= 5, "scan", "samples", "must be at least 5")?;

        let r = c.regularization;
        self.require(r.epsilon.is_finite(), "regularization", "epsilon", "must be finite")?;
        self.require(r.k_max.is_finite() && r.k_max > tol::K_MIN, "regularization", "k_max", "must exceed k_min")?;
        self.require(r.panel_width > 0.0, "regularization", "panel_width", "must be positive")?;
        self.require(r.tolerance > 0.0, "regularization", "tolerance", "must be positive")?;

        let id = &c.identity;
        self.require(
            !id.xs.is_empty() && id.xs.iter().all(|&x| x > 0.0 && x <= g.x_max),
            "identity",
            "xs",
            "points must lie in (0, x_max]",
        )?;
        self.require(id.tolerance > 0.0, "identity", "tolerance", "must be positive")?;

        let b = &c.binorm;
        self.require(b.k.iter().all(|&k| k.is_finite() && k > 0.0), "binorm", "k", "every k must be positive")?;
        self.require(b.width > 0.0, "binorm", "width", "must be positive")?;
        self.require(b.tolerance > 0.0, "binorm", "tolerance", "must be positive")?;

        let sc = &c.schwartz;
        self.require(
            sc.factorizations.iter().all(|[d, b]| *d <= 0.0 && *b != 0.0 && d.is_finite() && b.is_finite()),
            "schwartz",
            "factorizations",
            "every [d, b] needs d <= 0 and b != 0",
        )?;
        self.require(sc.k.iter().all(|&k| k.is_finite() && k > 0.0), "schwartz", "k", "every k must be positive")?;
        self.require(
            sc.epsilons.iter().all(|&e| e.is_finite() && e != 0.0),
            "schwartz",
            "epsilons",
            "every epsilon must be finite and nonzero",
        )?;
        for (key, t) in [
            ("phi_tolerance", sc.phi_tolerance),
            ("bracket_tolerance", sc.bracket_tolerance),
            ("kernel_tolerance", sc.kernel_tolerance),
        ] {
            self.require(t > 0.0, "schwartz", key, "must be positive")?;
        }

        for f in &c.test_functions {
            let ok = match *f {
                TestFunction::Zero => true,
                TestFunction::Gaussian { center, width } => center.is_finite() && width > 0.0,
                TestFunction::CompactBump { center, radius } => center.is_finite() && radius > 0.0,
                TestFunction::RampGaussian { width } => width > 0.0,
            };
            self.require(ok, "test_functions", "", "widths and radii must be positive")?;
        }
        Ok(())
    }
}

/// 1-based line of `key = ...` inside `[section]`, or of the header itself.
fn locate(text: &str, section: &str, key: &str) -> Option<usize> {
    let mut current = String::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if let Some(name) = t.strip_prefix('[') {
            current = name.trim_matches(|c| c == '[' || c == ']').trim().to_string();
            if current == section && key.is_empty() {
                return Some(i + 1);
            }
            continue;
        }
        if current == section && !key.is_empty() {
            if let Some((k, _)) = t.split_once('=') {
                if k.trim() == key {
                    return Some(i + 1);
                }
            }
        }
    }
    None
}
