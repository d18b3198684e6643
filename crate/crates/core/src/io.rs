//! CSV tables and atomic file output.

use std::fs;
use std::path::Path;

use crate::distributional::{IdentityBatch, SmearedFunctional};
use crate::error::Result;
use crate::singularity::SingularityScan;
use crate::test_function::TestFunction;
use crate::wave::WaveSample;

/// Scientific notation with 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes `contents` to a sibling temporary file and renames it over `path`.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.tmp"));
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

pub struct CsvTable {
    text: String,
    columns: usize,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        Self {
            text: header.join(",") + "\n",
            columns: header.len(),
        }
    }

    pub fn row(&mut self, cells: &[String]) {
        debug_assert_eq!(cells.len(), self.columns);
        self.text.push_str(&cells.join(","));
        self.text.push('\n');
    }

    pub fn numbers(&mut self, cells: &[f64]) {
        let cells: Vec<String> = cells.iter().map(|v| fmt_f64(*v)).collect();
        self.row(&cells);
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }

    pub fn into_string(self) -> String {
        self.text
    }
}

/// `x, re_f, im_f, re_fprime, im_fprime`.
pub fn wave_csv(sample: &WaveSample) -> String {
    let mut t = CsvTable::new(&["x", "re_f", "im_f", "re_fprime", "im_fprime"]);
    for (i, x) in sample.grid.points().enumerate() {
        let (v, d) = (sample.values[i], sample.derivatives[i]);
        t.numbers(&[x, v.re, v.im, d.re, d.im]);
    }
    t.into_string()
}

/// `eta, partial_value_re, partial_value_im`.
pub fn eta_table_csv(functional: &SmearedFunctional) -> String {
    let mut t = CsvTable::new(&["eta", "partial_value_re", "partial_value_im"]);
    for (eta, v) in &functional.eta_table {
        t.numbers(&[*eta, v.re, v.im]);
    }
    t.into_string()
}

/// `epsilon, x, I_re, I_im, phi_x, abs_err`, one block per test function.
pub fn identity_csv(batch: &IdentityBatch, battery: &[TestFunction]) -> String {
    let mut t = CsvTable::new(&["epsilon", "x", "I_re", "I_im", "phi_x", "abs_err"]);
    for (f, row) in battery.iter().zip(&batch.values) {
        for (&x, s) in batch.xs.iter().zip(row) {
            let phi = f.value(x);
            t.numbers(&[batch.epsilon, x, s.value.re, s.value.im, phi, (s.value - phi).norm()]);
        }
    }
    t.into_string()
}

/// `k, abs_functional, re_functional, im_functional, verdict`.
pub fn scan_csv(scan: &SingularityScan) -> String {
    let mut t = CsvTable::new(&["k", "abs_functional", "re_functional", "im_functional", "verdict"]);
    for (i, s) in scan.samples.iter().enumerate() {
        let verdict = scan.sample_verdict(i).map_or("degenerate", |v| v.as_str());
        let (abs, re, im) = match s.functional {
            Some(v) => (fmt_f64(v.norm()), fmt_f64(v.re), fmt_f64(v.im)),
            None => ("NaN".into(), "NaN".into(), "NaN".into()),
        };
        t.row(&[fmt_f64(s.k), abs, re, im, verdict.to_string()]);
    }
    t.into_string()
}

/// `k, modulus, curvature, verdict` for the fitted minima.
pub fn minima_csv(scan: &SingularityScan) -> String {
    let mut t = CsvTable::new(&["k", "modulus", "curvature", "verdict"]);
    for m in &scan.minima {
        t.row(&[fmt_f64(m.k), fmt_f64(m.modulus), fmt_f64(m.curvature), m.verdict.as_str().to_string()]);
    }
    t.into_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting_round_trips() {
        for v in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23] {
            let s = fmt_f64(v);
            assert_eq!(s.parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = std::env::temp_dir().join(format!("darboux-io-{}", std::process::id()));
        let path = dir.join("out.csv");
        write_atomic(&path, b"a\n").unwrap();
        write_atomic(&path, b"b\n").unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "b\n");
        fs::remove_dir_all(dir).unwrap();
    }
}
