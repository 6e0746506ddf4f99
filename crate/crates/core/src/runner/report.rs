use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::C64;

use super::config::{Format, Mode};

/// A named eigenvalue sequence.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Spectrum {
    Real(Vec<f64>),
    /// `[re, im]` pairs.
    Complex(Vec<[f64; 2]>),
}

impl Spectrum {
    /// Stores real sequences compactly when every imaginary part is zero.
    pub fn from_complex(values: &[C64]) -> Self {
        if values.iter().all(|z| z.im == 0.0) {
            Spectrum::Real(values.iter().map(|z| z.re).collect())
        } else {
            Spectrum::Complex(values.iter().map(|z| [z.re, z.im]).collect())
        }
    }

    fn is_finite(&self) -> bool {
        match self {
            Spectrum::Real(v) => v.iter().all(|x| x.is_finite()),
            Spectrum::Complex(v) => v.iter().all(|z| z[0].is_finite() && z[1].is_finite()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Check {
    pub passed: bool,
    pub residual: f64,
    pub tolerance: f64,
}

impl Check {
    /// Passes when `residual <= tolerance`.
    pub fn at_most(residual: f64, tolerance: f64) -> Self {
        Check {
            passed: residual <= tolerance,
            residual,
            tolerance,
        }
    }
}

/// One CSV row: candidate, instance, or variant.
pub type Row = BTreeMap<String, serde_json::Value>;

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub mode: Mode,
    pub inputs: serde_json::Value,
    pub spectra: BTreeMap<String, Spectrum>,
    pub objectives: BTreeMap<String, f64>,
    pub checks: BTreeMap<String, Check>,
    pub rows: Vec<Row>,
    /// Quantities that were not computed, with the reason.
    pub skipped: BTreeMap<String, String>,
    pub wall_time: f64,
}

impl Report {
    pub fn new(mode: Mode, inputs: serde_json::Value) -> Self {
        Report {
            mode,
            inputs,
            spectra: BTreeMap::new(),
            objectives: BTreeMap::new(),
            checks: BTreeMap::new(),
            rows: Vec::new(),
            skipped: BTreeMap::new(),
            wall_time: 0.0,
        }
    }

    pub fn objective(&mut self, name: &str, value: f64) {
        if value.is_finite() {
            self.objectives.insert(name.into(), value);
        } else {
            self.skipped.insert(name.into(), format!("non-finite value {value}"));
        }
    }

    /// Records `value` or, on error, the reason it is missing.
    pub fn try_objective(&mut self, name: &str, value: Result<f64>) {
        match value {
            Ok(v) => self.objective(name, v),
            Err(e) => self.skip(name, &e),
        }
    }

    pub fn spectrum(&mut self, name: &str, spectrum: Spectrum) {
        if spectrum.is_finite() {
            self.spectra.insert(name.into(), spectrum);
        } else {
            self.skipped.insert(name.into(), "non-finite eigenvalues".into());
        }
    }

    pub fn check(&mut self, name: &str, mut check: Check) {
        if !check.residual.is_finite() {
            check.residual = f64::MAX;
            check.passed = false;
        }
        self.checks.insert(name.into(), check);
    }

    pub fn skip(&mut self, name: &str, reason: &Error) {
        self.skipped.insert(name.into(), reason.to_string());
    }

    pub fn all_passed(&self) -> bool {
        self.checks.values().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are finite")
    }

    /// One line per row when the report has rows; otherwise one line per
    /// objective and check.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| Error::InvalidParameter(format!("csv output: {e}"));
        if self.rows.is_empty() {
            w.write_record(["section", "name", "value", "passed", "tolerance"])
                .map_err(csv_err)?;
            for (name, v) in &self.objectives {
                w.write_record(["objective", name, &v.to_string(), "", ""])
                    .map_err(csv_err)?;
            }
            for (name, c) in &self.checks {
                w.write_record([
                    "check",
                    name,
                    &c.residual.to_string(),
                    &c.passed.to_string(),
                    &c.tolerance.to_string(),
                ])
                .map_err(csv_err)?;
            }
        } else {
            let mut columns: Vec<&String> = Vec::new();
            for row in &self.rows {
                for key in row.keys() {
                    if !columns.contains(&key) {
                        columns.push(key);
                    }
                }
            }
            columns.sort_by_key(|c| (c.as_str() != "name", c.as_str()));
            w.write_record(columns.iter().map(|c| c.as_str())).map_err(csv_err)?;
            for row in &self.rows {
                let cells = columns.iter().map(|c| match row.get(*c) {
                    None | Some(serde_json::Value::Null) => String::new(),
                    Some(serde_json::Value::String(s)) => s.clone(),
                    Some(v) => v.to_string(),
                });
                w.write_record(cells).map_err(csv_err)?;
            }
        }
        let bytes = w.into_inner().map_err(|e| Error::InvalidParameter(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(self.to_json()),
            Format::Csv => self.to_csv(),
        }
    }

    pub fn write(&self, path: &Path, format: Format) -> Result<()> {
        fs::write(path, self.render(format)?).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }
}
