//! Report assembly and JSON/CSV emission.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;
use serde_json::Value;

use crate::config::Format;
use crate::CliError;

/// Fixed-width scientific notation with 17 significant digits.
pub fn sci(x: f64) -> String {
    // drop the sign of negative zero
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

/// Rows mirrored into CSV; JSON uses `results` instead.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub results: Vec<Value>,
    pub residuals: BTreeMap<String, f64>,
    pub pass: bool,
    #[serde(skip)]
    pub table: Table,
}

impl Report {
    pub fn new(command: &str, params: BTreeMap<String, Value>, table: Table) -> Self {
        Report { command: command.into(), params, results: Vec::new(), residuals: BTreeMap::new(), pass: true, table }
    }

    pub fn render(&self, format: Format) -> Result<Vec<u8>, CliError> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_vec_pretty(self).map_err(|e| CliError::Io(e.to_string()))?;
                s.push(b'\n');
                Ok(s)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.table.header).map_err(|e| CliError::Io(e.to_string()))?;
                for row in &self.table.rows {
                    w.write_record(row).map_err(|e| CliError::Io(e.to_string()))?;
                }
                w.into_inner().map_err(|e| CliError::Io(e.to_string()))
            }
        }
    }

    pub fn emit(&self, format: Format, out: Option<&std::path::Path>) -> Result<(), CliError> {
        let bytes = self.render(format)?;
        match out {
            Some(p) => std::fs::write(p, bytes).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
            None => std::io::stdout().write_all(&bytes).map_err(|e| CliError::Io(e.to_string())),
        }
    }
}

/// Whether a residual must stay below or rise above its threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Bound {
    Max,
    Min,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub bound: Bound,
    pub pass: bool,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, f64>,
}

impl Check {
    pub fn new(name: impl Into<String>, residual: f64, tolerance: f64, bound: Bound) -> Self {
        let pass = match bound {
            Bound::Max => residual <= tolerance,
            Bound::Min => residual > tolerance,
        };
        Check { name: name.into(), residual, tolerance, bound, pass, values: BTreeMap::new() }
    }

    /// A failed check carrying the error text in its name.
    pub fn errored(name: impl Into<String>, err: impl std::fmt::Display, tolerance: f64, bound: Bound) -> Self {
        let mut c = Check::new(format!("{} (error: {err})", name.into()), f64::NAN, tolerance, bound);
        c.pass = false;
        c
    }

    pub fn with_values(mut self, values: &[(&str, f64)]) -> Self {
        self.values = values.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        self
    }
}
