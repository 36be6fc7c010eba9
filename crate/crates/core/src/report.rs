//! Deterministic, tab-separated command reports.
//!
//! A report opens with `report: <command>`, continues with payload lines,
//! then one `residual <name> <value> <tolerance> pass|fail` line per check
//! and a closing `verdict pass|fail` line. Fields are separated by tabs.

use std::fmt::Write as _;

use crate::bct::{print, BctDocument};
use crate::text::format_real;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Residual {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
}

impl Residual {
    /// NaN never passes.
    pub fn passes(&self) -> bool {
        self.value <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub payload: Vec<String>,
    pub residuals: Vec<Residual>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.into(),
            payload: Vec::new(),
            residuals: Vec::new(),
        }
    }

    pub fn line(&mut self, fields: &[&str]) {
        self.payload.push(fields.join("\t"));
    }

    /// Appends a document, one payload line per text line.
    pub fn document(&mut self, doc: &BctDocument) {
        self.payload.extend(print(doc).lines().map(String::from));
    }

    pub fn residual(&mut self, name: &str, value: f64, tolerance: f64) {
        self.residuals.push(Residual {
            name: name.into(),
            value,
            tolerance,
        });
    }

    /// A check that could not be evaluated counts as failed.
    pub fn failed_check(&mut self, name: &str, reason: &str) {
        self.line(&["failed", name, reason]);
        self.residual(name, f64::INFINITY, 0.0);
    }

    pub fn verdict(&self) -> Verdict {
        if self.residuals.iter().all(Residual::passes) {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "report: {}", self.command);
        for l in &self.payload {
            let _ = writeln!(out, "{l}");
        }
        for r in &self.residuals {
            let status = if r.passes() { "pass" } else { "fail" };
            let _ = writeln!(
                out,
                "residual\t{}\t{}\t{}\t{status}",
                r.name,
                format_real(r.value),
                format_real(r.tolerance)
            );
        }
        let _ = writeln!(out, "verdict\t{}", self.verdict().as_str());
        out
    }
}
