//! Check records, run configuration and the report document.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::lattice::{Block, Cell};
use crate::projective::ToleranceConfig;

/// One residual measured at one cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cell: Option<Cell>,
    pub residual: f64,
    pub pass: bool,
}

/// Records of one verifier run. A run passes when every record passes;
/// warnings never fail a run.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub records: Vec<CheckRecord>,
    #[serde(default)]
    pub warnings: Vec<String>,
}

impl CheckReport {
    pub fn new(name: &str) -> Self {
        Self { name: name.into(), ..Default::default() }
    }

    /// Record a residual that passes when `residual <= tol`. NaN fails.
    pub fn push(&mut self, check: &str, cell: Option<Cell>, residual: f64, tol: f64) {
        let pass = residual <= tol;
        self.push_verdict(check, cell, residual, pass);
    }

    pub fn push_verdict(&mut self, check: &str, cell: Option<Cell>, residual: f64, pass: bool) {
        self.records.push(CheckRecord { check: check.into(), cell, residual, pass });
    }

    pub fn warn(&mut self, msg: impl Into<String>) {
        self.warnings.push(msg.into());
    }

    pub fn pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn count(&self, check: &str) -> usize {
        self.records.iter().filter(|r| r.check == check).count()
    }

    /// Largest residual of the named check, 0 when absent.
    pub fn max_residual(&self, check: &str) -> f64 {
        self.records.iter().filter(|r| r.check == check).map(|r| r.residual).fold(0.0, f64::max)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    /// The first failing record, or the record with the largest residual.
    pub fn worst(&self) -> Option<&CheckRecord> {
        self.failures().next().or_else(|| {
            self.records.iter().max_by(|a, b| a.residual.total_cmp(&b.residual))
        })
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.records.extend(other.records);
        self.warnings.extend(other.warnings);
    }

    pub fn summary(&self) -> Summary {
        let mut max_residuals = BTreeMap::new();
        for r in &self.records {
            let e = max_residuals.entry(r.check.clone()).or_insert(0.0f64);
            if r.residual > *e || r.residual.is_nan() {
                *e = r.residual;
            }
        }
        Summary {
            pass: self.pass(),
            records: self.records.len(),
            failures: self.failures().count(),
            max_residuals,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: bool,
    pub records: usize,
    pub failures: usize,
    pub max_residuals: BTreeMap<String, f64>,
}

/// Everything that determines the output of a command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub tolerances: ToleranceConfig,
    pub block: Block,
    /// Squared radius of the anchor sphere of a Möbius lift.
    pub family_parameter: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { seed: 0, tolerances: ToleranceConfig::default(), block: Block::cube(3, 2), family_parameter: 0.1 }
    }
}

/// Output of `verify` and the residual section of other commands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub config: RunConfig,
    pub pass: bool,
    pub checks: Vec<CheckReport>,
    pub summaries: Vec<Summary>,
}

impl Report {
    pub fn new(suite: &str, config: RunConfig, checks: Vec<CheckReport>) -> Self {
        let summaries: Vec<Summary> = checks.iter().map(|c| c.summary()).collect();
        let pass = checks.iter().all(|c| c.pass());
        Self { suite: suite.into(), config, pass, checks, summaries }
    }

    /// Human readable rendering; verdicts are the same as in the JSON form.
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "suite {}: {}", self.suite, if self.pass { "PASS" } else { "FAIL" });
        for (c, sum) in self.checks.iter().zip(&self.summaries) {
            let _ = writeln!(
                s,
                "  {} {} ({} records, {} failing)",
                if sum.pass { "PASS" } else { "FAIL" },
                c.name,
                sum.records,
                sum.failures
            );
            for (name, r) in &sum.max_residuals {
                let _ = writeln!(s, "    max {name} = {r:.3e}");
            }
            for f in c.failures().take(5) {
                let cell = f.cell.as_ref().map(|c| c.to_string()).unwrap_or_else(|| "-".into());
                let _ = writeln!(s, "    offending {} at {} residual {:.3e}", f.check, cell, f.residual);
            }
            for w in c.warnings.iter().take(5) {
                let _ = writeln!(s, "    warning: {w}");
            }
        }
        s
    }
}
