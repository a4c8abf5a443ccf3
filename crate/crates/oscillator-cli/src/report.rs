//! Machine- and human-readable run reports.
//!
//! A report lists the command, its parameters, every check that ran (each
//! numeric check carries the residual it measured and the tolerance it was
//! held to), wall-clock timings, and free-form notes. `--json` prints the
//! same structure as JSON on stdout.

use serde::Serialize;

/// One named parameter of the run.
#[derive(Debug, Clone, Serialize)]
pub struct Param {
    pub key: String,
    pub value: String,
}

/// Outcome of a single check. Numeric checks pass iff the residual is finite
/// and at most the tolerance; exact checks compare discrete values.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    pub fn numeric(name: impl Into<String>, residual: f64, tolerance: f64) -> CheckResult {
        CheckResult {
            name: name.into(),
            passed: residual.is_finite() && residual <= tolerance,
            residual: Some(residual),
            tolerance: Some(tolerance),
            detail: None,
        }
    }

    pub fn exact(name: impl Into<String>, passed: bool) -> CheckResult {
        CheckResult { name: name.into(), passed, residual: None, tolerance: None, detail: None }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> CheckResult {
        self.detail = Some(detail.into());
        self
    }
}

/// A named wall-clock measurement in seconds.
#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub name: String,
    pub seconds: f64,
}

/// The full record of one command invocation.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: Vec<Param>,
    pub checks: Vec<CheckResult>,
    pub timings: Vec<Timing>,
    pub notes: Vec<String>,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> RunReport {
        RunReport {
            command: command.into(),
            parameters: Vec::new(),
            checks: Vec::new(),
            timings: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn param(&mut self, key: impl Into<String>, value: impl ToString) {
        self.parameters.push(Param { key: key.into(), value: value.to_string() });
    }

    pub fn push(&mut self, check: CheckResult) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = CheckResult>) {
        self.checks.extend(checks);
    }

    pub fn time(&mut self, name: impl Into<String>, seconds: f64) {
        self.timings.push(Timing { name: name.into(), seconds });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// (passed, failed) counts.
    pub fn counts(&self) -> (usize, usize) {
        let passed = self.checks.iter().filter(|c| c.passed).count();
        (passed, self.checks.len() - passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn render_human(&self) -> String {
        use std::fmt::Write as _;
        let mut out = String::new();
        let _ = write!(out, "{}", self.command);
        for p in &self.parameters {
            let _ = write!(out, " {}={}", p.key, p.value);
        }
        out.push('\n');
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            let _ = write!(out, "[{status}] {}", c.name);
            if let Some(r) = c.residual {
                let _ = write!(out, "  residual={r:.3e}");
            }
            if let Some(t) = c.tolerance {
                let _ = write!(out, " tol={t:.1e}");
            }
            if let Some(d) = &c.detail {
                let _ = write!(out, "  ({d})");
            }
            out.push('\n');
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        for t in &self.timings {
            let _ = writeln!(out, "time: {} {:.6}s", t.name, t.seconds);
        }
        let (passed, failed) = self.counts();
        let _ = writeln!(out, "{passed} passed, {failed} failed");
        out
    }

    /// Prints the report to stdout in the requested form.
    pub fn print(&self, json: bool) {
        if json {
            println!("{}", self.to_json());
        } else {
            print!("{}", self.render_human());
        }
    }
}
