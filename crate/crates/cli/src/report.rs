//! Run reports: the single output structure shared by every subcommand.
//!
//! A report renders either as a human-readable table or as one JSON
//! document. Both views are built from the same strings, so every number
//! visible in the table equals the corresponding JSON field. Integers are
//! always decimal strings; nothing is ever rendered through floating
//! point.

use std::collections::BTreeMap;

use serde::Serialize;

/// One verification row: a named comparison that passes iff the rendered
/// sides are equal.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRow {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

/// One informational row: reported, never judged.
#[derive(Clone, Debug, Serialize)]
pub struct InfoRow {
    pub name: String,
    pub value: String,
}

/// Complete outcome of one subcommand run.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    /// Inputs as given on the command line or in the config file.
    pub parameters: BTreeMap<String, String>,
    pub checks: Vec<CheckRow>,
    pub info: Vec<InfoRow>,
    /// `"pass"` iff every check row passes.
    pub status: String,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            checks: Vec::new(),
            info: Vec::new(),
            status: String::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.parameters.insert(key.to_string(), value.to_string());
    }

    /// Adds a check row; it passes iff both sides render identically.
    pub fn check(
        &mut self,
        name: impl Into<String>,
        expected: impl ToString,
        actual: impl ToString,
    ) {
        let expected = expected.to_string();
        let actual = actual.to_string();
        let pass = expected == actual;
        self.checks.push(CheckRow {
            name: name.into(),
            expected,
            actual,
            pass,
        });
    }

    pub fn info(&mut self, name: impl Into<String>, value: impl ToString) {
        self.info.push(InfoRow {
            name: name.into(),
            value: value.to_string(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Freezes the overall status; call once after the last row.
    pub fn finish(mut self) -> Self {
        self.status = if self.passed() { "pass" } else { "fail" }.to_string();
        self
    }

    /// The machine-readable view: one JSON document, newline-terminated.
    ///
    /// Map keys are sorted and array order is insertion order, so two runs
    /// with identical inputs produce byte-identical bytes.
    pub fn to_json(&self) -> String {
        let mut doc = serde_json::to_string(self).expect("report serializes");
        doc.push('\n');
        doc
    }

    /// The human-readable view, column-aligned.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        if !self.parameters.is_empty() {
            out.push_str("parameters:\n");
            for (key, value) in &self.parameters {
                out.push_str(&format!("  {key}: {value}\n"));
            }
        }
        if !self.checks.is_empty() {
            out.push_str("checks:\n");
            let name_w = self.column_width(|c| &c.name, "check");
            let exp_w = self.column_width(|c| &c.expected, "expected");
            let act_w = self.column_width(|c| &c.actual, "actual");
            out.push_str(&format!(
                "  {:<name_w$}  {:<exp_w$}  {:<act_w$}  result\n",
                "check", "expected", "actual"
            ));
            for row in &self.checks {
                out.push_str(&format!(
                    "  {:<name_w$}  {:<exp_w$}  {:<act_w$}  {}\n",
                    row.name,
                    row.expected,
                    row.actual,
                    if row.pass { "pass" } else { "FAIL" }
                ));
            }
        }
        if !self.info.is_empty() {
            out.push_str("info:\n");
            for row in &self.info {
                out.push_str(&format!("  {}: {}\n", row.name, row.value));
            }
        }
        out.push_str(&format!("status: {}\n", self.status));
        out
    }

    fn column_width(&self, field: impl Fn(&CheckRow) -> &str, header: &str) -> usize {
        self.checks
            .iter()
            .map(|c| field(c).len())
            .chain(std::iter::once(header.len()))
            .max()
            .unwrap_or(0)
    }
}
