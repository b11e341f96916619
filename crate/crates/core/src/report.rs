//! Named checks with expected and computed values, rendered as a table or
//! as JSON.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// A number or inequality stated with the result being reproduced.
    Stated,
    /// Recomputed here by an independent route.
    Derived,
    /// Immediate from the definitions.
    Trivial,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Stated => "stated",
            Provenance::Derived => "derived",
            Provenance::Trivial => "trivial",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub name: String,
    pub inputs: BTreeMap<String, String>,
    pub expected: String,
    pub provenance: Provenance,
    pub computed: String,
    pub citation: String,
    pub pass: bool,
}

impl Check {
    /// A check that passes iff `expected == computed` as strings.
    pub fn new(
        name: impl Into<String>,
        inputs: &[(&str, String)],
        expected: impl ToString,
        computed: impl ToString,
        provenance: Provenance,
        citation: impl Into<String>,
    ) -> Self {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        Check {
            name: name.into(),
            inputs: inputs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            pass: expected == computed,
            expected,
            computed,
            provenance,
            citation: citation.into(),
        }
    }

    /// The suite prefix of the name (`castelnuovo` in `castelnuovo.sweep`).
    pub fn suite(&self) -> &str {
        self.name.split('.').next().unwrap_or(&self.name)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn render_table(&self) -> String {
        let headers = ["check", "inputs", "expected", "computed", "source", "result"];
        let rows: Vec<[String; 6]> = self
            .checks
            .iter()
            .map(|c| {
                let inputs = c
                    .inputs
                    .iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect::<Vec<_>>()
                    .join(" ");
                [
                    c.name.clone(),
                    inputs,
                    c.expected.clone(),
                    c.computed.clone(),
                    c.provenance.as_str().to_string(),
                    if c.pass { "pass" } else { "FAIL" }.to_string(),
                ]
            })
            .collect();
        let mut widths = headers.map(str::len);
        for row in &rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut out = String::new();
        let line = |cells: &[String], out: &mut String| {
            let padded: Vec<String> = cells
                .iter()
                .zip(widths)
                .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            let _ = writeln!(out, "{}", padded.join("  ").trim_end());
        };
        line(&headers.map(String::from), &mut out);
        line(&widths.map(|w| "-".repeat(w)), &mut out);
        for row in &rows {
            line(row, &mut out);
        }
        let failed: Vec<&Check> = self.failures().collect();
        let _ = writeln!(out, "\n{} checks, {} failed", self.checks.len(), failed.len());
        for c in failed {
            let _ = writeln!(out, "  FAIL {}: {}", c.name, c.citation);
        }
        out
    }
}
