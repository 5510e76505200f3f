//! Line-oriented check reports.
//!
//! A report serializes as one `key: value` pair per line, in a fixed order:
//!
//! ```text
//! check: span
//! param.n: 6
//! param.slack: 2
//! verdict: pass
//! witness.1: ...
//! wall_ms: 42
//! ```
//!
//! Witness values are flattened to a single line (embedded newlines become
//! `"; "`) so the format stays greppable.

use std::time::Instant;

/// Outcome of one verification run.
#[derive(Clone, Debug)]
pub struct Report {
    check: String,
    params: Vec<(String, String)>,
    witnesses: Vec<String>,
    pass: bool,
    wall_ms: u128,
    started: Instant,
    finished: bool,
}

impl Report {
    /// Starts a report; the wall clock runs until [`Report::finish`].
    pub fn new(check: impl Into<String>) -> Self {
        Report {
            check: check.into(),
            params: Vec::new(),
            witnesses: Vec::new(),
            pass: false,
            wall_ms: 0,
            started: Instant::now(),
            finished: false,
        }
    }

    /// Records a parameter; emitted in insertion order.
    pub fn param(&mut self, name: &str, value: impl std::fmt::Display) -> &mut Self {
        self.params.push((name.to_string(), value.to_string()));
        self
    }

    /// Records a witness line for a failing (or informational) verdict.
    pub fn witness(&mut self, text: impl Into<String>) -> &mut Self {
        self.witnesses.push(text.into());
        self
    }

    /// Seals the verdict and the wall time.
    pub fn finish(&mut self, pass: bool) -> &mut Self {
        self.pass = pass;
        self.wall_ms = self.started.elapsed().as_millis();
        self.finished = true;
        self
    }

    pub fn check(&self) -> &str {
        &self.check
    }

    pub fn passed(&self) -> bool {
        self.pass
    }

    pub fn witnesses(&self) -> &[String] {
        &self.witnesses
    }

    pub fn params(&self) -> &[(String, String)] {
        &self.params
    }

    pub fn wall_ms(&self) -> u128 {
        self.wall_ms
    }

    /// The `key: value` serialization described in the module docs.
    pub fn to_text(&self) -> String {
        debug_assert!(self.finished, "report serialized before finish()");
        let mut out = String::new();
        out.push_str(&format!("check: {}\n", self.check));
        for (k, v) in &self.params {
            out.push_str(&format!("param.{}: {}\n", k, one_line(v)));
        }
        out.push_str(&format!(
            "verdict: {}\n",
            if self.pass { "pass" } else { "fail" }
        ));
        for (i, w) in self.witnesses.iter().enumerate() {
            out.push_str(&format!("witness.{}: {}\n", i + 1, one_line(w)));
        }
        out.push_str(&format!("wall_ms: {}\n", self.wall_ms));
        out
    }
}

fn one_line(s: &str) -> String {
    s.trim_end_matches('\n').replace('\n', "; ")
}
