//! Machine-readable run reports.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{Claim, Side, Status, Verdict};

/// One failing case of a run.
#[derive(Clone, Debug, Serialize)]
pub struct FailureEntry {
    pub case: Option<usize>,
    pub formula: String,
    pub side: Option<Side>,
    pub structure: Option<serde_json::Value>,
    pub assignment: BTreeMap<String, usize>,
    /// Command line reproducing the case.
    pub replay: Option<String>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub seed: Option<u64>,
    pub status: Status,
    pub cases: usize,
    pub checks: u64,
    pub disagreements: usize,
    pub errors: usize,
    pub elapsed_ms: u128,
    pub failures: Vec<FailureEntry>,
}

impl Report {
    /// Summarizes `v`. `replay` maps a case index to the command reproducing
    /// it.
    pub fn from_verdict(
        command: &str,
        seed: Option<u64>,
        v: &Verdict,
        replay: impl Fn(usize) -> String,
    ) -> Report {
        let mut failures = Vec::new();
        if let Some(w) = &v.witness {
            let formula = match &w.claim {
                Claim::Equiv(a, b) => format!("{a}  vs  {b}"),
                Claim::Translation(a, _) => a.to_string(),
            };
            failures.push(FailureEntry {
                case: w.case,
                formula,
                side: Some(w.side),
                structure: serde_json::from_str(&w.structure.to_json()).ok(),
                assignment: w
                    .assignment
                    .iter()
                    .map(|(k, a)| (k.to_string(), *a))
                    .collect(),
                replay: w.case.map(&replay),
                error: None,
            });
        }
        if let Some(e) = &v.error {
            failures.push(FailureEntry {
                case: None,
                formula: String::new(),
                side: None,
                structure: None,
                assignment: BTreeMap::new(),
                replay: None,
                error: Some(e.clone()),
            });
        }
        Report {
            command: command.to_string(),
            seed,
            status: v.status,
            cases: v.stats.cases,
            checks: v.stats.checks,
            disagreements: v.stats.disagreements,
            errors: v.stats.errors,
            elapsed_ms: v.stats.elapsed.as_millis(),
            failures,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Human-readable summary, one item per line.
    pub fn lines(&self) -> Vec<String> {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        let mut out = vec![format!(
            "{status}: {} cases, {} checks, {} disagreements, {} errors in {} ms",
            self.cases, self.checks, self.disagreements, self.errors, self.elapsed_ms
        )];
        for f in &self.failures {
            if let Some(e) = &f.error {
                out.push(format!("error: {e}"));
                continue;
            }
            if let Some(c) = f.case {
                out.push(format!("case: {c}"));
            }
            out.push(format!("formula: {}", f.formula));
            if let Some(s) = f.side {
                out.push(format!("disagreeing side: {s}"));
            }
            if let Some(m) = &f.structure {
                out.push(format!("structure: {m}"));
            }
            let nu: Vec<String> = f
                .assignment
                .iter()
                .map(|(k, a)| format!("{k}={a}"))
                .collect();
            out.push(format!("assignment: {}", nu.join(",")));
            if let Some(r) = &f.replay {
                out.push(format!("replay: {r}"));
            }
        }
        out
    }
}
