//! Reports printed by the command line: a human summary or a JSON document,
//! plus DOT rendering of stage categories.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;
use serde_json::Value;

use crate::hammock::{HammockStage, Ladder};
use crate::theorems::Verdict;

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub bounds: BTreeMap<String, usize>,
    pub verdict: Verdict,
    pub witnesses: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    /// Milliseconds, only when asked for, so that reports stay reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
    #[serde(skip)]
    pub summary: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            bounds: BTreeMap::new(),
            verdict: Verdict::Pass,
            witnesses: Vec::new(),
            counterexample: None,
            timings: None,
            summary: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<String>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn bound(&mut self, key: &str, value: usize) -> &mut Self {
        self.bounds.insert(key.to_string(), value);
        self
    }

    pub fn witness<T: Serialize>(&mut self, w: &T) -> &mut Self {
        self.witnesses
            .push(serde_json::to_value(w).expect("reports serialize"));
        self
    }

    pub fn line(&mut self, text: impl Into<String>) -> &mut Self {
        self.summary.push(text.into());
        self
    }

    /// Lowers the verdict, keeping the first counterexample.
    pub fn fold(&mut self, verdict: Verdict, counterexample: Option<String>) -> &mut Self {
        self.verdict = self.verdict.and(verdict);
        if self.counterexample.is_none() && verdict == Verdict::Fail {
            self.counterexample = counterexample;
        }
        self
    }

    pub fn exit_code(&self) -> i32 {
        exit_code(self.verdict)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_human(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command);
        let pairs = |m: Vec<(String, String)>| {
            m.into_iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        let inputs = self.inputs.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        let _ = writeln!(s, "inputs: {}", pairs(inputs));
        let bounds = self.bounds.iter().map(|(k, v)| (k.clone(), v.to_string())).collect();
        let _ = writeln!(s, "bounds: {}", pairs(bounds));
        for l in &self.summary {
            let _ = writeln!(s, "  {l}");
        }
        if let Some(c) = &self.counterexample {
            let _ = writeln!(s, "counterexample: {c}");
        }
        if let Some(t) = &self.timings {
            for (k, v) in t {
                let _ = writeln!(s, "time {k}: {v:.1} ms");
            }
        }
        let _ = writeln!(s, "verdict: {}", self.verdict);
        s
    }
}

/// 0 PASS, 1 FAIL, 2 UNKNOWN. Input errors exit with 3 before a report
/// exists.
pub fn exit_code(v: Verdict) -> i32 {
    match v {
        Verdict::Pass => 0,
        Verdict::Fail => 1,
        Verdict::Unknown => 2,
    }
}

pub const INPUT_ERROR: i32 = 3;

fn is_identity(stage: &HammockStage, l: &Ladder) -> bool {
    let c = stage.cat();
    l.source == l.target
        && l
            .source
            .objects(c)
            .iter()
            .zip(&l.verticals)
            .all(|(o, v)| c.id(*o) == *v)
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Zig-zags as nodes, non-identity ladders as edges.
pub fn stage_dot(stage: &HammockStage) -> String {
    let c = stage.cat();
    let zigzags = stage.zigzags();
    let mut s = String::new();
    let _ = writeln!(s, "digraph {} {{", quote(&stage.label()));
    let _ = writeln!(s, "  rankdir=LR;");
    for (i, z) in zigzags.iter().enumerate() {
        let _ = writeln!(s, "  n{i} [label={}];", quote(&z.show(c)));
    }
    let index = |z| zigzags.binary_search(z).expect("ladder ends are stage objects");
    for l in stage.ladders().iter().filter(|l| !is_identity(stage, l)) {
        let _ = writeln!(
            s,
            "  n{} -> n{} [label={}];",
            index(&l.source),
            index(&l.target),
            quote(&l.names(c).join(","))
        );
    }
    s.push_str("}\n");
    s
}

/// Non-identity ladders, the edge count of [`stage_dot`].
pub fn nonidentity_ladders(stage: &HammockStage) -> usize {
    stage
        .ladders()
        .iter()
        .filter(|l| !is_identity(stage, l))
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use std::sync::Arc;

    #[test]
    fn dot_counts_match_the_stage() {
        for rel in [fixtures::weq(), fixtures::iso(), fixtures::para()] {
            let rel = Arc::new(rel);
            let c = rel.cat();
            for x in c.object_ids() {
                for y in c.object_ids() {
                    let stage = HammockStage::new(&rel, x, y, 3).unwrap();
                    let dot = stage_dot(&stage);
                    let second = |l: &str| l.split_whitespace().nth(1).map(str::to_string);
                    let body: Vec<&str> = dot.lines().filter(|l| l.starts_with("  n")).collect();
                    let edges = body.iter().filter(|l| second(l).as_deref() == Some("->")).count();
                    let nodes = body.len() - edges;
                    assert_eq!(nodes, stage.zigzags().len());
                    assert_eq!(edges, nonidentity_ladders(&stage));
                }
            }
        }
    }

    #[test]
    fn verdict_exit_codes() {
        let mut r = Report::new("x");
        assert_eq!(r.exit_code(), 0);
        r.fold(Verdict::Unknown, None);
        assert_eq!(r.exit_code(), 2);
        r.fold(Verdict::Fail, Some("here".into()));
        assert_eq!(r.exit_code(), 1);
        assert_eq!(r.counterexample.as_deref(), Some("here"));
        assert!(r.to_human().ends_with("verdict: FAIL\n"));
    }
}
