use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{LinkGaussCode, SpatialGaussCode};

/// One problem found in a Gauss code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Issue {
    /// Stable machine-readable kind, e.g. `unpaired-crossing`.
    pub code: String,
    pub message: String,
    /// Where the problem is, e.g. `component 2` or `edge b (index 1)`.
    pub location: String,
}

/// Outcome of validating a code. `ok` holds exactly when `issues` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    fn from_issues(issues: Vec<Issue>) -> Self {
        ValidationReport {
            ok: issues.is_empty(),
            issues,
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return f.write_str("ok");
        }
        for (i, issue) in self.issues.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{} ({})", issue.message, issue.location)?;
        }
        Ok(())
    }
}

fn issue(code: &str, message: String, location: String) -> Issue {
    Issue {
        code: code.to_string(),
        message,
        location,
    }
}

#[derive(Default)]
struct Tally {
    over: BTreeMap<u32, Vec<String>>,
    under: BTreeMap<u32, Vec<String>>,
}

impl Tally {
    fn add(&mut self, p: i32, loc: String) {
        let k = p.unsigned_abs();
        if p > 0 {
            self.over.entry(k).or_default().push(loc);
        } else {
            self.under.entry(k).or_default().push(loc);
        }
    }

    fn labels(&self) -> BTreeSet<u32> {
        self.over.keys().chain(self.under.keys()).copied().collect()
    }

    fn check(&self, issues: &mut Vec<Issue>) {
        let labels = self.labels();
        let unpaired: Vec<u32> = labels
            .iter()
            .copied()
            .filter(|k| !self.over.contains_key(k) || !self.under.contains_key(k))
            .collect();
        if !unpaired.is_empty() {
            let list = join(&unpaired);
            let locs: Vec<String> = unpaired
                .iter()
                .flat_map(|k| {
                    self.over
                        .get(k)
                        .or_else(|| self.under.get(k))
                        .into_iter()
                        .flatten()
                        .cloned()
                })
                .collect();
            issues.push(issue(
                "unpaired-crossing",
                format!("unpaired crossing {list}"),
                dedup_join(locs),
            ));
        }
        for (k, locs) in &self.over {
            if locs.len() > 1 {
                issues.push(issue(
                    "duplicate-over",
                    format!("crossing {k} over-passage duplicated"),
                    dedup_join(locs.clone()),
                ));
            }
        }
        for (k, locs) in &self.under {
            if locs.len() > 1 {
                issues.push(issue(
                    "duplicate-under",
                    format!("crossing {k} under-passage duplicated"),
                    dedup_join(locs.clone()),
                ));
            }
        }
    }
}

fn join(labels: &[u32]) -> String {
    labels
        .iter()
        .map(|k| k.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn dedup_join(mut locs: Vec<String>) -> String {
    locs.dedup();
    locs.join(", ")
}

/// Checks the pairing invariant of a link code: every label `k` occurs once
/// as `+k` and once as `-k`, and no entry is zero.
pub fn validate_link(code: &LinkGaussCode) -> ValidationReport {
    let mut issues = Vec::new();
    if code.components.is_empty() {
        issues.push(issue(
            "empty-code",
            "code has no components".into(),
            "code".into(),
        ));
    }
    let mut tally = Tally::default();
    for (ci, comp) in code.components.iter().enumerate() {
        let loc = format!("component {}", ci + 1);
        for &p in comp {
            if p == 0 {
                issues.push(issue("zero-entry", "zero passage entry".into(), loc.clone()));
            } else {
                tally.add(p, loc.clone());
            }
        }
    }
    tally.check(&mut issues);
    ValidationReport::from_issues(issues)
}

/// Checks a spatial-graph code: crossing pairing, crossing labels distinct
/// from vertex numbers, endpoint symbols used once per vertex (twice only for
/// the two ends of one loop edge), and no degree-one vertices.
pub fn validate_spatial(code: &SpatialGaussCode) -> ValidationReport {
    let mut issues = Vec::new();
    if code.edges.is_empty() {
        issues.push(issue("empty-code", "code has no edges".into(), "code".into()));
    }
    let vertices: BTreeSet<u32> = code.vertices().into_iter().collect();
    let mut tally = Tally::default();
    let mut collisions = BTreeSet::new();
    let mut symbols: BTreeMap<(char, u32), Vec<usize>> = BTreeMap::new();
    for (ei, edge) in code.edges.iter().enumerate() {
        let loc = format!("edge {} (index {ei})", edge.start.slot);
        for &p in &edge.passages {
            if p == 0 {
                issues.push(issue("zero-entry", "zero passage entry".into(), loc.clone()));
                continue;
            }
            if vertices.contains(&p.unsigned_abs()) {
                collisions.insert(p.unsigned_abs());
            }
            tally.add(p, loc.clone());
        }
        symbols
            .entry((edge.start.slot, edge.start.vertex))
            .or_default()
            .push(ei);
        symbols
            .entry((edge.end.slot, edge.end.vertex))
            .or_default()
            .push(ei);
    }
    for k in &collisions {
        issues.push(issue(
            "label-vertex-collision",
            format!("crossing label {k} is also a vertex number"),
            format!("vertex {k}"),
        ));
    }
    tally.check(&mut issues);
    for ((slot, vertex), uses) in &symbols {
        let loop_pair = uses.len() == 2 && uses[0] == uses[1];
        if uses.len() > 1 && !loop_pair {
            issues.push(issue(
                "duplicate-endpoint",
                format!("endpoint symbol {slot}{vertex} used by more than one edge end"),
                format!("vertex {vertex}"),
            ));
        }
    }
    for &v in &vertices {
        if code.degree(v) == 1 {
            issues.push(issue(
                "degree-one-vertex",
                format!("vertex {v} has degree one"),
                format!("vertex {v}"),
            ));
        }
    }
    ValidationReport::from_issues(issues)
}
