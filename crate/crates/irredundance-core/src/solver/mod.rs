//! Branch-and-reduce solvers for the co-parameterized irredundance
//! questions, plus shared search instrumentation.

use std::collections::BTreeMap;

use crate::graph::Graph;
use crate::labeling::{Label, Labeling};

pub mod dp;
pub mod mc;
pub mod simple;

/// Counters collected during one search.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Recursive calls that survive reduction and the validity/measure
    /// gates (at least 1 on any completed search).
    pub nodes: u64,
    pub max_depth: usize,
    /// Reduction-rule firings by rule id.
    pub rule_firings: BTreeMap<&'static str, u64>,
}

impl SearchStats {
    pub fn fire(&mut self, rule: &'static str) {
        *self.rule_firings.entry(rule).or_insert(0) += 1;
    }

    /// Fold another search's counters into this one (depths take the max).
    pub fn absorb(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.max_depth = self.max_depth.max(other.max_depth);
        for (rule, count) in &other.rule_firings {
            *self.rule_firings.entry(rule).or_insert(0) += count;
        }
    }
}

/// Frozen copy of a search state, captured where a measure prune fired.
/// Enough to replay the state and exhaustively confirm that no completion
/// fit the budget.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PruneSnapshot {
    pub n: usize,
    pub alive: Vec<u32>,
    pub edges: Vec<(u32, u32)>,
    pub labels: Vec<(u32, Label)>,
    pub k: i64,
}

impl PruneSnapshot {
    pub fn capture(g: &Graph, l: &Labeling, k: i64) -> Self {
        PruneSnapshot {
            n: g.n_total(),
            alive: g.alive_vertices().collect(),
            edges: g.edges(),
            labels: g.alive_vertices().map(|v| (v, l.get(v))).collect(),
            k,
        }
    }

    /// Rebuild the graph and labeling this snapshot was taken from.
    pub fn replay(&self) -> (Graph, Labeling) {
        let mut g = Graph::new(self.n);
        for &(u, v) in &self.edges {
            g.add_edge(u, v).expect("snapshot edges are simple");
        }
        let alive: std::collections::BTreeSet<u32> = self.alive.iter().copied().collect();
        let mut log = crate::graph::UndoLog::new();
        for v in 0..self.n as u32 {
            if !alive.contains(&v) {
                g.kill_vertex(v, &mut log);
            }
        }
        let mut l = Labeling::new(self.n);
        for &(v, lab) in &self.labels {
            l.set(v, lab, &mut log);
        }
        (g, l)
    }
}

/// Optional search instrumentation for soundness audits.
#[derive(Debug, Default)]
pub struct Probe {
    /// Capture a [`PruneSnapshot`] at every measure-based prune.
    pub record_prunes: bool,
    /// Check structural facts about reduced states (weighted solver only).
    pub check_structure: bool,
    pub prunes: Vec<PruneSnapshot>,
    /// Human-readable descriptions of violated structural assertions.
    pub violations: Vec<String>,
}

impl Probe {
    pub fn recording() -> Self {
        Probe { record_prunes: true, ..Default::default() }
    }

    pub fn checking() -> Self {
        Probe { check_structure: true, ..Default::default() }
    }
}
