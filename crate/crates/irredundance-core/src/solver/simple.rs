//! Plain branch-and-reduce solver: four reduction rules, a linear budget
//! measure k − |W| − ½|Ke| − ½|Ge|, committed-vertex branching, and a
//! four-way branch on a preferred unlabeled vertex.
//!
//! Decides "is IR(G) ≥ n−k", and in exact mode "is there a maximal
//! irredundant set of exactly a given size", from which ir(G) queries are
//! answered by an outer loop.

use crate::graph::{rollback, Graph, UndoLog};
use crate::labeling::{is_valid, measure_simple, not_sets, Label, Labeling};
use crate::oracle;
use crate::solver::{Probe, PruneSnapshot, SearchStats};

/// What the leaf test accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateMode {
    /// Any irredundant set of size ≥ n−k.
    Comaxir,
    /// A maximal irredundant set of size exactly n−k.
    ExactCominmaxir,
}

/// Run the reduction rules to a fixpoint on copies and return them.
/// Rules, in priority order, one firing at a time:
/// R1 strip the edges at a wilderness vertex; R2 isolated unlabeled → Ki;
/// R3 an external king with no garden neighbor and a single unlabeled
/// neighbor forces that neighbor to garden (symmetrically for gardens);
/// R4 unlabeled vertices that can become neither garden nor king → W.
pub fn reduce_simple(g: &Graph, l: &Labeling) -> (Graph, Labeling) {
    let mut g = g.clone();
    let mut l = l.clone();
    let mut log = UndoLog::new();
    let mut stats = SearchStats::default();
    reduce_in_place(&mut g, &mut l, &mut log, &mut stats);
    (g, l)
}

fn reduce_in_place(g: &mut Graph, l: &mut Labeling, log: &mut UndoLog, stats: &mut SearchStats) {
    'outer: loop {
        // Forced moves on an invalid state are pointless: the caller
        // rejects it immediately after.
        if !is_valid(g, l) {
            return;
        }
        // R1: wilderness vertices keep no edges.
        let wild = g.alive_vertices().find(|&v| l.get(v) == Label::W && g.degree(v) > 0);
        if let Some(v) = wild {
            let nbrs: Vec<u32> = g.neighbors(v).collect();
            for u in nbrs {
                g.remove_edge(v, u, log);
            }
            stats.fire("R1");
            continue 'outer;
        }
        // R2: isolated unlabeled vertices join the solution as isolated kings.
        for v in g.alive_vertices() {
            if l.get(v) == Label::Unlabeled && g.degree(v) == 0 {
                l.set(v, Label::Ki, log);
                stats.fire("R2");
                continue 'outer;
            }
        }
        // R3: a lone candidate for a needed garden (or king) is forced.
        for v in g.alive_vertices() {
            if l.get(v) != Label::Ke || g.neighbors(v).any(|u| l.get(u) == Label::Ge) {
                continue;
            }
            let mut unl = g.neighbors(v).filter(|&u| l.get(u) == Label::Unlabeled);
            if let (Some(w), None) = (unl.next(), unl.next()) {
                l.set(w, Label::Ge, log);
                stats.fire("R3");
                continue 'outer;
            }
        }
        for v in g.alive_vertices() {
            if l.get(v) != Label::Ge || g.neighbors(v).any(|u| l.get(u) == Label::Ke) {
                continue;
            }
            let mut unl = g.neighbors(v).filter(|&u| l.get(u) == Label::Unlabeled);
            if let (Some(w), None) = (unl.next(), unl.next()) {
                l.set(w, Label::Ke, log);
                stats.fire("R3");
                continue 'outer;
            }
        }
        // R4: blocked in both directions leaves only wilderness.
        let (notg, notk) = not_sets(g, l);
        let both: Vec<u32> = notg.iter().copied().filter(|v| notk.contains(v)).collect();
        if !both.is_empty() {
            for v in both {
                l.set(v, Label::W, log);
            }
            stats.fire("R4");
            continue 'outer;
        }
        return;
    }
}

/// Test the candidate solution I := alive ∖ (W ∪ Ge) of the *original*
/// graph (the search strips edges, which must not influence the check).
pub fn check_candidate(g: &Graph, l: &Labeling, k: i64, mode: CandidateMode) -> bool {
    let candidate: Vec<u32> = g
        .alive_vertices()
        .filter(|&v| !matches!(l.get(v), Label::W | Label::Ge))
        .collect();
    let n = g.n_alive() as i64;
    let size = candidate.len() as i64;
    match mode {
        CandidateMode::Comaxir => size >= n - k && oracle::is_irredundant(g, &candidate),
        CandidateMode::ExactCominmaxir => {
            size == n - k && oracle::is_maximal_irredundant(g, &candidate)
        }
    }
}

struct Search<'a> {
    g: Graph,
    pristine: &'a Graph,
    l: Labeling,
    k: i64,
    mode: CandidateMode,
    /// Exact mode: the required solution size.
    target: Option<i64>,
    stats: SearchStats,
    probe: Option<&'a mut Probe>,
    log: UndoLog,
}

impl<'a> Search<'a> {
    fn new(
        g: &'a Graph,
        k: i64,
        mode: CandidateMode,
        target: Option<i64>,
        probe: Option<&'a mut Probe>,
    ) -> Self {
        Search {
            g: g.clone(),
            pristine: g,
            l: Labeling::new(g.n_total()),
            k,
            mode,
            target,
            stats: SearchStats::default(),
            probe,
            log: UndoLog::new(),
        }
    }

    fn alive_unlabeled(&self) -> usize {
        self.g
            .alive_vertices()
            .filter(|&v| self.l.get(v) == Label::Unlabeled)
            .count()
    }

    /// Try `first` then `second` on vertex `v`, backtracking in between.
    fn branch_two_labels(&mut self, v: u32, first: Label, second: Label, depth: usize) -> bool {
        for lab in [first, second] {
            let mark = self.log.mark();
            self.l.set(v, lab, &mut self.log);
            let hit = self.rec(depth + 1);
            rollback(&mut self.log, &mut self.g, Some(&mut self.l), mark);
            if hit {
                return true;
            }
        }
        false
    }

    fn rec(&mut self, depth: usize) -> bool {
        self.stats.max_depth = self.stats.max_depth.max(depth);
        reduce_in_place(&mut self.g, &mut self.l, &mut self.log, &mut self.stats);
        if !is_valid(&self.g, &self.l) {
            return false;
        }
        if measure_simple(self.k, &self.l).is_negative() {
            if let Some(p) = self.probe.as_deref_mut() {
                if p.record_prunes {
                    p.prunes.push(PruneSnapshot::capture(&self.g, &self.l, self.k));
                }
            }
            return false;
        }
        self.stats.nodes += 1;

        if let Some(target) = self.target {
            // Kings and spent budget only ever grow, so overshooting the
            // exact size on either side is final.
            let kings = (self.l.count(Label::Ki) + self.l.count(Label::Ke)) as i64;
            let spent = (self.l.count(Label::W) + self.l.count(Label::Ge)) as i64;
            if kings > target || spent > self.k {
                return false;
            }
        }

        let ke_w = (self.l.count(Label::Ke) + self.l.count(Label::W)) as i64;
        let ge_w = (self.l.count(Label::Ge) + self.l.count(Label::W)) as i64;
        let all_labeled = self.alive_unlabeled() == 0;
        if ke_w == self.k || ge_w == self.k || all_labeled {
            let hit = check_candidate(self.pristine, &self.l, self.k, self.mode);
            match self.mode {
                CandidateMode::Comaxir => return hit,
                CandidateMode::ExactCominmaxir => {
                    // A count trigger is only a checkpoint here: the sought
                    // exact-size solution may extend this labeling further,
                    // so keep branching unless everything is settled.
                    if hit {
                        return true;
                    }
                    if all_labeled {
                        return false;
                    }
                }
            }
        }

        let (notg, notk) = not_sets(&self.g, &mut self.l);
        if let Some(&v) = notg.first() {
            return self.branch_two_labels(v, Label::Ke, Label::W, depth);
        }
        if let Some(&v) = notk.first() {
            return self.branch_two_labels(v, Label::Ge, Label::W, depth);
        }

        // Preferred branch vertex: a degree-1 unlabeled vertex, else maximum
        // degree among those with a settled king/garden neighbor, else
        // maximum degree overall; lowest id within a class.
        let unlabeled: Vec<u32> = self
            .g
            .alive_vertices()
            .filter(|&v| self.l.get(v) == Label::Unlabeled)
            .collect();
        debug_assert!(!unlabeled.is_empty(), "line 5 handles fully labeled states");
        let v = unlabeled
            .iter()
            .copied()
            .find(|&v| self.g.degree(v) == 1)
            .or_else(|| {
                select_max_degree(&self.g, &unlabeled, |v| {
                    self.g
                        .neighbors(v)
                        .any(|u| matches!(self.l.get(u), Label::Ge | Label::Ke))
                })
            })
            .or_else(|| select_max_degree(&self.g, &unlabeled, |_| true))
            .expect("some unlabeled vertex exists");

        // Branch 1: v is wilderness.
        let mark = self.log.mark();
        self.l.set(v, Label::W, &mut self.log);
        let hit = self.rec(depth + 1);
        rollback(&mut self.log, &mut self.g, Some(&mut self.l), mark);
        if hit {
            return true;
        }

        // Branch 2: v is an isolated king, its whole neighborhood
        // wilderness. Committed neighbors cannot turn wilderness, so the
        // branch only exists when none are present.
        if self
            .g
            .neighbors(v)
            .all(|u| matches!(self.l.get(u), Label::Unlabeled | Label::W))
        {
            let mark = self.log.mark();
            self.l.set(v, Label::Ki, &mut self.log);
            let nbrs: Vec<u32> = self.g.neighbors(v).collect();
            for u in nbrs {
                if self.l.get(u) == Label::Unlabeled {
                    self.l.set(u, Label::W, &mut self.log);
                }
            }
            let hit = self.rec(depth + 1);
            rollback(&mut self.log, &mut self.g, Some(&mut self.l), mark);
            if hit {
                return true;
            }
        }

        // Branch 3: v is a king served by some neighbor u. An existing
        // garden neighbor absorbs v without a new assignment (once).
        let nbrs: Vec<u32> = self.g.neighbors(v).collect();
        let mut attached_king = false;
        for &u in &nbrs {
            let assignments: &[(u32, Label)] = match self.l.get(u) {
                Label::Ge if !attached_king => {
                    attached_king = true;
                    &[(v, Label::Ke)]
                }
                Label::Unlabeled => &[(v, Label::Ke), (u, Label::Ge)],
                _ => continue,
            };
            if self.branch_assign(assignments, depth) {
                return true;
            }
        }

        // Branch 4: v is the garden of some neighbor u.
        let mut attached_garden = false;
        for &u in &nbrs {
            let assignments: &[(u32, Label)] = match self.l.get(u) {
                Label::Ke if !attached_garden => {
                    attached_garden = true;
                    &[(v, Label::Ge)]
                }
                Label::Unlabeled => &[(u, Label::Ke), (v, Label::Ge)],
                _ => continue,
            };
            if self.branch_assign(assignments, depth) {
                return true;
            }
        }
        false
    }

    fn branch_assign(&mut self, assignments: &[(u32, Label)], depth: usize) -> bool {
        let mark = self.log.mark();
        for &(x, lab) in assignments {
            self.l.set(x, lab, &mut self.log);
        }
        let hit = self.rec(depth + 1);
        rollback(&mut self.log, &mut self.g, Some(&mut self.l), mark);
        hit
    }
}

fn select_max_degree<F: Fn(u32) -> bool>(g: &Graph, vs: &[u32], filter: F) -> Option<u32> {
    let mut best: Option<(usize, u32)> = None;
    for &v in vs {
        if !filter(v) {
            continue;
        }
        let d = g.degree(v);
        if best.map_or(true, |(bd, _)| d > bd) {
            best = Some((d, v));
        }
    }
    best.map(|(_, v)| v)
}

/// Decide whether IR(g) ≥ n−k.
pub fn decide_comaxir_simple(g: &Graph, k: i64) -> (bool, SearchStats) {
    decide_comaxir_simple_with(g, k, None)
}

/// [`decide_comaxir_simple`] with instrumentation.
pub fn decide_comaxir_simple_with(
    g: &Graph,
    k: i64,
    probe: Option<&mut Probe>,
) -> (bool, SearchStats) {
    assert!(k >= 0, "parameter must be nonnegative");
    let mut search = Search::new(g, k, CandidateMode::Comaxir, None, probe);
    let answer = search.rec(0);
    debug_assert!(search.stats.nodes >= 1);
    (answer, search.stats)
}

/// Is there a maximal irredundant set of size exactly `s`?
pub fn search_exact_size(g: &Graph, s: i64) -> (bool, SearchStats) {
    search_exact_size_with(g, s, None)
}

/// [`search_exact_size`] with instrumentation.
pub fn search_exact_size_with(
    g: &Graph,
    s: i64,
    probe: Option<&mut Probe>,
) -> (bool, SearchStats) {
    let n = g.n_alive() as i64;
    assert!((0..=n).contains(&s), "target size {s} outside 0..={n}");
    let k = n - s;
    let mut search = Search::new(g, k, CandidateMode::ExactCominmaxir, Some(s), probe);
    let answer = search.rec(0);
    debug_assert!(search.stats.nodes >= 1);
    (answer, search.stats)
}

/// Decide whether ir(g) = n−k by scanning candidate sizes upward; the first
/// size carrying a maximal irredundant set is ir itself.
pub fn decide_exact_cominmaxir(g: &Graph, k: i64) -> (bool, SearchStats) {
    decide_exact_cominmaxir_with(g, k, None)
}

/// [`decide_exact_cominmaxir`] with instrumentation.
pub fn decide_exact_cominmaxir_with(
    g: &Graph,
    k: i64,
    mut probe: Option<&mut Probe>,
) -> (bool, SearchStats) {
    assert!(k >= 0, "parameter must be nonnegative");
    let n = g.n_alive() as i64;
    let target = n - k;
    let mut stats = SearchStats::default();
    let mut s = 0;
    loop {
        let (hit, sub) = search_exact_size_with(g, s, probe.as_deref_mut());
        stats.absorb(&sub);
        if hit {
            return (s == target, stats);
        }
        if s >= target || s >= n {
            return (false, stats);
        }
        s += 1;
    }
}
