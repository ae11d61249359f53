//! Vertex labelings for irredundance search: label states, validity,
//! derived not-garden/not-king sets, activity, and the two search measures.
//!
//! A solution-in-progress labels each vertex as an internal king (`Ki`, its
//! own certificate), an external king (`Ke`, certified by an adjacent
//! garden), a garden (`Ge`), excluded-from-gardens (`NotG`),
//! excluded-from-kings (`NotK`), wilderness (`W`), or `Unlabeled`. A complete
//! valid labeling is exactly an irredundant set (`Ki ∪ Ke`) together with a
//! private-neighbor certificate for every external king.

use crate::graph::{Change, Graph, UndoLog};

/// Per-vertex label state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Unlabeled,
    /// King isolated from the rest of the solution; its own certificate.
    Ki,
    /// King that needs an adjacent garden as certificate.
    Ke,
    /// Garden: the private neighbor certifying an adjacent external king.
    Ge,
    /// Committed to never become a garden (must end wilderness or king).
    NotG,
    /// Committed to never become a king (must end wilderness or garden).
    NotK,
    /// Wilderness: outside the solution and not a certificate.
    W,
}

impl Label {
    pub const ALL: [Label; 7] =
        [Label::Unlabeled, Label::Ki, Label::Ke, Label::Ge, Label::NotG, Label::NotK, Label::W];

    pub fn as_str(self) -> &'static str {
        match self {
            Label::Unlabeled => "unlabeled",
            Label::Ki => "ki",
            Label::Ke => "ke",
            Label::Ge => "ge",
            Label::NotG => "notg",
            Label::NotK => "notk",
            Label::W => "w",
        }
    }

    pub(crate) fn index(self) -> usize {
        match self {
            Label::Unlabeled => 0,
            Label::Ki => 1,
            Label::Ke => 2,
            Label::Ge => 3,
            Label::NotG => 4,
            Label::NotK => 5,
            Label::W => 6,
        }
    }
}

/// Per-vertex labels with O(1) per-label counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    labels: Vec<Label>,
    counts: [usize; 7],
}

impl Labeling {
    /// All-unlabeled state on `n` vertices.
    pub fn new(n: usize) -> Self {
        let mut counts = [0; 7];
        counts[Label::Unlabeled.index()] = n;
        Labeling { labels: vec![Label::Unlabeled; n], counts }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn get(&self, v: u32) -> Label {
        self.labels[v as usize]
    }

    /// Relabel `v`, journaling the previous label.
    pub fn set(&mut self, v: u32, l: Label, log: &mut UndoLog) {
        let old = self.labels[v as usize];
        if old == l {
            return;
        }
        log.push(Change::LabelSet(v, old));
        self.counts[old.index()] -= 1;
        self.counts[l.index()] += 1;
        self.labels[v as usize] = l;
    }

    pub(crate) fn restore_label(&mut self, v: u32, old: Label) {
        let cur = self.labels[v as usize];
        self.counts[cur.index()] -= 1;
        self.counts[old.index()] += 1;
        self.labels[v as usize] = old;
    }

    pub fn count(&self, l: Label) -> usize {
        self.counts[l.index()]
    }

    /// Vertices currently carrying `l`, ascending. Includes dead vertices;
    /// callers that care filter by graph liveness.
    pub fn vertices_with<'a>(&'a self, l: Label) -> impl Iterator<Item = u32> + 'a {
        self.labels
            .iter()
            .enumerate()
            .filter(move |(_, &x)| x == l)
            .map(|(i, _)| i as u32)
    }

    /// No alive vertex is Unlabeled/NotG/NotK. Combined with validity this
    /// means every external king/garden is paired, so nothing is active.
    pub fn is_complete(&self, g: &Graph) -> bool {
        g.alive_vertices().all(|v| {
            !matches!(self.get(v), Label::Unlabeled | Label::NotG | Label::NotK)
        })
    }

    /// Debug serialization: label map plus the derived active set and
    /// king/garden pairing.
    pub fn to_debug_json(&self, g: &Graph) -> serde_json::Value {
        let mut labels = serde_json::Map::new();
        for v in g.alive_vertices() {
            labels.insert(v.to_string(), self.get(v).as_str().into());
        }
        let active: Vec<u32> = g.alive_vertices().filter(|&v| is_active(g, self, v)).collect();
        let mut partners = Vec::new();
        for v in g.alive_vertices() {
            if self.get(v) == Label::Ke {
                if let Some(u) = partner(g, self, v) {
                    partners.push(serde_json::json!([v, u]));
                }
            }
        }
        serde_json::json!({ "labels": labels, "active": active, "partner": partners })
    }
}

/// Is the labeling consistent with eventually certifying every king?
///
/// Checks, for every alive vertex: internal kings see only wilderness;
/// external kings see a garden or an uncommitted vertex, and at most one
/// garden; gardens symmetrically see a king or an uncommitted vertex, and at
/// most one king. Uncommitted means Unlabeled, NotG or NotK.
pub fn is_valid(g: &Graph, l: &Labeling) -> bool {
    for v in g.alive_vertices() {
        match l.get(v) {
            Label::Ki => {
                if g.neighbors(v).any(|u| l.get(u) != Label::W) {
                    return false;
                }
            }
            Label::Ke => {
                let mut gardens = 0usize;
                let mut open = false;
                for u in g.neighbors(v) {
                    match l.get(u) {
                        Label::Ge => gardens += 1,
                        Label::Unlabeled | Label::NotG | Label::NotK => open = true,
                        _ => {}
                    }
                }
                if gardens > 1 || (gardens == 0 && !open) {
                    return false;
                }
            }
            Label::Ge => {
                let mut kings = 0usize;
                let mut open = false;
                for u in g.neighbors(v) {
                    match l.get(u) {
                        Label::Ke => kings += 1,
                        Label::Unlabeled | Label::NotG | Label::NotK => open = true,
                        _ => {}
                    }
                }
                if kings > 1 || (kings == 0 && !open) {
                    return false;
                }
            }
            _ => {}
        }
    }
    true
}

/// Would relabeling `v` (currently Unlabeled) to `target` keep the labeling
/// valid?
pub fn promotion_valid(g: &Graph, l: &mut Labeling, v: u32, target: Label) -> bool {
    debug_assert_eq!(l.get(v), Label::Unlabeled);
    let mut log = UndoLog::new();
    l.set(v, target, &mut log);
    let ok = is_valid(g, l);
    crate::graph::rollback_labels(&mut log, l, 0);
    ok
}

/// The vertices that cannot become gardens resp. kings: unlabeled `v` whose
/// promotion to Ge (resp. Ke) would invalidate the labeling. Recomputed from
/// scratch; requires `l` valid.
pub fn not_sets(g: &Graph, l: &mut Labeling) -> (Vec<u32>, Vec<u32>) {
    debug_assert!(is_valid(g, l));
    let mut notg = Vec::new();
    let mut notk = Vec::new();
    let unlabeled: Vec<u32> =
        g.alive_vertices().filter(|&v| l.get(v) == Label::Unlabeled).collect();
    for v in unlabeled {
        if !promotion_valid(g, l, v, Label::Ge) {
            notg.push(v);
        }
        if !promotion_valid(g, l, v, Label::Ke) {
            notk.push(v);
        }
    }
    (notg, notk)
}

/// Denominator shared by [`Measure`] and [`Weights`].
pub const MEASURE_SCALE: i64 = 10_000;

/// Exact rational measure value, scaled by [`MEASURE_SCALE`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Measure(pub i64);

impl Measure {
    pub fn is_negative(self) -> bool {
        self.0 < 0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / MEASURE_SCALE as f64
    }
}

/// Errors from constructing weight pairs.
#[derive(Debug, thiserror::Error)]
pub enum WeightsError {
    #[error("weights out of range: need 0 ≤ wn ≤ 1/2 ≤ wl ≤ 1 and wn + wl ≤ 1, got ({0}, {1})")]
    OutOfRange(f64, f64),
    #[error("weight {0} is not a multiple of 1/{MEASURE_SCALE}")]
    NotRepresentable(f64),
}

/// Measure weights for labeled-active and Not-committed vertices, as exact
/// rationals over [`MEASURE_SCALE`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Weights {
    wl: i64,
    wn: i64,
}

impl Default for Weights {
    /// The weight pair under which the fast solver's branching analysis
    /// attains its bound.
    fn default() -> Self {
        Weights { wl: 7455, wn: 2455 }
    }
}

impl Weights {
    /// Build from numerators over [`MEASURE_SCALE`].
    pub fn from_numerators(wl: i64, wn: i64) -> Result<Self, WeightsError> {
        let half = MEASURE_SCALE / 2;
        if 0 <= wn && wn <= half && half <= wl && wl <= MEASURE_SCALE && wn + wl <= MEASURE_SCALE {
            Ok(Weights { wl, wn })
        } else {
            Err(WeightsError::OutOfRange(
                wl as f64 / MEASURE_SCALE as f64,
                wn as f64 / MEASURE_SCALE as f64,
            ))
        }
    }

    /// Build from decimal values; they must be exact multiples of 10⁻⁴.
    pub fn from_f64(wl: f64, wn: f64) -> Result<Self, WeightsError> {
        let conv = |x: f64| -> Result<i64, WeightsError> {
            let scaled = x * MEASURE_SCALE as f64;
            let r = scaled.round();
            if (scaled - r).abs() > 1e-6 {
                return Err(WeightsError::NotRepresentable(x));
            }
            Ok(r as i64)
        };
        Weights::from_numerators(conv(wl)?, conv(wn)?)
    }

    pub fn wl_num(&self) -> i64 {
        self.wl
    }

    pub fn wn_num(&self) -> i64 {
        self.wn
    }

    pub fn wl_f64(&self) -> f64 {
        self.wl as f64 / MEASURE_SCALE as f64
    }

    pub fn wn_f64(&self) -> f64 {
        self.wn as f64 / MEASURE_SCALE as f64
    }
}

/// Budget measure for the plain branch-and-reduce search:
/// k − |W| − ½|Ke| − ½|Ge|.
pub fn measure_simple(k: i64, l: &Labeling) -> Measure {
    let half = MEASURE_SCALE / 2;
    Measure(
        k * MEASURE_SCALE
            - l.count(Label::W) as i64 * MEASURE_SCALE
            - (l.count(Label::Ke) + l.count(Label::Ge)) as i64 * half,
    )
}

/// Is `v` still to be reconsidered by the fast solver? Unlabeled and
/// Not-committed vertices always are; an external king/garden is settled
/// exactly when an adjacent garden/king certifies it.
pub fn is_active(g: &Graph, l: &Labeling, v: u32) -> bool {
    if !g.is_alive(v) {
        return false;
    }
    match l.get(v) {
        Label::Unlabeled | Label::NotG | Label::NotK => true,
        Label::Ke => !g.neighbors(v).any(|u| l.get(u) == Label::Ge),
        Label::Ge => !g.neighbors(v).any(|u| l.get(u) == Label::Ke),
        Label::Ki | Label::W => false,
    }
}

/// The settled partner of an inactive external king/garden: its unique
/// adjacent garden/king. None for every other state.
pub fn partner(g: &Graph, l: &Labeling, v: u32) -> Option<u32> {
    if !g.is_alive(v) {
        return None;
    }
    let want = match l.get(v) {
        Label::Ke => Label::Ge,
        Label::Ge => Label::Ke,
        _ => return None,
    };
    let mut it = g.neighbors(v).filter(|&u| l.get(u) == want);
    let first = it.next();
    debug_assert!(
        first.is_none() || it.next().is_none() || !is_valid(g, l),
        "valid labelings give at most one partner"
    );
    first
}

/// Alive vertices still to be reconsidered, ascending.
pub fn active_set(g: &Graph, l: &Labeling) -> Vec<u32> {
    g.alive_vertices().filter(|&v| is_active(g, l, v)).collect()
}

/// Budget measure for the weighted solver:
/// k − |W| − |settled gardens| − wl·(active kings+gardens) − wn·|Not-committed|.
pub fn measure_mc(g: &Graph, l: &Labeling, w: &Weights, k: i64) -> Measure {
    let mut inactive_ge = 0i64;
    let mut active_keg = 0i64;
    for v in g.alive_vertices() {
        match l.get(v) {
            Label::Ge => {
                if is_active(g, l, v) {
                    active_keg += 1;
                } else {
                    inactive_ge += 1;
                }
            }
            Label::Ke => {
                if is_active(g, l, v) {
                    active_keg += 1;
                }
            }
            _ => {}
        }
    }
    let nots = (l.count(Label::NotG) + l.count(Label::NotK)) as i64;
    Measure(
        k * MEASURE_SCALE
            - l.count(Label::W) as i64 * MEASURE_SCALE
            - inactive_ge * MEASURE_SCALE
            - active_keg * w.wl_num()
            - nots * w.wn_num(),
    )
}

/// Does `ext` extend `base`? Settled labels must persist; a NotG vertex may
/// stay NotG or resolve to wilderness/king; NotK symmetrically; the active
/// set may only shrink.
pub fn extends(g: &Graph, base: &Labeling, ext: &Labeling) -> bool {
    for v in g.alive_vertices() {
        let ok = match base.get(v) {
            Label::Unlabeled => true,
            Label::Ki => ext.get(v) == Label::Ki,
            Label::Ke => ext.get(v) == Label::Ke,
            Label::Ge => ext.get(v) == Label::Ge,
            Label::W => ext.get(v) == Label::W,
            Label::NotG => matches!(ext.get(v), Label::NotG | Label::W | Label::Ke),
            Label::NotK => matches!(ext.get(v), Label::NotK | Label::W | Label::Ge),
        };
        if !ok {
            return false;
        }
    }
    g.alive_vertices()
        .filter(|&v| is_active(g, ext, v))
        .all(|v| is_active(g, base, v))
}

/// Errors from [`labeling_of_solution`].
#[derive(Debug, thiserror::Error)]
pub enum SolutionError {
    #[error("vertex {0} is not alive in the graph")]
    DeadVertex(u32),
    #[error("duplicate vertex {0} in solution")]
    Duplicate(u32),
    #[error("set is not irredundant: {0} has no private neighbor and is not isolated in the set")]
    NotIrredundant(u32),
}

/// The complete labeling certifying an irredundant set: members isolated
/// within the set become internal kings; every other member becomes an
/// external king paired with its lowest-id private neighbor; everything else
/// is wilderness.
pub fn labeling_of_solution(g: &Graph, sol: &[u32]) -> Result<Labeling, SolutionError> {
    let mut in_sol = vec![false; g.n_total()];
    for &v in sol {
        if !g.is_alive(v) {
            return Err(SolutionError::DeadVertex(v));
        }
        if std::mem::replace(&mut in_sol[v as usize], true) {
            return Err(SolutionError::Duplicate(v));
        }
    }
    let mut l = Labeling::new(g.n_total());
    let mut log = UndoLog::new();
    for v in g.alive_vertices() {
        if !in_sol[v as usize] {
            l.set(v, Label::W, &mut log);
        }
    }
    let mut sorted: Vec<u32> = sol.to_vec();
    sorted.sort_unstable();
    for &v in &sorted {
        if g.neighbors(v).all(|u| !in_sol[u as usize]) {
            l.set(v, Label::Ki, &mut log);
        } else {
            let private = g
                .neighbors(v)
                .find(|&u| {
                    !in_sol[u as usize]
                        && g.neighbors(u).filter(|&x| in_sol[x as usize]).eq([v])
                })
                .ok_or(SolutionError::NotIrredundant(v))?;
            l.set(v, Label::Ke, &mut log);
            l.set(private, Label::Ge, &mut log);
        }
    }
    debug_assert!(is_valid(g, &l));
    debug_assert!(l.is_complete(g));
    debug_assert_eq!(l.count(Label::Ke), l.count(Label::Ge));
    Ok(l)
}

/// Completion targets an alive vertex may still take.
fn completion_targets(l: Label) -> &'static [Label] {
    match l {
        Label::Unlabeled => &[Label::Ki, Label::Ke, Label::Ge, Label::W],
        Label::NotG => &[Label::Ke, Label::W],
        Label::NotK => &[Label::Ge, Label::W],
        _ => &[],
    }
}

/// Is there a complete valid labeling extending `l` whose total cost
/// |W| + |Ge| stays ≤ `budget`? Exhaustive with validity and budget pruning;
/// intended for small graphs (soundness audits of measure-based pruning).
pub fn exists_completion_within(g: &Graph, l: &Labeling, budget: i64) -> bool {
    let todo: Vec<u32> = g
        .alive_vertices()
        .filter(|&v| !completion_targets(l.get(v)).is_empty())
        .collect();
    let base_cost = g
        .alive_vertices()
        .filter(|&v| matches!(l.get(v), Label::W | Label::Ge))
        .count() as i64;
    if base_cost > budget {
        return false;
    }
    let mut work = l.clone();
    let mut log = UndoLog::new();
    complete_rec(g, &mut work, &todo, 0, base_cost, budget, &mut log)
}

fn complete_rec(
    g: &Graph,
    l: &mut Labeling,
    todo: &[u32],
    idx: usize,
    cost: i64,
    budget: i64,
    log: &mut UndoLog,
) -> bool {
    if idx == todo.len() {
        return is_valid(g, l) && complete_pairing_ok(g, l);
    }
    let v = todo[idx];
    for &target in completion_targets(l.get(v)) {
        let add = i64::from(matches!(target, Label::W | Label::Ge));
        if cost + add > budget {
            continue;
        }
        if !assignment_consistent(g, l, v, target, todo, idx) {
            continue;
        }
        let mark = log.mark();
        l.set(v, target, log);
        let found = complete_rec(g, l, todo, idx + 1, cost + add, budget, log);
        crate::graph::rollback_labels(log, l, mark);
        if found {
            return true;
        }
    }
    false
}

/// Cheap forward checks when assigning `target` to `v`; vertices in
/// `todo[idx+1..]` are still open. Sound (never rejects a completable
/// branch), not complete (the leaf still re-validates).
fn assignment_consistent(
    g: &Graph,
    l: &Labeling,
    v: u32,
    target: Label,
    todo: &[u32],
    idx: usize,
) -> bool {
    let open = |u: u32| todo[idx + 1..].contains(&u);
    match target {
        Label::Ki => g.neighbors(v).all(|u| l.get(u) == Label::W || open(u)),
        Label::W | Label::Ke | Label::Ge => {
            for u in g.neighbors(v) {
                match l.get(u) {
                    Label::Ki if target != Label::W => return false,
                    Label::Ke if target == Label::Ge => {
                        let settled_gardens =
                            g.neighbors(u).filter(|&x| l.get(x) == Label::Ge).count();
                        if settled_gardens >= 1 {
                            return false;
                        }
                    }
                    Label::Ge if target == Label::Ke => {
                        let settled_kings =
                            g.neighbors(u).filter(|&x| l.get(x) == Label::Ke).count();
                        if settled_kings >= 1 {
                            return false;
                        }
                    }
                    _ => {}
                }
            }
            true
        }
        _ => unreachable!("completion targets are Ki/Ke/Ge/W"),
    }
}

/// On a complete labeling, validity already forces each external king to see
/// exactly one garden and vice versa; re-check explicitly for safety.
fn complete_pairing_ok(g: &Graph, l: &Labeling) -> bool {
    g.alive_vertices().all(|v| match l.get(v) {
        Label::Ke => g.neighbors(v).filter(|&u| l.get(u) == Label::Ge).count() == 1,
        Label::Ge => g.neighbors(v).filter(|&u| l.get(u) == Label::Ke).count() == 1,
        _ => true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn p3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn set_all(l: &mut Labeling, assignments: &[(u32, Label)]) {
        let mut log = UndoLog::new();
        for &(v, lab) in assignments {
            l.set(v, lab, &mut log);
        }
    }

    #[test]
    fn validity_examples() {
        let g = p3();
        let l = Labeling::new(3);
        assert!(is_valid(&g, &l), "all-unlabeled is vacuously fine");

        let mut l = Labeling::new(3);
        set_all(&mut l, &[(1, Label::Ki)]);
        assert!(!is_valid(&g, &l), "internal king with unlabeled neighbors");

        // Star center as external king with two leaf gardens.
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let mut l = Labeling::new(4);
        set_all(&mut l, &[(0, Label::Ke), (1, Label::Ge), (2, Label::Ge)]);
        assert!(!is_valid(&star, &l), "two gardens for one king");
    }

    #[test]
    fn not_sets_examples() {
        // P3 with a garden at one end and its king in the middle.
        let g = p3();
        let mut l = Labeling::new(3);
        set_all(&mut l, &[(0, Label::Ge), (1, Label::Ke)]);
        let (notg, notk) = not_sets(&g, &mut l);
        assert_eq!(notg, vec![2], "a second garden would over-serve the king");
        assert_eq!(notk, vec![2], "no potential garden remains adjacent");

        let mut l = Labeling::new(3);
        let (notg, notk) = not_sets(&g, &mut l);
        assert!(notg.is_empty() && notk.is_empty());

        // Triangle with two external kings: the third vertex cannot be a
        // garden (it would certify two kings at once).
        let k3 = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let mut l = Labeling::new(3);
        set_all(&mut l, &[(0, Label::Ke), (1, Label::Ke)]);
        let (notg, _) = not_sets(&k3, &mut l);
        assert_eq!(notg, vec![2]);
    }

    #[test]
    fn measure_simple_examples() {
        let l = Labeling::new(8);
        assert_eq!(measure_simple(5, &l), Measure(5 * MEASURE_SCALE));

        let mut l = Labeling::new(8);
        set_all(
            &mut l,
            &[(0, Label::W), (1, Label::Ke), (2, Label::Ke), (3, Label::Ge)],
        );
        assert_eq!(measure_simple(5, &l), Measure(25_000));

        let mut l = Labeling::new(2);
        set_all(&mut l, &[(0, Label::W)]);
        assert!(measure_simple(0, &l).is_negative());
    }

    #[test]
    fn measure_mc_examples() {
        let w = Weights::default();
        // Lone garden (active: no adjacent king) plus a NotG vertex.
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let mut l = Labeling::new(3);
        set_all(&mut l, &[(0, Label::Ge), (2, Label::NotG)]);
        assert_eq!(measure_mc(&g, &l, &w, 3), Measure(3 * MEASURE_SCALE - 7455 - 2455));

        // A settled pair costs exactly the garden.
        let g2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let mut l = Labeling::new(2);
        set_all(&mut l, &[(0, Label::Ke), (1, Label::Ge)]);
        assert_eq!(measure_mc(&g2, &l, &w, 2), Measure(MEASURE_SCALE));

        assert_eq!(measure_mc(&g2, &Labeling::new(2), &w, 4), Measure(4 * MEASURE_SCALE));
    }

    #[test]
    fn measure_mc_degenerates_to_simple() {
        // With weights (1/2, 0), no settled gardens and no Not-vertices the
        // two measures coincide.
        let w = Weights::from_f64(0.5, 0.0).unwrap();
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let mut l = Labeling::new(4);
        set_all(&mut l, &[(0, Label::Ke), (2, Label::Ge), (3, Label::W)]);
        // Vertex 0's potential garden is unlabeled vertex 1; vertex 2 has no
        // adjacent king; both stay active.
        assert_eq!(measure_mc(&g, &l, &w, 6), measure_simple(6, &l));
    }

    #[test]
    fn weights_invariants() {
        assert!(Weights::from_f64(0.6, 0.5).is_err(), "wn + wl exceeds 1");
        assert!(Weights::from_f64(0.4, 0.1).is_err(), "wl below 1/2");
        assert!(Weights::from_f64(0.74551, 0.2).is_err(), "not a 10^-4 multiple");
        let w = Weights::default();
        assert_eq!((w.wl_num(), w.wn_num()), (7455, 2455));
    }

    #[test]
    fn extends_examples() {
        let g = p3();
        let mut l = Labeling::new(3);
        set_all(&mut l, &[(0, Label::NotG)]);
        assert!(extends(&g, &l, &l), "reflexive");
        assert!(extends(&g, &Labeling::new(3), &l), "empty labeling below everything");

        let mut l2 = Labeling::new(3);
        set_all(&mut l2, &[(0, Label::Ge)]);
        assert!(!extends(&g, &l, &l2), "NotG cannot resolve to a garden");
        let mut l3 = Labeling::new(3);
        set_all(&mut l3, &[(0, Label::Ke), (1, Label::Ge)]);
        assert!(extends(&g, &l, &l3));
    }

    #[test]
    fn labeling_of_solution_examples() {
        let g = p3();
        let l = labeling_of_solution(&g, &[0, 2]).unwrap();
        assert_eq!(l.get(0), Label::Ki);
        assert_eq!(l.get(2), Label::Ki);
        assert_eq!(l.get(1), Label::W);

        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let l = labeling_of_solution(&p4, &[1, 2]).unwrap();
        assert_eq!(l.get(1), Label::Ke);
        assert_eq!(l.get(2), Label::Ke);
        assert_eq!(l.get(0), Label::Ge);
        assert_eq!(l.get(3), Label::Ge);

        let l = labeling_of_solution(&g, &[]).unwrap();
        assert!(g.alive_vertices().all(|v| l.get(v) == Label::W));

        // {0,1} in P3: vertex 0 is adjacent to 1 ∈ I, and its sole neighbor
        // cannot be private (vertex 1 is in the set) — not irredundant.
        assert!(labeling_of_solution(&g, &[0, 1]).is_err());
    }

    #[test]
    fn completion_search_basics() {
        let g = p3();
        let l = Labeling::new(3);
        // Best completion of P3: king in the middle, cost 2 (two wilderness)
        // or two internal kings at the ends with the middle wilderness, cost 1.
        assert!(exists_completion_within(&g, &l, 1));
        assert!(!exists_completion_within(&g, &l, 0));

        // A committed king without any possible garden can never complete.
        let mut l = Labeling::new(3);
        set_all(&mut l, &[(1, Label::Ke), (0, Label::W), (2, Label::W)]);
        assert!(!exists_completion_within(&g, &l, 99));
    }
}
