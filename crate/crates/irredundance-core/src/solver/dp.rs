//! Minimum-cost completions for path/cycle components: when the still-active
//! part of a labeled graph has maximum degree two, the cheapest way to finish
//! the labeling is found by a six-state dynamic program instead of branching.

use crate::graph::Graph;
use crate::labeling::{is_active, Label, Labeling};

/// Final per-vertex role along the path/cycle order. External kings and
/// gardens carry the direction of their partner so that adjacency pairing is
/// a local transition condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum S {
    /// Wilderness.
    W,
    /// Isolated king: both ordered neighbors must be wilderness.
    Ki,
    /// External king paired with the previous vertex.
    KeP,
    /// External king paired with the next vertex.
    KeN,
    /// Garden paired with the previous vertex.
    GeP,
    /// Garden paired with the next vertex.
    GeN,
}

const STATES: [S; 6] = [S::W, S::Ki, S::KeP, S::KeN, S::GeP, S::GeN];

/// Budget spent by a vertex ending in this state: wilderness and gardens
/// count against k, kings are free.
fn cost(s: S) -> i64 {
    match s {
        S::W | S::GeP | S::GeN => 1,
        S::Ki | S::KeP | S::KeN => 0,
    }
}

/// May vertex-label `lab` finish in state `s`? Pre-set external kings and
/// gardens must end up paired (they are still active, or they would not be
/// part of the component); blocked vertices keep their exclusions.
fn admissible(lab: Label, s: S) -> bool {
    match lab {
        Label::Unlabeled => true,
        Label::NotG => matches!(s, S::W | S::KeP | S::KeN),
        Label::NotK => matches!(s, S::W | S::GeP | S::GeN),
        Label::Ke => matches!(s, S::KeP | S::KeN),
        Label::Ge => matches!(s, S::GeP | S::GeN),
        Label::Ki | Label::W => false,
    }
}

/// Is state `b` allowed directly after state `a` along the order? Encodes
/// pairing consistency (a king pointing forward must meet a garden pointing
/// backward and vice versa), the all-wilderness neighborhood of isolated
/// kings, and the exclusion of a king next to a garden that is not its
/// partner (that garden or king would serve two partners).
fn compat(a: S, b: S) -> bool {
    match a {
        S::W => matches!(b, S::W | S::Ki | S::KeN | S::GeN),
        S::Ki => b == S::W,
        S::KeP => matches!(b, S::W | S::KeN),
        S::KeN => b == S::GeP,
        S::GeP => matches!(b, S::W | S::GeN),
        S::GeN => b == S::KeP,
    }
}

/// Order the component as a walk: a path starting at its lowest-id endpoint,
/// or a cycle starting at the lowest id toward its lower neighbor. Returns
/// (order, is_cycle). Degrees are taken within the component.
fn walk_order(g: &Graph, comp: &[u32]) -> (Vec<u32>, bool) {
    let inside = |u: u32| comp.contains(&u);
    let deg = |u: u32| g.neighbors(u).filter(|&x| inside(x)).count();
    let start_path = comp.iter().copied().find(|&v| deg(v) <= 1);
    let is_cycle = start_path.is_none();
    let start = start_path.unwrap_or(comp[0]);
    let mut order = vec![start];
    let mut prev = None;
    let mut cur = start;
    loop {
        let next = g
            .neighbors(cur)
            .filter(|&x| inside(x) && Some(x) != prev)
            .min();
        match next {
            Some(nx) if nx != start => {
                order.push(nx);
                prev = Some(cur);
                cur = nx;
            }
            _ => break,
        }
    }
    assert_eq!(order.len(), comp.len(), "component must be connected");
    (order, is_cycle)
}

/// Cheapest completion of the labeling on a connected component whose
/// vertices all have degree ≤ 2 inside it: the minimum, over complete
/// consistent finishes, of the number of wilderness vertices plus gardens
/// (pre-set gardens included — their budget is only charged on completion).
/// `None` when no finish exists, e.g. an external king that cannot pair.
pub fn dp_max_degree_two(g: &Graph, l: &Labeling, component: &[u32]) -> Option<i64> {
    assert!(!component.is_empty(), "component must be nonempty");
    let mut comp = component.to_vec();
    comp.sort_unstable();
    comp.dedup();
    for &v in &comp {
        assert!(g.is_alive(v), "component vertices must be alive");
        let lab = l.get(v);
        assert!(
            !matches!(lab, Label::Ki | Label::W),
            "settled vertices have no completion choices"
        );
        if matches!(lab, Label::Ke | Label::Ge) {
            assert!(is_active(g, l, v), "paired kings/gardens are settled");
        }
        let inside_deg = g.neighbors(v).filter(|&x| comp.binary_search(&x).is_ok()).count();
        assert!(inside_deg <= 2, "component must be a path or cycle");
    }

    if comp.len() == 1 {
        return match l.get(comp[0]) {
            Label::Unlabeled => Some(0),
            Label::NotG | Label::NotK => Some(1),
            _ => None, // an isolated external king/garden cannot pair
        };
    }

    let (order, is_cycle) = walk_order(g, &comp);
    let m = order.len();
    let labs: Vec<Label> = order.iter().map(|&v| l.get(v)).collect();

    let run = |first_fixed: Option<S>| -> Option<i64> {
        let mut dp = [None::<i64>; 6];
        for (si, &s) in STATES.iter().enumerate() {
            if !admissible(labs[0], s) {
                continue;
            }
            match first_fixed {
                Some(fix) if s != fix => continue,
                // Paths have no predecessor to pair backwards with.
                None if matches!(s, S::KeP | S::GeP) => continue,
                _ => {}
            }
            dp[si] = Some(cost(s));
        }
        for i in 1..m {
            let mut next = [None::<i64>; 6];
            for (ti, &t) in STATES.iter().enumerate() {
                if !admissible(labs[i], t) {
                    continue;
                }
                // Paths have no successor for the last vertex to pair with.
                if first_fixed.is_none() && i == m - 1 && matches!(t, S::KeN | S::GeN) {
                    continue;
                }
                let best = STATES
                    .iter()
                    .enumerate()
                    .filter(|&(si, &s)| compat(s, t) && dp[si].is_some())
                    .map(|(si, _)| dp[si].unwrap() + cost(t))
                    .min();
                next[ti] = best;
            }
            dp = next;
        }
        STATES
            .iter()
            .enumerate()
            .filter(|&(ti, &t)| match first_fixed {
                Some(fix) => compat(t, fix) && dp[ti].is_some(),
                None => dp[ti].is_some(),
            })
            .map(|(ti, _)| dp[ti].unwrap())
            .min()
    };

    if is_cycle {
        STATES.iter().filter_map(|&s0| run(Some(s0))).min()
    } else {
        run(None)
    }
}
