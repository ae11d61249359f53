//! Problem kernels for the two co-parameterized irredundance questions.
//!
//! For "is ir(G) ≤ n−k" a counting argument yields a kernel on at most 2k−1
//! vertices: isolated vertices are forced into every maximal irredundant set,
//! and an isolate-free graph always has one of size ≤ n/2. For
//! "is IR(G) ≥ n−k" repeated crown reductions shrink the graph to at most 3k
//! vertices: an independent set C whose whole neighborhood H is matched into
//! C can be committed to the solution wholesale.

use std::collections::VecDeque;

use crate::graph::{Graph, UndoLog};

/// An independent set `c` together with its full neighborhood `h` and a
/// matching `m` (pairs `(c_vertex, h_vertex)`) saturating `h` into `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crown {
    pub c: Vec<u32>,
    pub h: Vec<u32>,
    pub m: Vec<(u32, u32)>,
}

/// Final verdict of a kernelization run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelVerdict {
    Yes,
    No,
    Reduced,
}

/// Result of kernelizing an instance: the (possibly shrunken) graph, the
/// residual parameter, and the vertices committed to the solution along the
/// way. The graph keeps its original id space; removed vertices are dead.
#[derive(Debug)]
pub struct KernelOutcome {
    pub verdict: KernelVerdict,
    pub graph: Graph,
    pub k: i64,
    pub forced: Vec<u32>,
}

impl KernelOutcome {
    pub fn n_after(&self) -> usize {
        self.graph.n_alive()
    }
}

/// Kernel for "is ir(G) ≤ n−k": drop isolated vertices (they shift both
/// sides of the inequality equally), then answer YES outright when
/// 2k ≤ n′ — an isolate-free graph always has a maximal irredundant set of
/// size ≤ n′/2 — and otherwise return the graph, now of order ≤ 2k−1.
pub fn kernel_cominmaxir(g: &Graph, k: i64) -> KernelOutcome {
    assert!(k >= 0, "parameter must be nonnegative");
    let mut graph = g.clone();
    let mut log = UndoLog::new();
    let isolated: Vec<u32> = graph.alive_vertices().filter(|&v| graph.degree(v) == 0).collect();
    for v in isolated {
        graph.kill_vertex(v, &mut log);
    }
    let n = graph.n_alive() as i64;
    let verdict = if 2 * k <= n { KernelVerdict::Yes } else { KernelVerdict::Reduced };
    debug_assert!(verdict == KernelVerdict::Yes || n <= 2 * k - 1);
    KernelOutcome { verdict, graph, k, forced: Vec::new() }
}

/// Maximal matching: greedy over edges sorted by (min endpoint, max
/// endpoint), then repeatedly replace a matched edge flanked by two distinct
/// exposed neighbors — an augmenting path of length three — until none
/// remains.
pub fn maximal_matching(g: &Graph) -> Vec<(u32, u32)> {
    let n = g.n_total();
    let mut matched = vec![false; n];
    let mut matching: Vec<(u32, u32)> = Vec::new();
    for (u, v) in g.edges() {
        if !matched[u as usize] && !matched[v as usize] {
            matched[u as usize] = true;
            matched[v as usize] = true;
            matching.push((u, v));
        }
    }
    loop {
        let mut grew = false;
        for i in 0..matching.len() {
            let (a, b) = matching[i];
            let exposed_nb = |x: u32, skip: Option<u32>| {
                g.neighbors(x).find(|&y| !matched[y as usize] && Some(y) != skip)
            };
            // Two distinct exposed endpoints around edge a-b, lowest ids first.
            let pair = exposed_nb(a, None).and_then(|u| {
                exposed_nb(b, Some(u)).map(|w| (u, w)).or_else(|| {
                    exposed_nb(a, Some(u))
                        .and_then(|u2| exposed_nb(b, Some(u2)).map(|w| (u2, w)))
                })
            });
            if let Some((u, w)) = pair {
                matching[i] = (u.min(a), u.max(a));
                matching.push((w.min(b), w.max(b)));
                matched[u as usize] = true;
                matched[w as usize] = true;
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    matching.sort_unstable();
    matching
}

/// Find a crown given a maximal matching `l` free of length-3 augmenting
/// paths: take the exposed (independent) side O, compute a maximum bipartite
/// matching between O and N(O), and collect the O-vertices reachable by
/// alternating paths from the unmatched ones. Returns `None` when every O
/// vertex is matched (possible only when the graph is small relative to `l`).
pub fn find_crown(g: &Graph, l: &[(u32, u32)]) -> Option<Crown> {
    let n = g.n_total();
    let mut in_l = vec![false; n];
    for &(a, b) in l {
        in_l[a as usize] = true;
        in_l[b as usize] = true;
    }
    let o_side: Vec<u32> = g.alive_vertices().filter(|&v| !in_l[v as usize]).collect();
    debug_assert!(
        o_side.iter().all(|&v| g.neighbors(v).all(|u| in_l[u as usize])),
        "exposed side must be independent: the matching was not maximal"
    );

    // Maximum matching between O and N(O) by augmenting-path search.
    let mut match_of: Vec<Option<u32>> = vec![None; n]; // both sides
    fn augment(
        g: &Graph,
        o: u32,
        match_of: &mut Vec<Option<u32>>,
        visited: &mut Vec<bool>,
    ) -> bool {
        for h in g.neighbors(o) {
            if !visited[h as usize] {
                visited[h as usize] = true;
                let free = match match_of[h as usize] {
                    None => true,
                    Some(o2) => augment(g, o2, match_of, visited),
                };
                if free {
                    match_of[h as usize] = Some(o);
                    match_of[o as usize] = Some(h);
                    return true;
                }
            }
        }
        false
    }
    for &o in &o_side {
        let mut visited = vec![false; n];
        augment(g, o, &mut match_of, &mut visited);
    }

    let unmatched: Vec<u32> =
        o_side.iter().copied().filter(|&v| match_of[v as usize].is_none()).collect();
    if unmatched.is_empty() {
        return None;
    }

    // Alternating reachability: O-side via any edge forward, head side back
    // along matching edges.
    let mut in_c = vec![false; n];
    let mut in_h = vec![false; n];
    let mut queue: VecDeque<u32> = VecDeque::new();
    for &v in &unmatched {
        in_c[v as usize] = true;
        queue.push_back(v);
    }
    while let Some(o) = queue.pop_front() {
        for h in g.neighbors(o) {
            if !in_h[h as usize] {
                in_h[h as usize] = true;
                let o2 = match_of[h as usize]
                    .expect("head vertex unmatched from a reachable O vertex would augment");
                if !in_c[o2 as usize] {
                    in_c[o2 as usize] = true;
                    queue.push_back(o2);
                }
            }
        }
    }

    let c: Vec<u32> = (0..n as u32).filter(|&v| in_c[v as usize]).collect();
    let h: Vec<u32> = (0..n as u32).filter(|&v| in_h[v as usize]).collect();
    let m: Vec<(u32, u32)> = h
        .iter()
        .map(|&hv| {
            let cv = match_of[hv as usize].expect("head saturated");
            debug_assert!(in_c[cv as usize]);
            (cv, hv)
        })
        .collect();
    debug_assert!(
        {
            let mut nbhd: Vec<u32> = c
                .iter()
                .flat_map(|&v| g.neighbors(v))
                .collect();
            nbhd.sort_unstable();
            nbhd.dedup();
            nbhd == h
        },
        "head must be exactly the neighborhood of the crown"
    );
    Some(Crown { c, h, m })
}

/// Kernel for "is IR(G) ≥ n−k": answer NO when a maximal matching exceeds k
/// (each matched edge spends at least one unit of the co-parameter), and
/// otherwise shrink via crown reductions until at most 3k vertices remain.
/// Crown vertices C join the solution as isolated kings; their heads H are
/// spent budget, so k drops by |H|. An empty remainder is an outright YES.
pub fn kernel_comaxir(g: &Graph, k: i64) -> KernelOutcome {
    assert!(k >= 0, "parameter must be nonnegative");
    let mut graph = g.clone();
    let mut k = k;
    let mut forced: Vec<u32> = Vec::new();
    let mut log = UndoLog::new();
    for _round in 0..=g.n_total() {
        let l = maximal_matching(&graph);
        if l.len() as i64 > k {
            return KernelOutcome { verdict: KernelVerdict::No, graph, k, forced };
        }
        if graph.n_alive() == 0 {
            debug_assert!(k >= 0);
            return KernelOutcome { verdict: KernelVerdict::Yes, graph, k, forced };
        }
        if graph.n_alive() as i64 <= 3 * k {
            return KernelOutcome { verdict: KernelVerdict::Reduced, graph, k, forced };
        }
        let crown = find_crown(&graph, &l)
            .expect("a graph larger than three times its matching contains a crown");
        debug_assert!(crown.m.len() == crown.h.len());
        debug_assert!((crown.h.len() as i64) <= k, "head fits in the remaining budget");
        forced.extend_from_slice(&crown.c);
        k -= crown.h.len() as i64;
        for &v in crown.c.iter().chain(&crown.h) {
            graph.kill_vertex(v, &mut log);
        }
    }
    unreachable!("every round removes at least one vertex");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn cycle(n: usize) -> Graph {
        let mut edges: Vec<(u32, u32)> = (0..n as u32 - 1).map(|i| (i, i + 1)).collect();
        edges.push((0, n as u32 - 1));
        Graph::from_edges(n, &edges).unwrap()
    }

    fn path(n: usize) -> Graph {
        let edges: Vec<(u32, u32)> = (0..n as u32 - 1).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        let edges: Vec<(u32, u32)> = (1..=leaves as u32).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    #[test]
    fn counting_kernel_cases() {
        let out = kernel_cominmaxir(&cycle(10), 5);
        assert_eq!(out.verdict, KernelVerdict::Yes);

        let out = kernel_cominmaxir(&cycle(10), 6);
        assert_eq!(out.verdict, KernelVerdict::Reduced);
        assert_eq!(out.n_after(), 10);
        assert!(out.n_after() as i64 <= 2 * out.k - 1);

        // C4 plus two isolated vertices: isolates go, parameter stays.
        let mut g = Graph::new(6);
        for (u, v) in [(0, 1), (1, 2), (2, 3), (0, 3)] {
            g.add_edge(u, v).unwrap();
        }
        let out = kernel_cominmaxir(&g, 3);
        assert_eq!(out.verdict, KernelVerdict::Reduced);
        assert_eq!(out.n_after(), 4);
        assert_eq!(out.k, 3);
        // Both instances answer NO: ir = 4 > 6−3 originally, 2 > 4−3 reduced.
        assert_eq!(oracle::domination_chain(&g).unwrap().ir, 4);
        assert_eq!(oracle::domination_chain(&out.graph).unwrap().ir, 2);
    }

    #[test]
    fn matching_cases() {
        assert_eq!(maximal_matching(&path(4)), vec![(0, 1), (2, 3)]);
        assert_eq!(maximal_matching(&complete(3)).len(), 1);
        assert!(maximal_matching(&Graph::new(5)).is_empty());
        // P5 greedy picks 0-1 and 2-3 leaving 4 exposed; no length-3
        // augmenting path exists (vertex 4's neighbor 3 is matched to 2 whose
        // other exposed neighbor would have to differ from 4).
        assert_eq!(maximal_matching(&path(5)), vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn matching_eliminates_short_augmenting_paths() {
        // Star-path: edges c-a, a-b, b-d. Greedy order picks a-b first
        // ((0,1) with a=0, b=1), leaving c=2 and d=3 exposed: a length-3
        // augmenting path c-a-b-d must be swapped to {c-a, b-d}.
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 3)]).unwrap();
        let l = maximal_matching(&g);
        assert_eq!(l, vec![(0, 2), (1, 3)]);
    }

    #[test]
    fn crown_cases() {
        let g = star(3);
        let crown = find_crown(&g, &[(0, 1)]).unwrap();
        assert_eq!(crown.h, vec![0]);
        assert!(crown.c.contains(&2) && crown.c.contains(&3));
        assert_eq!(crown.m.len(), 1);

        let p2 = path(2);
        assert!(find_crown(&p2, &[(0, 1)]).is_none());

        let g = star(5);
        let crown = find_crown(&g, &[(0, 1)]).unwrap();
        assert_eq!(crown.h, vec![0]);
        assert!(crown.c.len() >= 4);
    }

    #[test]
    fn crown_invariants_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(2..12);
            let mut g = Graph::new(n);
            for u in 0..n as u32 {
                for v in u + 1..n as u32 {
                    if rng.gen_bool(0.25) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let l = maximal_matching(&g);
            let Some(crown) = find_crown(&g, &l) else { continue };
            // C independent.
            for &a in &crown.c {
                for &b in &crown.c {
                    assert!(a == b || !g.has_edge(a, b));
                }
            }
            // H = N(C) and the matching saturates H with distinct C vertices.
            assert_eq!(crown.m.len(), crown.h.len());
            let mut cs: Vec<u32> = crown.m.iter().map(|&(c, _)| c).collect();
            cs.sort_unstable();
            cs.dedup();
            assert_eq!(cs.len(), crown.h.len());
            for &(c, h) in &crown.m {
                assert!(g.has_edge(c, h));
                assert!(crown.c.contains(&c) && crown.h.contains(&h));
            }
        }
    }

    #[test]
    fn crown_kernel_cases() {
        let out = kernel_comaxir(&complete(4), 1);
        assert_eq!(out.verdict, KernelVerdict::No);
        assert_eq!(oracle::domination_chain(&complete(4)).unwrap().upper_ir, 1);

        let out = kernel_comaxir(&star(5), 1);
        assert_eq!(out.verdict, KernelVerdict::Yes);
        assert_eq!(out.k, 0);
        assert_eq!(out.forced.len(), 5, "all five leaves join the solution");

        let out = kernel_comaxir(&cycle(6), 2);
        assert_eq!(out.verdict, KernelVerdict::No);
        assert_eq!(oracle::domination_chain(&cycle(6)).unwrap().upper_ir, 3);
    }

    #[test]
    fn crown_kernel_preserves_answers_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for trial in 0..120 {
            let n = rng.gen_range(1..11);
            let mut g = Graph::new(n);
            for u in 0..n as u32 {
                for v in u + 1..n as u32 {
                    if rng.gen_bool([0.2, 0.5, 0.8][trial % 3]) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let upper_ir = oracle::domination_chain(&g).unwrap().upper_ir as i64;
            for k in 0..=n as i64 {
                let truth = upper_ir >= n as i64 - k;
                let out = kernel_comaxir(&g, k);
                let got = match out.verdict {
                    KernelVerdict::Yes => true,
                    KernelVerdict::No => false,
                    KernelVerdict::Reduced => {
                        assert!(out.n_after() as i64 <= 3 * out.k);
                        let red = oracle::domination_chain(&out.graph).unwrap().upper_ir as i64;
                        red >= out.n_after() as i64 - out.k
                    }
                };
                assert_eq!(got, truth, "n={n} k={k} trial={trial}");
            }
        }
    }

    #[test]
    fn counting_kernel_preserves_answers_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        for trial in 0..120 {
            let n = rng.gen_range(1..11);
            let mut g = Graph::new(n);
            for u in 0..n as u32 {
                for v in u + 1..n as u32 {
                    if rng.gen_bool([0.2, 0.5, 0.8][trial % 3]) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let ir = oracle::domination_chain(&g).unwrap().ir as i64;
            for k in 0..=n as i64 {
                let truth = ir <= n as i64 - k;
                let out = kernel_cominmaxir(&g, k);
                let got = match out.verdict {
                    KernelVerdict::Yes => true,
                    KernelVerdict::No => false,
                    KernelVerdict::Reduced => {
                        assert!(out.n_after() as i64 <= 2 * out.k - 1);
                        let red = oracle::domination_chain(&out.graph).unwrap().ir as i64;
                        red <= out.n_after() as i64 - out.k
                    }
                };
                assert_eq!(got, truth, "n={n} k={k} trial={trial}");
            }
        }
    }
}
