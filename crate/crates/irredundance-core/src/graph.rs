//! Simple undirected graphs with edge/vertex removal, undo support, and
//! text I/O in edge-list and graph6 formats.
//!
//! Vertices are dense ids `0..n`. Removing a vertex marks it dead and strips
//! its incident edges; adjacency sets therefore only ever mention live
//! vertices. All mutations go through an [`UndoLog`] so searches can backtrack
//! without cloning.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::labeling::{Label, Labeling};

/// Hard cap on the order of graphs we are willing to encode or parse.
pub const MAX_ENCODE_N: usize = 1 << 18;

/// Errors arising from graph construction or text I/O.
#[derive(Debug, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {0} out of range (n = {1})")]
    VertexOutOfRange(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {0} is not alive")]
    DeadVertex(usize),
    #[error("missing 'p edge <n> <m>' header")]
    MissingHeader,
    #[error("malformed line {0}: {1:?}")]
    BadLine(usize, String),
    #[error("edge count mismatch: header says {expected}, found {found}")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error("graph too large: {0} vertices (limit {MAX_ENCODE_N})")]
    TooLarge(usize),
    #[error("invalid graph6 data: {0}")]
    BadGraph6(String),
}

/// Supported text formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    /// `p edge <n> <m>` header followed by `e <u> <v>` lines (1-based ids);
    /// `#` and `c` lines are comments.
    EdgeList,
    /// The standard 6-bit ASCII encoding of the upper adjacency triangle.
    Graph6,
}

impl std::str::FromStr for GraphFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "edge-list" => Ok(GraphFormat::EdgeList),
            "graph6" => Ok(GraphFormat::Graph6),
            other => Err(format!("unknown format {other:?} (expected edge-list or graph6)")),
        }
    }
}

/// One reversible mutation of a [`Graph`] or [`Labeling`].
#[derive(Debug, Clone, Copy)]
pub enum Change {
    /// Edge `u`-`v` was removed.
    EdgeRemoved(u32, u32),
    /// Vertex was removed from the alive set (its edges are logged separately).
    VertexKilled(u32),
    /// Vertex label changed; stores the previous label.
    LabelSet(u32, Label),
}

/// Append-only journal of mutations, unwound in reverse by [`rollback`].
#[derive(Debug, Default)]
pub struct UndoLog {
    changes: Vec<Change>,
}

impl UndoLog {
    pub fn new() -> Self {
        Self::default()
    }

    /// Current length, used as a checkpoint for [`rollback`].
    pub fn mark(&self) -> usize {
        self.changes.len()
    }

    pub fn push(&mut self, c: Change) {
        self.changes.push(c);
    }

    pub fn len(&self) -> usize {
        self.changes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.changes.is_empty()
    }
}

/// Undo every change recorded after `mark`, most recent first.
///
/// `lab` may be `None` when the log is known to contain no label changes
/// (e.g. during kernelization); hitting a label change without a labeling
/// is a programming error and panics.
pub fn rollback(log: &mut UndoLog, g: &mut Graph, mut lab: Option<&mut Labeling>, mark: usize) {
    while log.changes.len() > mark {
        match log.changes.pop().expect("mark within log") {
            Change::EdgeRemoved(u, v) => g.restore_edge(u, v),
            Change::VertexKilled(v) => g.revive(v),
            Change::LabelSet(v, old) => lab
                .as_deref_mut()
                .expect("label change without labeling")
                .restore_label(v, old),
        }
    }
}

/// Undo label changes after `mark` when the log is known to contain only
/// label changes; panics on a structural change.
pub fn rollback_labels(log: &mut UndoLog, lab: &mut Labeling, mark: usize) {
    while log.changes.len() > mark {
        match log.changes.pop().expect("mark within log") {
            Change::LabelSet(v, old) => lab.restore_label(v, old),
            other => panic!("structural change {other:?} in label-only log"),
        }
    }
}

/// Simple undirected graph on vertex ids `0..n` with a liveness mask.
#[derive(Debug, Clone)]
pub struct Graph {
    adj: Vec<BTreeSet<u32>>,
    alive: Vec<bool>,
    n_alive: usize,
    m: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![BTreeSet::new(); n], alive: vec![true; n], n_alive: n, m: 0 }
    }

    /// Build a graph from an explicit edge list; rejects self-loops and
    /// duplicates.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Total number of vertex slots (alive or dead).
    pub fn n_total(&self) -> usize {
        self.adj.len()
    }

    /// Number of alive vertices.
    pub fn n_alive(&self) -> usize {
        self.n_alive
    }

    /// Number of edges between alive vertices.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_alive(&self, v: u32) -> bool {
        self.alive[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].contains(&v)
    }

    /// Neighbors of `v` in ascending id order.
    pub fn neighbors(&self, v: u32) -> impl Iterator<Item = u32> + '_ {
        self.adj[v as usize].iter().copied()
    }

    /// Alive vertices in ascending order.
    pub fn alive_vertices(&self) -> impl Iterator<Item = u32> + '_ {
        self.alive
            .iter()
            .enumerate()
            .filter(|(_, a)| **a)
            .map(|(i, _)| i as u32)
    }

    /// All edges `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.m);
        for u in self.alive_vertices() {
            for v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    fn check_vertex(&self, v: u32) -> Result<(), GraphError> {
        if (v as usize) >= self.adj.len() {
            return Err(GraphError::VertexOutOfRange(v as usize, self.adj.len()));
        }
        if !self.alive[v as usize] {
            return Err(GraphError::DeadVertex(v as usize));
        }
        Ok(())
    }

    /// Insert an edge; both endpoints must be alive.
    pub fn add_edge(&mut self, u: u32, v: u32) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u as usize));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge(u.min(v) as usize, u.max(v) as usize));
        }
        self.adj[u as usize].insert(v);
        self.adj[v as usize].insert(u);
        self.m += 1;
        Ok(())
    }

    /// Remove an existing edge, recording it in the log.
    pub fn remove_edge(&mut self, u: u32, v: u32, log: &mut UndoLog) {
        debug_assert!(self.has_edge(u, v), "removing nonexistent edge {u}-{v}");
        self.adj[u as usize].remove(&v);
        self.adj[v as usize].remove(&u);
        self.m -= 1;
        log.push(Change::EdgeRemoved(u, v));
    }

    /// Remove vertex `v` and all its incident edges, recording everything.
    pub fn kill_vertex(&mut self, v: u32, log: &mut UndoLog) {
        debug_assert!(self.alive[v as usize], "killing dead vertex {v}");
        let nbrs: Vec<u32> = self.neighbors(v).collect();
        for u in nbrs {
            self.remove_edge(v, u, log);
        }
        self.alive[v as usize] = false;
        self.n_alive -= 1;
        log.push(Change::VertexKilled(v));
    }

    pub(crate) fn restore_edge(&mut self, u: u32, v: u32) {
        self.adj[u as usize].insert(v);
        self.adj[v as usize].insert(u);
        self.m += 1;
    }

    pub(crate) fn revive(&mut self, v: u32) {
        debug_assert!(!self.alive[v as usize]);
        self.alive[v as usize] = true;
        self.n_alive += 1;
    }

    /// Connected components of the alive subgraph. Each component is sorted
    /// ascending and the list is ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<u32>> {
        let n = self.n_total();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in self.alive_vertices() {
            if seen[s as usize] {
                continue;
            }
            let mut comp = vec![s];
            seen[s as usize] = true;
            let mut queue = vec![s];
            while let Some(u) = queue.pop() {
                for w in self.neighbors(u) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        comp.push(w);
                        queue.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Induced subgraph on `verts` (must all be alive), with ids compacted to
    /// `0..verts.len()` in ascending old-id order. Returns the subgraph and
    /// the old id of each new vertex.
    pub fn induced(&self, verts: &[u32]) -> (Graph, Vec<u32>) {
        let mut vs: Vec<u32> = verts.to_vec();
        vs.sort_unstable();
        vs.dedup();
        let mut index = std::collections::HashMap::with_capacity(vs.len());
        for (i, &v) in vs.iter().enumerate() {
            debug_assert!(self.is_alive(v));
            index.insert(v, i as u32);
        }
        let mut g = Graph::new(vs.len());
        for (i, &v) in vs.iter().enumerate() {
            for w in self.neighbors(v) {
                if let Some(&j) = index.get(&w) {
                    if (i as u32) < j {
                        g.add_edge(i as u32, j).expect("induced edges are simple");
                    }
                }
            }
        }
        (g, vs)
    }

    /// The alive subgraph with ids compacted to `0..n_alive`, plus the old id
    /// of each new vertex. Identity when no vertex has been killed.
    pub fn compacted(&self) -> (Graph, Vec<u32>) {
        let vs: Vec<u32> = self.alive_vertices().collect();
        self.induced(&vs)
    }
}

/// Parse a graph from text in the given format.
pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph, GraphError> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Graph6 => parse_graph6(text),
    }
}

/// Encode the alive subgraph (ids compacted) in the given format.
pub fn encode_graph(g: &Graph, format: GraphFormat) -> Result<String, GraphError> {
    if g.n_alive() > MAX_ENCODE_N {
        return Err(GraphError::TooLarge(g.n_alive()));
    }
    let (h, _) = g.compacted();
    Ok(match format {
        GraphFormat::EdgeList => encode_edge_list(&h),
        GraphFormat::Graph6 => encode_graph6(&h),
    })
}

fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut g: Option<Graph> = None;
    let mut expected_m = 0usize;
    let mut found_m = 0usize;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with("c ") || line == "c" {
            continue;
        }
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("p") => {
                let bad = || GraphError::BadLine(lineno + 1, raw.to_string());
                if parts.next() != Some("edge") {
                    return Err(bad());
                }
                let n: usize = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
                let m: usize = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
                if parts.next().is_some() || g.is_some() {
                    return Err(bad());
                }
                if n > MAX_ENCODE_N {
                    return Err(GraphError::TooLarge(n));
                }
                g = Some(Graph::new(n));
                expected_m = m;
            }
            Some("e") => {
                let bad = || GraphError::BadLine(lineno + 1, raw.to_string());
                let g = g.as_mut().ok_or(GraphError::MissingHeader)?;
                let u: usize = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
                let v: usize = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
                if parts.next().is_some() {
                    return Err(bad());
                }
                let n = g.n_total();
                if u < 1 || u > n {
                    return Err(GraphError::VertexOutOfRange(u, n));
                }
                if v < 1 || v > n {
                    return Err(GraphError::VertexOutOfRange(v, n));
                }
                g.add_edge((u - 1) as u32, (v - 1) as u32)?;
                found_m += 1;
            }
            _ => return Err(GraphError::BadLine(lineno + 1, raw.to_string())),
        }
    }
    let g = g.ok_or(GraphError::MissingHeader)?;
    if found_m != expected_m {
        return Err(GraphError::EdgeCountMismatch { expected: expected_m, found: found_m });
    }
    Ok(g)
}

fn encode_edge_list(g: &Graph) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "p edge {} {}", g.n_total(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "e {} {}", u + 1, v + 1);
    }
    s
}

fn encode_graph6(g: &Graph) -> String {
    let n = g.n_total();
    let mut bytes = Vec::new();
    if n <= 62 {
        bytes.push(63 + n as u8);
    } else if n <= 258_047 {
        bytes.push(126);
        for shift in [12u32, 6, 0] {
            bytes.push(63 + ((n >> shift) & 0x3f) as u8);
        }
    } else {
        bytes.push(126);
        bytes.push(126);
        for shift in [30u32, 24, 18, 12, 6, 0] {
            bytes.push(63 + ((n >> shift) & 0x3f) as u8);
        }
    }
    let mut acc = 0u8;
    let mut nbits = 0u8;
    for j in 1..n as u32 {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            nbits += 1;
            if nbits == 6 {
                bytes.push(63 + acc);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        bytes.push(63 + (acc << (6 - nbits)));
    }
    String::from_utf8(bytes).expect("graph6 bytes are ASCII")
}

fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or_else(|| GraphError::BadGraph6("empty input".into()))?;
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(GraphError::BadGraph6("byte outside printable range".into()));
    }
    let (n, mut pos) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, 1)
    } else if bytes.len() > 1 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(GraphError::BadGraph6("truncated order field".into()));
        }
        let mut n = 0usize;
        for &b in &bytes[1..4] {
            n = (n << 6) | (b - 63) as usize;
        }
        (n, 4)
    } else {
        if bytes.len() < 8 {
            return Err(GraphError::BadGraph6("truncated order field".into()));
        }
        let mut n = 0usize;
        for &b in &bytes[2..8] {
            n = (n << 6) | (b - 63) as usize;
        }
        (n, 8)
    };
    if n > MAX_ENCODE_N {
        return Err(GraphError::TooLarge(n));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    if bytes.len() - pos < need {
        return Err(GraphError::BadGraph6(format!(
            "expected {} data bytes, found {}",
            need,
            bytes.len() - pos
        )));
    }
    let mut g = Graph::new(n);
    let mut acc = 0u32;
    let mut avail = 0u8;
    for j in 1..n as u32 {
        for i in 0..j {
            if avail == 0 {
                acc = (bytes[pos] - 63) as u32;
                pos += 1;
                avail = 6;
            }
            avail -= 1;
            if (acc >> avail) & 1 == 1 {
                g.add_edge(i, j).expect("triangle bits are simple edges");
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<(u32, u32)> = (0..n as u32 - 1).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn rejects_self_loops_and_duplicates() {
        assert!(matches!(Graph::from_edges(3, &[(0, 0)]), Err(GraphError::SelfLoop(0))));
        assert!(matches!(
            Graph::from_edges(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        ));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = path(4);
        let text = encode_graph(&g, GraphFormat::EdgeList).unwrap();
        assert_eq!(text, "p edge 4 3\ne 1 2\ne 2 3\ne 3 4\n");
        let h = parse_graph(&text, GraphFormat::EdgeList).unwrap();
        assert_eq!(h.edges(), g.edges());
    }

    #[test]
    fn edge_list_rejects_bad_input() {
        assert!(matches!(
            parse_graph("e 1 2\n", GraphFormat::EdgeList),
            Err(GraphError::MissingHeader)
        ));
        assert!(matches!(
            parse_graph("p edge 3 1\ne 1 1\n", GraphFormat::EdgeList),
            Err(GraphError::SelfLoop(0))
        ));
        assert!(matches!(
            parse_graph("p edge 3 2\ne 1 2\ne 2 1\n", GraphFormat::EdgeList),
            Err(GraphError::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            parse_graph("p edge 3 2\ne 1 2\n", GraphFormat::EdgeList),
            Err(GraphError::EdgeCountMismatch { expected: 2, found: 1 })
        ));
        assert!(matches!(
            parse_graph("p edge 2 1\ne 1 3\n", GraphFormat::EdgeList),
            Err(GraphError::VertexOutOfRange(3, 2))
        ));
    }

    #[test]
    fn graph6_known_vectors() {
        // Hand-packed triangle bits: P3 on vertices 0-1-2 has column bits
        // [1, 0, 1] -> 101000 -> 40 -> 'g'; order byte 'B' = 63+3.
        assert_eq!(encode_graph(&path(3), GraphFormat::Graph6).unwrap(), "Bg");
        // K3: bits [1, 1, 1] -> 111000 -> 'w'.
        let k3 = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(encode_graph(&k3, GraphFormat::Graph6).unwrap(), "Bw");
        // Empty graph on 0 and 1 vertices.
        assert_eq!(encode_graph(&Graph::new(0), GraphFormat::Graph6).unwrap(), "?");
        assert_eq!(encode_graph(&Graph::new(1), GraphFormat::Graph6).unwrap(), "@");
        let p = parse_graph("Bg", GraphFormat::Graph6).unwrap();
        assert_eq!(p.edges(), vec![(0, 1), (1, 2)]);
        let p = parse_graph(">>graph6<<Bw", GraphFormat::Graph6).unwrap();
        assert_eq!(p.m(), 3);
    }

    #[test]
    fn graph6_round_trip_medium() {
        // 70 vertices exercises the 3-byte order form.
        let mut g = Graph::new(70);
        for i in 0..69u32 {
            g.add_edge(i, i + 1).unwrap();
        }
        g.add_edge(0, 50).unwrap();
        let s = encode_graph(&g, GraphFormat::Graph6).unwrap();
        let h = parse_graph(&s, GraphFormat::Graph6).unwrap();
        assert_eq!(h.edges(), g.edges());
    }

    #[test]
    fn kill_and_rollback_restores_exactly() {
        let mut g = path(5);
        let before_edges = g.edges();
        let mut log = UndoLog::new();
        let mark = log.mark();
        g.remove_edge(1, 2, &mut log);
        g.kill_vertex(3, &mut log);
        assert_eq!(g.n_alive(), 4);
        assert!(!g.has_edge(2, 3));
        rollback(&mut log, &mut g, None, mark);
        assert_eq!(g.n_alive(), 5);
        assert_eq!(g.edges(), before_edges);
    }

    #[test]
    fn components_sorted_by_smallest_member() {
        let g = Graph::from_edges(6, &[(3, 4), (0, 5)]).unwrap();
        assert_eq!(
            g.connected_components(),
            vec![vec![0, 5], vec![1], vec![2], vec![3, 4]]
        );
    }

    #[test]
    fn induced_compacts_ids() {
        let g = path(5);
        let (h, ids) = g.induced(&[1, 2, 4]);
        assert_eq!(ids, vec![1, 2, 4]);
        assert_eq!(h.edges(), vec![(0, 1)]);
    }

    #[test]
    fn encode_compacts_dead_vertices() {
        let mut g = path(4);
        let mut log = UndoLog::new();
        g.kill_vertex(1, &mut log);
        let text = encode_graph(&g, GraphFormat::EdgeList).unwrap();
        // Alive vertices 0,2,3 become 1,2,3 with the surviving edge 2-3.
        assert_eq!(text, "p edge 3 1\ne 2 3\n");
    }
}
