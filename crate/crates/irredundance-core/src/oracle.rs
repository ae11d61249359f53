//! Brute-force ground truth by subset enumeration: irredundance tests,
//! private-neighbor certification, and exact ir/γ/α/IR on small graphs.
//!
//! Every solver in this crate is differential-tested against these
//! functions. They favor obvious correctness over speed and are guarded to
//! [`ORACLE_MAX_N`] vertices.

use crate::graph::Graph;

/// Default enumeration guard: one machine word of subset bits.
pub const ORACLE_MAX_N: usize = 24;

/// Errors from oracle queries.
#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("graph has {0} alive vertices; oracle enumeration is limited to {1}")]
    TooLarge(usize, usize),
    #[error("set is not irredundant (vertex {0} lacks a certificate)")]
    NotIrredundant(u32),
}

/// The four classical invariants tied by ir ≤ γ ≤ α ≤ IR.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainValues {
    /// Minimum size of a maximal irredundant set.
    pub ir: usize,
    /// Domination number: minimum size of a dominating set.
    pub gamma: usize,
    /// Independence number: maximum size of an independent set.
    pub alpha: usize,
    /// Maximum size of an irredundant set.
    pub upper_ir: usize,
}

/// Compacted bitmask view of the alive subgraph.
struct MaskGraph {
    nb: Vec<u32>,
    /// Compacted id for each original id (only meaningful for alive vertices).
    index: Vec<u32>,
    n: usize,
}

impl MaskGraph {
    fn new(g: &Graph) -> Self {
        let ids: Vec<u32> = g.alive_vertices().collect();
        let n = ids.len();
        let mut index = vec![u32::MAX; g.n_total()];
        for (i, &v) in ids.iter().enumerate() {
            index[v as usize] = i as u32;
        }
        let mut nb = vec![0u32; n];
        for (i, &v) in ids.iter().enumerate() {
            for u in g.neighbors(v) {
                nb[i] |= 1 << index[u as usize];
            }
        }
        MaskGraph { nb, index, n }
    }

}

/// Does every vertex of `mask` have a certificate: no neighbor inside the
/// mask, or an outside neighbor whose whole neighborhood inside the mask is
/// that single vertex?
fn irredundant_mask(nb: &[u32], mask: u32) -> bool {
    failing_king(nb, mask).is_none()
}

/// The lowest member of `mask` without a certificate, if any.
fn failing_king(nb: &[u32], mask: u32) -> Option<u32> {
    let mut rem = mask;
    while rem != 0 {
        let v = rem.trailing_zeros();
        rem &= rem - 1;
        if nb[v as usize] & mask == 0 {
            continue;
        }
        let mut cand = nb[v as usize] & !mask;
        let mut certified = false;
        while cand != 0 {
            let u = cand.trailing_zeros();
            cand &= cand - 1;
            if nb[u as usize] & mask == 1 << v {
                certified = true;
                break;
            }
        }
        if !certified {
            return Some(v);
        }
    }
    None
}

fn maximal_irredundant_mask(nb: &[u32], n: usize, mask: u32) -> bool {
    if !irredundant_mask(nb, mask) {
        return false;
    }
    let full = full_mask(n);
    let mut out = full & !mask;
    while out != 0 {
        let x = out.trailing_zeros();
        out &= out - 1;
        if irredundant_mask(nb, mask | (1 << x)) {
            return false;
        }
    }
    true
}

fn full_mask(n: usize) -> u32 {
    if n == 32 { u32::MAX } else { (1u32 << n) - 1 }
}

/// Is `set` an irredundant set of `g`? Every member must be isolated within
/// the set or privately dominate some outside vertex. Unlike the
/// enumeration queries this works on graphs of any size.
pub fn is_irredundant(g: &Graph, set: &[u32]) -> bool {
    let mut in_set = vec![false; g.n_total()];
    for &v in set {
        assert!(g.is_alive(v), "oracle set contains dead vertex {v}");
        in_set[v as usize] = true;
    }
    set.iter().all(|&v| {
        g.neighbors(v).all(|u| !in_set[u as usize])
            || g.neighbors(v).any(|u| {
                !in_set[u as usize] && g.neighbors(u).filter(|&x| in_set[x as usize]).eq([v])
            })
    })
}

/// Is `set` irredundant with no irredundant proper superset?
pub fn is_maximal_irredundant(g: &Graph, set: &[u32]) -> bool {
    if !is_irredundant(g, set) {
        return false;
    }
    let mut in_set = vec![false; g.n_total()];
    for &v in set {
        in_set[v as usize] = true;
    }
    let mut extended: Vec<u32> = set.to_vec();
    for x in g.alive_vertices() {
        if in_set[x as usize] {
            continue;
        }
        extended.push(x);
        let grows = is_irredundant(g, &extended);
        extended.pop();
        if grows {
            return false;
        }
    }
    true
}

/// How a king of an irredundant set is certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate {
    /// No neighbor inside the set.
    Internal,
    /// Lowest-id private neighbor outside the set.
    Garden(u32),
}

/// Certify each member of an irredundant set, in ascending king order.
/// Gardens are automatically pairwise distinct: a private neighbor sees
/// exactly one king.
pub fn certify(g: &Graph, set: &[u32]) -> Result<Vec<(u32, Certificate)>, OracleError> {
    let mut sorted: Vec<u32> = set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let in_set = |u: u32| sorted.binary_search(&u).is_ok();
    let mut out = Vec::with_capacity(sorted.len());
    for &v in &sorted {
        if g.neighbors(v).all(|u| !in_set(u)) {
            out.push((v, Certificate::Internal));
            continue;
        }
        let private = g
            .neighbors(v)
            .find(|&u| !in_set(u) && g.neighbors(u).filter(|&x| in_set(x)).eq([v]))
            .ok_or(OracleError::NotIrredundant(v))?;
        out.push((v, Certificate::Garden(private)));
    }
    let mut gardens: Vec<u32> = out
        .iter()
        .filter_map(|&(_, c)| match c {
            Certificate::Garden(u) => Some(u),
            Certificate::Internal => None,
        })
        .collect();
    gardens.sort_unstable();
    let before = gardens.len();
    gardens.dedup();
    debug_assert_eq!(before, gardens.len(), "private neighbors are exclusive");
    Ok(out)
}

/// Next bitmask with the same popcount (Gosper's hack), widened to u64 so
/// the step cannot wrap; `None` once past 32 bits.
fn next_same_popcount(x: u32) -> Option<u32> {
    let x = x as u64;
    let c = x & x.wrapping_neg();
    let r = x + c;
    u32::try_from(r | (((x ^ r) >> 2) / c)).ok()
}

/// First subset size in `sizes` for which some subset satisfies `pred`.
/// Every predicate used here has a witness (∅ or V), so the scan terminates.
fn first_size<F: FnMut(u32) -> bool>(
    n: usize,
    sizes: impl Iterator<Item = usize>,
    mut pred: F,
) -> usize {
    let full = full_mask(n);
    for s in sizes {
        if s == 0 {
            if pred(0) {
                return 0;
            }
            continue;
        }
        let mut mask = full_mask(s);
        loop {
            if pred(mask) {
                return s;
            }
            match next_same_popcount(mask) {
                Some(next) if next <= full => mask = next,
                _ => break,
            }
        }
    }
    unreachable!("predicate holds for some subset size");
}

/// Exact ir, γ, α and IR by enumeration. `limit` guards the number of alive
/// vertices (≤ 32; enumeration is exponential, so stay small).
pub fn domination_chain_with_limit(g: &Graph, limit: usize) -> Result<ChainValues, OracleError> {
    let mg = MaskGraph::new(g);
    let n = mg.n;
    if n > limit.min(32) {
        return Err(OracleError::TooLarge(n, limit.min(32)));
    }
    let nb = &mg.nb;
    let full = full_mask(n);
    let dominating = |mask: u32| {
        let mut covered = mask;
        let mut rem = mask;
        while rem != 0 {
            let v = rem.trailing_zeros();
            rem &= rem - 1;
            covered |= nb[v as usize];
        }
        covered == full
    };
    let independent = |mask: u32| {
        let mut rem = mask;
        while rem != 0 {
            let v = rem.trailing_zeros();
            rem &= rem - 1;
            if nb[v as usize] & mask != 0 {
                return false;
            }
        }
        true
    };
    let ir = first_size(n, 0..=n, |m| maximal_irredundant_mask(nb, n, m));
    let gamma = first_size(n, 0..=n, dominating);
    let alpha = first_size(n, (0..=n).rev(), independent);
    let upper_ir = first_size(n, (0..=n).rev(), |m| irredundant_mask(nb, m));
    Ok(ChainValues { ir, gamma, alpha, upper_ir })
}

/// [`domination_chain_with_limit`] with the default [`ORACLE_MAX_N`] guard.
pub fn domination_chain(g: &Graph) -> Result<ChainValues, OracleError> {
    domination_chain_with_limit(g, ORACLE_MAX_N)
}

/// Maximum size of an irredundant set containing `v`; used to audit the
/// degree-1 structure exploited by the win-win wrappers.
pub fn max_irredundant_containing(g: &Graph, v: u32) -> Result<usize, OracleError> {
    assert!(g.is_alive(v), "query vertex must be alive");
    let mg = MaskGraph::new(g);
    if mg.n > ORACLE_MAX_N {
        return Err(OracleError::TooLarge(mg.n, ORACLE_MAX_N));
    }
    let bit = 1u32 << mg.index[v as usize];
    let free = full_mask(mg.n) & !bit;
    let mut best = 0usize;
    // Enumerate subsets of V \ {v} and attach v to each.
    let mut sub = free;
    loop {
        let mask = sub | bit;
        if irredundant_mask(&mg.nb, mask) {
            best = best.max(mask.count_ones() as usize);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & free;
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize) -> Graph {
        let edges: Vec<(u32, u32)> = (0..n as u32 - 1).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let mut edges: Vec<(u32, u32)> = (0..n as u32 - 1).map(|i| (i, i + 1)).collect();
        edges.push((0, n as u32 - 1));
        Graph::from_edges(n, &edges).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        let edges: Vec<(u32, u32)> = (1..=leaves as u32).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges).unwrap()
    }

    #[test]
    fn irredundance_definition_cases() {
        let g = p(3);
        assert!(is_irredundant(&g, &[0, 2]));
        assert!(!is_irredundant(&g, &[0, 1]));
        assert!(is_irredundant(&g, &[]));
    }

    #[test]
    fn maximality_cases() {
        let g = p(3);
        assert!(is_maximal_irredundant(&g, &[1]));
        assert!(!is_maximal_irredundant(&g, &[0]), "{{0,2}} extends it");
        let edgeless = Graph::new(4);
        assert!(is_maximal_irredundant(&edgeless, &[0, 1, 2, 3]));
    }

    #[test]
    fn certify_cases() {
        let g = p(4);
        let cert = certify(&g, &[1, 2]).unwrap();
        assert_eq!(cert, vec![(1, Certificate::Garden(0)), (2, Certificate::Garden(3))]);
        let g3 = p(3);
        let cert = certify(&g3, &[0, 2]).unwrap();
        assert_eq!(cert, vec![(0, Certificate::Internal), (2, Certificate::Internal)]);
        let k1 = Graph::new(1);
        assert_eq!(certify(&k1, &[0]).unwrap(), vec![(0, Certificate::Internal)]);
        assert!(certify(&g3, &[0, 1]).is_err());
    }

    #[test]
    fn chain_known_values() {
        let c = domination_chain(&p(3)).unwrap();
        assert_eq!((c.ir, c.gamma, c.alpha, c.upper_ir), (1, 1, 2, 2));
        let c = domination_chain(&cycle(4)).unwrap();
        assert_eq!((c.ir, c.gamma, c.alpha, c.upper_ir), (2, 2, 2, 2));
        let c = domination_chain(&star(3)).unwrap();
        assert_eq!((c.ir, c.gamma, c.alpha, c.upper_ir), (1, 1, 3, 3));
        let c = domination_chain(&Graph::new(0)).unwrap();
        assert_eq!((c.ir, c.gamma, c.alpha, c.upper_ir), (0, 0, 0, 0));
    }

    #[test]
    fn chain_inequalities_exhaustive_small() {
        // Every labeled graph on exactly 5 vertices.
        for mask in 0u32..1 << 10 {
            let mut g = Graph::new(5);
            let mut bit = 0;
            for u in 0..5u32 {
                for v in u + 1..5 {
                    if mask >> bit & 1 == 1 {
                        g.add_edge(u, v).unwrap();
                    }
                    bit += 1;
                }
            }
            let c = domination_chain(&g).unwrap();
            assert!(c.ir <= c.gamma && c.gamma <= c.alpha && c.alpha <= c.upper_ir, "{mask}");
            assert!(c.gamma <= 2 * c.ir - 1, "{mask}");
            assert!(2 * c.ir > c.gamma, "{mask}");
        }
    }

    #[test]
    fn degree_one_vertex_attains_upper_ir() {
        // Exhaustive on 5 vertices: whenever some vertex has degree 1, the
        // maximum irredundant set can be chosen to contain it.
        for mask in 0u32..1 << 10 {
            let mut g = Graph::new(5);
            let mut bit = 0;
            for u in 0..5u32 {
                for v in u + 1..5 {
                    if mask >> bit & 1 == 1 {
                        g.add_edge(u, v).unwrap();
                    }
                    bit += 1;
                }
            }
            let Some(v) = (0..5u32).find(|&v| g.degree(v) == 1) else { continue };
            let chain = domination_chain(&g).unwrap();
            assert_eq!(max_irredundant_containing(&g, v).unwrap(), chain.upper_ir, "{mask}");
        }
    }

    #[test]
    fn oracle_guard() {
        assert!(matches!(
            domination_chain(&Graph::new(25)),
            Err(OracleError::TooLarge(25, 24))
        ));
        assert!(domination_chain_with_limit(&Graph::new(10), 9).is_err());
    }
}
