//! End-to-end drivers and self-verification.
//!
//! Turns the budget-indexed deciders into exact computations of ir(G) and
//! IR(G): sweep the budget in the cheap direction, let the kernels
//! short-circuit or shrink each probe, and — for IR — fall back to direct
//! enumeration of small candidate sets once the budget passes the point
//! where the parameterized search stops paying off. Also hosts the seeded
//! instance generator and a verification campaign that replays every
//! decision against the exponential oracle.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::graph::{encode_graph, Graph, GraphFormat};
use crate::kernel::{kernel_comaxir, kernel_cominmaxir, KernelVerdict};
use crate::labeling::Weights;
use crate::oracle;
use crate::solver::mc::{decide_comaxir_mc_with, McOptions};
use crate::solver::simple::{decide_comaxir_simple, search_exact_size};
use crate::solver::{Probe, SearchStats};

/// Which branch-and-reduce solver answers the budget-indexed decisions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algo {
    /// Plain branch-and-reduce (3.841^k search tree).
    Simple,
    /// Measure-weighted branch-and-reduce (3.069^k search tree).
    Mc,
}

impl Algo {
    /// Budget fraction of n beyond which enumerating candidate sets
    /// directly beats the parameterized search: the balance point of the
    /// solver's win-win argument.
    pub fn enumeration_threshold(self) -> f64 {
        match self {
            Algo::Simple => 0.514748,
            Algo::Mc => 0.6,
        }
    }
}

/// Tunables for the exact drivers.
#[derive(Debug, Clone)]
pub struct DriverOptions {
    pub algo: Algo,
    pub weights: Weights,
    /// Override for [`Algo::enumeration_threshold`].
    pub threshold: Option<f64>,
}

impl Default for DriverOptions {
    fn default() -> Self {
        DriverOptions { algo: Algo::Mc, weights: Weights::default(), threshold: None }
    }
}

/// IR(g): largest size of an irredundant set.
pub fn compute_upper_ir(g: &Graph) -> usize {
    compute_upper_ir_with(g, &DriverOptions::default()).0
}

/// [`compute_upper_ir`] with solver choice and aggregated search counters.
///
/// Sweeps the budget k upward — "is there an irredundant set of size
/// ≥ n−k?" proves YES earliest at the true IR — screening each probe
/// through the crown kernel. Once k would exceed threshold·n the remaining
/// question is whether a *small* irredundant set (size < (1−threshold)·n)
/// is the largest, and direct enumeration of candidate sets answers that
/// faster than the parameterized search would.
pub fn compute_upper_ir_with(g: &Graph, opts: &DriverOptions) -> (usize, SearchStats) {
    let n = g.n_alive() as i64;
    let mut stats = SearchStats::default();
    if n == 0 {
        return (0, stats);
    }
    let threshold = opts.threshold.unwrap_or(opts.algo.enumeration_threshold());
    assert!((0.0..1.0).contains(&threshold), "threshold must be a fraction of n");
    let cap = (threshold * n as f64).floor() as i64;
    for k in 0..=cap.min(n) {
        let out = kernel_comaxir(g, k);
        let yes = match out.verdict {
            KernelVerdict::Yes => true,
            KernelVerdict::No => false,
            KernelVerdict::Reduced => {
                let (hit, sub) = decide_budget(&out.graph, out.k, opts);
                stats.absorb(&sub);
                hit
            }
        };
        if yes {
            return ((n - k) as usize, stats);
        }
    }
    // Every budget up to the threshold said NO, so IR < n − cap. All
    // irredundant sets that small are enumerated outright: irredundance is
    // hereditary, so the prefix tree below visits each one exactly once.
    let best = max_irredundant_up_to(g, (n - cap - 1).max(0) as usize);
    (best, stats)
}

/// ir(g): smallest size of a maximal irredundant set.
pub fn compute_ir(g: &Graph) -> usize {
    compute_ir_with(g).0
}

/// [`compute_ir`] with aggregated search counters.
///
/// Sweeps the budget k downward — near k = n the exact question "is
/// ir = n−k?" concerns tiny set sizes and is cheap to refute — and stops at
/// the first YES. The counting kernel floors the descent: once 2k ≤ n′ an
/// isolate-free graph is guaranteed a maximal irredundant set of size
/// ≤ n′−k, and the downward invariant (all larger budgets said NO) turns
/// that YES into equality.
pub fn compute_ir_with(g: &Graph) -> (usize, SearchStats) {
    let n = g.n_alive() as i64;
    let mut stats = SearchStats::default();
    for k in (0..=n).rev() {
        let out = kernel_cominmaxir(g, k);
        let yes = match out.verdict {
            KernelVerdict::Yes => true,
            KernelVerdict::No => false,
            KernelVerdict::Reduced => {
                // Isolate removal shifts ir and n′ equally, so equality at
                // the same budget transfers between the two graphs.
                let (hit, sub) = decide_exact_size(&out.graph, out.k);
                stats.absorb(&sub);
                hit
            }
        };
        if yes {
            return ((n - k) as usize, stats);
        }
    }
    unreachable!("budget 0 always answers yes");
}

/// Decide ir(g) = n−k: scan candidate sizes upward, succeed only when the
/// first size carrying a maximal irredundant set is exactly n−k.
fn decide_exact_size(g: &Graph, k: i64) -> (bool, SearchStats) {
    let n = g.n_alive() as i64;
    let target = n - k;
    let mut stats = SearchStats::default();
    let mut s = 0;
    while s <= target.min(n) && s >= 0 {
        let (hit, sub) = search_exact_size(g, s);
        stats.absorb(&sub);
        if hit {
            return (s == target, stats);
        }
        s += 1;
    }
    (false, stats)
}

/// Decide ir(g) ≤ n−k by scanning candidate sizes upward until one carries
/// a maximal irredundant set.
pub fn decide_le_cominmaxir(g: &Graph, k: i64) -> (bool, SearchStats) {
    let n = g.n_alive() as i64;
    let mut stats = SearchStats::default();
    let mut s = 0;
    while s <= (n - k).min(n) && s >= 0 {
        let (hit, sub) = search_exact_size(g, s);
        stats.absorb(&sub);
        if hit {
            return (true, stats);
        }
        s += 1;
    }
    (false, stats)
}

/// "IR(g) ≥ n−k" with the configured solver.
fn decide_budget(g: &Graph, k: i64, opts: &DriverOptions) -> (bool, SearchStats) {
    match opts.algo {
        Algo::Simple => decide_comaxir_simple(g, k),
        Algo::Mc => {
            let mc = McOptions { weights: opts.weights.clone(), ..McOptions::default() };
            decide_comaxir_mc_with(g, k, &mc, None)
        }
    }
}

/// Size of the largest irredundant set of size ≤ `cap`, by depth-first
/// extension over ascending vertex ids. Subsets of irredundant sets are
/// irredundant, so pruning non-irredundant prefixes loses nothing.
fn max_irredundant_up_to(g: &Graph, cap: usize) -> usize {
    fn rec(
        g: &Graph,
        verts: &[u32],
        start: usize,
        stack: &mut Vec<u32>,
        best: &mut usize,
        cap: usize,
    ) {
        *best = (*best).max(stack.len());
        if stack.len() == cap {
            return;
        }
        for idx in start..verts.len() {
            if stack.len() + (verts.len() - idx) <= *best {
                break;
            }
            stack.push(verts[idx]);
            if oracle::is_irredundant(g, stack) {
                rec(g, verts, idx + 1, stack, best, cap);
            }
            stack.pop();
        }
    }
    let verts: Vec<u32> = g.alive_vertices().collect();
    let mut best = 0;
    rec(g, &verts, 0, &mut Vec::new(), &mut best, cap);
    best
}

/// Erdős–Rényi G(n, p) from a seeded ChaCha stream; identical arguments
/// give identical graphs.
pub fn gen_random_graph(n: usize, p: f64, seed: u64) -> Graph {
    assert!((0.0..=1.0).contains(&p), "edge probability out of range");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n as u32 {
        for j in (i + 1)..n as u32 {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("generated edges are in range")
}

/// The graph on n vertices whose edge set is given by `mask`, one bit per
/// vertex pair in lexicographic order.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for i in 0..n as u32 {
        for j in (i + 1)..n as u32 {
            if mask >> bit & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    Graph::from_edges(n, &edges).expect("mask edges are in range")
}

/// One disagreement between a component under test and the oracle (or a
/// broken structural bound).
#[derive(Debug, Clone, Serialize)]
pub struct Mismatch {
    /// graph6 encoding of the instance.
    pub graph: String,
    pub k: i64,
    /// Which comparison failed.
    pub check: String,
    pub expected: String,
    pub got: String,
}

/// Order statistics over search-tree node counts.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct NodePercentiles {
    pub p50: u64,
    pub p90: u64,
    pub max: u64,
}

/// Per-budget aggregation of both solvers' node counts.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KStats {
    /// Decisions taken at this budget.
    pub count: u64,
    pub simple: NodePercentiles,
    pub mc: NodePercentiles,
    /// On how many decisions the weighted solver expanded at most as many
    /// nodes as the plain one.
    pub mc_not_worse: u64,
}

/// Outcome of a verification campaign.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CampaignReport {
    pub schema_version: u32,
    /// Graphs examined.
    pub instances: u64,
    /// Budget-indexed decisions compared against the oracle.
    pub decisions: u64,
    pub mismatches: Vec<Mismatch>,
    /// Broken structural assertions observed at reduced search states.
    pub violations: Vec<String>,
    /// Node-count statistics keyed by budget.
    pub node_stats: BTreeMap<i64, KStats>,
    pub wall_ms: u128,
}

/// Campaign controls beyond the (maxN, trials, seed) triple.
#[derive(Debug, Clone, Default)]
pub struct CampaignOptions {
    pub max_n: usize,
    pub trials: usize,
    pub seed: u64,
    /// Disable one weighted-solver reduction rule everywhere, to prove the
    /// campaign notices a broken solver.
    pub sabotage: Option<&'static str>,
}

enum InstanceSpec {
    Mask { n: usize, mask: u64 },
    Random { n: usize, p: f64, seed: u64 },
}

impl InstanceSpec {
    fn build(&self) -> Graph {
        match *self {
            InstanceSpec::Mask { n, mask } => graph_from_mask(n, mask),
            InstanceSpec::Random { n, p, seed } => gen_random_graph(n, p, seed),
        }
    }
}

struct InstanceResult {
    mismatches: Vec<Mismatch>,
    violations: Vec<String>,
    /// (budget, plain-solver nodes, weighted-solver nodes)
    samples: Vec<(i64, u64, u64)>,
    decisions: u64,
}

/// Replays every decision both solvers and both kernels can make about the
/// instance against the exponential oracle, plus the two exact drivers.
fn check_instance(g: &Graph, sabotage: Option<&'static str>) -> InstanceResult {
    let n = g.n_alive();
    let g6 = encode_graph(g, GraphFormat::Graph6).expect("instances fit graph6");
    let mut out = InstanceResult {
        mismatches: Vec::new(),
        violations: Vec::new(),
        samples: Vec::new(),
        decisions: 0,
    };
    let miss = |v: &mut Vec<Mismatch>, k: i64, check: &str, expected: String, got: String| {
        v.push(Mismatch { graph: g6.clone(), k, check: check.to_string(), expected, got });
    };

    let chain = oracle::domination_chain(g).expect("campaign instances fit the oracle");
    if !(chain.ir <= chain.gamma && chain.gamma <= chain.alpha && chain.alpha <= chain.upper_ir) {
        miss(
            &mut out.mismatches,
            -1,
            "oracle-chain-order",
            "ir ≤ γ ≤ α ≤ IR".to_string(),
            format!("{:?}", chain),
        );
    }

    let weights = Weights::default();
    let mc_opts = McOptions { disabled_rule: sabotage, ..McOptions::default() };
    for k in 0..=n as i64 {
        let expect_ge = chain.upper_ir as i64 >= n as i64 - k;
        let expect_eq = chain.ir as i64 == n as i64 - k;
        let expect_le = chain.ir as i64 <= n as i64 - k;
        out.decisions += 1;

        let (got_simple, simple_stats) = decide_comaxir_simple(g, k);
        if got_simple != expect_ge {
            miss(&mut out.mismatches, k, "simple-comaxir", expect_ge.to_string(), got_simple.to_string());
        }

        let mut probe = Probe::checking();
        let (got_mc, mc_stats) = decide_comaxir_mc_with(g, k, &mc_opts, Some(&mut probe));
        for v in probe.violations {
            out.violations.push(format!("{g6} k={k}: {v}"));
        }
        if got_mc != expect_ge {
            miss(&mut out.mismatches, k, "mc-comaxir", expect_ge.to_string(), got_mc.to_string());
        }
        out.samples.push((k, simple_stats.nodes, mc_stats.nodes));

        let (got_exact, _) = crate::solver::simple::decide_exact_cominmaxir(g, k);
        if got_exact != expect_eq {
            miss(&mut out.mismatches, k, "simple-exact-cominmaxir", expect_eq.to_string(), got_exact.to_string());
        }

        let crown = kernel_comaxir(g, k);
        let got_crown = match crown.verdict {
            KernelVerdict::Yes => true,
            KernelVerdict::No => false,
            KernelVerdict::Reduced => {
                if crown.graph.n_alive() as i64 > 3 * crown.k {
                    miss(
                        &mut out.mismatches,
                        k,
                        "crown-kernel-size",
                        format!("≤ {}", 3 * crown.k),
                        crown.graph.n_alive().to_string(),
                    );
                }
                decide_comaxir_mc_with(&crown.graph, crown.k, &mc_opts, None).0
            }
        };
        if got_crown != expect_ge {
            miss(&mut out.mismatches, k, "crown-kernel-chain", expect_ge.to_string(), got_crown.to_string());
        }

        let counting = kernel_cominmaxir(g, k);
        let got_counting = match counting.verdict {
            KernelVerdict::Yes => true,
            KernelVerdict::No => false,
            KernelVerdict::Reduced => {
                if counting.graph.n_alive() as i64 > 2 * counting.k - 1 {
                    miss(
                        &mut out.mismatches,
                        k,
                        "counting-kernel-size",
                        format!("≤ {}", 2 * counting.k - 1),
                        counting.graph.n_alive().to_string(),
                    );
                }
                decide_le_cominmaxir(&counting.graph, counting.k).0
            }
        };
        if got_counting != expect_le {
            miss(&mut out.mismatches, k, "counting-kernel-chain", expect_le.to_string(), got_counting.to_string());
        }
        let _ = weights;
    }

    let ir = compute_ir(g);
    if ir != chain.ir {
        miss(&mut out.mismatches, -1, "compute-ir", chain.ir.to_string(), ir.to_string());
    }
    let upper = compute_upper_ir(g);
    if upper != chain.upper_ir {
        miss(&mut out.mismatches, -1, "compute-upper-ir", chain.upper_ir.to_string(), upper.to_string());
    }

    out
}

fn percentile(sorted: &[u64], q: f64) -> u64 {
    debug_assert!(!sorted.is_empty());
    let rank = (sorted.len() as f64 * q).ceil() as usize;
    sorted[rank.clamp(1, sorted.len()) - 1]
}

/// Exhaustive sweep over every graph with at most min(maxN, 6) vertices,
/// plus `trials` seeded random instances with up to `maxN` vertices, each
/// replayed against the oracle by [`check_instance`].
pub fn verify_campaign(max_n: usize, trials: usize, seed: u64) -> CampaignReport {
    run_campaign(&CampaignOptions { max_n, trials, seed, sabotage: None })
}

/// [`verify_campaign`] with fault-injection controls.
pub fn run_campaign(opts: &CampaignOptions) -> CampaignReport {
    assert!(opts.max_n <= 14, "oracle comparability bounds the campaign at n = 14");
    assert!(opts.max_n >= 1, "campaign needs at least one vertex");
    let start = Instant::now();

    let mut specs = Vec::new();
    for n in 1..=opts.max_n.min(6) {
        for mask in 0..1u64 << (n * (n - 1) / 2) {
            specs.push(InstanceSpec::Mask { n, mask });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    const EDGE_PROBS: [f64; 3] = [0.2, 0.5, 0.8];
    for t in 0..opts.trials {
        let n = rng.gen_range(1..=opts.max_n);
        let p = EDGE_PROBS[t % EDGE_PROBS.len()];
        let seed = rng.gen();
        specs.push(InstanceSpec::Random { n, p, seed });
    }

    // A broken component under test must show up as a finding, not take
    // the campaign down with it — crashes become mismatch entries.
    let results: Vec<InstanceResult> = specs
        .par_iter()
        .map(|spec| {
            let g = spec.build();
            let g6 = encode_graph(&g, GraphFormat::Graph6).expect("instances fit graph6");
            std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| {
                check_instance(&g, opts.sabotage)
            }))
            .unwrap_or_else(|cause| {
                let msg = cause
                    .downcast_ref::<String>()
                    .map(String::as_str)
                    .or_else(|| cause.downcast_ref::<&str>().copied())
                    .unwrap_or("opaque panic");
                InstanceResult {
                    mismatches: vec![Mismatch {
                        graph: g6,
                        k: -1,
                        check: "solver-panic".to_string(),
                        expected: "a completed decision".to_string(),
                        got: msg.to_string(),
                    }],
                    violations: Vec::new(),
                    samples: Vec::new(),
                    decisions: 0,
                }
            })
        })
        .collect();

    let mut mismatches = Vec::new();
    let mut violations = Vec::new();
    let mut decisions = 0;
    let mut per_k: BTreeMap<i64, (Vec<u64>, Vec<u64>, u64)> = BTreeMap::new();
    for r in results {
        mismatches.extend(r.mismatches);
        violations.extend(r.violations);
        decisions += r.decisions;
        for (k, simple, mc) in r.samples {
            let slot = per_k.entry(k).or_insert_with(|| (Vec::new(), Vec::new(), 0));
            slot.0.push(simple);
            slot.1.push(mc);
            if mc <= simple {
                slot.2 += 1;
            }
        }
    }
    let node_stats = per_k
        .into_iter()
        .map(|(k, (mut simple, mut mc, mc_not_worse))| {
            simple.sort_unstable();
            mc.sort_unstable();
            let stat = |v: &[u64]| NodePercentiles {
                p50: percentile(v, 0.5),
                p90: percentile(v, 0.9),
                max: *v.last().expect("nonempty sample"),
            };
            (
                k,
                KStats {
                    count: simple.len() as u64,
                    simple: stat(&simple),
                    mc: stat(&mc),
                    mc_not_worse,
                },
            )
        })
        .collect();

    CampaignReport {
        schema_version: 1,
        instances: specs.len() as u64,
        decisions,
        mismatches,
        violations,
        node_stats,
        wall_ms: start.elapsed().as_millis(),
    }
}
