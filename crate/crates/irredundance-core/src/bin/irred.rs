//! Command-line front end: exact irredundance numbers, budget-indexed
//! decisions, kernelization, the brute-force oracle, the numerical bound
//! certifications, instance generation, the self-verification campaign, and
//! timed benchmarks.
//!
//! Exit codes: 0 — success, answer on stdout; 2 — usage or input error;
//! 3 — a verification failed (campaign mismatch or an unverified bound).

use std::io::Read;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use irredundance_core::analysis;
use irredundance_core::graph::{encode_graph, parse_graph, Graph, GraphFormat};
use irredundance_core::harness::{
    self, compute_ir_with, compute_upper_ir_with, gen_random_graph, Algo, DriverOptions,
};
use irredundance_core::kernel::{kernel_comaxir, kernel_cominmaxir, KernelVerdict};
use irredundance_core::labeling::Weights;
use irredundance_core::oracle;
use irredundance_core::solver::mc::{decide_comaxir_mc_with, McOptions};
use irredundance_core::solver::simple::{decide_comaxir_simple, decide_exact_cominmaxir};

#[derive(Parser)]
#[command(
    name = "irred",
    version,
    about = "Exact lower/upper irredundance numbers via kernelization and branch-and-reduce"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel sections (0 keeps the library default).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct GraphInput {
    /// Instance path, or "-" for stdin.
    #[arg(long, default_value = "-")]
    input: String,
    /// Instance encoding.
    #[arg(long, default_value = "edge-list")]
    format: GraphFormat,
}

impl GraphInput {
    fn read(&self) -> Result<Graph, String> {
        let text = if self.input == "-" {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| format!("reading stdin: {e}"))?;
            buf
        } else {
            std::fs::read_to_string(&self.input)
                .map_err(|e| format!("reading {}: {e}", self.input))?
        };
        parse_graph(&text, self.format).map_err(|e| format!("parsing {}: {e}", self.input))
    }
}

#[derive(Args)]
struct SolverArgs {
    /// Branch-and-reduce flavor.
    #[arg(long, value_enum, default_value_t = AlgoArg::Mc)]
    algo: AlgoArg,
    /// Measure weight for unpaired external kings/gardens.
    #[arg(long)]
    wl: Option<f64>,
    /// Measure weight for blocked vertices.
    #[arg(long)]
    wn: Option<f64>,
}

impl SolverArgs {
    fn weights(&self) -> Result<Weights, String> {
        match (self.wl, self.wn) {
            (None, None) => Ok(Weights::default()),
            (Some(wl), Some(wn)) => {
                Weights::from_f64(wl, wn).map_err(|e| format!("invalid weights: {e}"))
            }
            _ => Err("--wl and --wn must be given together".to_string()),
        }
    }

    fn driver(&self) -> Result<DriverOptions, String> {
        Ok(DriverOptions {
            algo: self.algo.into(),
            weights: self.weights()?,
            threshold: None,
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Simple,
    Mc,
}

impl From<AlgoArg> for Algo {
    fn from(a: AlgoArg) -> Algo {
        match a {
            AlgoArg::Simple => Algo::Simple,
            AlgoArg::Mc => Algo::Mc,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    /// Is there an irredundant set of size ≥ n−k (equivalently IR ≥ n−k)?
    CoMaxir,
    /// Is the smallest maximal irredundant set of size exactly n−k?
    ExactCoMinmaxir,
}

#[derive(Clone, Copy, ValueEnum)]
enum AnalyzeCheck {
    /// Case inequalities of the plain solver at base 3.841.
    Alg1,
    /// Weighted branch vectors at the default weights against base 3.069.
    Alg2,
    /// Enumeration/search balance points (win-win bases) and the n-based
    /// measure variant.
    Winwin,
    /// Grid search over the weight space.
    Optimize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute ir(G), the minimum size of a maximal irredundant set.
    Ir {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Compute IR(G), the maximum size of an irredundant set.
    UpperIr {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Answer one budget-indexed decision.
    Decide {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        solver: SolverArgs,
        /// Co-parameter: the budget of vertices outside the solution.
        #[arg(long)]
        k: i64,
        #[arg(long, value_enum)]
        problem: Problem,
    },
    /// Kernelize one budget-indexed instance.
    Kernel {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        k: i64,
        #[arg(long, value_enum)]
        problem: Problem,
    },
    /// Exact ir, γ, α, IR by exhaustive enumeration (small graphs only).
    Oracle {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Re-derive the solvers' running-time bounds numerically.
    Analyze {
        #[arg(long, value_enum)]
        check: AnalyzeCheck,
        /// Claimed base for alg1/alg2 (defaults 3.841 / 3.069).
        #[arg(long)]
        target: Option<f64>,
        /// Grid step for optimize (default 0.001).
        #[arg(long)]
        step: Option<f64>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Generate a seeded Erdős–Rényi instance on stdout.
    Gen {
        #[arg(long)]
        n: usize,
        /// Edge probability.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output encoding.
        #[arg(long, default_value = "edge-list")]
        format: GraphFormat,
    },
    /// Replay solvers, kernels and drivers against the oracle.
    Verify {
        /// Largest instance order (≤ 14).
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Random instances beyond the exhaustive sweep.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Time the exact drivers on seeded random instances.
    Bench {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        /// Number of seeded instances (seeds 0..count).
        #[arg(long, default_value_t = 3)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Which driver to time.
        #[arg(long, default_value = "upper-ir")]
        driver: String,
        #[command(flatten)]
        solver: SolverArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        // Ignore "already initialized": only the first builder wins, which
        // is exactly the semantics a CLI flag needs.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global();
    }
    match run(&cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    match &cli.cmd {
        Cmd::Ir { input } => {
            let g = input.read()?;
            let (ir, stats) = compute_ir_with(&g);
            if cli.json {
                print_json(&json!({
                    "schemaVersion": 1,
                    "command": "ir",
                    "n": g.n_alive(),
                    "m": g.m(),
                    "ir": ir,
                    "searchNodes": stats.nodes,
                }));
            } else {
                println!("ir = {ir}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::UpperIr { input, solver } => {
            let g = input.read()?;
            let opts = solver.driver()?;
            let (upper, stats) = compute_upper_ir_with(&g, &opts);
            if cli.json {
                print_json(&json!({
                    "schemaVersion": 1,
                    "command": "upper-ir",
                    "n": g.n_alive(),
                    "m": g.m(),
                    "upperIr": upper,
                    "searchNodes": stats.nodes,
                }));
            } else {
                println!("IR = {upper}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Decide { input, solver, k, problem } => {
            let g = input.read()?;
            if *k < 0 {
                return Err("--k must be nonnegative".to_string());
            }
            let (name, answer, stats) = match problem {
                Problem::CoMaxir => {
                    let (answer, stats) = match solver.algo {
                        AlgoArg::Simple => decide_comaxir_simple(&g, *k),
                        AlgoArg::Mc => {
                            let opts =
                                McOptions { weights: solver.weights()?, ..McOptions::default() };
                            decide_comaxir_mc_with(&g, *k, &opts, None)
                        }
                    };
                    ("co-maxir", answer, stats)
                }
                Problem::ExactCoMinmaxir => {
                    let (answer, stats) = decide_exact_cominmaxir(&g, *k);
                    ("exact-co-minmaxir", answer, stats)
                }
            };
            if cli.json {
                print_json(&json!({
                    "schemaVersion": 1,
                    "command": "decide",
                    "problem": name,
                    "k": k,
                    "answer": answer,
                    "searchNodes": stats.nodes,
                }));
            } else {
                println!("{}", if answer { "yes" } else { "no" });
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Kernel { input, k, problem } => {
            let g = input.read()?;
            if *k < 0 {
                return Err("--k must be nonnegative".to_string());
            }
            let (name, out) = match problem {
                Problem::CoMaxir => ("co-maxir", kernel_comaxir(&g, *k)),
                Problem::ExactCoMinmaxir => ("exact-co-minmaxir", kernel_cominmaxir(&g, *k)),
            };
            let verdict = match out.verdict {
                KernelVerdict::Yes => "yes",
                KernelVerdict::No => "no",
                KernelVerdict::Reduced => "reduced",
            };
            if cli.json {
                let encoded = encode_graph(&out.graph, GraphFormat::Graph6)
                    .map_err(|e| e.to_string())?;
                print_json(&json!({
                    "schemaVersion": 1,
                    "command": "kernel",
                    "problem": name,
                    "k": k,
                    "verdict": verdict,
                    "residualK": out.k,
                    "nAfter": out.n_after(),
                    "forced": out.forced,
                    "kernelGraph6": encoded,
                }));
            } else {
                println!(
                    "verdict = {verdict}, vertices {} -> {}, k {} -> {}, forced {}",
                    g.n_alive(),
                    out.n_after(),
                    k,
                    out.k,
                    out.forced.len()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Oracle { input } => {
            let g = input.read()?;
            let chain = oracle::domination_chain(&g).map_err(|e| e.to_string())?;
            if cli.json {
                print_json(&json!({
                    "schemaVersion": 1,
                    "command": "oracle",
                    "n": g.n_alive(),
                    "ir": chain.ir,
                    "gamma": chain.gamma,
                    "alpha": chain.alpha,
                    "upperIr": chain.upper_ir,
                }));
            } else {
                println!(
                    "ir = {}, gamma = {}, alpha = {}, IR = {}",
                    chain.ir, chain.gamma, chain.alpha, chain.upper_ir
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Analyze { check, target, step, solver } => analyze(cli, *check, *target, *step, solver),
        Cmd::Gen { n, p, seed, format } => {
            let g = gen_random_graph(*n, *p, *seed);
            print!("{}", encode_graph(&g, *format).map_err(|e| e.to_string())?);
            if *format == GraphFormat::Graph6 {
                println!();
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { max_n, trials, seed } => {
            if *max_n == 0 || *max_n > 14 {
                return Err("--max-n must be between 1 and 14".to_string());
            }
            let report = harness::verify_campaign(*max_n, *trials, *seed);
            let clean = report.mismatches.is_empty() && report.violations.is_empty();
            if cli.json {
                print_json(&serde_json::to_value(&report).map_err(|e| e.to_string())?);
            } else {
                println!(
                    "instances = {}, decisions = {}, mismatches = {}, violations = {} ({} ms)",
                    report.instances,
                    report.decisions,
                    report.mismatches.len(),
                    report.violations.len(),
                    report.wall_ms
                );
                for m in report.mismatches.iter().take(10) {
                    println!("  mismatch {} k={} {}: expected {}, got {}", m.graph, m.k, m.check, m.expected, m.got);
                }
                for v in report.violations.iter().take(10) {
                    println!("  violation {v}");
                }
            }
            Ok(if clean { ExitCode::SUCCESS } else { ExitCode::from(3) })
        }
        Cmd::Bench { n, p, count, seed, driver, solver } => {
            let opts = solver.driver()?;
            let mut rows = Vec::new();
            for i in 0..*count {
                let g = gen_random_graph(*n, *p, seed + i);
                let start = Instant::now();
                let (value, stats) = match driver.as_str() {
                    "upper-ir" => compute_upper_ir_with(&g, &opts),
                    "ir" => compute_ir_with(&g),
                    other => return Err(format!("unknown driver {other:?} (expected upper-ir or ir)")),
                };
                let ms = start.elapsed().as_millis();
                if !cli.json {
                    println!("seed {} -> {} = {value}, nodes {}, {} ms", seed + i, driver, stats.nodes, ms);
                }
                rows.push(json!({
                    "seed": seed + i,
                    "value": value,
                    "searchNodes": stats.nodes,
                    "wallMs": ms,
                }));
            }
            if cli.json {
                print_json(&json!({
                    "schemaVersion": 1,
                    "command": "bench",
                    "driver": driver,
                    "n": n,
                    "p": p,
                    "rows": rows,
                }));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn analyze(
    cli: &Cli,
    check: AnalyzeCheck,
    target: Option<f64>,
    step: Option<f64>,
    solver: &SolverArgs,
) -> Result<ExitCode, String> {
    match check {
        AnalyzeCheck::Alg1 => {
            let report = analysis::verify_alg1(target.unwrap_or(3.841));
            if cli.json {
                print_json(&with_schema(serde_json::to_value(&report).map_err(|e| e.to_string())?));
            } else {
                println!(
                    "base {} -> {} ({} checks, beta = {:.6})",
                    report.alpha,
                    verdict(report.pass),
                    report.checks.len(),
                    report.beta
                );
                for c in report.checks.iter().filter(|c| !c.pass) {
                    println!("  FAIL {}: value {}", c.name, c.value);
                }
            }
            Ok(pass_code(report.pass))
        }
        AnalyzeCheck::Alg2 => {
            let w = solver.weights()?;
            let report = analysis::verify_alg2(&w, target.unwrap_or(3.069));
            if cli.json {
                print_json(&with_schema(serde_json::to_value(&report).map_err(|e| e.to_string())?));
            } else {
                println!(
                    "weights ({}, {}) target {} -> {}; worst counted case {} at {:.6}",
                    report.wl,
                    report.wn,
                    report.target,
                    verdict(report.pass),
                    report.worst_case,
                    report.max_counted
                );
                for c in report.cases.iter().filter(|c| !c.pass) {
                    println!("  FAIL {}: branching {:.6}", c.name, c.branching);
                }
                for c in report.claims.iter().filter(|c| !c.pass) {
                    println!("  FAIL {}: value {}", c.name, c.value);
                }
            }
            Ok(pass_code(report.pass))
        }
        AnalyzeCheck::Winwin => {
            let fast = analysis::verify_winwin(3.841, 1.99914, 1e-3);
            let weighted = analysis::verify_winwin(3.069, 1.96, 5e-3);
            let translated = analysis::verify_nmeasure();
            let pass = fast.pass && weighted.pass && translated.pass;
            if cli.json {
                print_json(&json!({
                    "schemaVersion": 1,
                    "command": "analyze",
                    "check": "winwin",
                    "fast": fast,
                    "weighted": weighted,
                    "translatedMeasure": translated,
                    "pass": pass,
                }));
            } else {
                println!(
                    "3.841-solver balance: enumerate up to {:.6}n, base {:.5} (claimed {}) -> {}",
                    fast.threshold,
                    fast.base,
                    fast.claimed_base,
                    verdict(fast.pass)
                );
                println!(
                    "3.069-solver balance: enumerate up to {:.6}n, base {:.5} (claimed {}) -> {}",
                    weighted.threshold,
                    weighted.base,
                    weighted.claimed_base,
                    verdict(weighted.pass)
                );
                println!(
                    "vertex-count measure: base {:.5} (claimed {}) -> {}",
                    translated.base,
                    translated.claimed_base,
                    verdict(translated.pass)
                );
            }
            Ok(pass_code(pass))
        }
        AnalyzeCheck::Optimize => {
            let step = step.unwrap_or(1e-3);
            let (w, objective) = analysis::optimize_weights(step);
            if cli.json {
                print_json(&json!({
                    "schemaVersion": 1,
                    "command": "analyze",
                    "check": "optimize",
                    "step": step,
                    "wl": w.wl_f64(),
                    "wn": w.wn_f64(),
                    "objective": objective,
                }));
            } else {
                println!(
                    "best weights on a step-{step} grid: ({}, {}) with worst branching {:.6}",
                    w.wl_f64(),
                    w.wn_f64(),
                    objective
                );
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "FAIL"
    }
}

fn pass_code(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    }
}

fn with_schema(mut value: serde_json::Value) -> serde_json::Value {
    if let Some(map) = value.as_object_mut() {
        map.insert("schemaVersion".to_string(), json!(1));
    }
    value
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}
