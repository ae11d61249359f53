//! Numerical certification of the solvers' search-tree growth.
//!
//! Both solvers come with claimed exponential bases: 3.841 for the plain
//! branch-and-reduce search and 3.069 for the measure-weighted one, plus
//! win-win combinations that turn either into a full-enumeration bound below
//! 2^n. The branch inventories behind those claims are kept here as data,
//! together with routines that recompute every bound: branching numbers by
//! bisection, the closed-form case inequalities of the plain solver, the
//! weighted branch vectors of the measure-based solver (including the
//! infinite degree-indexed families, cut off once their tails decrease), a
//! grid search over the weight space, and the enumeration/balance points of
//! the win-win arguments.

use serde::Serialize;

use crate::labeling::Weights;

/// Slack added to pass/fail thresholds so that checks sitting exactly on a
/// bound do not flicker with rounding.
const SLACK: f64 = 1e-9;

/// Degree cutoff for the degree-indexed branch families. Beyond it every
/// family is certified to be strictly decreasing, so larger degrees only
/// improve the bounds.
pub const FAMILY_MAX_DEGREE: i64 = 12;

/// Growth base of a search tree whose branches decrease a measure by the
/// given amounts: the unique root x > 1 of Σ x^(−d_i) = 1.
///
/// A single-branch vector recurses without multiplying work, so its base is
/// 1. A nonpositive decrease means the recurrence does not shrink at all;
/// infinity is returned so any threshold check fails.
pub fn branching_number(decreases: &[f64]) -> f64 {
    assert!(!decreases.is_empty(), "a branch needs at least one decrease");
    if decreases.iter().any(|&d| d <= 0.0 || !d.is_finite()) {
        return f64::INFINITY;
    }
    if decreases.len() == 1 {
        return 1.0;
    }
    let total = |x: f64| decreases.iter().map(|&d| x.powf(-d)).sum::<f64>();
    let mut lo = 1.0_f64;
    let mut hi = 2.0_f64;
    while total(hi) > 1.0 {
        lo = hi;
        hi *= 2.0;
        assert!(hi < 1e12, "branching number diverged");
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if total(mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Serializes non-finite floats as null so reports stay valid JSON even
/// when a recurrence fails to shrink (infinite branching number).
fn json_lossy<S: serde::Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else {
        s.serialize_none()
    }
}

/// One verified inequality: `value` must lie in `[lo, hi]` (either side may
/// be open-ended).
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundCheck {
    pub name: String,
    #[serde(serialize_with = "json_lossy")]
    pub value: f64,
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    pub pass: bool,
}

impl BoundCheck {
    fn le(name: impl Into<String>, value: f64, hi: f64) -> Self {
        BoundCheck {
            name: name.into(),
            value,
            lo: None,
            hi: Some(hi),
            pass: value <= hi + SLACK,
        }
    }

    fn lt(name: impl Into<String>, value: f64, hi: f64) -> Self {
        BoundCheck {
            name: name.into(),
            value,
            lo: None,
            hi: Some(hi),
            pass: value < hi,
        }
    }

    fn eq(name: impl Into<String>, value: f64, target: f64, tol: f64) -> Self {
        BoundCheck {
            name: name.into(),
            value,
            lo: Some(target - tol),
            hi: Some(target + tol),
            pass: (value - target).abs() <= tol,
        }
    }

    fn between(name: impl Into<String>, value: f64, lo: f64, hi: f64) -> Self {
        BoundCheck {
            name: name.into(),
            value,
            lo: Some(lo),
            hi: Some(hi),
            pass: lo < value && value < hi,
        }
    }
}

/// Outcome of re-deriving the plain solver's case inequalities at base
/// `alpha`.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Alg1Report {
    pub alpha: f64,
    /// β = (1 + √α)/α, the per-vertex discount earned by each pending
    /// blocked vertex.
    pub beta: f64,
    pub checks: Vec<BoundCheck>,
    pub pass: bool,
}

/// Printed reference values for the settled-king-neighbor family of the
/// plain solver at α = 3.841, used as digit-for-digit regression anchors.
const KING_FAMILY_REFERENCE: [(i64, f64); 3] = [
    (2, 0.9138880316045346),
    (3, 0.9645844017875586),
    (4, 0.9576263068932915),
];

/// Checks every case inequality behind the plain solver's α^k search-tree
/// bound. All sums must stay ≤ 1 for the induction to close; the two
/// degree-indexed families are evaluated up to degree 10 together with
/// strictly-decreasing tail checks from degree 4 on.
pub fn verify_alg1(alpha: f64) -> Alg1Report {
    assert!(alpha > 1.0, "the base must be > 1");
    let a = alpha;
    let beta = (1.0 + a.sqrt()) / a;
    let p = |e: f64| a.powf(-e);

    let mut checks = Vec::new();

    // Pending blocked vertices each earn a factor β; the two-way branch on
    // one of them costs exactly α^{-1/2} + α^{-1}, which must equal β.
    checks.push(BoundCheck::lt("beta-below-one", beta, 1.0));
    checks.push(BoundCheck::eq(
        "blocked-branch-identity",
        p(0.5) + p(1.0),
        beta,
        1e-12,
    ));
    // An immediate leaf after d blocked vertices is at least as cheap as
    // branching them all the way down.
    for d in 2..=10 {
        checks.push(BoundCheck::le(
            format!("blocked-leaf-domination d={d}"),
            p((d as f64 - 1.0) / 2.0),
            beta.powi(d - 1),
        ));
    }

    // Pendant vertex hanging off a vertex with a free second neighbor,
    // with a blocked second neighbor, and with a settled second neighbor.
    checks.push(BoundCheck::le(
        "pendant-free-partner",
        2.0 * p(1.0) + 2.0 * p(1.0) * beta,
        1.0,
    ));
    checks.push(BoundCheck::le(
        "pendant-blocked-partner",
        3.0 * p(1.0) + p(1.5),
        1.0,
    ));
    checks.push(BoundCheck::le("pendant-settled-partner", 3.0 * p(1.0), 1.0));

    // A vertex seeing both a settled king and a settled garden; sub-cases by
    // how many free neighbors those two still have.
    checks.push(BoundCheck::le("king-and-garden both-tight", 3.0 * p(1.0), 1.0));
    checks.push(BoundCheck::le(
        "king-and-garden one-loose",
        p(1.5) + p(2.0) + p(1.0) + p(1.5) + p(1.0),
        1.0,
    ));
    checks.push(BoundCheck::le(
        "king-and-garden both-loose",
        p(1.0) + 2.0 * p(1.5) + 4.0 * p(2.0) + 2.0 * p(2.5),
        1.0,
    ));

    // Family: branch vertex of degree d next to exactly one settled king
    // (symmetrically, garden).
    let king_family = |d: i64| p(1.0) + p(0.5) * beta.powi(d as i32 - 1) + (d - 1) as f64 * p(1.0) * beta.powi(d as i32 - 2);
    for d in 2..=10 {
        checks.push(BoundCheck::le(
            format!("king-neighbor-family d={d}"),
            king_family(d),
            1.0,
        ));
    }
    if (a - 3.841).abs() < 1e-12 {
        for (d, reference) in KING_FAMILY_REFERENCE {
            checks.push(BoundCheck::eq(
                format!("king-neighbor-family reference d={d}"),
                king_family(d),
                reference,
                1e-12,
            ));
        }
    }
    for d in 4..=9 {
        checks.push(BoundCheck::lt(
            format!("king-neighbor-family tail d={d}"),
            king_family(d + 1),
            king_family(d),
        ));
    }

    // Family: branch vertex of degree d with an all-unlabeled neighborhood.
    let open_family = |d: i64| p(1.0) + p(d as f64) + 2.0 * d as f64 * p(1.0) * beta.powi(d as i32);
    for d in 2..=10 {
        checks.push(BoundCheck::le(
            format!("unlabeled-family d={d}"),
            open_family(d),
            1.0,
        ));
    }
    if (a - 3.841).abs() < 1e-12 {
        checks.push(BoundCheck::le("unlabeled-family cap d=2", open_family(2), 0.947));
        checks.push(BoundCheck::le("unlabeled-family cap d=3", open_family(3), 0.993));
        checks.push(BoundCheck::le("unlabeled-family cap d=4", open_family(4), 0.9994));
    }
    for d in 4..=9 {
        checks.push(BoundCheck::lt(
            format!("unlabeled-family tail d={d}"),
            open_family(d + 1),
            open_family(d),
        ));
    }

    let pass = checks.iter().all(|c| c.pass);
    Alg1Report { alpha, beta, checks, pass }
}

/// Affine expression `base + wl·ωℓ + wn·ωn` over the two solver weights.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct WeightExpr {
    pub base: f64,
    pub wl: f64,
    pub wn: f64,
}

impl WeightExpr {
    pub const fn new(base: f64, wl: f64, wn: f64) -> Self {
        WeightExpr { base, wl, wn }
    }

    pub fn eval(&self, wl: f64, wn: f64) -> f64 {
        self.base + self.wl * wl + self.wn * wn
    }
}

/// One branching situation of the measure-weighted solver: a name, the
/// per-branch measure decreases as weight expressions, whether the case
/// counts toward the certified maximum, and an optional remark for rows kept
/// for comparison only.
#[derive(Clone, Debug, Serialize)]
pub struct BranchCase {
    pub name: String,
    pub decreases: Vec<WeightExpr>,
    pub counted: bool,
    pub note: Option<String>,
}

impl BranchCase {
    fn counted(name: impl Into<String>, decreases: Vec<WeightExpr>) -> Self {
        BranchCase { name: name.into(), decreases, counted: true, note: None }
    }

    fn comparison(name: impl Into<String>, decreases: Vec<WeightExpr>, note: &str) -> Self {
        BranchCase {
            name: name.into(),
            decreases,
            counted: false,
            note: Some(note.to_string()),
        }
    }
}

/// The measure-weighted solver's branch inventory.
///
/// Case names follow the situation the solver is in when the branch fires:
/// (1x) branching on a blocked vertex, (2x) an unlabeled vertex wedged
/// between a settled king and garden, (3) pairing an unpaired external of
/// degree i, (4x) branching on an unlabeled vertex of degree i when only
/// unlabeled vertices remain ((4a): some neighbor has degree two, (4b):
/// none does). `#j` indexes the branches inside a case; degree-indexed
/// families are instantiated for each degree up to [`FAMILY_MAX_DEGREE`].
///
/// Rows marked as comparisons record alternate published decreases that the
/// branch moves themselves do not support (or stronger ones used only in the
/// saddle-point discussion); they are reported but never counted.
pub fn branch_cases() -> Vec<BranchCase> {
    let e = WeightExpr::new;
    let mut cases = Vec::new();

    // Blocked vertex, no settled garden neighbor: wilderness vs. king.
    cases.push(BranchCase::counted("(1a)", vec![e(1.0, 0.0, -1.0), e(0.0, 1.0, -1.0)]));
    // Blocked vertex next to an unpaired garden whose degree is two. The
    // wilderness branch forces the garden onto its other neighbor and earns
    // a follow-up blocking bonus.
    cases.push(BranchCase::counted("(1b)", vec![e(2.0, -1.0, -1.0), e(1.0, -1.0, 1.0)]));
    cases.push(BranchCase::comparison(
        "(1b) tabulated",
        vec![e(2.0, -1.0, -2.0), e(1.0, -1.0, 1.0)],
        "wilderness branch charged without the follow-up blocking bonus; kept alongside the main row without deciding which was intended",
    ));
    // As (1b) but the garden has degree at least three.
    cases.push(BranchCase::counted("(1c)", vec![e(1.0, 0.0, -1.0), e(1.0, -1.0, 2.0)]));

    // Wedged vertex: king side and garden side both have degree ≥ 3 (2a),
    // both degree 2 (2b), mixed (2c). The wilderness branch is skipped.
    cases.push(BranchCase::counted("(2a)", vec![e(1.0, -1.0, 2.0), e(1.0, -1.0, 2.0)]));
    cases.push(BranchCase::counted("(2b)", vec![e(2.0, -2.0, 1.0), e(2.0, -2.0, 1.0)]));
    cases.push(BranchCase::counted("(2c)", vec![e(2.0, -2.0, 1.0), e(1.0, -1.0, 1.0)]));

    // Pairing an unpaired external of degree i: i branches, each settling the
    // pair, blocking the external's other neighbors and at least one
    // neighbor of the new partner.
    for i in 2..=FAMILY_MAX_DEGREE {
        let fi = i as f64;
        cases.push(BranchCase::counted(
            format!("(3)#{i}"),
            vec![e(1.0, -1.0, fi); i as usize],
        ));
        cases.push(BranchCase::comparison(
            format!("(3)#{i} credited"),
            vec![e(1.0, -1.0, fi + 1.0); i as usize],
            "pairing credited with one extra blocked neighbor; basis of the saddle-point discussion",
        ));
    }

    // Only unlabeled vertices left; branch vertex v of degree i. Branches:
    // wilderness (with a pendant cascade when a degree-two neighbor exists),
    // isolated king, and 2i pairings (v king with garden u, and swapped).
    // Each pairing converts an unlabeled vertex into a settled garden (a
    // full unit) and blocks the remaining neighbors of both endpoints.
    for i in 3..=FAMILY_MAX_DEGREE {
        let fi = i as f64;
        let mut main = vec![e(2.0, 0.0, 0.0), e(fi, 0.0, 0.0)];
        main.extend(vec![e(1.0, 0.0, fi); 2 * i as usize]);
        cases.push(BranchCase::counted(format!("(4a)#{i}"), main));
        let mut tab = vec![e(2.0, 0.0, 0.0), e(fi, 0.0, 0.0)];
        tab.extend(vec![e(1.0, -1.0, fi); 2 * i as usize]);
        cases.push(BranchCase::comparison(
            format!("(4a)#{i} tabulated"),
            tab,
            "pairing discounted as if the new garden had already been an active external; the branch converts an unlabeled vertex, so the full unit applies — comparison only",
        ));
    }
    for i in 4..=FAMILY_MAX_DEGREE {
        let fi = i as f64;
        let mut main = vec![e(1.0, 0.0, 0.0), e(fi, 0.0, 0.0)];
        main.extend(vec![e(1.0, 0.0, fi + 1.0); 2 * i as usize]);
        cases.push(BranchCase::counted(format!("(4b)#{i}"), main));
        let mut tab = vec![e(1.0, 0.0, 0.0), e(fi, 0.0, 0.0)];
        tab.extend(vec![e(1.0, -1.0, fi + 1.0); 2 * i as usize]);
        cases.push(BranchCase::comparison(
            format!("(4b)#{i} tabulated"),
            tab,
            "pairing discounted as if the new garden had already been an active external; comparison only",
        ));
    }
    // Degree-three with no degree-two neighbor forces a cubic-regular
    // remainder; that situation arises at most once per root-to-leaf path,
    // so it contributes a constant factor rather than entering the base.
    let mut cubic = vec![e(1.0, 0.0, 0.0), e(3.0, 0.0, 0.0)];
    cubic.extend(vec![e(1.0, 0.0, 4.0); 6]);
    cases.push(BranchCase::comparison(
        "(4b)#3 regular",
        cubic,
        "cubic-regular pairing step; occurs at most once per root-to-leaf path and only adds a constant factor",
    ));

    cases
}

/// A branch case instantiated at concrete weights.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CaseResult {
    pub name: String,
    pub vector: Vec<f64>,
    #[serde(serialize_with = "json_lossy")]
    pub branching: f64,
    pub counted: bool,
    pub pass: bool,
    pub note: Option<String>,
}

/// Outcome of instantiating the weighted branch inventory at a weight pair.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Alg2Report {
    pub wl: f64,
    pub wn: f64,
    pub target: f64,
    pub cases: Vec<CaseResult>,
    /// Largest branching number among counted cases.
    #[serde(serialize_with = "json_lossy")]
    pub max_counted: f64,
    /// Name of the counted case attaining `max_counted`.
    pub worst_case: String,
    /// Tail and saddle-point checks certifying that the degree cutoff loses
    /// nothing, plus the published caps on individual family values.
    pub claims: Vec<BoundCheck>,
    pub pass: bool,
}

/// Instantiates every branch case at the given weights, solves the
/// branching numbers, and certifies the degree-family tails. Passes iff all
/// counted branching numbers stay ≤ `target` and the tail/saddle claims
/// hold.
pub fn verify_alg2(w: &Weights, target: f64) -> Alg2Report {
    assert!(target > 1.0, "the base must be > 1");
    let (wl, wn) = (w.wl_f64(), w.wn_f64());
    let t = target;

    let mut cases = Vec::new();
    let mut max_counted = f64::NEG_INFINITY;
    let mut worst_case = String::new();
    for case in branch_cases() {
        let vector: Vec<f64> = case.decreases.iter().map(|d| d.eval(wl, wn)).collect();
        let branching = branching_number(&vector);
        let pass = !case.counted || branching <= t + SLACK;
        if case.counted && branching > max_counted {
            max_counted = branching;
            worst_case = case.name.clone();
        }
        cases.push(CaseResult {
            name: case.name,
            vector,
            branching,
            counted: case.counted,
            pass,
            note: case.note,
        });
    }

    // Family shapes as functions of a continuous degree, evaluated at the
    // target base: Σ over branches of t^(−decrease). A family value ≤ 1 is
    // the same statement as its branching number ≤ t.
    let pairing = |i: f64| i * t.powf(-(1.0 - wl + i * wn));
    let pairing_credited = |i: f64| i * t.powf(-(1.0 - wl + (i + 1.0) * wn));
    let open_shared = |i: f64| 2.0 * i * t.powf(-(1.0 + i * wn)) + t.powf(-i);
    let open_a = |i: f64| open_shared(i) + t.powf(-2.0);
    let open_b = |i: f64| 2.0 * i * t.powf(-(1.0 + (i + 1.0) * wn)) + t.powf(-i) + t.powf(-1.0);
    let argmax = |f: &dyn Fn(f64) -> f64, lo: f64, hi: f64| {
        let mut best = (lo, f(lo));
        let steps = 40_000;
        for s in 0..=steps {
            let x = lo + (hi - lo) * s as f64 / steps as f64;
            let y = f(x);
            if y > best.1 {
                best = (x, y);
            }
        }
        best.0
    };

    let mut claims = Vec::new();
    // The pairing family peaks where the degree equals 1/(ωn · ln t) and
    // decreases beyond; with the default weights that is ≈ 3.63, so
    // evaluating through the cutoff covers the maximum.
    let saddle3 = 1.0 / (wn * t.ln());
    claims.push(BoundCheck::le("(3) saddle before cutoff", saddle3, FAMILY_MAX_DEGREE as f64));
    let cutoff = FAMILY_MAX_DEGREE as f64;
    let worst_tail3 = {
        let mut worst = f64::NEG_INFINITY;
        let mut i = saddle3.ceil().max(4.0);
        while i < cutoff {
            worst = worst.max(pairing(i + 1.0) - pairing(i));
            i += 1.0;
        }
        worst
    };
    claims.push(BoundCheck::lt("(3) tail decreasing past saddle", worst_tail3, 0.0));
    claims.push(BoundCheck::lt("(3) credited value at saddle", pairing_credited(saddle3), 0.8));
    claims.push(BoundCheck::lt("(3) credited value at degree 3", pairing_credited(3.0), 0.8));

    let saddle4a = argmax(&open_a, 2.0, cutoff);
    claims.push(BoundCheck::between("(4a) saddle location", saddle4a, 3.0, 4.0));
    claims.push(BoundCheck::lt("(4a) value at degree 3", open_a(3.0), 1.0));
    claims.push(BoundCheck::lt("(4a) value at degree 4", open_a(4.0), 1.0));
    let worst_tail4a = (4..FAMILY_MAX_DEGREE)
        .map(|i| open_a(i as f64 + 1.0) - open_a(i as f64))
        .fold(f64::NEG_INFINITY, f64::max);
    claims.push(BoundCheck::lt("(4a) tail decreasing from degree 4", worst_tail4a, 0.0));

    // The (4b) shape peaks slightly below degree 3 (≈2.96 at the default
    // weights); what matters for the cutoff is that the peak sits before
    // degree 4, so the counted domain i ≥ 4 is covered by its first entry.
    let saddle4b = argmax(&open_b, 2.0, cutoff);
    claims.push(BoundCheck::lt("(4b) saddle before degree 4", saddle4b, 4.0));
    claims.push(BoundCheck::lt("(4b) value at degree 4", open_b(4.0), 0.998));
    let worst_tail4b = (4..FAMILY_MAX_DEGREE)
        .map(|i| open_b(i as f64 + 1.0) - open_b(i as f64))
        .fold(f64::NEG_INFINITY, f64::max);
    claims.push(BoundCheck::lt("(4b) tail decreasing from degree 4", worst_tail4b, 0.0));

    let pass = cases.iter().all(|c| c.pass) && claims.iter().all(|c| c.pass);
    Alg2Report { wl, wn, target, cases, max_counted, worst_case, claims, pass }
}

/// Largest counted branching number at a weight pair; stops early once the
/// running maximum exceeds `give_up` (used for pruning during grid search).
fn weight_objective(cases: &[BranchCase], wl: f64, wn: f64, give_up: f64) -> f64 {
    let mut worst = f64::NEG_INFINITY;
    let mut vector = Vec::new();
    for case in cases {
        if !case.counted {
            continue;
        }
        vector.clear();
        vector.extend(case.decreases.iter().map(|d| d.eval(wl, wn)));
        worst = worst.max(branching_number(&vector));
        if worst > give_up {
            break;
        }
    }
    worst
}

/// Grid search over the feasible weight region (ωn ≤ ½ ≤ ωℓ, ωn + ωℓ ≤ 1)
/// minimizing the largest counted branching number. Returns the best weight
/// pair and its objective.
pub fn optimize_weights(step: f64) -> (Weights, f64) {
    assert!(step > 0.0 && step <= 0.1 + SLACK, "grid step must be in (0, 0.1]");
    let cases = branch_cases();
    let scale = crate::labeling::MEASURE_SCALE;
    let step_num = (step * scale as f64).round() as i64;
    assert!(
        step_num > 0 && ((step_num as f64 / scale as f64) - step).abs() < 1e-9,
        "grid step must be representable over the weight scale"
    );

    let mut best: Option<(i64, i64, f64)> = None;
    let mut wl_num = scale / 2;
    while wl_num <= scale {
        let mut wn_num = 0;
        while wn_num <= scale / 2 && wn_num + wl_num <= scale {
            let wl = wl_num as f64 / scale as f64;
            let wn = wn_num as f64 / scale as f64;
            let give_up = best.map_or(f64::INFINITY, |(_, _, obj)| obj);
            let obj = weight_objective(&cases, wl, wn, give_up);
            if best.map_or(true, |(_, _, b)| obj < b) {
                best = Some((wl_num, wn_num, obj));
            }
            wn_num += step_num;
        }
        wl_num += step_num;
    }

    let (wl_num, wn_num, objective) = best.expect("grid contains at least one feasible point");
    let weights = Weights::from_numerators(wl_num, wn_num).expect("grid point is feasible");
    (weights, objective)
}

/// Balance point of a win-win argument: enumerating all vertex subsets up to
/// size p·n costs (p^−p (1−p)^−(1−p))^n, while running a α^k solver for all
/// k ≤ (1−p)·n costs α^((1−p)n). The threshold equalizes the two bases.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct WinWinReport {
    pub alpha: f64,
    /// Fraction p of n up to which subsets are enumerated.
    pub threshold: f64,
    /// Common exponential base at the balance point.
    pub base: f64,
    pub claimed_base: f64,
    pub pass: bool,
}

/// Finds the subset-size fraction balancing exhaustive enumeration against a
/// α^k budgeted search, and compares the resulting base with a claim.
pub fn verify_winwin(alpha: f64, claimed_base: f64, tol: f64) -> WinWinReport {
    assert!(alpha > 1.0, "the base must be > 1");
    // Entropy in nats; exp(entropy(p)) is the enumeration base.
    let entropy = |p: f64| -p * p.ln() - (1.0 - p) * (1.0 - p).ln();
    let gap = |p: f64| entropy(p) - (1.0 - p) * alpha.ln();
    let (threshold, base);
    if gap(0.5) <= 0.0 {
        // The solver is so slow that full enumeration up to n/2 wins.
        threshold = 0.5;
        base = 2.0;
    } else {
        let mut lo = 1e-12;
        let mut hi = 0.5;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if gap(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        threshold = 0.5 * (lo + hi);
        base = entropy(threshold).exp();
    }
    WinWinReport {
        alpha,
        threshold,
        base,
        claimed_base,
        pass: (base - claimed_base).abs() <= tol,
    }
}

/// Re-basing the weighted measure on the vertex count n instead of the
/// budget k (settled kings then cost a full unit too) and adjusting the two
/// cheapest branch shapes accordingly.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NMeasureReport {
    pub wl: f64,
    pub wn: f64,
    /// Branching number of the blocked-vertex shape (1a) under the n-based
    /// measure.
    pub blocked: f64,
    /// Branching number of the garden-pairing shape (1c) under the n-based
    /// measure, with the pairing bonus added (the published expression
    /// subtracts it; the underlying moves add blocked neighbors, so their
    /// weight enters positively).
    pub pairing: f64,
    /// The pairing shape with the bonus subtracted as published, recorded
    /// for comparison.
    pub pairing_variant: f64,
    /// max(blocked, pairing) — the growth base certified by these two
    /// shapes alone.
    pub base: f64,
    pub claimed_base: f64,
    pub pass: bool,
}

/// Evaluates the n-based variant of the weighted measure at its published
/// weight pair (ω̃ℓ = 1.13, ω̃n = 0.08; weights above 1 are admissible
/// here). The two translated branch shapes already force a base above 2,
/// showing that the budget-based measure is what beats plain enumeration.
pub fn verify_nmeasure() -> NMeasureReport {
    let (wl, wn) = (1.13, 0.08);
    let claimed_base = 2.036;
    let blocked = branching_number(&[1.0 - wn, wl - wn]);
    let pairing = branching_number(&[1.0 - wn, 2.0 - wl + 2.0 * wn]);
    let pairing_variant = branching_number(&[1.0 - wn, 2.0 - wl - 2.0 * wn]);
    let base = blocked.max(pairing);
    NMeasureReport {
        wl,
        wn,
        blocked,
        pairing,
        pairing_variant,
        base,
        claimed_base,
        pass: (base - claimed_base).abs() <= 5e-3,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn branching_number_closed_forms() {
        assert!((branching_number(&[1.0, 1.0]) - 2.0).abs() < 1e-10);
        let golden = (1.0 + 5.0_f64.sqrt()) / 2.0;
        assert!((branching_number(&[1.0, 2.0]) - golden).abs() < 1e-10);
        assert!((branching_number(&[2.0, 2.0]) - 2.0_f64.sqrt()).abs() < 1e-10);
        assert_eq!(branching_number(&[3.0]), 1.0);
        assert_eq!(branching_number(&[1.0, -0.25]), f64::INFINITY);
        assert_eq!(branching_number(&[1.0, 0.0]), f64::INFINITY);
    }

    #[test]
    fn branching_number_is_monotone() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let len = rng.gen_range(2..=6);
            let base: Vec<f64> = (0..len).map(|_| rng.gen_range(0.2..3.0)).collect();
            let bumped: Vec<f64> = base.iter().map(|d| d + rng.gen_range(0.01..0.5)).collect();
            assert!(branching_number(&bumped) < branching_number(&base));
        }
    }

    #[test]
    fn plain_solver_cases_hold_at_its_base() {
        let report = verify_alg1(3.841);
        assert!(report.beta < 1.0);
        assert!(report.pass, "failing checks: {:?}",
            report.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>());
        for (d, reference) in KING_FAMILY_REFERENCE {
            let name = format!("king-neighbor-family reference d={d}");
            let check = report.checks.iter().find(|c| c.name == name).unwrap();
            assert!((check.value - reference).abs() <= 1e-12);
        }
    }

    #[test]
    fn plain_solver_cases_fail_below_the_base() {
        assert!(!verify_alg1(3.5).pass);
    }

    #[test]
    fn weighted_solver_cases_hold_at_default_weights() {
        let report = verify_alg2(&Weights::default(), 3.069);
        assert!(report.pass, "failing: {:?}",
            report
                .cases
                .iter()
                .filter(|c| !c.pass)
                .map(|c| (&c.name, c.branching))
                .collect::<Vec<_>>());
        assert!(report.max_counted <= 3.069 + 1e-9);
        let blocked = report.cases.iter().find(|c| c.name == "(1a)").unwrap();
        assert!((blocked.branching - 3.0686).abs() < 1e-3);
        // The comparison rows document decreases the moves cannot deliver:
        // at the default weights they overshoot the target.
        let tab = report.cases.iter().find(|c| c.name == "(4a)#3 tabulated").unwrap();
        assert!(!tab.counted && tab.branching > 3.069);
        assert!(report.claims.iter().all(|c| c.pass));
    }

    #[test]
    fn weighted_solver_cases_fail_at_a_smaller_target() {
        assert!(!verify_alg2(&Weights::default(), 3.0).pass);
    }

    #[test]
    fn degenerate_weights_fail_but_still_serialize() {
        // (0.5, 0.5) zeroes the external-vs-blocked gap: some branch
        // vectors stop shrinking and their branching numbers diverge. The
        // report must say FAIL and still be valid JSON.
        let w = Weights::from_numerators(5_000, 5_000).unwrap();
        let report = verify_alg2(&w, 3.069);
        assert!(!report.pass);
        assert!(report.cases.iter().any(|c| c.branching.is_infinite()));
        assert!(serde_json::to_value(&report).is_ok());
    }

    #[test]
    fn coarse_weight_grid_is_sane() {
        let (w, objective) = optimize_weights(0.1);
        assert!(objective <= 4.0);
        assert!(w.wn_f64() + w.wl_f64() <= 1.0 + 1e-9);
    }

    #[test]
    fn fine_weight_grid_reaches_the_published_region() {
        let (w, objective) = optimize_weights(1e-3);
        assert!(objective <= 3.070, "objective {objective} at ({}, {})", w.wl_f64(), w.wn_f64());
        assert!((w.wl_f64() - 0.7455).abs() < 0.05);
        assert!((w.wn_f64() - 0.2455).abs() < 0.05);
    }

    #[test]
    fn winwin_balance_points() {
        let fast = verify_winwin(3.841, 1.99914, 1e-3);
        assert!(fast.pass, "base {}", fast.base);
        assert!((fast.threshold - 0.485252).abs() < 1e-3);
        let weighted = verify_winwin(3.069, 1.96, 5e-3);
        assert!(weighted.pass, "base {}", weighted.base);
        assert!((weighted.threshold - 0.4).abs() < 5e-3);
    }

    #[test]
    fn n_based_measure_cannot_beat_enumeration() {
        let report = verify_nmeasure();
        assert!(report.pass, "base {}", report.base);
        assert!(report.base > 2.0);
        assert!(report.pairing_variant > report.pairing);
    }
}
