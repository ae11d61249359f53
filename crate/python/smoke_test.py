#!/usr/bin/env python3
"""Smoke test for the irredundance_py extension module.

Builds are not driven from here; compile the module first with

    cargo build -p irredundance-py

then run

    python3 python/smoke_test.py

The script locates the compiled library in target/{release,debug} (or at
$IRRED_PY_LIB), stages it under an importable name, and exercises every
exported function against independently known values.
"""

import math
import os
import shutil
import sys
import tempfile


def locate_library() -> str:
    override = os.environ.get("IRRED_PY_LIB")
    if override:
        if not os.path.exists(override):
            raise SystemExit(f"IRRED_PY_LIB points at a missing file: {override}")
        return override
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    candidates = [
        os.path.join(root, "target", profile, name)
        for profile in ("release", "debug")
        for name in ("libirredundance_py.so", "libirredundance_py.dylib", "irredundance_py.dll")
    ]
    for path in candidates:
        if os.path.exists(path):
            return path
    raise SystemExit(
        "compiled module not found; run `cargo build -p irredundance-py` first\n"
        "searched:\n  " + "\n  ".join(candidates)
    )


def import_module(libpath: str):
    staging = tempfile.mkdtemp(prefix="irredundance_py_")
    suffix = ".pyd" if libpath.endswith(".dll") else ".so"
    shutil.copy2(libpath, os.path.join(staging, "irredundance_py" + suffix))
    sys.path.insert(0, staging)
    import irredundance_py

    return irredundance_py


def expect(cond: bool, message: str) -> None:
    if not cond:
        raise AssertionError(message)


def expect_raises(fn, message: str) -> None:
    try:
        fn()
    except ValueError:
        return
    raise AssertionError(f"{message}: expected ValueError")


def main() -> None:
    ir = import_module(locate_library())
    checks = 0

    def ok(cond: bool, message: str) -> None:
        nonlocal checks
        expect(cond, message)
        checks += 1

    # --- graphs -----------------------------------------------------------
    p3 = ir.Graph(3, [(0, 1), (1, 2)])
    ok(p3.n == 3 and p3.m == 2, "P3 has 3 vertices and 2 edges")
    ok(p3.degree(1) == 2, "middle vertex of P3 has degree 2")
    ok(sorted(p3.neighbors(1)) == [0, 2], "P3 adjacency")
    ok(p3.edges() == [(0, 1), (1, 2)], "edge listing round-trips")
    ok("n=3" in repr(p3), "repr mentions the order")
    expect_raises(lambda: p3.degree(7), "degree on a missing vertex")
    expect_raises(lambda: ir.Graph(2, [(0, 5)]), "edge endpoint out of range")
    checks += 2

    text = "p edge 3 2\ne 1 2\ne 2 3\n"
    parsed = ir.Graph.parse(text)
    ok(parsed.edges() == p3.edges(), "edge-list parsing")
    g6 = p3.encode("graph6")
    ok(ir.Graph.parse(g6, "graph6").edges() == p3.edges(), "graph6 round-trip")
    expect_raises(lambda: ir.Graph.parse("p edge x", "edge-list"), "malformed header")
    expect_raises(lambda: p3.encode("morse"), "unknown format")
    checks += 2

    r1 = ir.Graph.random(12, 0.4, 99)
    r2 = ir.Graph.random(12, 0.4, 99)
    ok(r1.edges() == r2.edges(), "random graphs are seed-deterministic")
    expect_raises(lambda: ir.Graph.random(5, 1.5, 0), "probability out of range")
    checks += 1

    # --- exact values -----------------------------------------------------
    c5 = ir.Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    ok(ir.compute_ir(p3) == 1 and ir.compute_upper_ir(p3) == 2, "P3: ir=1, IR=2")
    ok(ir.compute_ir(c5) == 2 and ir.compute_upper_ir(c5) == 2, "C5: ir=IR=2")

    petersen = ir.Graph(
        10,
        [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
         (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
         (0, 5), (1, 6), (2, 7), (3, 8), (4, 9)],
    )
    ok(ir.compute_ir(petersen) == 3, "Petersen: ir=3")
    ok(ir.compute_upper_ir(petersen) == 5, "Petersen: IR=5")
    ok(ir.compute_upper_ir(petersen, "simple") == 5, "both solvers agree on IR")

    chain = ir.domination_chain(c5)
    ok(chain == {"ir": 2, "gamma": 2, "alpha": 2, "upper_ir": 2},
       "C5 domination chain")
    ok(ir.is_irredundant(c5, [0, 2]), "independent pair is irredundant")
    ok(not ir.is_irredundant(p3, [0, 1, 2]), "all of P3 is redundant")

    # --- deciders and kernels --------------------------------------------
    n = 10
    ok(ir.decide_comaxir(petersen, n - 5), "IR(Petersen) >= 5 via mc")
    ok(ir.decide_comaxir(petersen, n - 5, "simple"), "IR(Petersen) >= 5 via simple")
    ok(not ir.decide_comaxir(petersen, n - 6), "IR(Petersen) < 6")
    ok(ir.decide_exact_cominmaxir(petersen, n - 3), "ir(Petersen) = 3")
    ok(not ir.decide_exact_cominmaxir(petersen, n - 2), "ir(Petersen) != 2")
    expect_raises(lambda: ir.decide_comaxir(p3, -1), "negative budget")
    checks += 1

    kc = ir.kernelize_comaxir(petersen, 3)
    ok(kc["verdict"] in ("yes", "no", "reduced"), "crown kernel verdict")
    ok(kc["verdict"] != "reduced" or kc["n_after"] <= 3 * kc["k"],
       "crown kernel size bound")
    km = ir.kernelize_cominmaxir(petersen, 4)
    ok(km["verdict"] != "reduced" or km["n_after"] <= 2 * km["k"] - 1,
       "counting kernel size bound")
    for out in (kc, km):
        ok(isinstance(out["graph"], ir.Graph) and out["graph"].n == out["n_after"],
           "kernel graph is compacted")

    # --- running-time certification --------------------------------------
    ok(abs(ir.branching_number([1.0, 1.0]) - 2.0) < 1e-9, "binary split branches at 2")
    ok(math.isinf(ir.branching_number([1.0, 0.0])), "non-shrinking branch diverges")
    expect_raises(lambda: ir.branching_number([]), "empty branch vector")
    checks += 1

    a1 = ir.verify_alg1()
    ok(a1["pass"] and abs(a1["alpha"] - 3.841) < 1e-12, "plain solver cases certify")
    a2 = ir.verify_alg2()
    ok(a2["pass"], "weighted solver cases certify at the published weights")
    ok(abs(a2["maxCounted"] - 3.069) < 1e-3, "worst branching number is about 3.069")
    bad = ir.verify_alg2(0.7455, 0.2455, 2.5)
    ok(not bad["pass"], "an unachievable target is rejected")

    ww = ir.verify_winwin(3.841, 1.99914)
    ok(ww["pass"] and abs(ww["threshold"] - 0.485252) < 1e-4, "win-win balance at 3.841")
    ok(ir.verify_winwin(3.069, 1.96, 5e-3)["pass"], "win-win balance at 3.069")
    ok(ir.verify_nmeasure()["pass"], "vertex-count measure lands near its published base")

    wl, wn, obj = ir.optimize_weights(0.05)
    ok(0.5 <= wl <= 1.0 and 0.0 <= wn <= 0.5 and obj < 3.2,
       "coarse weight search stays in the feasible region")

    # --- self-verification harness ---------------------------------------
    report = ir.verify_campaign(4, 5, 7)
    ok(report["mismatches"] == [] and report["violations"] == [],
       "campaign is clean on small graphs")
    ok(report["instances"] > 0 and report["decisions"] > 0, "campaign did real work")
    expect_raises(lambda: ir.verify_campaign(0, 5, 7), "campaign bounds validated")
    checks += 1

    print(f"smoke test passed: {checks} checks")


if __name__ == "__main__":
    main()
