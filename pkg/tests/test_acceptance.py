"""Acceptance criteria 1-12 at their stated tolerances.

Each test records one PASS/FAIL line (printed in the terminal summary) and
then asserts.  Run alone with ``pytest tests/test_acceptance.py -v``.
"""

import time
from fractions import Fraction

import numpy as np
import pytest

from conftest import record
from hmatch.algorithms import MatchingBestFit, RefinedRelaxedMatch, RelaxedOnlineMatch, make_packer
from hmatch.analysis import CASE1, CASE2, max_bin_weight, opt_bruteforce, t_infinity
from hmatch.classify import hm_index
from hmatch.core import Sequence, lower_bound
from hmatch.generators import UNIFORM20, Seed, generate, lookup
from hmatch.harness import ExperimentConfig, aggregate, results_csv, run_experiment, waste_scaling

D20 = 1 << 20
MASTER = 1
C6_ALGOS = ["nf", "ha:20", "bf", "ff", "hm:20", "rhm"]


def cost(algo, items, D=D20):
    p = make_packer(algo, D)
    p.feed(items)
    return p.cost


def rng(tag: int) -> np.random.Generator:
    return Seed(MASTER, tag).generator()


def test_criterion_01_hm_never_exceeds_next_harmonic():
    t0 = time.perf_counter()
    violations = 0
    for i in range(2000):
        items = generate(UNIFORM20, 1000, Seed(101, i)).items
        for K in (2, 5, 19):
            violations += cost(f"hm:{K}", items) > cost(f"ha:{K + 1}", items)
    dt = time.perf_counter() - t0
    ok = violations == 0 and dt < 60
    record(1, ok, f"HM_K <= HA_K+1: {violations} violations over 2000 x 3, {dt:.1f}s (limit 60s)")
    assert ok


def test_criterion_02_deletion_monotonicity():
    t0 = time.perf_counter()
    violations = 0
    for i in range(500):
        items = generate(UNIFORM20, 50, Seed(102, i)).items
        for algo in ("ha:20", "mbf", "hmm:20"):
            full = cost(algo, items)
            for j in range(len(items)):
                violations += cost(algo, items[:j] + items[j + 1:]) > full
    dt = time.perf_counter() - t0
    ok = violations == 0 and dt < 60
    record(2, ok, f"HA_20/MBF/HMM_20 deletion: {violations} violations, {dt:.1f}s (limit 60s)")
    assert ok


def _lockstep(packer, items):
    """Count steps where the packer's single set escapes MBF's; return final costs too."""
    mbf = MatchingBestFit(packer.denom)
    escapes = 0
    mine, theirs = set(), set()
    single = packer.core.single_set if hasattr(packer, "core") else packer.single_set
    for x in items:
        packer.step(x)
        mbf.step(x)
        mine, theirs = single(), mbf.single_set()
        escapes += not mine <= theirs
    return escapes, packer.cost, mbf.cost


def test_criterion_03_domination_by_mbf():
    t0 = time.perf_counter()
    g = rng(103)
    rom_bad = rrm_bad = escapes = 0
    for _ in range(2000):
        k = int(g.integers(1, 21))
        small = (D20 // (k + 2) + 1, D20 // (k + 1))
        large = (k * D20 // (k + 1) + 1, (k + 1) * D20 // (k + 2))
        sides = g.random(500) < 0.5
        items = np.where(sides, g.integers(large[0], large[1] + 1, 500),
                         g.integers(small[0], small[1] + 1, 500)).tolist()
        assert {hm_index(x, D20, 20) for x in items} == {k}
        e, c_rom, c_mbf = _lockstep(RelaxedOnlineMatch(D20, 20, cls=k), items)
        rom_bad += c_rom > c_mbf
        escapes += e
        items = g.integers(D20 // 3 + 1, 2 * D20 // 3 + 1, 500).tolist()
        e, c_rrm, c_mbf = _lockstep(RefinedRelaxedMatch(D20), items)
        rrm_bad += c_rrm > c_mbf
        escapes += e
    dt = time.perf_counter() - t0
    ok = rom_bad == 0 and rrm_bad == 0 and escapes == 0 and dt < 60
    record(3, ok, f"ROM<=MBF {rom_bad}, RRM<=MBF {rrm_bad}, single-set escapes {escapes}, "
                  f"{dt:.1f}s (limit 60s)")
    assert ok


def test_criterion_04_rrm_state_invariants():
    g = rng(104)
    counts = dict.fromkeys(["N_a2<=1", "N_b<=1", "not(N_c>0 and N_a1>0)", "N_red<=3N_blue+3",
                            "counter sum lower", "counter sum upper"], 0)
    steps = 0
    for _ in range(1000):
        p = RefinedRelaxedMatch(D20)
        c = p.core
        for x in g.integers(D20 // 3 + 1, 2 * D20 // 3 + 1, 2000).tolist():
            p.step(x)
            steps += 1
            counts["N_a2<=1"] += c.N_a2 > 1
            counts["N_b<=1"] += c.N_b > 1
            counts["not(N_c>0 and N_a1>0)"] += c.N_c > 0 and c.N_a1 > 0
            counts["N_red<=3N_blue+3"] += c.N_red > 3 * c.N_blue + 3
            # a items sharing a d-bin are outside the red/blue count
            lhs = c.n_a - c.N_da + c.N_bc
            mid = 2 * c.N_red + c.N_blue
            counts["counter sum lower"] += lhs - 1 > mid
            counts["counter sum upper"] += mid > lhs
    ok = not any(counts.values())
    bad = ", ".join(f"{k}: {v}" for k, v in counts.items() if v) or "all hold"
    record(4, ok, f"{steps} steps; violations: {bad}")
    assert ok


def test_criterion_05_opt_oracle():
    t0 = time.perf_counter()
    g = rng(105)
    unrestricted = ["nf", "ff", "bf", "mbf", "om", "ha", "hm", "hmm", "rhm", "ss"]
    violations = checks = 0
    for _ in range(1000):
        n = int(g.integers(0, 13))
        items = tuple(g.integers(1, 101, n).tolist())
        s = Sequence(100, items)
        opt = opt_bruteforce(s)
        violations += not lower_bound(s) <= opt
        for algo in unrestricted:
            violations += cost(algo, items, 100) < opt
            checks += 1
        # restricted packers on the parts of the input they accept
        ones = tuple(x for x in items if 100 < 3 * x <= 200)
        violations += cost("rrm", ones, 100) < opt_bruteforce(Sequence(100, ones))
        if items:
            k = hm_index(items[0], 100, 20)
            same = tuple(x for x in items if hm_index(x, 100, 20) == k)
            violations += cost("rom", same, 100) < opt_bruteforce(Sequence(100, same))
        checks += 2
    dt = time.perf_counter() - t0
    ok = violations == 0 and dt < 120
    record(5, ok, f"cost >= OPT >= LB: {violations} violations in {checks} checks, {dt:.1f}s (limit 120s)")
    assert ok


@pytest.fixture(scope="module")
def c6_run():
    cfg = ExperimentConfig([UNIFORM20], C6_ALGOS, n=100_000, trials=30, master_seed=MASTER)
    t0 = time.perf_counter()
    rows = run_experiment(cfg)
    return cfg, rows, time.perf_counter() - t0


@pytest.mark.slow
def test_criterion_06_average_ratios(c6_run):
    _, rows, dt = c6_run
    agg = {r.algorithm: r for r in aggregate(rows)}
    ratio = {a: float(agg[a].mean_ratio) for a in C6_ALGOS}
    hm_vs_bf = float(agg["hm:20"].mean_cost / agg["bf"].mean_cost) - 1
    checks = {
        "NF 1.333+-0.02": abs(ratio["nf"] - 1.333) <= 0.02,
        "HA_20 1.29+-0.02": abs(ratio["ha:20"] - 1.29) <= 0.02,
        **{f"{a} <= 1.01": ratio[a] <= 1.01 for a in ("bf", "ff", "hm:20", "rhm")},
        "HM_20 within 1% of BF": abs(hm_vs_bf) <= 0.01,
        "runtime < 600s": dt < 600,
    }
    ok = all(checks.values())
    failed = [k for k, v in checks.items() if not v]
    detail = " ".join(f"{a}={ratio[a]:.5f}" for a in C6_ALGOS)
    detail += f" hm/bf-1={hm_vs_bf:+.4f} {dt:.0f}s"
    if failed:
        detail += "; failed: " + ", ".join(failed)
    record(6, ok, detail)
    assert ok


@pytest.mark.slow
def test_criterion_07_waste_scaling():
    t0 = time.perf_counter()
    ns = [10_000, 40_000, 160_000]
    f = {a: [x for _, _, x in waste_scaling(a, UNIFORM20, ns, 20, MASTER).factors]
         for a in ("ha:20", "hm:20", "bf", "ff")}
    dt = time.perf_counter() - t0
    close = all(abs(h - b) <= 0.25 * min(h, b) for h, b in zip(f["hm:20"], f["bf"]))
    ok = (all(3.5 <= x <= 4.5 for x in f["ha:20"])
          and all(1.8 <= x <= 3.0 for x in f["hm:20"] + f["bf"])
          and close
          and all(2.2 <= x <= 3.2 for x in f["ff"])
          and dt < 600)
    detail = " ".join(f"{a}=[{', '.join(f'{x:.3f}' for x in v)}]" for a, v in f.items())
    record(7, ok, f"growth per 4x: {detail} {dt:.0f}s")
    assert ok


def test_criterion_08_weighting_bounds():
    t0 = time.perf_counter()
    v2, w2 = max_bin_weight(CASE2, 192_000)
    v1, _ = max_bin_weight(CASE1, 192_000)
    dt = time.perf_counter() - t0
    labels = sorted(l for l, _ in w2.items)
    extremal = labels == ["c", "small2", "small3"] and w2.filler_label == "small19"
    ok = (v2 <= Fraction(373, 228) + Fraction(1, 1000) and w2.limit_weight == Fraction(373, 228)
          and extremal and v1 <= Fraction(163, 100) + Fraction(1, 1000) and dt < 120)
    record(8, ok, f"case2 max={float(v2):.6f} limit={w2.limit_weight} witness={labels}+{w2.filler_label}; "
                  f"case1 max={float(v1):.6f}; {dt:.1f}s")
    assert ok


def test_criterion_09_t_infinity():
    v = t_infinity(5)
    ok = abs(v - 1.69103) <= 1e-4
    record(9, ok, f"T_inf(5) = {v:.6f}")
    assert ok


@pytest.fixture(scope="module")
def ranking_runs():
    cfg = ExperimentConfig([lookup("DU2"), lookup("NORMAL"), lookup("POISSON")],
                           ["bf", "hm:20", "hm:19", "rhm", "ha:20"], n=100_000, trials=20,
                           master_seed=MASTER)
    t0 = time.perf_counter()
    agg = aggregate(run_experiment(cfg))
    means = {(r.set_instance, r.algorithm): float(r.mean_cost) for r in agg}
    return means, time.perf_counter() - t0


@pytest.mark.slow
def test_criterion_10_cost_ranking(ranking_runs):
    m, dt = ranking_runs
    parts, ok = [], dt < 600
    for inst in ("DU2", "NORMAL"):
        hm, rhm, bf, ha = m[(inst, "hm:20")], m[(inst, "rhm")], m[(inst, "bf")], m[(inst, "ha:20")]
        good = bf <= min(hm, rhm) * 1.01 and max(hm, rhm) < 0.97 * ha
        ok &= good
        parts.append(f"{inst}: BF={bf:.1f} HM={hm:.1f} RHM={rhm:.1f} HA={ha:.1f}")
    record(10, ok, "; ".join(parts) + f"; {dt:.0f}s")
    assert ok


@pytest.mark.slow
def test_criterion_11_symmetric_equality(ranking_runs):
    m, _ = ranking_runs
    du_hm, du_rhm = m[("DU2", "hm:19")], m[("DU2", "rhm")]
    po_hm, po_rhm = m[("POISSON", "hm:19")], m[("POISSON", "rhm")]
    gap = abs(du_hm - du_rhm) / du_hm
    ok = gap <= 0.005 and po_hm <= po_rhm
    record(11, ok, f"DU2 |HM_19-RHM|/HM_19={gap:.5f}; POISSON HM_19={po_hm:.1f} RHM={po_rhm:.1f}")
    assert ok


@pytest.mark.slow
def test_criterion_12_determinism(c6_run):
    cfg, rows, _ = c6_run
    first = results_csv(rows).encode()
    second = results_csv(run_experiment(cfg)).encode()
    ok = first == second
    record(12, ok, f"two runs of the criterion-6 config: {len(first)} bytes, identical={ok}")
    assert ok


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-v"]))
