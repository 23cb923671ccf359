"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` (the lines are printed even
without ``-s``).
"""

import json
import subprocess
import sys
import time

import pytest

from ulrichsyz.classification import (
    DEFAULT_COR54,
    DEFAULT_P1XP1,
    DEFAULT_PROP52,
    example_p1xp1_search,
    obstruction_sweep,
    scan_simultaneous,
)
from ulrichsyz.cli import main
from ulrichsyz.cohomology import (
    bott_dual_syzygy,
    bott_syzygy,
    clear_caches,
    coh,
    coh_from_split_type,
    split_type_p1,
)
from ulrichsyz.core import DualSyzygy, ProjSpace, RationalCurve, Syzygy
from ulrichsyz.report import DEFAULT_SWEEP
from ulrichsyz.riemann_roch import chi_sheaf
from ulrichsyz.ulrich import (
    check_h0_equals_rm,
    exclusivity_sweep,
    h0_law_dual,
    h0_law_syz,
    is_exceptional_line,
    is_ulrich,
    sheaf_for,
    sweep_bundles,
)


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'}: {detail}")
        return ok
    return emit


def _classify(capsys, which):
    clear_caches()
    start = time.perf_counter()
    code = main(["classify", which])
    elapsed = time.perf_counter() - start
    doc = json.loads(capsys.readouterr().out)
    return code, doc, elapsed


def test_criterion_1_curve_families(capsys, report):
    code, doc, elapsed = _classify(capsys, "curves-dual")
    got = sorted(tuple(s["params"]) for s in doc["results"]["solutions"])
    # the two families enumerated directly over the same ranges
    want = sorted([(2, 2, 0, k, k + 2) for k in range(-5, 9) if 1 <= k + 2 <= 12]
                  + [(1, 1, 0, k, k + 3) for k in range(-5, 9) if 1 <= k + 3 <= 12])
    families = sorted({s["family"] for s in doc["results"]["solutions"]})
    ok = (code == 0 and got == want and doc["results"]["unexpected"] == 0
          and families == ["dual-conic", "dual-line"] and elapsed < 5)
    report(1, ok, f"{len(got)} solutions in families {families}, "
                  f"{doc['results']['unexpected']} unexpected, {elapsed:.2f}s (< 5s)")
    assert ok


def test_criterion_2_surface_tuple(capsys, report):
    code, doc, elapsed = _classify(capsys, "surfaces-dual")
    got = [tuple(s["params"]) for s in doc["results"]["solutions"]]
    ok = code == 0 and got == [(2, 1, 0, 2)]
    report(2, ok, f"solutions {got} (want [(2, 1, 0, 2)]), {elapsed:.2f}s")
    assert ok


def _timed(fn):
    clear_caches()
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def test_criterion_3_direct_witnesses(report):
    P1, P2 = RationalCurve(), ProjSpace(2)
    lines = []
    ok = True

    rep, t = _timed(lambda: is_ulrich(P2, DualSyzygy(P2.O(1), P2.O(1)), P2.O(2)))
    good = rep.verdict and rep.h0E == 8 == 2 * 4 == rep.rank_times_degree and t < 1
    ok &= good
    lines.append(f"TP2/O(2) verdict={rep.verdict} h0={rep.h0E} {t:.3f}s")

    def family():
        out = []
        for n in range(1, 7):
            for k in range(2, 7):
                L = P1.O(n)
                out.append(is_ulrich(P1, Syzygy(L, (k - 1) * L), (k - 1) * L).verdict)
        return out
    verdicts, t = _timed(family)
    good = all(verdicts) and len(verdicts) == 30 and t < 1
    ok &= good
    lines.append(f"P1 family {sum(verdicts)}/30 true {t:.3f}s")

    rep, t = _timed(lambda: is_ulrich(P1, DualSyzygy(P1.O(1), P1.O(-1)), P1.O(1)))
    good = rep.verdict and check_h0_equals_rm(rep) and t < 1
    ok &= good
    lines.append(f"exceptional n=1,k=-2,a=1 verdict={rep.verdict} {t:.3f}s")

    report(3, ok, "; ".join(lines))
    assert ok


def _predicted(model, L, kind, k, a):
    """The families of the classification, written out independently of the library."""
    if kind == "dual":
        return ((model, L) == ("p1", "2") and a == k + 2
                or (model, L) == ("p1", "1") and a == k + 3
                or (model, L, k, a) == ("p2", "1", 0, 2))
    return model == "p1" and a == k - 1


def test_criterion_4_exclusivity_sweep(report):
    clear_caches()
    start = time.perf_counter()
    records = exclusivity_sweep(DEFAULT_SWEEP)
    elapsed = time.perf_counter() - start
    disc = [(r.model, r.L, r.kind, r.k, r.a, r.verdict) for r in records
            if r.verdict != _predicted(r.model, r.L, r.kind, r.k, r.a)]
    ok = not disc and elapsed < 60
    report(4, ok, f"{len(records)} grid points, {len(disc)} discrepancies {disc}, {elapsed:.2f}s (< 60s)")
    assert ok, f"verdicts outside the predicted families: {disc}"


def test_criterion_5_h0_laws(report):
    bad = []
    checked = 0
    for L in sweep_bundles(DEFAULT_SWEEP):
        for k in DEFAULT_SWEEP.range("k"):
            checked += 2
            if not h0_law_dual(L, k):
                bad.append((L.model.label, L.text(), "dual", k))
            if not h0_law_syz(L, k):
                bad.append((L.model.label, L.text(), "syz", k))
    exc = DualSyzygy(RationalCurve().O(1), RationalCurve().O(-1))
    exceptional_ok = (is_exceptional_line(RationalCurve().O(1), -2)
                      and coh(exc).dims == (1, 0) and split_type_p1(exc) == (0,))
    ok = not bad and exceptional_ok
    report(5, ok, f"{checked} law instances, {len(bad)} counterexamples, "
                  f"exceptional case handled={exceptional_ok}")
    assert ok


def test_criterion_6_euler_and_oracles(report):
    euler_bad, split_bad, fast_bad = [], [], []
    count = 0
    for L in sweep_bundles(DEFAULT_SWEEP):
        model = L.model
        for kind in ("dual", "syz"):
            for k in DEFAULT_SWEEP.range("k"):
                E = sheaf_for(kind, L, k)
                for a in DEFAULT_SWEEP.range("a"):
                    H = a * L
                    for F in [E] + [E.twist(-p * H) for p in range(1, model.dim + 1)]:
                        count += 1
                        if coh(F).euler() != chi_sheaf(F):
                            euler_bad.append(F.text())
                        if model.factors == (1,) and coh(F) != coh_from_split_type(split_type_p1(F)):
                            split_bad.append(F.text())
                        if len(model.factors) == 1 and L.coords == (1,):
                            t = F.twist_class.deg
                            fast = bott_syzygy(model.dim, t) if kind == "syz" else bott_dual_syzygy(model.dim, t)
                            if fast != coh(F) or coh(F, fast=True) != coh(F):
                                fast_bad.append(F.text())
    ok = not (euler_bad or split_bad or fast_bad)
    report(6, ok, f"{count} sheaves: {len(euler_bad)} Euler, {len(split_bad)} split-type, "
                  f"{len(fast_bad)} fast-path mismatches")
    assert ok


def test_criterion_7_negative_results(report):
    clear_caches()
    start = time.perf_counter()
    p1xp1 = example_p1xp1_search(DEFAULT_P1XP1)
    scan = scan_simultaneous(DEFAULT_PROP52)
    flagged = obstruction_sweep(DEFAULT_COR54)
    elapsed = time.perf_counter() - start
    example = any((r.L, r.H, r.k) == ((1, 4), (2, 6), 2) for r in flagged)
    exceptions = [r for r in flagged if r.verdict]
    ok = (not p1xp1.solutions and scan.ok and example and not exceptions and elapsed < 30)
    report(7, ok, f"p1xp1 solutions={len(p1xp1.solutions)}, simultaneous={len(scan.both)} over "
                  f"{scan.tables} tables/{scan.pairs_checked} pairs, {len(flagged)} flagged quadric "
                  f"tuples with {len(exceptions)} Ulrich (example present={example}), {elapsed:.2f}s (< 30s)")
    assert ok


def test_criterion_8_determinism(tmp_path, report):
    outs = []
    for i in range(2):
        path = tmp_path / f"run{i}.json"
        subprocess.run([sys.executable, "-m", "ulrichsyz", "verify-theorem", "--out", str(path)],
                       check=False, capture_output=True)
        outs.append(path.read_bytes())
    ok = outs[0] == outs[1] and len(outs[0]) > 0
    report(8, ok, f"two verify-theorem runs, {len(outs[0])} bytes, identical={outs[0] == outs[1]}")
    assert ok
