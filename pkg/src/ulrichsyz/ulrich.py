"""The Ulrich vanishing test on concrete models and the sweeps built on it."""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .cohomology import coh, coh_from_split_type, split_type_p1
from .core import (
    AbstractModelError,
    BundleClass,
    DualSyzygy,
    Line,
    ProjSpace,
    QuadricSurface,
    RationalCurve,
    SheafExpr,
    Sum,
    Syzygy,
    UlrichReport,
    VarietyModel,
    rank,
    very_ample,
)
from .riemann_roch import chi_sheaf, degree_under

SERIAL_ENV = "ULRICHSYZ_SERIAL"


def is_ulrich(model: VarietyModel, E: SheafExpr, H: BundleClass) -> UlrichReport:
    """Check H^i(E(-pH)) = 0 for all i and 1 <= p <= dim."""
    if not model.concrete:
        raise AbstractModelError(
            f"{model.label} is abstract: use the classification solvers instead")
    if E.model != model or H.model != model:
        raise ValueError("sheaf and polarization must live on the model")
    if not very_ample(H):
        raise ValueError(f"polarization {H} is not very ample")
    d = model.dim
    table = tuple((p, coh(E.twist(-p * H)).dims) for p in range(1, d + 1))
    verdict = all(not any(row) for _, row in table)
    h0E = coh(E)[0]
    rm = rank(E) * degree_under(model, H)
    notes = [f"h0(E) = {h0E}, r*deg = {rm}"]
    # the bounded reading of the intermediate-twist vanishing, j = 1..d-1
    inter = [j for j in range(1, d) if any(dict(table)[j])]
    if inter:
        notes.append(f"nonzero intermediate twists j = {inter}")
    return UlrichReport(verdict, table, h0E, rm, tuple(notes))


def check_h0_equals_rm(report: UlrichReport) -> bool:
    if not report.verdict:
        raise ValueError("h0(E) = r*deg is only a consequence of Ulrichness; verdict is false")
    return report.h0E == report.rank_times_degree


def find_splitting(E: SheafExpr, window: int = 12) -> list[tuple[int, ...]]:
    """Brute-force all splitting types on P^1 whose twisted h^0 match E's.

    Candidates are non-increasing tuples of the right rank and degree; a
    candidate survives if h^0(E(j)) agrees for every twist j with |j| <= the
    search window around the degrees.
    """
    r = rank(E)
    deg = chi_sheaf(E) - r  # chi = deg + r on P^1
    model = E.model
    lo, hi = deg // r - window, deg // r + window
    twists = range(-hi - 2, -lo + 2)
    target = [coh(E.twist(model.O(j)))[0] for j in twists]
    found = []
    for combo in itertools.combinations_with_replacement(range(hi, lo - 1, -1), r):
        if sum(combo) != deg:
            continue
        if all(sum(max(a + j + 1, 0) for a in combo) == t for j, t in zip(twists, target)):
            found.append(combo)
    return found


@dataclass(frozen=True)
class RestrictionWitness:
    split_type: tuple[int, ...]
    candidates: tuple[tuple[int, ...], ...]
    ambient: UlrichReport
    restricted: UlrichReport
    doubled: UlrichReport

    @property
    def ok(self) -> bool:
        return (self.ambient.verdict and self.restricted.verdict and self.doubled.verdict
                and self.candidates == (self.split_type,))


def restriction_witness() -> RestrictionWitness:
    """TP^2 is O(2)-Ulrich and so is its restriction to a conic Y = P^1.

    O_{P^2}(1) restricts to O_{P^1}(2) on the conic, so the restricted Euler
    sequence 0 -> O -> O(2)^3 -> TP^2|_Y -> 0 exhibits TP^2|_Y as M^v_{O(2)} (x) O(2).
    """
    P2 = ProjSpace(2)
    ambient = is_ulrich(P2, DualSyzygy(P2.O(1), P2.O(1)), P2.O(2))
    P1 = RationalCurve()
    E = DualSyzygy(P1.O(2), P1.O(2))
    candidates = tuple(find_splitting(E))
    split = candidates[0] if len(candidates) == 1 else ()
    restricted_sum = Sum(tuple(Line(P1.O(a)) for a in split)) if split else E
    restricted = is_ulrich(P1, restricted_sum, P1.O(4))
    doubled = is_ulrich(P1, Sum((restricted_sum, restricted_sum)), P1.O(4))
    return RestrictionWitness(split, candidates, ambient, restricted, doubled)


# --------------------------------------------------------------------------
# Theorem families and the exclusivity sweep


def expected_ulrich(kind: str, L: BundleClass, k: int, a: int) -> str | None:
    """Family name if the classification predicts an Ulrich bundle, else None.

    kind 'dual' is M^v (x) L^{k+1}, kind 'syz' is M (x) L^{k-1}, both against L^a.
    """
    model = L.model
    on_p1 = model.concrete and model.factors == (1,)
    if kind == "dual":
        if on_p1 and L.deg == 2 and a == k + 2:
            return "dual-conic"
        if on_p1 and L.deg == 1 and a == k + 3:
            return "dual-line"
        if isinstance(model, ProjSpace) and model.n == 2 and L.deg == 1 and (k, a) == (0, 2):
            return "dual-plane"
        return None
    if kind == "syz":
        return "syz-rational-normal" if on_p1 and a == k - 1 else None
    raise ValueError(f"unknown kind {kind!r}")


def sheaf_for(kind: str, L: BundleClass, k: int) -> SheafExpr:
    if kind == "dual":
        return DualSyzygy(L, (k + 1) * L)
    return Syzygy(L, (k - 1) * L)


def sweep_bundles(cfg) -> list[BundleClass]:
    """Very ample L on each concrete model of the sweep configuration."""
    out = []
    P1 = RationalCurve()
    out += [P1.O(m) for m in cfg.range("p1_m")]
    P2, P3 = ProjSpace(2), ProjSpace(3)
    out += [P2.O(e) for e in cfg.range("p2_L")]
    out += [P3.O(e) for e in cfg.range("p3_L")]
    Q = QuadricSurface()
    out += [Q.O(x, y) for x in cfg.range("quadric") for y in cfg.range("quadric")]
    return out


@dataclass(frozen=True)
class SweepRecord:
    model: str
    L: str
    kind: str
    k: int
    a: int
    verdict: bool
    expected: str | None
    euler_ok: bool
    split_ok: bool | None

    @property
    def discrepancy(self) -> bool:
        return self.verdict != (self.expected is not None)

    def as_row(self) -> list:
        return [self.model, self.L, self.kind, self.k, self.a, self.verdict, self.expected]


def _euler_ok(E: SheafExpr) -> bool:
    return coh(E).euler() == chi_sheaf(E)


def _split_ok(E: SheafExpr) -> bool | None:
    if not (E.model.concrete and E.model.factors == (1,)):
        return None
    return coh(E) == coh_from_split_type(split_type_p1(E))


def _sweep_one(args) -> list[SweepRecord]:
    L, ks, a_values = args
    records = []
    for kind in ("dual", "syz"):
        for k in ks:
            E = sheaf_for(kind, L, k)
            for a in a_values:
                H = a * L
                report = is_ulrich(L.model, E, H)
                twisted = [E] + [E.twist(-p * H) for p in range(1, L.model.dim + 1)]
                records.append(SweepRecord(
                    L.model.label, L.text(), kind, k, a, report.verdict,
                    expected_ulrich(kind, L, k, a),
                    all(_euler_ok(F) for F in twisted),
                    None if _split_ok(E) is None else all(_split_ok(F) for F in twisted)))
    return records


def _workers(jobs: int) -> int:
    if os.environ.get(SERIAL_ENV, "") not in ("", "0"):
        return 1
    return max(1, jobs)


def exclusivity_sweep(cfg, jobs: int = 1) -> list[SweepRecord]:
    """Ulrich verdicts for both twisted syzygy families over the whole grid."""
    tasks = [(L, tuple(cfg.range("k")), tuple(cfg.range("a"))) for L in sweep_bundles(cfg)]
    workers = _workers(jobs)
    if workers == 1:
        chunks = [_sweep_one(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_sweep_one, tasks))
    records = [r for chunk in chunks for r in chunk]
    return sorted(records, key=lambda r: (r.model, r.L, r.kind, r.k, r.a))


# --------------------------------------------------------------------------
# h^0 laws


def is_exceptional_line(L: BundleClass, k: int) -> bool:
    """The n = 1, k = -2 case, where M^v (x) L^{-1} = O has sections."""
    model = L.model
    return model.factors == (1,) and L.deg == 1 and k == -2


def h0_law_dual(L: BundleClass, k: int) -> bool:
    """h^0(M^v (x) L^{k+1}) != 0 iff k + 1 >= 0, outside the exceptional case."""
    nonzero = coh(DualSyzygy(L, (k + 1) * L))[0] != 0
    if is_exceptional_line(L, k):
        E = DualSyzygy(L, (k + 1) * L)
        return coh(E)[0] == 1 and split_type_p1(E) == (0,)
    return nonzero == (k + 1 >= 0)


def h0_law_syz(L: BundleClass, k: int) -> bool:
    """h^0(M (x) L^k) != 0 iff k >= 1."""
    return (coh(Syzygy(L, k * L))[0] != 0) == (k >= 1)
