"""Exhaustive exact solvers for the numerical Ulrich conditions.

Curves:   M^v (x) L^{k+1} is L^a-Ulrich  =>  m(n(a-k-1) - 1) = n(1-g)
          M (x) L^{k-1}   is L^a-Ulrich  =>  case split on a versus k
Surfaces: M^v (x) L^{k+1} is L^a-Ulrich  =>  n = (n(a-k-1) - 1) a L^2
Arbitrary polarization H on a surface: the H.K identities and their
consequences on P^1 x P^1.

All equations are tested in integers after clearing denominators.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .cohomology import coh_line
from .core import (
    AbstractModelError,
    BundleClass,
    ClassificationSolution,
    DualSyzygy,
    IntersectionTable,
    QuadricSurface,
    SearchConfig,
    VarietyModel,
)
from .ulrich import is_ulrich

CURVE_NAMES = ("n", "m", "g", "k", "a")
SURFACE_NAMES = ("n", "L2", "k", "a")

DEFAULT_CURVES = SearchConfig.of(k=(-5, 8), a=(1, 12), n=(1, 15), m=(1, 30), g=(0, 15))
DEFAULT_SURFACES = SearchConfig.of(n=(2, 20), L2=(1, 30), k=(-3, 6), a=(1, 10))
DEFAULT_P1XP1 = SearchConfig.of(a=(1, 50), b=(1, 50), k=(-20, 20))
DEFAULT_PROP52 = SearchConfig.of(H2=(1, 20), HK=(-20, 20), LH=(1, 20), n=(2, 20), k=(-20, 20))
DEFAULT_COR54 = SearchConfig.of(L=(1, 6), H=(1, 6), k=(-6, 6))


def _sorted(solutions):
    return sorted(solutions, key=ClassificationSolution.sort_key)


# --------------------------------------------------------------------------
# curves


def dual_curve_family(n: int, m: int, g: int, k: int, a: int) -> str:
    if (n, m, g) == (2, 2, 0) and a == k + 2:
        return "dual-conic"
    if (n, m, g) == (1, 1, 0) and a == k + 3:
        return "dual-line"
    return "unexpected"


def solve_curve_dualM(cfg: SearchConfig = DEFAULT_CURVES, embedding_constraint: bool = True):
    """All (n, m, g, k, a) with m(n(a-k-1) - 1) = n(1-g) and 0 <= k+1 < a.

    The tuple n = 1, k = -2, a = 1 is admitted as the documented exception.
    With ``embedding_constraint``, n = 1 forces X = P^1 with L = O(1), i.e.
    g = 0 and m = 1; without it the raw equation solutions are returned.
    """
    out = []
    g_lo, g_hi = cfg.bounds("g")
    for n in cfg.range("n"):
        if n < 1:
            continue
        for k in cfg.range("k"):
            for a in cfg.range("a"):
                exceptional = (n, k, a) == (1, -2, 1)
                if not (0 <= k + 1 < a or exceptional):
                    continue
                coeff = n * (a - k - 1) - 1
                for m in cfg.range("m"):
                    if m < 1:
                        continue
                    # n(1 - g) = m * coeff  =>  g = 1 - m*coeff/n
                    if (m * coeff) % n:
                        continue
                    g = 1 - m * coeff // n
                    if not (g_lo <= g <= g_hi and g >= 0):
                        continue
                    if embedding_constraint and n == 1 and (g, m) != (0, 1):
                        continue
                    notes = ("exceptional n=1, k=-2, a=1",) if exceptional else ()
                    vals = (n, m, g, k, a)
                    out.append(ClassificationSolution(
                        dual_curve_family(*vals), CURVE_NAMES, vals, notes))
    return _sorted(out)


def solve_curve_M(cfg: SearchConfig = DEFAULT_CURVES):
    """Solutions for M (x) L^{k-1} being L^a-Ulrich on a curve, with 0 < k-1 <= a.

    a = k-1: V complete and h^1(L) = (n+1)g; with Riemann-Roch this reads
             m = n(1-g).
    a = k:   H^1(M (x) L^{-1}) contains H^0(O) != 0, never Ulrich.
    a > k:   m(n(a+1-k) + 1) = n(1-g).
    """
    out = []
    g_lo, g_hi = cfg.bounds("g")
    for n in cfg.range("n"):
        if n < 1:
            continue
        for k in cfg.range("k"):
            for a in cfg.range("a"):
                if not 0 < k - 1 <= a or a == k:
                    continue
                for m in cfg.range("m"):
                    if m < 1:
                        continue
                    if a == k - 1:
                        if m % n:
                            continue
                        g = 1 - m // n
                        family = "syz-rational-normal"
                    else:
                        lhs = m * (n * (a + 1 - k) + 1)
                        if lhs % n:
                            continue
                        g = 1 - lhs // n
                        family = "unexpected"
                    if g_lo <= g <= g_hi and g >= 0:
                        vals = (n, m, g, k, a)
                        out.append(ClassificationSolution(family, CURVE_NAMES, vals))
    return _sorted(out)


def curve_M_impossible_cases(cfg: SearchConfig = DEFAULT_CURVES) -> list[tuple[int, int]]:
    """The (k, a) pairs with a = k excluded by the h^1 obstruction."""
    return [(k, a) for k in cfg.range("k") for a in cfg.range("a") if a == k and 0 < k - 1]


# --------------------------------------------------------------------------
# surfaces


def solve_surface_dualM(cfg: SearchConfig = DEFAULT_SURFACES, plane_constraint: bool = True):
    """All (n, L^2, k, a) with 1 = (a - (k+1) - 1/n) a L^2, i.e. n = (n(a-k-1) - 1) a L^2.

    ``plane_constraint`` applies "L^2 = 1 iff n = 2" (a non-degenerate
    surface of degree one is the plane).  Disabling it returns the raw
    solutions, with the ones the constraint removes marked unexpected.
    """
    out = []
    for n in cfg.range("n"):
        if n < 2:
            continue
        for L2 in cfg.range("L2"):
            if L2 < 1:
                continue
            if plane_constraint and (L2 == 1) != (n == 2):
                continue
            for k in cfg.range("k"):
                for a in cfg.range("a"):
                    if not 0 <= k + 1 < a:
                        continue
                    if n == (n * (a - k - 1) - 1) * a * L2:
                        vals = (n, L2, k, a)
                        family = "dual-plane" if vals == (2, 1, 0, 2) else "unexpected"
                        notes = () if family != "unexpected" or (L2 == 1) == (n == 2) else (
                            "violates L^2 = 1 iff n = 2",)
                        out.append(ClassificationSolution(family, SURFACE_NAMES, vals, notes))
    return _sorted(out)


# --------------------------------------------------------------------------
# arbitrary polarization on surfaces


class Prop52(enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    NON_INTEGRAL = "non_integral"

    @property
    def holds(self) -> bool:
        return self is Prop52.HOLDS


def check_prop52(table: IntersectionTable, k: int, which: str) -> Prop52:
    """Necessary H.K identity for H-Ulrichness, multiplied through by n.

    dual: n H.K = 2n(k+1) L.H - 3n H^2 + 2 L.H
    syz:  n H.K = 2n(k-1) L.H - 3n H^2 - 2 L.H
    NON_INTEGRAL when n does not divide 2 L.H, so no integral H.K can match.
    """
    n, LH = table.n, table.LH
    if which == "dual":
        rhs = 2 * n * (k + 1) * LH - 3 * n * table.H2 + 2 * LH
    elif which == "syz":
        rhs = 2 * n * (k - 1) * LH - 3 * n * table.H2 - 2 * LH
    else:
        raise ValueError(f"which must be 'dual' or 'syz', got {which!r}")
    if (2 * LH) % n:
        return Prop52.NON_INTEGRAL
    return Prop52.HOLDS if n * table.HK == rhs else Prop52.FAILS


def check_prop52_genus_form(table: IntersectionTable, k: int, which: str) -> bool:
    """Same condition written as g_H - 1 = (k +- 1) L.H - H^2 +- L.H/n."""
    from fractions import Fraction

    from .riemann_roch import sectional_genus

    sign = 1 if which == "dual" else -1
    rhs = (k + sign) * table.LH - table.H2 + sign * Fraction(table.LH, table.n)
    return sectional_genus(table) - 1 == rhs


def prop52_k_solutions(H2: int, HK: int, LH: int, n: int, which: str) -> int | None:
    """The unique integer k satisfying the identity, or None."""
    sign = 1 if which == "dual" else -1
    # 2n(k + sign) LH = n HK + 3n H2 - sign*2 LH
    num = n * HK + 3 * n * H2 - sign * 2 * LH
    den = 2 * n * LH
    if num % den:
        return None
    return num // den - sign


@dataclass(frozen=True)
class SimultaneityScan:
    tables: int
    pairs_checked: int
    dual_solutions: int
    syz_solutions: int
    both: tuple

    @property
    def ok(self) -> bool:
        return not self.both


def scan_simultaneous(cfg: SearchConfig = DEFAULT_PROP52) -> SimultaneityScan:
    """Look for (table, k) satisfying both identities.

    Only H^2, H.K, L.H, n enter the identities; the table's L^2, L.K and
    chi(O) are free and do not change the outcome, so the scan runs over the
    relevant entries (with H^2 + H.K even) and over every k in range by
    brute force, plus the exact solution for k over all integers.
    """
    tables = pairs = nd = ns = 0
    both = []
    ks = list(cfg.range("k"))
    for H2 in cfg.range("H2"):
        for HK in cfg.range("HK"):
            if (H2 + HK) % 2:
                continue
            for LH in cfg.range("LH"):
                for n in cfg.range("n"):
                    if H2 <= 0 or LH <= 0 or n < 2:
                        continue
                    table = IntersectionTable(L2=1, LK=1, H2=H2, LH=LH, HK=HK, n=n)
                    tables += 1
                    kd = prop52_k_solutions(H2, HK, LH, n, "dual")
                    ks_ = prop52_k_solutions(H2, HK, LH, n, "syz")
                    nd += kd is not None
                    ns += ks_ is not None
                    if kd is not None and kd == ks_:
                        both.append((H2, HK, LH, n, kd))
                    if (2 * LH) % n:
                        pairs += len(ks)
                        continue
                    # check_prop52 inlined: n HK + 3n H2 -+ 2 LH = 2n (k +- 1) LH
                    base = n * HK + 3 * n * H2
                    step = 2 * n * LH
                    for k in ks:
                        pairs += 1
                        if base - 2 * LH == step * (k + 1) and base + 2 * LH == step * (k - 1):
                            both.append((H2, HK, LH, n, k))
    return SimultaneityScan(tables, pairs, nd, ns, tuple(sorted(set(both))))


def check_dual_ulrich_obstruction(L: BundleClass, H: BundleClass, k: int) -> bool:
    """True when L^{2k} = O(3H + K) on the quadric, which rules out H-Ulrichness."""
    model = L.model
    if not isinstance(model, QuadricSurface) or H.model != model:
        raise ValueError("the obstruction is implemented on P^1 x P^1")
    return 2 * k * L == 3 * H + model.canonical()


@dataclass(frozen=True)
class ObstructionRecord:
    L: tuple[int, int]
    H: tuple[int, int]
    k: int
    verdict: bool


def obstruction_sweep(cfg: SearchConfig = DEFAULT_COR54) -> list[ObstructionRecord]:
    """Every flagged (L, H, k) on the quadric, with the exact-engine verdict."""
    Q = QuadricSurface()
    comps = [c for c in cfg.range("L") if c >= 1]
    hcomps = [c for c in cfg.range("H") if c >= 1]
    out = []
    for l1 in comps:
        for l2 in comps:
            L = Q.O(l1, l2)
            for h1 in hcomps:
                for h2 in hcomps:
                    H = Q.O(h1, h2)
                    for k in cfg.range("k"):
                        if check_dual_ulrich_obstruction(L, H, k):
                            report = is_ulrich(Q, DualSyzygy(L, (k + 1) * L), H)
                            out.append(ObstructionRecord((l1, l2), (h1, h2), k, report.verdict))
    return out


# --------------------------------------------------------------------------
# P^1 x P^1 with L = O(1,1)


def p1xp1_equations(a: int, b: int, k: int) -> tuple[bool, bool, bool]:
    c1 = 9 * a * b == (3 * k - 1) * (a + b)
    c2 = 6 * a * b == (3 * k + 1) * (k - 1)
    chi = (3 * k - 1) * (a + b) == 3 * a * b + 3 * k * k - 2 * k - 4
    return c1, c2, chi


@dataclass(frozen=True)
class P1xP1Search:
    solutions: tuple[tuple[int, int, int], ...]
    counts: dict

    @property
    def ok(self) -> bool:
        return not self.solutions


def example_p1xp1_search(cfg: SearchConfig = DEFAULT_P1XP1) -> P1xP1Search:
    """(a, b, k) satisfying both Chern-class equations and the chi condition."""
    counts = {"c1": 0, "c2": 0, "chi": 0, "c1+c2": 0, "c1+chi": 0, "c2+chi": 0}
    sols = []
    for a in cfg.range("a"):
        for b in cfg.range("b"):
            if a < 1 or b < 1:
                continue
            for k in cfg.range("k"):
                c1, c2, chi = p1xp1_equations(a, b, k)
                counts["c1"] += c1
                counts["c2"] += c2
                counts["chi"] += chi
                counts["c1+c2"] += c1 and c2
                counts["c1+chi"] += c1 and chi
                counts["c2+chi"] += c2 and chi
                if c1 and c2 and chi:
                    sols.append((a, b, k))
    return P1xP1Search(tuple(sols), counts)


# --------------------------------------------------------------------------
# emptiness of linear systems


def emptiness_check(model: VarietyModel, D: BundleClass) -> bool:
    """|D| is empty, i.e. h^0(D) = 0."""
    if not model.concrete:
        raise AbstractModelError(f"no exact engine on {model.label}")
    return coh_line(model, D)[0] == 0


def lemma51_condition(L: BundleClass, H: BundleClass, k: int) -> bool:
    """|(k+1)L - H| is empty (necessary for M^v (x) L^{k+1} to be H-Ulrich, k >= 0)."""
    return emptiness_check(L.model, (k + 1) * L - H)


def prop43_condition(L: BundleClass, k: int, a: int) -> bool:
    """|(2a+1-k)L + K| is empty (derived from M (x) L^{k-1} being L^a-Ulrich on a surface)."""
    model = L.model
    return emptiness_check(model, (2 * a + 1 - k) * L + model.canonical())
