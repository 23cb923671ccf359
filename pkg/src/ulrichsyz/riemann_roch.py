"""Euler characteristics, degrees and sectional genera.

Everything here is numerical: nothing calls the cohomology engine, so these
functions serve as the independent check on its output.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .core import (
    AbstractCurve,
    AbstractSurface,
    BundleClass,
    DualSyzygy,
    InconsistentTableError,
    IntersectionTable,
    Line,
    ProjSpace,
    QuadricSurface,
    RationalCurve,
    SheafExpr,
    Sum,
    Syzygy,
    VarietyModel,
)


def chi_curve(g: int, deg: int) -> int:
    if g < 0:
        raise ValueError(f"genus must be >= 0, got {g}")
    return deg + 1 - g


def _rr_surface(chiO: int, D2: int, DK: int) -> int:
    if (D2 - DK) % 2:
        raise InconsistentTableError(f"D^2 - D.K = {D2 - DK} is odd")
    return chiO + (D2 - DK) // 2


def chi_projective(n: int, d: int) -> int:
    """Hilbert polynomial of P^n, (d+1)...(d+n)/n!, valid for every integer d."""
    num = 1
    for j in range(1, n + 1):
        num *= d + j
    return num // factorial(n)


# --------------------------------------------------------------------------
# intersection theory on surfaces


def intersect(c1: BundleClass, c2: BundleClass) -> int:
    """Intersection number of two divisor classes on a surface model."""
    model = c1.model
    if c2.model != model:
        raise ValueError("classes on different models")
    if isinstance(model, ProjSpace) and model.n == 2:
        return c1.deg * c2.deg
    if isinstance(model, QuadricSurface):
        (a1, b1), (a2, b2) = c1.coords, c2.coords
        return a1 * b2 + a2 * b1
    if isinstance(model, AbstractSurface):
        t = model.table
        (l1, h1), (l2, h2) = c1.coords, c2.coords
        return l1 * l2 * t.L2 + (l1 * h2 + h1 * l2) * t.LH + h1 * h2 * t.H2
    raise ValueError(f"no intersection pairing on {model.label}")


def dot_canonical(c: BundleClass) -> int:
    model = c.model
    if isinstance(model, AbstractSurface):
        l, h = c.coords
        return l * model.table.LK + h * model.table.HK
    return intersect(c, model.canonical())


def surface_table(L: BundleClass, H: BundleClass, n: int | None = None) -> IntersectionTable:
    """Intersection table of (L, H) on P^2 or the quadric; n defaults to h^0(L) - 1."""
    model = L.model
    if n is None:
        n = chi_line(L) - 1
    return IntersectionTable(
        L2=intersect(L, L), LK=dot_canonical(L), H2=intersect(H, H), LH=intersect(L, H),
        HK=dot_canonical(H), chiO=1, n=n)


def _abstract_class(table: IntersectionTable, D) -> BundleClass:
    if isinstance(D, BundleClass):
        if not isinstance(D.model, AbstractSurface) or D.model.table != table:
            raise ValueError("class does not belong to this intersection table")
        return D
    return AbstractSurface(table).O(*D)


def chi_surface(table: IntersectionTable, D) -> int:
    """chi(D) = chi(O_X) + (D^2 - D.K)/2 for D = l*L + h*H (a class or an (l, h) pair)."""
    D = _abstract_class(table, D)
    return _rr_surface(table.chiO, intersect(D, D), dot_canonical(D))


def sectional_genus(table: IntersectionTable, D=(0, 1)) -> int:
    """Genus of a smooth member of |D| by adjunction; D defaults to H."""
    D = _abstract_class(table, D)
    s = intersect(D, D) + dot_canonical(D)
    if s % 2:
        raise InconsistentTableError(f"D^2 + D.K = {s} is odd")
    return 1 + s // 2


def degree_under(model: VarietyModel, H: BundleClass) -> int:
    """H^d, the degree of the model in the embedding given by H."""
    if H.model != model:
        raise ValueError(f"{H} does not live on {model.label}")
    if isinstance(model, AbstractSurface):
        d = intersect(H, H)
        if d <= 0:
            raise ValueError("non-ample class")
        return d
    if any(x < 1 for x in H.coords):
        raise ValueError(f"{H} is not ample")
    if isinstance(model, (RationalCurve, AbstractCurve)):
        return H.deg
    if isinstance(model, ProjSpace):
        return H.deg ** model.n
    if isinstance(model, QuadricSurface):
        a, b = H.coords
        return 2 * a * b
    raise ValueError(f"unknown model {model!r}")


# --------------------------------------------------------------------------
# Euler characteristics of sheaf expressions


def chi_line(c: BundleClass) -> int:
    model = c.model
    if isinstance(model, RationalCurve):
        return chi_curve(0, c.deg)
    if isinstance(model, AbstractCurve):
        return chi_curve(model.genus, c.deg)
    if isinstance(model, ProjSpace):
        if model.n == 2:
            return _rr_surface(1, intersect(c, c), dot_canonical(c))
        return chi_projective(model.n, c.deg)
    if isinstance(model, QuadricSurface):
        return _rr_surface(1, intersect(c, c), dot_canonical(c))
    if isinstance(model, AbstractSurface):
        return chi_surface(model.table, c)
    raise ValueError(f"unknown model {model!r}")


def chi_sheaf(E: SheafExpr) -> int:
    """chi from the defining sequences; dim V = chi(L) since L is very ample."""
    if isinstance(E, Line):
        return chi_line(E.c)
    if isinstance(E, Sum):
        return sum(chi_sheaf(t) for t in E.terms)
    N = chi_line(E.L)
    t = E.twist_class
    if isinstance(E, Syzygy):
        return N * chi_line(t) - chi_line(E.L + t)
    if isinstance(E, DualSyzygy):
        return N * chi_line(t) - chi_line(t - E.L)
    raise TypeError(f"not a sheaf expression: {E!r}")


def genus_polarized_by_multiple(n: int, L2: int, k: int, a: int) -> Fraction:
    """g_H for H = aL when M^v (x) L^{k+1} is L^a-Ulrich: g_H - 1 = (k+1-a)aL^2 + aL^2/n."""
    return 1 + (k + 1 - a) * a * L2 + Fraction(a * L2, n)
