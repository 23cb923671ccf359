"""Exact cohomology of line bundles and (dual) syzygy bundles.

Every concrete model is a product of projective spaces P^{n_1} x ... x P^{n_r}.
Line-bundle cohomology is described by the toric Cech complex: H^i(O(d))
has a basis of Laurent monomials whose exponent block on each factor is
either all >= 0 (the H^0 part of that factor) or all <= -1 (its top
cohomology), with the top-type factors' dimensions summing to i.  Cup
product with a global section is monomial multiplication followed by
truncation: products that leave the region are zero.  On P^1 this is the
contraction H^0(O(c)) x H^1(O(b)) -> H^1(O(b+c)) dual, under Serre
duality, to multiplication H^0(O(c)) x H^0(O(-b-c-2)) -> H^0(O(-b-2)).

Syzygy bundles are handled by chasing the long exact sequences of

    0 -> M (x) O(t)   -> V (x) O(t)   -> O(L+t) -> 0
    0 -> O(t-L)       -> V* (x) O(t)  -> M^v (x) O(t) -> 0

with V = H^0(L): every map between line-bundle cohomology groups in these
sequences is a multiplication map, whose rank is computed exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .core import (
    AbstractModelError,
    BundleClass,
    CohomologyVector,
    DualSyzygy,
    Line,
    ModelMismatchError,
    NotVeryAmpleError,
    SheafExpr,
    Sum,
    Syzygy,
    VarietyModel,
)
from .linalg import sparse_rank


@dataclass(frozen=True)
class RankedMap:
    domain: int
    codomain: int
    rank: int

    def __post_init__(self):
        if not 0 <= self.rank <= min(self.domain, self.codomain):
            raise ValueError(f"rank {self.rank} impossible for {self.domain} -> {self.codomain}")

    @property
    def kernel(self) -> int:
        return self.domain - self.rank

    @property
    def cokernel(self) -> int:
        return self.codomain - self.rank


def _concrete(model: VarietyModel) -> None:
    if not model.concrete:
        raise AbstractModelError(
            f"no exact engine on abstract model {model.label}; use the classification solvers")


# --------------------------------------------------------------------------
# closed formulas


def _pn_dims(n: int, d: int) -> dict[int, int]:
    out = {}
    if d >= 0:
        out[0] = comb(n + d, n)
    if d <= -n - 1:
        out[n] = comb(-d - 1, n)
    return out


def _product_dims(factors: tuple[int, ...], degs: tuple[int, ...]) -> list[int]:
    total = [0] * (sum(factors) + 1)
    total[0] = 1
    for n, d in zip(factors, degs):
        new = [0] * len(total)
        for i, h in enumerate(total):
            if h:
                for j, f in _pn_dims(n, d).items():
                    new[i + j] += h * f
        total = new
    return total


def coh_line(model: VarietyModel, c: BundleClass) -> CohomologyVector:
    """Cohomology of a line bundle from the closed formulas (Kunneth on the quadric)."""
    _concrete(model)
    if c.model != model:
        raise ModelMismatchError(f"{c} does not live on {model.label}")
    return CohomologyVector(tuple(_product_dims(model.factors, c.coords)))


def h0(c: BundleClass) -> int:
    return coh_line(c.model, c)[0]


# --------------------------------------------------------------------------
# monomial bases


def _compositions(total: int, parts: int):
    """Non-negative integer vectors of the given length and sum, in lex order."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _factor_basis(n: int, d: int, top: bool) -> tuple[tuple[int, ...], ...]:
    if not top:
        return tuple(_compositions(d, n + 1)) if d >= 0 else ()
    s = -d - n - 1
    if s < 0:
        return ()
    return tuple(tuple(-1 - f for f in comp) for comp in _compositions(s, n + 1))


@lru_cache(maxsize=None)
def cech_basis(factors: tuple[int, ...], degs: tuple[int, ...], level: int) -> tuple[tuple[int, ...], ...]:
    """Deterministic monomial basis of H^level(O(degs)) as flat exponent tuples."""
    out = []
    for pattern in itertools.product((False, True), repeat=len(factors)):
        if sum(n for n, top in zip(factors, pattern) if top) != level:
            continue
        blocks = [_factor_basis(n, d, top) for n, d, top in zip(factors, degs, pattern)]
        for combo in itertools.product(*blocks):
            out.append(tuple(itertools.chain.from_iterable(combo)))
    return tuple(out)


@dataclass(frozen=True)
class MonomialSpace:
    model: VarietyModel
    c: BundleClass
    level: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def monomial_space(model: VarietyModel, c: BundleClass, level: int = 0) -> MonomialSpace:
    _concrete(model)
    return MonomialSpace(model, c, level, cech_basis(model.factors, c.coords, level))


@lru_cache(maxsize=4096)
def _mult_tensor(factors, sec_degs, dom_degs, level):
    """Triples (j, u, w): section j times basis element u equals target element w."""
    secs = cech_basis(factors, sec_degs, 0)
    dom = cech_basis(factors, dom_degs, level)
    tgt_degs = tuple(a + b for a, b in zip(sec_degs, dom_degs))
    tgt = cech_basis(factors, tgt_degs, level)
    index = {w: i for i, w in enumerate(tgt)}
    triples = []
    for j, s in enumerate(secs):
        for ui, u in enumerate(dom):
            wi = index.get(tuple(a + b for a, b in zip(s, u)))
            if wi is not None:
                triples.append((j, ui, wi))
    return len(secs), len(dom), len(tgt), tuple(triples)


@lru_cache(maxsize=4096)
def _mult_rank(factors, sec_degs, dom_degs, level) -> RankedMap:
    ns, nd, nt, triples = _mult_tensor(factors, sec_degs, dom_degs, level)
    entries = {(w, j * nd + u): 1 for j, u, w in triples}
    return RankedMap(ns * nd, nt, sparse_rank(entries))


@lru_cache(maxsize=4096)
def _coevaluation_rank(factors, sec_degs, dom_degs, level) -> RankedMap:
    # u -> sum_j e_j* (x) s_j u : the same tensor read with (j, w) as the row index
    ns, nd, nt, triples = _mult_tensor(factors, sec_degs, dom_degs, level)
    entries = {(j * nt + w, u): 1 for j, u, w in triples}
    return RankedMap(nd, ns * nt, sparse_rank(entries))


def mult_rank(model: VarietyModel, c1: BundleClass, c2: BundleClass, level: int = 0) -> RankedMap:
    """Rank of H^0(c1) (x) H^level(c2) -> H^level(c1 + c2)."""
    _concrete(model)
    return _mult_rank(model.factors, c1.coords, c2.coords, level)


def contract_rank(model: VarietyModel, c1: BundleClass, b: BundleClass) -> RankedMap:
    """Rank of H^0(c1) (x) H^1(b) -> H^1(c1 + b) on a model of dimension <= 2."""
    _concrete(model)
    if model.dim > 2:
        raise ValueError("contract_rank is defined on curves and surfaces")
    return _mult_rank(model.factors, c1.coords, b.coords, 1)


def coevaluation_rank(model: VarietyModel, L: BundleClass, c: BundleClass, level: int) -> RankedMap:
    """Rank of H^level(c) -> H^0(L)* (x) H^level(c + L)."""
    _concrete(model)
    return _coevaluation_rank(model.factors, L.coords, c.coords, level)


# --------------------------------------------------------------------------
# syzygy bundles


def _check_pair(model, L, t):
    _concrete(model)
    if L.model != model or t.model != model:
        raise ModelMismatchError("classes must live on the model")
    if not all(x >= 1 for x in L.coords):
        raise NotVeryAmpleError(f"{L} is not very ample")


def coh_syzygy(model: VarietyModel, L: BundleClass, t: BundleClass, fast: bool = False) -> CohomologyVector:
    """h^i(M_L (x) O(t)) by the long exact sequence of the twisted evaluation sequence."""
    _check_pair(model, L, t)
    if fast and _bott_applies(model, L):
        return bott_syzygy(model.dim, t.deg)
    d = model.dim
    N = h0(L)
    ht = coh_line(model, t)
    hLt = coh_line(model, L + t)
    ranks = [mult_rank(model, L, t, i).rank for i in range(d + 1)]
    dims = []
    for i in range(d + 1):
        coker_prev = hLt[i - 1] - ranks[i - 1] if i > 0 else 0
        ker = N * ht[i] - ranks[i]
        dims.append(coker_prev + ker)
    return CohomologyVector(tuple(dims))


def coh_dual_syzygy(model: VarietyModel, L: BundleClass, t: BundleClass, fast: bool = False) -> CohomologyVector:
    """h^i(M^v_L (x) O(t)) by the long exact sequence of the twisted dual sequence."""
    _check_pair(model, L, t)
    if fast and _bott_applies(model, L):
        return bott_dual_syzygy(model.dim, t.deg)
    d = model.dim
    N = h0(L)
    ht = coh_line(model, t)
    hs = coh_line(model, t - L)
    ranks = [coevaluation_rank(model, L, t - L, i).rank for i in range(d + 1)]
    dims = []
    for i in range(d + 1):
        coker = N * ht[i] - ranks[i]
        ker_next = hs[i + 1] - ranks[i + 1] if i < d else 0
        dims.append(coker + ker_next)
    return CohomologyVector(tuple(dims))


@lru_cache(maxsize=None)
def coh(E: SheafExpr, fast: bool = False) -> CohomologyVector:
    """Cohomology vector of any sheaf expression on a concrete model."""
    model = E.model
    _concrete(model)
    if isinstance(E, Line):
        return coh_line(model, E.c)
    if isinstance(E, Syzygy):
        return coh_syzygy(model, E.L, E.twist_class, fast)
    if isinstance(E, DualSyzygy):
        return coh_dual_syzygy(model, E.L, E.twist_class, fast)
    if isinstance(E, Sum):
        out = CohomologyVector((0,) * (model.dim + 1))
        for term in E.terms:
            out = out + coh(term, fast)
        return out
    raise TypeError(f"not a sheaf expression: {E!r}")


def split_type_p1(E: SheafExpr) -> tuple[int, ...]:
    """Splitting type on P^1, sorted descending.  M_{O(m)} = O(-1)^m."""
    if E.model.factors != (1,) or not E.model.concrete:
        raise ValueError("splitting types are only tracked on P^1")
    if isinstance(E, Line):
        out = [E.c.deg]
    elif isinstance(E, Syzygy):
        out = [E.twist_class.deg - 1] * E.L.deg
    elif isinstance(E, DualSyzygy):
        out = [E.twist_class.deg + 1] * E.L.deg
    else:
        out = [x for t in E.terms for x in split_type_p1(t)]
    return tuple(sorted(out, reverse=True))


def coh_from_split_type(degrees) -> CohomologyVector:
    return CohomologyVector((sum(max(d + 1, 0) for d in degrees),
                             sum(max(-d - 1, 0) for d in degrees)))


# --------------------------------------------------------------------------
# Bott's formula fast path: M_{O(1)} = Omega(1) and M^v_{O(1)} = T(-1) on P^n


def bott_dimension(n: int, p: int, q: int, k: int) -> int:
    """h^q(P^n, Omega^p(k))."""
    if not 0 <= p <= n or not 0 <= q <= n:
        return 0
    if q == 0:
        if p == 0:
            return comb(n + k, n) if k >= 0 else 0
        return comb(k + n - p, k) * comb(k - 1, p) if k > p else 0
    if q == n:
        return bott_dimension(n, n - p, 0, -k)
    return 1 if (k == 0 and p == q) else 0


def _bott_applies(model, L) -> bool:
    return len(model.factors) == 1 and L.coords == (1,)


def bott_syzygy(n: int, t: int) -> CohomologyVector:
    return CohomologyVector(tuple(bott_dimension(n, 1, q, t + 1) for q in range(n + 1)))


def bott_dual_syzygy(n: int, t: int) -> CohomologyVector:
    # T P^n = Omega^{n-1}(n+1), so M^v (x) O(t) = T(t-1) = Omega^{n-1}(t+n)
    return CohomologyVector(tuple(bott_dimension(n, n - 1, q, t + n) for q in range(n + 1)))


def clear_caches() -> None:
    """Drop every memo table (results are unchanged, only timing is affected)."""
    for fn in (coh, cech_basis, _factor_basis, _mult_tensor, _mult_rank, _coevaluation_rank):
        fn.cache_clear()
