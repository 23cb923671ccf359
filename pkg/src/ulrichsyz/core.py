"""Data model shared by the engine, the solvers and the CLI.

Varieties are small frozen dataclasses.  The three concrete models (P^1,
P^n, P^1 x P^1) are products of projective spaces and expose their factor
dimensions through ``factors``; the abstract models only carry numerical
invariants and are handled by the classification solvers.

Line-bundle classes are integer coordinate vectors attached to a model::

    >>> Q = QuadricSurface()
    >>> Q.O(1, 4) + Q.O(3, 12)
    O(4,16) on quadric
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union


class ModelMismatchError(ValueError):
    """Two objects live on different varieties."""


class NotVeryAmpleError(ValueError):
    pass


class AbstractModelError(ValueError):
    """The requested computation needs a concrete model."""


class InconsistentTableError(ValueError):
    """Intersection numbers violate positivity or adjunction parity."""


# --------------------------------------------------------------------------
# varieties


@dataclass(frozen=True)
class RationalCurve:
    """The projective line."""

    concrete = True

    @property
    def dim(self) -> int:
        return 1

    @property
    def factors(self) -> tuple[int, ...]:
        return (1,)

    @property
    def label(self) -> str:
        return "p1"

    def O(self, d: int) -> "BundleClass":
        return BundleClass(self, (d,))

    def canonical(self) -> "BundleClass":
        return self.O(-2)


@dataclass(frozen=True)
class ProjSpace:
    n: int

    concrete = True

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"ProjSpace needs n >= 2, got {self.n} (use RationalCurve for P^1)")

    @property
    def dim(self) -> int:
        return self.n

    @property
    def factors(self) -> tuple[int, ...]:
        return (self.n,)

    @property
    def label(self) -> str:
        return f"p{self.n}"

    def O(self, d: int) -> "BundleClass":
        return BundleClass(self, (d,))

    def canonical(self) -> "BundleClass":
        return self.O(-self.n - 1)


@dataclass(frozen=True)
class QuadricSurface:
    """P^1 x P^1; the class (a, b) is a*C1 + b*C2."""

    concrete = True

    @property
    def dim(self) -> int:
        return 2

    @property
    def factors(self) -> tuple[int, ...]:
        return (1, 1)

    @property
    def label(self) -> str:
        return "quadric"

    def O(self, a: int, b: int) -> "BundleClass":
        return BundleClass(self, (a, b))

    def canonical(self) -> "BundleClass":
        return self.O(-2, -2)


@dataclass(frozen=True)
class AbstractCurve:
    genus: int

    concrete = False

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError(f"genus must be >= 0, got {self.genus}")

    @property
    def dim(self) -> int:
        return 1

    @property
    def label(self) -> str:
        return f"curve(g={self.genus})"

    def O(self, m: int) -> "BundleClass":
        return BundleClass(self, (m,))


@dataclass(frozen=True)
class IntersectionTable:
    """Numerical data of a polarized surface with two ample classes L and H.

    ``n`` is dim V - 1 for the embedding subspace V of L.
    """

    L2: int
    LK: int
    H2: int
    LH: int
    HK: int
    chiO: int = 1
    n: int = 2

    def __post_init__(self):
        if self.L2 <= 0 or self.H2 <= 0 or self.LH <= 0:
            raise InconsistentTableError(
                f"L^2, H^2, L.H must be positive: {self.L2}, {self.H2}, {self.LH}")
        if (self.H2 + self.HK) % 2 or (self.L2 + self.LK) % 2:
            raise InconsistentTableError(
                "adjunction parity: H^2 + H.K and L^2 + L.K must be even")
        if self.n < 2:
            raise InconsistentTableError(f"a surface spans at least P^2, got n={self.n}")


@dataclass(frozen=True)
class AbstractSurface:
    """Surface known only through an intersection table.

    Classes are integer combinations l*L + h*H of the table's two classes.
    """

    table: IntersectionTable

    concrete = False

    @property
    def dim(self) -> int:
        return 2

    @property
    def label(self) -> str:
        return "surface"

    def O(self, l: int, h: int) -> "BundleClass":
        return BundleClass(self, (l, h))


VarietyModel = Union[RationalCurve, ProjSpace, QuadricSurface, AbstractCurve, AbstractSurface]


def model_from_label(label: str) -> VarietyModel:
    """``p1`` / ``p<n>`` / ``quadric`` -> concrete model."""
    label = label.strip().lower()
    if label in ("p1", "rational", "rationalcurve"):
        return RationalCurve()
    if label in ("quadric", "p1xp1"):
        return QuadricSurface()
    if label.startswith("p") and label[1:].isdigit():
        return ProjSpace(int(label[1:]))
    raise ValueError(f"unknown model {label!r} (use p1, p<n> or quadric)")


# --------------------------------------------------------------------------
# line-bundle classes


@dataclass(frozen=True)
class BundleClass:
    model: VarietyModel
    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(x) for x in self.coords))

    def _check(self, other: "BundleClass") -> None:
        if not isinstance(other, BundleClass):
            raise TypeError(f"expected a BundleClass, got {type(other).__name__}")
        if other.model != self.model:
            raise ModelMismatchError(
                f"cannot combine classes on {self.model.label} and {other.model.label}")

    def __add__(self, other: "BundleClass") -> "BundleClass":
        self._check(other)
        return BundleClass(self.model, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "BundleClass") -> "BundleClass":
        return self + (-other)

    def __neg__(self) -> "BundleClass":
        return BundleClass(self.model, tuple(-a for a in self.coords))

    def __mul__(self, k: int) -> "BundleClass":
        return BundleClass(self.model, tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    @property
    def deg(self) -> int:
        if len(self.coords) != 1:
            raise ValueError(f"class {self} has no single degree")
        return self.coords[0]

    def zero(self) -> "BundleClass":
        return BundleClass(self.model, (0,) * len(self.coords))

    def text(self) -> str:
        return ",".join(str(c) for c in self.coords)

    def __repr__(self) -> str:
        return f"O({self.text()}) on {self.model.label}"


def tensor(c1: BundleClass, c2: BundleClass) -> BundleClass:
    return c1 + c2


def very_ample(c: BundleClass, model: VarietyModel | None = None) -> bool:
    model = c.model if model is None else model
    if c.model != model:
        raise ModelMismatchError(f"{c} does not live on {model.label}")
    if not model.concrete:
        raise AbstractModelError(f"very ampleness is undecidable on abstract model {model.label}")
    return all(x >= 1 for x in c.coords)


# --------------------------------------------------------------------------
# sheaf expressions


def _require_very_ample(L: BundleClass) -> None:
    if L.model.concrete and not very_ample(L):
        raise NotVeryAmpleError(f"{L} is not very ample")


@dataclass(frozen=True)
class Line:
    c: BundleClass

    @property
    def model(self) -> VarietyModel:
        return self.c.model

    def twist(self, t: BundleClass) -> "Line":
        return Line(self.c + t)

    def text(self) -> str:
        return f"line:{self.c.text()}"


@dataclass(frozen=True)
class Syzygy:
    """M_{L,V} (x) O(twist) with V = H^0(L)."""

    L: BundleClass
    twist_class: BundleClass

    def __post_init__(self):
        self.L._check(self.twist_class)
        _require_very_ample(self.L)

    @property
    def model(self) -> VarietyModel:
        return self.L.model

    def twist(self, t: BundleClass) -> "Syzygy":
        return Syzygy(self.L, self.twist_class + t)

    def text(self) -> str:
        return f"syz:{self.L.text()}:{self.twist_class.text()}"


@dataclass(frozen=True)
class DualSyzygy:
    """M^v_{L,V} (x) O(twist) with V = H^0(L)."""

    L: BundleClass
    twist_class: BundleClass

    def __post_init__(self):
        self.L._check(self.twist_class)
        _require_very_ample(self.L)

    @property
    def model(self) -> VarietyModel:
        return self.L.model

    def twist(self, t: BundleClass) -> "DualSyzygy":
        return DualSyzygy(self.L, self.twist_class + t)

    def text(self) -> str:
        return f"dualsyz:{self.L.text()}:{self.twist_class.text()}"


@dataclass(frozen=True)
class Sum:
    terms: tuple = field(default=())

    def __post_init__(self):
        flat = []
        for t in self.terms:
            flat.extend(t.terms if isinstance(t, Sum) else [t])
        if not flat:
            raise ValueError("empty direct sum")
        models = {t.model for t in flat}
        if len(models) != 1:
            raise ModelMismatchError("direct sum of sheaves on different models")
        object.__setattr__(self, "terms", tuple(flat))

    @property
    def model(self) -> VarietyModel:
        return self.terms[0].model

    def twist(self, t: BundleClass) -> "Sum":
        return Sum(tuple(x.twist(t) for x in self.terms))

    def text(self) -> str:
        return "sum:" + "+".join(x.text() for x in self.terms)


SheafExpr = Union[Line, Syzygy, DualSyzygy, Sum]


def rank(E: SheafExpr, model: VarietyModel | None = None) -> int:
    if model is not None and E.model != model:
        raise ModelMismatchError(f"{E.text()} does not live on {model.label}")
    if isinstance(E, Line):
        return 1
    if isinstance(E, Sum):
        return sum(rank(t) for t in E.terms)
    if not E.model.concrete:
        raise AbstractModelError("rank of a syzygy bundle needs h^0(L); use a concrete model")
    from .cohomology import h0

    return h0(E.L) - 1


# --------------------------------------------------------------------------
# value types


@dataclass(frozen=True)
class CohomologyVector:
    dims: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(x) for x in self.dims))
        if any(x < 0 for x in self.dims):
            raise ValueError(f"negative cohomology dimension in {self.dims}")

    def euler(self) -> int:
        return sum((-1) ** i * h for i, h in enumerate(self.dims))

    def __getitem__(self, i: int) -> int:
        return self.dims[i]

    def __iter__(self) -> Iterator[int]:
        return iter(self.dims)

    def __len__(self) -> int:
        return len(self.dims)

    def __add__(self, other: "CohomologyVector") -> "CohomologyVector":
        return CohomologyVector(tuple(a + b for a, b in zip(self.dims, other.dims)))

    def is_zero(self) -> bool:
        return not any(self.dims)


@dataclass(frozen=True)
class UlrichReport:
    verdict: bool
    table: tuple[tuple[int, tuple[int, ...]], ...]  # (p, (h^0 .. h^d of E(-pH)))
    h0E: int
    rank_times_degree: int
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.verdict != all(not any(row) for _, row in self.table):
            raise ValueError("verdict must equal vanishing of the whole table")

    def value(self, p: int, i: int) -> int:
        return dict(self.table)[p][i]


@dataclass(frozen=True)
class ClassificationSolution:
    family: str
    names: tuple[str, ...]
    values: tuple[int, ...]
    notes: tuple[str, ...] = ()

    def param(self, name: str) -> int:
        return self.values[self.names.index(name)]

    def as_dict(self) -> dict:
        return dict(zip(self.names, self.values))

    def sort_key(self):
        return (self.family, self.names, self.values)


# lowest admissible value for each search parameter
RANGE_FLOORS = {"a": 1, "n": 1, "m": 1, "g": 0, "L2": 1, "b": 1, "H2": 1, "LH": 1,
                "L": 1, "H": 1, "p1_m": 1, "p2_L": 1, "p3_L": 1, "quadric": 1}
# degrees of very ample classes and polarization multiples
POSITIVE_RANGES = ("a", "p1_m", "p2_L", "p3_L", "quadric")


@dataclass(frozen=True)
class SearchConfig:
    """Inclusive integer ranges keyed by parameter name."""

    ranges: tuple[tuple[str, tuple[int, int]], ...]

    def __post_init__(self):
        items = self.ranges.items() if isinstance(self.ranges, dict) else self.ranges
        clean = []
        for name, (lo, hi) in sorted(items):
            if not (isinstance(lo, int) and isinstance(hi, int)):
                raise ValueError(f"range {name} must have finite integer bounds")
            if lo > hi:
                raise ValueError(f"range {name}: lower bound {lo} exceeds upper bound {hi}")
            if name in POSITIVE_RANGES and lo < 1:
                raise ValueError(f"range {name} must lie in the positive integers")
            clean.append((name, (lo, hi)))
        object.__setattr__(self, "ranges", tuple(clean))

    @classmethod
    def of(cls, **ranges: tuple[int, int]) -> "SearchConfig":
        return cls(tuple(ranges.items()))

    def bounds(self, name: str) -> tuple[int, int]:
        return dict(self.ranges)[name]

    def range(self, name: str) -> range:
        lo, hi = self.bounds(name)
        return range(lo, hi + 1)

    def with_ranges(self, **ranges: tuple[int, int]) -> "SearchConfig":
        d = dict(self.ranges)
        d.update(ranges)
        return SearchConfig(tuple(d.items()))

    def widened(self, factor: int) -> "SearchConfig":
        """Stretch every range about its centre, clamped at the natural floors."""
        out = {}
        for name, (lo, hi) in self.ranges:
            extra = (factor - 1) * (hi - lo + 1) // 2
            new_lo = lo - extra
            if name in RANGE_FLOORS:
                new_lo = max(new_lo, min(lo, RANGE_FLOORS[name]))
            out[name] = (new_lo, hi + extra)
        return SearchConfig(tuple(out.items()))

    def as_dict(self) -> dict:
        return {k: [lo, hi] for k, (lo, hi) in self.ranges}
