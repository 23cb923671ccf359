"""Exact cohomology and classification tools for Ulrich twisted syzygy bundles."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    AbstractCurve,
    AbstractSurface,
    BundleClass,
    CohomologyVector,
    DualSyzygy,
    IntersectionTable,
    Line,
    ProjSpace,
    QuadricSurface,
    RationalCurve,
    SearchConfig,
    Sum,
    Syzygy,
    rank,
    tensor,
    very_ample,
)
from .cohomology import coh, coh_line  # noqa: E402
from .ulrich import is_ulrich  # noqa: E402
