"""Exact enumeration of generalized derangements, 3-row Latin
rectangles and Latin trapezoids through weighted tilings."""

from .poly import (
    PolyRing,
    PolynomialDivisionError,
    RationalKernel,
    RingMismatchError,
    RING_2ROW,
    RING_3ROW,
    RING_KERNEL,
    SingularSystemError,
    WeightPolynomial,
    exact_divide,
    solve_linear_system,
)
from .tiles import (
    EdgeTemplate,
    ShiftSpec,
    Tile,
    build_edges,
    dump_tiles,
    enumerate_tiles,
    ring_for,
    tile_coefficient,
    tile_monomial,
)
from .dp import (
    BoardShape,
    DPProfile,
    SeriesTable,
    kernel2,
    profile_successors,
    rectangle,
    trapezoid3,
    weight_series,
)
from .umbra import (
    UmbralKind,
    binomial,
    factorial_table,
    umbral_eval,
    umbral_eval_2row,
    umbral_eval_3row,
    umbral_eval_trapezoid,
)

__version__ = "0.1.0"
