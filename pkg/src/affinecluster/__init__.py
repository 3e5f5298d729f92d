"""Cluster variables of affine A and D cluster algebras, computed three ways."""

from .laurent import (
    DimensionError,
    InexactDivisionError,
    LaurentPoly,
    lp_add,
    lp_eval_units,
    lp_exact_div,
    lp_mul,
    lp_parse,
    lp_serialize,
)
from .quiver import (
    ExchangeMatrix,
    QuiverError,
    QuiverSpec,
    Seed,
    bipartite_classes,
    build_quiver,
    mutate_matrix,
    mutate_seed,
    period1_check,
)
from .frieze import ATypeSequence, FriezeTable, cluster_map_apply
from .periodic import ASystem, InvariantError, Mat2, PeriodicFamily, trace_invariant
from .continuant import ContinuantFrieze, build_continuant_frieze, continuant
from .annulus import (
    Crossing,
    PeripheralBottom,
    PeripheralTop,
    Triangulation,
    flip,
    initial_triangulation,
    quiver_from_triangulation,
)
from .enumerate import bfs_explore, cross_check, predicted_variables

__version__ = "0.1.0"
