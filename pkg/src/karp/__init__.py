"""Boundary arcs of the region of stochastic-matrix eigenvalues.

Exact Farey/arc combinatorics, numeric boundary evaluation, arc power
relations, sparsest realising matrices, and the partition calculus that
decides when one realising matrix is a power of another.
"""

from .farey import (
    ArcId,
    ArcParams,
    ArcType,
    EndpointMap,
    FareyPair,
    StarResult,
    arc_params,
    arcs_of_order,
    endpoint_map,
    farey_pairs_for,
    farey_sequence,
    is_farey_pair,
    locate_turn,
    mod_index,
    star,
)
from .boundary import (
    BoundaryPoint,
    ConvergenceError,
    ItoPolynomial,
    endpoint_slope,
    implicit_residual,
    ito_polynomial,
    rho_at,
    sample_arc,
    verify_phi,
)
from .arc_powers import (
    PowerRelation,
    power_deviation,
    power_sources,
    power_targets,
    verify_power_numeric,
)
from .digraph import (
    BudgetError,
    CycleDecomposition,
    Digraph,
    SimpleCycle,
    cycle,
    cycle_power_decomposition,
    enumerate_simple_cycles,
    path,
    strong_power,
)
from .realizations import (
    ClassificationError,
    PartitionClass,
    SparseStochasticMatrix,
    build_type0,
    build_typeI,
    build_typeII,
    build_typeIII,
    char_poly,
    partition_class_of,
)
from .matrix_powers import (
    PowerDecision,
    PowerPrediction,
    decide_power_TII,
    decide_power_TIII,
    oracle_power_partition,
    predict_TI_to_TII,
    predict_TI_to_TIII,
    predict_TII_to_TII,
    predict_TIII_to_TIII,
)

__all__ = [
    "ArcId",
    "ArcParams",
    "ArcType",
    "BoundaryPoint",
    "BudgetError",
    "ClassificationError",
    "ConvergenceError",
    "CycleDecomposition",
    "Digraph",
    "EndpointMap",
    "FareyPair",
    "ItoPolynomial",
    "PartitionClass",
    "PowerDecision",
    "PowerPrediction",
    "PowerRelation",
    "SimpleCycle",
    "SparseStochasticMatrix",
    "StarResult",
    "arc_params",
    "arcs_of_order",
    "build_type0",
    "build_typeI",
    "build_typeII",
    "build_typeIII",
    "char_poly",
    "cycle",
    "cycle_power_decomposition",
    "decide_power_TII",
    "decide_power_TIII",
    "endpoint_map",
    "endpoint_slope",
    "enumerate_simple_cycles",
    "farey_pairs_for",
    "farey_sequence",
    "implicit_residual",
    "is_farey_pair",
    "ito_polynomial",
    "locate_turn",
    "mod_index",
    "oracle_power_partition",
    "partition_class_of",
    "path",
    "power_deviation",
    "power_sources",
    "power_targets",
    "predict_TI_to_TII",
    "predict_TI_to_TIII",
    "predict_TII_to_TII",
    "predict_TIII_to_TIII",
    "rho_at",
    "sample_arc",
    "star",
    "strong_power",
    "verify_phi",
    "verify_power_numeric",
]
