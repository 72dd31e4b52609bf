"""Finite metrics of weighted graphs: distances, inertia, split decomposition,
l1 embeddings, graph minors and a small conjecture-search harness."""

from metricsplit.graph import (
    EdgeOpPlan,
    GraphFormatError,
    WeightedGraph,
    apply_plan,
    contract_edge,
    delete_edge,
    heavy_weight,
    minor_weighting,
    parse_graph,
)
from metricsplit.metric import (
    DistanceMatrix,
    PointSet,
    distance_matrix,
    lp_point_metric,
    parse_metric,
    principal_submatrix,
    validate_semimetric,
)
from metricsplit.spectral import (
    Inertia,
    Spectrum,
    eigenvalues_symmetric,
    exact_inertia,
    inertia,
    interlacing_check,
    perron_check,
)
from metricsplit.splits import (
    Split,
    SplitDecomposition,
    apply_cut_shift,
    cut_metric,
    cut_weighting,
    decompose,
    enumerate_splits,
    is_totally_decomposable,
    isolation_index,
    l1_embed,
    split_prime_residue_weighting,
)
from metricsplit.minors import (
    MinorCertificate,
    adversarial_weighting_k23,
    has_k23_subdivision,
    has_minor,
    k23_distance_minor_test,
)

__version__ = "0.1.0"

__all__ = [
    "EdgeOpPlan",
    "GraphFormatError",
    "WeightedGraph",
    "apply_plan",
    "contract_edge",
    "delete_edge",
    "heavy_weight",
    "minor_weighting",
    "parse_graph",
    "DistanceMatrix",
    "PointSet",
    "distance_matrix",
    "lp_point_metric",
    "parse_metric",
    "principal_submatrix",
    "validate_semimetric",
    "Inertia",
    "Spectrum",
    "eigenvalues_symmetric",
    "exact_inertia",
    "inertia",
    "interlacing_check",
    "perron_check",
    "Split",
    "SplitDecomposition",
    "apply_cut_shift",
    "cut_metric",
    "cut_weighting",
    "decompose",
    "enumerate_splits",
    "is_totally_decomposable",
    "isolation_index",
    "l1_embed",
    "split_prime_residue_weighting",
    "MinorCertificate",
    "adversarial_weighting_k23",
    "has_k23_subdivision",
    "has_minor",
    "k23_distance_minor_test",
]
