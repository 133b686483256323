"""Kahler calculus on the bidirected polygon, twisted edge Laplacians and
Connes-style vertex distances on finite directed graphs."""

from .connection import (
    PotentialCoefficients,
    apply_laplacian_unit,
    base_connection,
    dbar,
    laplacian,
    parse_potential,
    zeta_operator,
)
from .dirac import (
    DistanceResult,
    commutator_with_function,
    connes_distance,
    connes_distance_numeric,
    dirac_operator,
    operator_norm,
)
from .graphs import (
    DirectedCyclicGraph,
    EdgeFunction,
    GraphFormatError,
    HilbertVector,
    complete_graph_projector,
    hermitian_pairing,
    inner_product,
    left_action,
    orthonormal_basis,
    parse_graph,
)
from .operators import DenseOperator, Space, adjoint
from .polygon import Calculus, GradedForm, VertexFunction, make_calculus
from .spectra import (
    Spectrum,
    eig_selfadjoint,
    gershgorin_radius,
    make_circulant_regular,
    ngon_closed_form,
)

__all__ = [
    "Calculus",
    "GradedForm",
    "VertexFunction",
    "make_calculus",
    "DirectedCyclicGraph",
    "EdgeFunction",
    "HilbertVector",
    "GraphFormatError",
    "parse_graph",
    "left_action",
    "hermitian_pairing",
    "complete_graph_projector",
    "inner_product",
    "orthonormal_basis",
    "DenseOperator",
    "Space",
    "adjoint",
    "PotentialCoefficients",
    "parse_potential",
    "base_connection",
    "zeta_operator",
    "dbar",
    "laplacian",
    "apply_laplacian_unit",
    "Spectrum",
    "eig_selfadjoint",
    "ngon_closed_form",
    "gershgorin_radius",
    "make_circulant_regular",
    "dirac_operator",
    "commutator_with_function",
    "operator_norm",
    "connes_distance",
    "connes_distance_numeric",
    "DistanceResult",
]

__version__ = "0.1.0"
