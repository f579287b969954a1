"""Exact multivariate Tutte polynomials and the analysis built on them."""

from .algebra import (CapExceeded, GaussianRational, LaurentPoly, MultiAffinePoly,
                      NonMultiaffineError, Poly, RationalFunction)
from .graph import Edge, Multigraph, RotationSystem, Symbol, format_graph, parse_graph
from .report import PropertyReport
from .tutte import (chromatic_poly, compute_z, connected_spanning_poly, flow_poly,
                    reliability_poly, spanning_forest_poly, spanning_tree_poly, tutte_xy,
                    z_delete_contract, z_subset_expansion, z_tilde)
from .tworooted import decompose, effective_coupling, transmissivity
from .matroid import RankOracle, graphic, linear, uniform, z_tilde_matroid
from .kirchhoff import effective_conductance, matrix_tree
from .zeros import RootSet, chromatic_roots, complex_roots

__version__ = "0.1.0"

__all__ = [
    "CapExceeded", "GaussianRational", "LaurentPoly", "MultiAffinePoly", "NonMultiaffineError",
    "Poly", "RationalFunction", "Edge", "Multigraph", "RotationSystem", "Symbol",
    "format_graph", "parse_graph", "PropertyReport", "chromatic_poly", "compute_z",
    "connected_spanning_poly", "flow_poly", "reliability_poly", "spanning_forest_poly",
    "spanning_tree_poly", "tutte_xy", "z_delete_contract", "z_subset_expansion", "z_tilde",
    "decompose", "effective_coupling", "transmissivity", "RankOracle", "graphic", "linear",
    "uniform", "z_tilde_matroid", "effective_conductance", "matrix_tree", "RootSet",
    "chromatic_roots", "complex_roots",
]
