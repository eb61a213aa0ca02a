# fgwalk/graphcore/__init__.py
"""Graph representation and exact/float linear algebra shared by all features."""
from .exact import char_poly, mat_pow, reversed_char_poly, trace_power
from .graph import Graph, emit_graph, load_graph, parse_graph
from .laurent import LaurentPoly
from .polynomial import RationalPoly
from .spectrum import Spectrum, perron_pair, spectral_radius, symmetric_eigen
from .structure import StructureFlags, connectivity_and_bipartite, is_primitive

__all__ = [
    "Graph",
    "LaurentPoly",
    "RationalPoly",
    "Spectrum",
    "StructureFlags",
    "char_poly",
    "connectivity_and_bipartite",
    "emit_graph",
    "is_primitive",
    "load_graph",
    "mat_pow",
    "parse_graph",
    "perron_pair",
    "reversed_char_poly",
    "spectral_radius",
    "symmetric_eigen",
    "trace_power",
]
