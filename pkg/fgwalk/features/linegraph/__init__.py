from .analysis import (
    ata_structure,
    backtrackless_variance,
    directed_variance,
    imdel_check,
)
from .line import LineDigraph, grad, lift, line_digraph

__all__ = [
    "LineDigraph",
    "ata_structure",
    "backtrackless_variance",
    "directed_variance",
    "grad",
    "imdel_check",
    "lift",
    "line_digraph",
]
