# fgwalk/features/freegroup/model.py
"""
The graph G_r encoding cyclically reduced words of the free group F_r.

Vertices are the 2r letters in the order a_1..a_r, A_r..A_1, so the inverse
of vertex i is vertex 2r-1-i. Every vertex is joined to every vertex except
its inverse, including itself by a loop; G_r is (2r-1)-regular.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List

import numpy as np

from ...core.errors import PreconditionError
from ...graphcore.graph import Graph


@dataclass(frozen=True)
class FreeRank:
    r: int

    def __post_init__(self):
        if self.r < 1:
            raise PreconditionError(f"free group rank must be >= 1, got {self.r}")

    @property
    def degree(self) -> int:
        """2r - 1, the regularity of G_r."""
        return 2 * self.r - 1

    @property
    def c(self) -> float:
        """r / sqrt(2r - 1)."""
        return self.r / math.sqrt(self.degree)

    @property
    def c_squared(self) -> Fraction:
        return Fraction(self.r * self.r, self.degree)


def vertex_of_letter(letter: int, r: int) -> int:
    """Signed generator index (+g for a_g, -g for A_g) to G_r vertex."""
    g = abs(letter)
    if letter == 0 or g > r:
        raise PreconditionError(f"letter {letter} is not in the alphabet of F_{r}")
    return g - 1 if letter > 0 else 2 * r - g


def letter_of_vertex(v: int, r: int) -> int:
    if not 0 <= v < 2 * r:
        raise PreconditionError(f"vertex {v} out of range for G_{r}")
    return v + 1 if v < r else -(2 * r - v)


def inverse_vertex(v: int, r: int) -> int:
    return 2 * r - 1 - v


def exponent_vector(v: int, r: int) -> List[int]:
    """Abelianization of the single letter at vertex v."""
    letter = letter_of_vertex(v, r)
    e = [0] * r
    e[abs(letter) - 1] = 1 if letter > 0 else -1
    return e


def build_gr(r: int) -> Graph:
    """
    The 2r-vertex graph G_r with adjacency J - P (P the inverse pairing).

    Args:
        r: Rank, r >= 1.

    Returns:
        Undirected (2r-1)-regular Graph with a loop at every vertex.
    """
    FreeRank(r)
    size = 2 * r
    adj = np.ones((size, size), dtype=np.int64)
    for v in range(size):
        adj[v, inverse_vertex(v, r)] = 0
    return Graph.from_matrix(adj, directed=False)
