# fgwalk/features/linegraph/line.py
"""
Directed line graphs and the gradient / lift operators on them.

The vertices of the line digraph L(G) are the directed edges (arcs) of G.
There is an arc x -> y in L(G) when head(x) = tail(y); for an undirected G
the reversal y = reverse(x) is excluded, so closed walks on L(G) are the
backtrackless tailless closed walks on G.

For a vertex function f on G:

    grad f (e) = f(tail(e)) - f(head(e))
    lift f (e) = f(tail(e))
"""
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ...core.config import BRUTE_FORCE_LIMIT, logger
from ...core.errors import GuardExceededError, PreconditionError
from ...graphcore.graph import Graph
from ...graphcore.structure import connectivity_and_bipartite


@dataclass(frozen=True)
class LineDigraph:
    """
    ``edge_of[x]`` is (index into base.edges(), copy, sign); sign is +1 for
    the orientation u -> v of a canonical undirected edge (u <= v), -1 for
    v -> u, and +1 for every arc of a directed base.
    """

    base: Graph
    L: Graph
    tails: Tuple[int, ...]
    heads: Tuple[int, ...]
    edge_of: Tuple[Tuple[int, int, int], ...]
    reverse: Optional[Tuple[int, ...]]

    @property
    def size(self) -> int:
        return len(self.tails)

    @property
    def degree(self) -> Optional[int]:
        """In/out-degree of L(G) for a regular base: r - 1 (undirected) or r."""
        r = self.base.regular_degree()
        if r is None:
            return None
        return r if self.base.directed else r - 1

    def tail_matrix(self) -> np.ndarray:
        """K x V incidence T[e, tail(e)] = 1; the matrix of the lift."""
        T = np.zeros((self.size, self.base.n), dtype=np.int64)
        T[np.arange(self.size), self.tails] = 1
        return T

    def head_matrix(self) -> np.ndarray:
        H = np.zeros((self.size, self.base.n), dtype=np.int64)
        H[np.arange(self.size), self.heads] = 1
        return H

    def gradient_matrix(self) -> np.ndarray:
        return self.tail_matrix() - self.head_matrix()


def line_digraph(G: Graph) -> LineDigraph:
    """
    Builds L(G), vertices ordered by (base edge index, copy, orientation
    sign) with the -1 orientation first.

    Raises:
        PreconditionError: G has a self-loop or is not connected.
    """
    if G.has_self_loops():
        raise PreconditionError(
            "line digraph construction rejects self-loops in the base"
        )
    if not connectivity_and_bipartite(G).connected:
        raise PreconditionError("line digraph needs a connected base graph")

    tails: List[int] = []
    heads: List[int] = []
    edge_of: List[Tuple[int, int, int]] = []
    for index, (u, v, mult) in enumerate(G.edges()):
        for copy in range(mult):
            if G.directed:
                tails.append(u)
                heads.append(v)
                edge_of.append((index, copy, 1))
            else:
                tails.extend((v, u))
                heads.extend((u, v))
                edge_of.extend(((index, copy, -1), (index, copy, 1)))

    K = len(tails)
    reverse = None
    if not G.directed:
        reverse = tuple(x + 1 if x % 2 == 0 else x - 1 for x in range(K))
    adj = np.zeros((K, K), dtype=np.int64)
    for x in range(K):
        for y in range(K):
            if heads[x] == tails[y] and (reverse is None or reverse[x] != y):
                adj[x, y] = 1
    L = Graph.from_matrix(adj, directed=True)
    logger.debug(f"line_digraph: base n={G.n}, {K} arcs, {int(adj.sum())} transitions")
    return LineDigraph(G, L, tuple(tails), tuple(heads), tuple(edge_of), reverse)


def _vertex_vector(ld: LineDigraph, f: Sequence) -> np.ndarray:
    values = np.asarray(list(f))
    if values.shape != (ld.base.n,):
        raise PreconditionError(
            f"expected {ld.base.n} vertex values, got {values.shape[0]}"
        )
    return values


def grad(ld: LineDigraph, f: Sequence) -> np.ndarray:
    """Edge function e -> f(tail(e)) - f(head(e))."""
    values = _vertex_vector(ld, f)
    return values[list(ld.tails)] - values[list(ld.heads)]


def lift(ld: LineDigraph, f: Sequence) -> np.ndarray:
    """Edge function e -> f(tail(e))."""
    values = _vertex_vector(ld, f)
    return values[list(ld.tails)]


def edge_function(ld: LineDigraph, values: Sequence) -> np.ndarray:
    arr = np.asarray(list(values), dtype=float)
    if arr.shape != (ld.size,):
        raise PreconditionError(f"expected {ld.size} edge values, got {arr.shape[0]}")
    return arr


def count_backtrackless_cycles(G: Graph, N: int) -> int:
    """
    Brute-force count of closed backtrackless tailless walks of length N
    (sequences of N arcs, cyclically composable, never followed by their
    own reversal). Parallel edges are distinct; only the same edge
    traversed back counts as backtracking.

    Raises:
        GuardExceededError: (2E)^N exceeds the brute-force guard.
    """
    ld = line_digraph(G)
    K = ld.size
    if K**N > BRUTE_FORCE_LIMIT:
        raise GuardExceededError(
            f"backtrackless cycle enumeration for N={N}", K**N, BRUTE_FORCE_LIMIT
        )
    successors = [
        [
            y
            for y in range(K)
            if ld.heads[x] == ld.tails[y]
            and (ld.reverse is None or ld.reverse[x] != y)
        ]
        for x in range(K)
    ]
    total = 0
    for start in range(K):
        stack = [(start, 1)]
        while stack:
            x, length = stack.pop()
            if length == N:
                total += start in successors[x]
                continue
            stack.extend((y, length + 1) for y in successors[x])
    return total
