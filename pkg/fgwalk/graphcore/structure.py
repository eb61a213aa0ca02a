# fgwalk/graphcore/structure.py
"""Structural precondition checks (connectivity, bipartiteness, primitivity)."""
from typing import NamedTuple

import networkx as nx
import numpy as np

from .graph import Graph


class StructureFlags(NamedTuple):
    connected: bool
    bipartite: bool
    strongly_connected: bool


def connectivity_and_bipartite(graph: Graph) -> StructureFlags:
    """
    Connectivity flags of a graph.

    ``bipartite`` is only meaningful for undirected graphs and is False for
    directed ones. A self-loop makes a graph non-bipartite. For undirected
    graphs ``strongly_connected`` equals ``connected``.
    """
    if graph.n == 0:
        return StructureFlags(False, False, False)
    g = graph.to_networkx()
    if graph.directed:
        return StructureFlags(
            connected=nx.is_weakly_connected(g),
            bipartite=False,
            strongly_connected=nx.is_strongly_connected(g),
        )
    connected = nx.is_connected(g)
    bipartite = not graph.has_self_loops() and nx.is_bipartite(nx.Graph(g))
    return StructureFlags(connected, bipartite, connected)


def is_irreducible(A) -> bool:
    """Nonnegative A is irreducible iff its pattern digraph is strongly connected."""
    pattern = np.asarray(A) != 0
    n = pattern.shape[0]
    if n == 0:
        return False
    g = nx.from_numpy_array(pattern.astype(int), create_using=nx.DiGraph)
    return nx.is_strongly_connected(g)


def is_primitive(A) -> bool:
    """
    Nonnegative A is primitive iff some power is entrywise positive; by
    Wielandt's bound it suffices to check A^((n-1)^2 + 1).
    """
    pattern = (np.asarray(A) != 0).astype(np.int64)
    n = pattern.shape[0]
    if n == 0 or not is_irreducible(pattern):
        return False
    exponent = (n - 1) ** 2 + 1
    result = np.eye(n, dtype=np.int64)
    base = pattern
    while exponent:
        if exponent & 1:
            result = ((result @ base) > 0).astype(np.int64)
        exponent >>= 1
        if exponent:
            base = ((base @ base) > 0).astype(np.int64)
    return bool(result.all())
