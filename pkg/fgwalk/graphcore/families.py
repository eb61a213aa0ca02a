# fgwalk/graphcore/families.py
"""Standard graph families used by the CLI and the test-suite."""
import itertools
from typing import Optional

import networkx as nx
import numpy as np

from ..core.config import logger
from ..core.errors import ConvergenceError, PreconditionError
from .graph import Graph
from .structure import connectivity_and_bipartite, is_primitive

MAX_RESAMPLES = 1000


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise PreconditionError(f"cycle graph needs n >= 3, got {n}")
    return Graph.from_networkx(nx.cycle_graph(n))


def complete_graph(n: int) -> Graph:
    if n < 2:
        raise PreconditionError(f"complete graph needs n >= 2, got {n}")
    return Graph.from_networkx(nx.complete_graph(n))


def petersen_graph() -> Graph:
    return Graph.from_networkx(nx.petersen_graph())


def directed_cycle(n: int) -> Graph:
    if n < 1:
        raise PreconditionError("directed cycle needs n >= 1")
    adj = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        adj[i, (i + 1) % n] += 1
    return Graph.from_matrix(adj, directed=True)


def de_bruijn(d: int, m: int) -> Graph:
    """
    De Bruijn digraph B(d, m): vertices are words of length m over d letters,
    with an arc w -> w[1:] + a for each letter a. It is d-regular and primitive.
    """
    if d < 1 or m < 1:
        raise PreconditionError("de Bruijn graph needs d >= 1 and m >= 1")
    words = list(itertools.product(range(d), repeat=m))
    index = {w: i for i, w in enumerate(words)}
    adj = np.zeros((len(words), len(words)), dtype=np.int64)
    for w in words:
        for a in range(d):
            adj[index[w], index[w[1:] + (a,)]] += 1
    return Graph.from_matrix(adj, directed=True)


def random_regular_graph(d: int, n: int, seed: Optional[int] = None) -> Graph:
    """Connected non-bipartite simple d-regular graph on n vertices."""
    rng = np.random.default_rng(seed)
    for attempt in range(MAX_RESAMPLES):
        g = nx.random_regular_graph(d, n, seed=int(rng.integers(2**31)))
        graph = Graph.from_networkx(g)
        flags = connectivity_and_bipartite(graph)
        if flags.connected and not flags.bipartite:
            logger.debug(
                f"random_regular_graph({d}, {n}) accepted after {attempt + 1} draws"
            )
            return graph
    raise ConvergenceError(
        f"no connected non-bipartite {d}-regular graph on {n} vertices found",
        {"attempts": MAX_RESAMPLES},
    )


def random_regular_digraph(d: int, n: int, seed: Optional[int] = None) -> Graph:
    """
    Primitive d-in/out-regular digraph on n vertices, built as a sum of d
    random permutation matrices (parallel arcs and loops allowed).
    """
    if d < 1 or n < 1:
        raise PreconditionError("random digraph needs d >= 1 and n >= 1")
    rng = np.random.default_rng(seed)
    for attempt in range(MAX_RESAMPLES):
        adj = np.zeros((n, n), dtype=np.int64)
        for _ in range(d):
            adj[np.arange(n), rng.permutation(n)] += 1
        if is_primitive(adj):
            logger.debug(
                f"random_regular_digraph({d}, {n}) accepted after {attempt + 1} draws"
            )
            return Graph.from_matrix(adj, directed=True)
    raise ConvergenceError(
        f"no primitive {d}-regular digraph on {n} vertices found",
        {"attempts": MAX_RESAMPLES},
    )


FAMILIES = {
    "cycle": cycle_graph,
    "complete": complete_graph,
    "petersen": petersen_graph,
    "directed-cycle": directed_cycle,
    "de-bruijn": de_bruijn,
    "random-regular": random_regular_graph,
    "random-regular-digraph": random_regular_digraph,
}
