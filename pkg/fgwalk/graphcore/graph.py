# fgwalk/graphcore/graph.py
"""
Graph data model and the plain-text graph file format.

A graph is stored as a dense matrix of edge multiplicities. For undirected
graphs the matrix is symmetric and a self-loop counts once in adj[i][i] (and
once towards the degree of i).

File format (UTF-8, '#' starts a comment):

    graph undirected            # or: graph directed
    vertices 4
    edge 0 1                    # optional multiplicity: edge 0 1 2
    label 0 1/2                 # optional vertex label, rational or decimal
"""
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np

from ..core.config import logger
from ..core.errors import GraphFormatError, PreconditionError
from ..utils.string_utils import format_rational, parse_rational

Number = Union[int, Fraction]


@dataclass(frozen=True)
class Graph:
    n: int
    directed: bool
    adj: Tuple[Tuple[int, ...], ...]
    labels: Tuple[Tuple[int, Fraction], ...] = field(default=())

    def __post_init__(self):
        if self.n < 0:
            raise PreconditionError(f"vertex count must be nonnegative, got {self.n}")
        if len(self.adj) != self.n or any(len(row) != self.n for row in self.adj):
            raise PreconditionError(f"adjacency matrix must be {self.n}x{self.n}")
        for i, row in enumerate(self.adj):
            for j, value in enumerate(row):
                if value < 0:
                    raise PreconditionError(
                        f"negative multiplicity {value} at ({i}, {j})"
                    )
                if not self.directed and value != self.adj[j][i]:
                    raise PreconditionError(
                        f"undirected adjacency is not symmetric at ({i}, {j})"
                    )
        for v, _ in self.labels:
            if not 0 <= v < self.n:
                raise PreconditionError(f"label for vertex {v} out of range")

    # --- constructors ---

    @classmethod
    def from_matrix(
        cls,
        adj: Union[Sequence[Sequence[int]], np.ndarray],
        directed: bool = False,
        labels: Optional[Dict[int, Number]] = None,
    ) -> "Graph":
        rows = tuple(tuple(int(x) for x in row) for row in adj)
        label_pairs = tuple(
            sorted((int(v), Fraction(val)) for v, val in (labels or {}).items())
        )
        return cls(n=len(rows), directed=directed, adj=rows, labels=label_pairs)

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "Graph":
        nodes = list(g.nodes())
        index = {node: i for i, node in enumerate(nodes)}
        adj = np.zeros((len(nodes), len(nodes)), dtype=np.int64)
        for u, v in g.edges():
            adj[index[u], index[v]] += 1
            if not g.is_directed() and u != v:
                adj[index[v], index[u]] += 1
        return cls.from_matrix(adj, directed=g.is_directed())

    def with_labels(self, labels: Dict[int, Number]) -> "Graph":
        return Graph.from_matrix(self.adj, self.directed, labels)

    # --- matrix views ---

    def matrix(self) -> np.ndarray:
        """Adjacency matrix as int64."""
        return np.array(self.adj, dtype=np.int64).reshape(self.n, self.n)

    def big(self) -> np.ndarray:
        """Adjacency matrix as an object array of Python ints (exact)."""
        out = np.empty((self.n, self.n), dtype=object)
        for i, row in enumerate(self.adj):
            for j, value in enumerate(row):
                out[i, j] = int(value)
        return out

    def float_matrix(self) -> np.ndarray:
        return self.matrix().astype(float)

    # --- degrees and edges ---

    def out_degrees(self) -> List[int]:
        return [sum(row) for row in self.adj]

    def in_degrees(self) -> List[int]:
        return [sum(self.adj[i][j] for i in range(self.n)) for j in range(self.n)]

    def regular_degree(self) -> Optional[int]:
        """Common degree r if the graph is r-regular, else None."""
        if self.n == 0:
            return None
        degrees = set(self.out_degrees())
        if self.directed:
            degrees |= set(self.in_degrees())
        return degrees.pop() if len(degrees) == 1 else None

    def edges(self) -> List[Tuple[int, int, int]]:
        """Canonical (u, v, multiplicity) list; undirected edges have u <= v."""
        out = []
        for u in range(self.n):
            for v in range(0 if self.directed else u, self.n):
                mult = self.adj[u][v]
                if mult:
                    out.append((u, v, mult))
        return out

    def num_edges(self) -> int:
        return sum(mult for _, _, mult in self.edges())

    def has_self_loops(self) -> bool:
        return any(self.adj[i][i] for i in range(self.n))

    def label_vector(self, default: Number = 0) -> List[Fraction]:
        values = [Fraction(default)] * self.n
        for v, val in self.labels:
            values[v] = val
        return values

    def to_networkx(self) -> nx.Graph:
        g = nx.MultiDiGraph() if self.directed else nx.MultiGraph()
        g.add_nodes_from(range(self.n))
        for u, v, mult in self.edges():
            for _ in range(mult):
                g.add_edge(u, v)
        return g


# --- file format ---


def parse_graph(text: str) -> Graph:
    """
    Parses the graph file format into a validated Graph.

    Raises:
        GraphFormatError: malformed header, bad line, or out-of-range vertex.
    """
    directed: Optional[bool] = None
    n: Optional[int] = None
    adj: Optional[np.ndarray] = None
    labels: Dict[int, Fraction] = {}

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        keyword = parts[0].lower()

        if directed is None:
            header_ok = len(parts) == 2 and parts[1] in ("directed", "undirected")
            if keyword != "graph" or not header_ok:
                raise GraphFormatError("expected 'graph directed|undirected'", line_no)
            directed = parts[1] == "directed"
            continue
        if n is None:
            if keyword != "vertices" or len(parts) != 2:
                raise GraphFormatError("expected 'vertices <n>'", line_no)
            n = _parse_index(parts[1], line_no)
            adj = np.zeros((n, n), dtype=object)
            continue

        if keyword == "edge":
            if len(parts) not in (3, 4):
                raise GraphFormatError("expected 'edge <u> <v> [mult]'", line_no)
            u = _parse_vertex(parts[1], n, line_no)
            v = _parse_vertex(parts[2], n, line_no)
            mult = _parse_index(parts[3], line_no) if len(parts) == 4 else 1
            adj[u, v] += mult
            if not directed and u != v:
                adj[v, u] += mult
        elif keyword == "label":
            if len(parts) != 3:
                raise GraphFormatError("expected 'label <v> <value>'", line_no)
            v = _parse_vertex(parts[1], n, line_no)
            try:
                labels[v] = parse_rational(parts[2])
            except ValueError as e:
                raise GraphFormatError(str(e), line_no) from e
        else:
            raise GraphFormatError(f"unknown keyword '{parts[0]}'", line_no)

    if directed is None or n is None:
        raise GraphFormatError("missing 'graph' or 'vertices' header")
    graph = Graph.from_matrix(adj.tolist(), directed=directed, labels=labels)
    logger.debug(
        f"Parsed graph: n={graph.n}, directed={graph.directed}, "
        f"edges={graph.num_edges()}"
    )
    return graph


def emit_graph(graph: Graph) -> str:
    """Canonical text form of a graph (edges sorted, multiplicity only if > 1)."""
    lines = [
        f"graph {'directed' if graph.directed else 'undirected'}",
        f"vertices {graph.n}",
    ]
    for u, v, mult in graph.edges():
        lines.append(f"edge {u} {v}" + (f" {mult}" if mult > 1 else ""))
    for v, value in graph.labels:
        lines.append(f"label {v} {format_rational(value)}")
    return "\n".join(lines) + "\n"


def load_graph(path: Union[str, Path]) -> Graph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise GraphFormatError(f"cannot read graph file '{path}': {e}") from e
    return parse_graph(text)


def _parse_index(token: str, line_no: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise GraphFormatError(
            f"expected a nonnegative integer, got '{token}'", line_no
        )
    if value < 0:
        raise GraphFormatError(f"negative value '{token}'", line_no)
    return value


def _parse_vertex(token: str, n: int, line_no: int) -> int:
    v = _parse_index(token, line_no)
    if v >= n:
        raise GraphFormatError(f"vertex {v} out of range for {n} vertices", line_no)
    return v

