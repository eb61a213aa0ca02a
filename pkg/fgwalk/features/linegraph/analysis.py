# fgwalk/features/linegraph/analysis.py
"""
Spectral structure of line digraphs and the variance of edge functions
along backtrackless walks.

With K arcs, d the degree of L(G) (r - 1 for an undirected r-regular base,
r for a directed one) and Delta = d I - A(L):

    sigma^2(f) = (1/K) [ -|f_0|^2 + 2 d f_0^T Delta_0^-1 f_0 ]
               = (1/K) [ d^2 |u|^2 - |A u|^2 ],   u = Delta_0^-1 f_0
"""
from dataclasses import dataclass
from typing import Dict, Optional, Sequence

import numpy as np
import sympy as sp
from scipy import linalg

from ...core.config import IDENTITY_RTOL, logger
from ...core.errors import FormulaMismatchError, PreconditionError
from ...graphcore.graph import Graph
from ...graphcore.spectrum import group_multiplicities, symmetric_eigen
from ...graphcore.structure import connectivity_and_bipartite, is_primitive
from ..walkstats.variance import (
    mean_zero_basis,
    restricted_inverse,
    restricted_inverse_form,
)
from .line import LineDigraph, edge_function, grad, line_digraph


def _require_regular_base(ld: LineDigraph) -> int:
    r = ld.base.regular_degree()
    if r is None:
        raise PreconditionError("base graph must be regular")
    return r


def _require_ergodic_line(ld: LineDigraph) -> int:
    """Degree of L(G) after checking that walks on it mix."""
    r = _require_regular_base(ld)
    if ld.base.directed:
        if not is_primitive(ld.base.matrix()):
            raise PreconditionError("directed base must be primitive")
    else:
        if connectivity_and_bipartite(ld.base).bipartite:
            raise PreconditionError("backtrackless walks need a non-bipartite base")
        if r < 3:
            raise PreconditionError(
                "backtrackless walks need degree >= 3 (cycles give periodic L(G))"
            )
    return ld.degree


def _variance(ld: LineDigraph, f: np.ndarray) -> float:
    d = _require_ergodic_line(ld)
    A = ld.L.float_matrix()
    f_0 = f - f.mean()
    form = restricted_inverse_form(d * np.eye(ld.size) - A, f)
    return float((-(f_0 @ f_0) + 2 * d * form) / ld.size)


def backtrackless_variance(G: Graph, f: Sequence) -> float:
    """
    Limiting variance per step of sum(f) over closed backtrackless walks on an
    undirected, connected, non-bipartite r-regular G, f indexed by the arcs
    of L(G).
    """
    if G.directed:
        raise PreconditionError(
            "backtrackless_variance takes an undirected base; use directed_variance"
        )
    ld = line_digraph(G)
    return _variance(ld, edge_function(ld, f))


def directed_variance(G: Graph, f: Sequence) -> float:
    """
    Limiting variance per step of sum(f) over closed walks of a primitive
    r-regular digraph, f indexed by its arcs.
    """
    if not G.directed:
        raise PreconditionError("directed_variance takes a directed base")
    ld = line_digraph(G)
    return _variance(ld, edge_function(ld, f))


def gram_variance(ld: LineDigraph, f: Sequence) -> float:
    """Same variance through (1/K)(d^2 |u|^2 - |A u|^2), u = Delta_0^-1 f_0."""
    d = _require_ergodic_line(ld)
    values = edge_function(ld, f)
    A = ld.L.float_matrix()
    u = restricted_inverse(d * np.eye(ld.size) - A) @ (values - values.mean())
    Au = A @ u
    return float((d * d * (u @ u) - Au @ Au) / ld.size)


def vertex_backtrackless_variance(G: Graph, f: Sequence) -> float:
    """
    Variance of a vertex function along backtrackless walks, through the
    V x V form lift^T (-I + 2d Delta_0^-1) lift restricted to mean-zero lifts.
    """
    ld = line_digraph(G)
    d = _require_ergodic_line(ld)
    values = np.asarray([float(x) for x in f])
    if values.shape != (G.n,):
        raise PreconditionError(f"expected {G.n} vertex values, got {values.shape[0]}")
    K = ld.size
    T = ld.tail_matrix().astype(float)
    center = np.eye(K) - np.ones((K, K)) / K
    inner = -np.eye(K) + 2 * d * restricted_inverse(d * np.eye(K) - ld.L.float_matrix())
    form = T.T @ center @ inner @ center @ T
    return float(values @ form @ values / K)


@dataclass(frozen=True)
class AtaReport:
    degree: int
    eigenvalues: Dict[float, int]
    expected: Dict[float, int]
    block_identity: bool
    lift_is_top_eigenspace: bool
    mean_zero_norm: float

    @property
    def ok(self) -> bool:
        return (
            self.block_identity
            and self.lift_is_top_eigenspace
            and self.eigenvalues == self.expected
        )


def ata_structure(ld: LineDigraph) -> AtaReport:
    """
    A^T A for A = A(L(G)) counts common in-neighbours, so

        undirected base: A^T A = I + (r - 2) T T^T
                         eigenvalues (r-1)^2 (x V), 1 (x 2E - V)
        directed base:   A^T A = r T T^T
                         eigenvalues r^2 (x V), 0 (x E - V)

    with T the tail incidence; the top eigenspace is the image of the lift.
    The operator norm of A on mean-zero functions is d.
    """
    r = _require_regular_base(ld)
    d = ld.degree
    A = ld.L.big()
    T = ld.tail_matrix().astype(object)
    AtA = A.T.dot(A)
    if ld.base.directed:
        expected_matrix = r * T.dot(T.T)
        low = 0
    else:
        expected_matrix = np.eye(ld.size, dtype=object) + (r - 2) * T.dot(T.T)
        low = 1
    block = bool((AtA == expected_matrix).all())
    lift_top = bool((AtA.dot(T) == d * d * T).all())
    spectrum = symmetric_eigen(AtA.astype(float))
    counts = {
        round(float(v.real), 9): m
        for v, m in group_multiplicities(spectrum.eigenvalues, 1e-6)
    }
    V, K = ld.base.n, ld.size
    expected = {float(d * d): V}
    if K > V:
        expected[float(low)] = expected.get(float(low), 0) + K - V
    Q = mean_zero_basis(K)
    norm = float(np.linalg.norm(Q.T @ ld.L.float_matrix() @ Q, 2))
    logger.debug(f"ata_structure: eigenvalues {counts}, |A_0| = {norm:.9g}")
    return AtaReport(d, counts, expected, block, lift_top, norm)


@dataclass(frozen=True)
class EdgeDecomposition:
    gradient_part: np.ndarray
    circulation_part: np.ndarray
    potential: np.ndarray


def decompose_edgefn(ld: LineDigraph, g: Sequence) -> EdgeDecomposition:
    """
    Orthogonal decomposition g = grad(phi) + c with c orthogonal to every
    gradient, i.e. equal in- and out-sums of c at every base vertex.
    """
    values = edge_function(ld, g)
    D = ld.gradient_matrix().astype(float)
    phi, *_ = linalg.lstsq(D, values)
    phi = phi - phi.mean()
    gradient_part = D @ phi
    circulation = values - gradient_part
    flux = D.T @ circulation
    scale = max(1.0, float(np.abs(values).max(initial=0.0))) * ld.size
    if np.abs(flux).max(initial=0.0) > IDENTITY_RTOL * scale:
        raise FormulaMismatchError(
            "circulation part is not orthogonal to the gradients"
        )
    return EdgeDecomposition(gradient_part, circulation, phi)


@dataclass(frozen=True)
class LiftProjection:
    projection: np.ndarray
    half_gradient: np.ndarray
    gradient_of_laplacian: np.ndarray
    matches_half_gradient: bool
    matches_gradient_of_laplacian: bool


def lift_projection(ld: LineDigraph, f: Sequence, tol: float = 1e-9) -> LiftProjection:
    """
    Projection of lift(f) onto the gradients, compared with grad(f)/2 (exact
    for an undirected regular base) and with grad(Delta f).
    """
    r = _require_regular_base(ld)
    values = np.asarray([float(x) for x in f])
    lifted = values[list(ld.tails)]
    projection = decompose_edgefn(ld, lifted).gradient_part
    half = 0.5 * grad(ld, values)
    laplacian = r * np.eye(ld.base.n) - ld.base.float_matrix()
    of_laplacian = grad(ld, laplacian @ values)
    scale = max(1.0, float(np.abs(projection).max(initial=0.0)))
    return LiftProjection(
        projection,
        half,
        of_laplacian,
        bool(np.allclose(projection, half, atol=tol * scale)),
        bool(np.allclose(projection, of_laplacian, atol=tol * scale)),
    )


def cocycle_witness(
    graph: Graph, f: Sequence, tol: float = 1e-9
) -> Optional[np.ndarray]:
    """
    A potential g with f_0(tail(e)) = g(tail(e)) - g(head(e)) on every arc of
    the digraph, or None. Such g exists exactly when sum(f) is constant on
    closed walks of each length, i.e. when the walk variance vanishes.
    """
    if not graph.directed:
        raise PreconditionError(
            "cocycle_witness takes a digraph "
            "(use the line digraph of an undirected base)"
        )
    values = np.asarray([float(x) for x in f])
    if values.shape != (graph.n,):
        raise PreconditionError(
            f"expected {graph.n} vertex values, got {values.shape[0]}"
        )
    arcs = [(u, v) for u, v, mult in graph.edges() for _ in range(mult)]
    D = np.zeros((len(arcs), graph.n))
    rhs = np.zeros(len(arcs))
    f_0 = values - values.mean()
    for row, (u, v) in enumerate(arcs):
        D[row, u] += 1
        D[row, v] -= 1
        rhs[row] = f_0[u]
    g, *_ = linalg.lstsq(D, rhs)
    residual = float(np.abs(D @ g - rhs).max(initial=0.0))
    if residual > tol * max(1.0, float(np.abs(f_0).max(initial=0.0))):
        return None
    return g - g[0]


@dataclass(frozen=True)
class ImdelReport:
    lift_is_eigenspace: bool
    laplacian_maps_lift_to_gradients: bool
    forbidden_dimension: int
    bipartite: bool

    @property
    def ok(self) -> bool:
        return (
            self.lift_is_eigenspace
            and self.laplacian_maps_lift_to_gradients
            and (self.forbidden_dimension == 0 or self.bipartite)
        )


def _to_sympy(M: np.ndarray) -> sp.Matrix:
    return sp.Matrix(M.shape[0], M.shape[1], lambda i, j: sp.Integer(int(M[i, j])))


def imdel_check(ld: LineDigraph) -> ImdelReport:
    """
    Exact checks of the eigenspace structure of L(G):

    (a) the d^2 eigenspace of A^T A is the lift image (dimension V);
    (b) Delta_L maps the lift image onto the gradients (Delta_L lift = d grad);
    (c) the gradients, the lift image and the mean-zero functions meet only
        in 0 unless the base is bipartite; ``forbidden_dimension`` is the
        exact dimension of that intersection.
    """
    _require_regular_base(ld)
    d = ld.degree
    A = ld.L.big()
    T = ld.tail_matrix().astype(object)
    D = ld.gradient_matrix().astype(object)
    V, K = ld.base.n, ld.size

    T_sym, D_sym = _to_sympy(T), _to_sympy(D)
    spectrum = symmetric_eigen(A.T.dot(A).astype(float))
    top = sum(1 for v in spectrum.eigenvalues if abs(v - d * d) < 1e-6)
    # for a 2-regular undirected base d^2 = 1 is also the bulk eigenvalue
    expected_top = K if (not ld.base.directed and d == 1) else V
    lift_eigen = (
        bool((A.T.dot(A).dot(T) == d * d * T).all())
        and T_sym.rank() == V
        and top == expected_top
    )

    laplacian = d * np.eye(K, dtype=object) - A
    maps = bool((laplacian.dot(T) == d * D).all())

    # a T x = b D y with 1^T T x = 0, via the nullspace of [T | -D] plus the constraint
    ones_row = sp.Matrix([[1] * K]) * T_sym
    system = sp.Matrix.vstack(
        sp.Matrix.hstack(T_sym, -D_sym),
        sp.Matrix.hstack(ones_row, sp.zeros(1, V)),
    )
    basis = system.nullspace()
    vectors = [T_sym * b[:V, 0] for b in basis]
    dimension = sp.Matrix.hstack(*vectors).rank() if vectors else 0
    bipartite = connectivity_and_bipartite(ld.base).bipartite
    return ImdelReport(lift_eigen, maps, int(dimension), bipartite)
