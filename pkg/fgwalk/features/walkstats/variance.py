# fgwalk/features/walkstats/variance.py
"""
Limiting variance of sum(f) along long closed walks on a regular graph, and
the exact finite-N moments used to check it.

For an r-regular graph on k vertices with Laplacian Delta = rI - A,

    sigma^2(f) = (1/k) [ -|f_0|^2 + 2r f_0^T Delta_0^-1 f_0 ]

where f_0 is the mean-zero part of f and Delta_0 the restriction of Delta to
mean-zero vectors.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

import numpy as np
from scipy import linalg

from ...core import config
from ...core.config import IDENTITY_RTOL, logger
from ...core.errors import FormulaMismatchError, PreconditionError
from ...graphcore.exact import walk_moments
from ...graphcore.graph import Graph
from ...graphcore.structure import (
    connectivity_and_bipartite,
    is_irreducible,
    is_primitive,
)
from ..perturbation.kato import harmonic_second_variation_general

WALK_KINDS = ("cycles", "paths")


@dataclass(frozen=True)
class WalkVariance:
    sigma2: float
    mean: float
    degree: float
    mean_zero_norm: float


@dataclass(frozen=True)
class WalkMoments:
    """Total weight of the ensemble with the exact mean and variance of sum(f)."""

    count: Union[int, Fraction]
    mean: Fraction
    variance: Fraction

    def per_step(self, N: int) -> Tuple[float, float]:
        """(mean / N, variance / N)."""
        return float(self.mean) / N, float(self.variance) / N


def mean_zero_basis(k: int) -> np.ndarray:
    """Orthonormal basis (k x (k-1)) of the vectors summing to zero."""
    return linalg.null_space(np.ones((1, k)))


def restricted_inverse(L: np.ndarray) -> np.ndarray:
    """
    Q (Q^T L Q)^-1 Q^T for an orthonormal basis Q of the mean-zero vectors:
    the inverse of L on that subspace, extended by 0 on the constants.
    """
    k = L.shape[0]
    Q = mean_zero_basis(k)
    try:
        inner = linalg.inv(Q.T @ L @ Q)
    except linalg.LinAlgError as exc:
        raise FormulaMismatchError(f"restricted operator is singular: {exc}") from exc
    return Q @ inner @ Q.T


def restricted_inverse_form(L: np.ndarray, f: np.ndarray) -> float:
    """
    f_0^T L_0^-1 f_0 for a matrix L that preserves the mean-zero subspace,
    solved in an explicit orthonormal basis of that subspace.

    Raises:
        FormulaMismatchError: L does not preserve the subspace, or L_0 is
            singular.
    """
    k = L.shape[0]
    Q = mean_zero_basis(k)
    scale = max(1.0, float(np.abs(L).max()))
    leak = np.abs(np.ones(k) @ L @ Q).max() if k > 1 else 0.0
    if leak > IDENTITY_RTOL * scale * k:
        raise FormulaMismatchError("operator does not preserve the mean-zero subspace")
    L0 = Q.T @ L @ Q
    rhs = Q.T @ (f - f.mean())
    try:
        y = linalg.solve(L0, rhs)
    except linalg.LinAlgError as exc:
        raise FormulaMismatchError(f"restricted operator is singular: {exc}") from exc
    return float(rhs @ y)


def _weights(f: Sequence, k: int) -> np.ndarray:
    values = np.asarray([float(x) for x in f], dtype=float)
    if values.shape != (k,):
        raise PreconditionError(f"expected {k} vertex weights, got {values.shape[0]}")
    return values


def require_ergodic_regular(graph: Graph) -> int:
    """
    Degree r of a graph admissible for the walk CLT.

    Undirected graphs must be connected, non-bipartite and r-regular; directed
    graphs must be irreducible, primitive, with all in- and out-degrees r.

    Raises:
        PreconditionError: naming the failing hypothesis.
    """
    r = graph.regular_degree()
    if r is None or r == 0:
        raise PreconditionError(
            "graph must be regular (equal in- and out-degrees for digraphs)"
        )
    if graph.directed:
        A = graph.matrix()
        if not is_irreducible(A):
            raise PreconditionError("digraph is not strongly connected (irreducible)")
        if not is_primitive(A):
            raise PreconditionError("digraph is not primitive")
    else:
        flags = connectivity_and_bipartite(graph)
        if not flags.connected:
            raise PreconditionError("graph is not connected")
        if flags.bipartite:
            raise PreconditionError("graph is bipartite")
    return r


def walk_variance(graph: Graph, f: Sequence) -> WalkVariance:
    """
    Limiting variance per step of sum(f) over closed walks.

    Args:
        graph: Regular, connected and non-bipartite (or primitive digraph).
        f: One weight per vertex.

    Returns:
        WalkVariance with sigma^2, the mean drift sum(f)/k and the operator
        norm of A on mean-zero vectors.
    """
    r = require_ergodic_regular(graph)
    A = graph.float_matrix()
    k = graph.n
    values = _weights(f, k)
    f_0 = values - values.mean()
    laplacian = r * np.eye(k) - A
    form = restricted_inverse_form(laplacian, values)
    sigma2 = (-(f_0 @ f_0) + 2 * r * form) / k
    Q = mean_zero_basis(k)
    a0_norm = float(np.linalg.norm(Q.T @ A @ Q, 2)) if k > 1 else 0.0
    logger.debug(
        f"walk_variance: k={k}, r={r}, sigma2={sigma2:.12g}, |A_0|={a0_norm:.6g}"
    )
    return WalkVariance(float(sigma2), float(values.mean()), float(r), a0_norm)


def path_variance(graph: Graph, f: Sequence, i: int, j: int) -> WalkVariance:
    """
    Limiting variance per step of sum(f) over walks from i to j; it does not
    depend on the endpoints and agrees with the closed-walk value.
    """
    if not (0 <= i < graph.n and 0 <= j < graph.n):
        raise PreconditionError(f"endpoints ({i}, {j}) out of range")
    return walk_variance(graph, f)


@dataclass(frozen=True)
class MarkovChain:
    P: np.ndarray
    doubly_stochastic: bool

    @classmethod
    def from_matrix(cls, P, tol: float = 1e-12) -> "MarkovChain":
        P = np.asarray(P, dtype=object if _is_exact(P) else float)
        if P.ndim != 2 or P.shape[0] != P.shape[1]:
            raise PreconditionError(f"transition matrix must be square, got {P.shape}")
        as_float = P.astype(float)
        if (as_float < -tol).any():
            raise PreconditionError("transition matrix has negative entries")
        if not np.allclose(as_float.sum(axis=1), 1.0, atol=tol):
            raise PreconditionError("rows of the transition matrix must sum to 1")
        doubly = bool(np.allclose(as_float.sum(axis=0), 1.0, atol=tol))
        return cls(P, doubly)

    @classmethod
    def from_graph(cls, graph: Graph) -> "MarkovChain":
        """Simple random walk A/r on an r-regular graph, in exact arithmetic."""
        r = graph.regular_degree()
        if not r:
            raise PreconditionError("simple random walk needs a regular graph")
        P = np.array([[Fraction(a, r) for a in row] for row in graph.adj], dtype=object)
        return cls.from_matrix(P)

    @property
    def k(self) -> int:
        return self.P.shape[0]


def _is_exact(P) -> bool:
    return all(isinstance(x, (int, Fraction)) for row in P for x in row)


def markov_variance(chain: MarkovChain, f: Sequence) -> float:
    """
    (1/k) [ -|f_0|^2 + 2 f_0^T (I_0 - P_0)^-1 f_0 ] for a doubly stochastic,
    irreducible, primitive chain.
    """
    if not chain.doubly_stochastic:
        raise PreconditionError("markov_variance needs a doubly stochastic chain")
    P = chain.P.astype(float)
    if not is_irreducible(P):
        raise PreconditionError("chain is not irreducible")
    if not is_primitive(P):
        raise PreconditionError("chain is not primitive")
    k = chain.k
    values = _weights(f, k)
    f_0 = values - values.mean()
    form = restricted_inverse_form(np.eye(k) - P, values)
    return float((-(f_0 @ f_0) + 2 * form) / k)


def variance_from_perturbation(graph: Graph, f: Sequence) -> float:
    """sigma^2 = -2 l2 / lam via the harmonic second-order coefficient of A."""
    r = require_ergodic_regular(graph)
    values = _weights(f, graph.n)
    l2 = harmonic_second_variation_general(graph.float_matrix(), values - values.mean())
    return -2 * l2 / r


# --- exact moments ---


@dataclass(frozen=True)
class WalkEnsemble:
    """Closed walks (``cycles``) or walks from ``i`` to ``j`` (``paths``), length N."""

    graph: Graph
    N: int
    kind: str = "cycles"
    i: Optional[int] = None
    j: Optional[int] = None

    def __post_init__(self):
        if self.kind not in WALK_KINDS:
            raise PreconditionError(
                f"kind must be one of {WALK_KINDS}, got '{self.kind}'"
            )
        if self.N < 1:
            raise PreconditionError(f"walk length must be >= 1, got {self.N}")
        if self.kind == "paths":
            if self.i is None or self.j is None:
                raise PreconditionError("path ensembles need endpoints i and j")
            if not (0 <= self.i < self.graph.n and 0 <= self.j < self.graph.n):
                raise PreconditionError(f"endpoints ({self.i}, {self.j}) out of range")
        require_ergodic_regular(self.graph)

    def moments(self, f: Sequence) -> WalkMoments:
        return exact_walk_moments(
            self.graph.big(), f, self.N, self.kind, self.i, self.j
        )


def _exact_weights(f: Sequence):
    return [x if isinstance(x, (int, Fraction)) else Fraction(x) for x in f]


def exact_walk_moments(
    A,
    f: Sequence,
    N: int,
    kind: str = "cycles",
    i: Optional[int] = None,
    j: Optional[int] = None,
) -> WalkMoments:
    """
    Exact mean and variance of sum(f) over the walk ensemble, weighting each
    walk by the product of its matrix entries (counts for an adjacency
    matrix, probabilities for a transition matrix).
    """
    if kind not in WALK_KINDS:
        raise PreconditionError(f"kind must be one of {WALK_KINDS}, got '{kind}'")
    if kind == "cycles":
        count, first, second = walk_moments(A, _exact_weights(f), N)
    else:
        count, first, second = walk_moments(A, _exact_weights(f), N, start=i, end=j)
    if count == 0:
        raise PreconditionError(f"no walks of length {N} in the ensemble")
    mean = Fraction(first) / count
    return WalkMoments(count, mean, Fraction(second) / count - mean * mean)


def markov_walk_moments(chain: MarkovChain, f: Sequence, N: int) -> WalkMoments:
    """Exact moments over closed orbits weighted by their probability."""
    P = chain.P
    if P.dtype != object:
        P = np.array([[Fraction(float(x)) for x in row] for row in P], dtype=object)
    return exact_walk_moments(P, f, N)


@dataclass(frozen=True)
class MonteCarloSample:
    samples: int
    mean_per_step: float
    variance_per_step: float


def monte_carlo_walk_sample(
    graph: Graph, f: Sequence, N: int, samples: int, seed: Optional[int] = None
) -> MonteCarloSample:
    """
    Samples random walks of length N from a uniform start and returns the
    empirical mean and variance of sum(f) per step. Only a demonstration;
    exact moments are the reference.
    """
    require_ergodic_regular(graph)
    if samples < 2:
        raise PreconditionError("need at least 2 samples")
    rng = np.random.default_rng(seed)
    A = graph.float_matrix()
    P = A / A.sum(axis=1, keepdims=True)
    cumulative = np.cumsum(P, axis=1)
    values = _weights(f, graph.n)
    state = rng.integers(0, graph.n, size=samples)
    totals = np.zeros(samples)
    for _ in range(N):
        u = rng.random(samples)
        state = np.minimum((cumulative[state] < u[:, None]).sum(axis=1), graph.n - 1)
        totals += values[state]
    return MonteCarloSample(
        samples, float(totals.mean() / N), float(totals.var(ddof=1) / N)
    )


def check_against_exact(
    graph: Graph, f: Sequence, N: int, rtol: float = 0.02
) -> Tuple[float, float]:
    """(sigma^2, exact closed-walk variance / N); raises beyond rtol apart."""
    sigma2 = walk_variance(graph, f).sigma2
    observed = float(exact_walk_moments(graph.big(), f, N).variance) / N
    if abs(observed - sigma2) > rtol * max(abs(sigma2), config.BASE_TOL):
        raise FormulaMismatchError(
            f"variance {sigma2:.6g} vs exact {observed:.6g} at N={N}"
        )
    return sigma2, observed
