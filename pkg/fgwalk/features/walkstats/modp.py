# fgwalk/features/walkstats/modp.py
"""Closed walks counted by sum(f) mod p, for an integer vertex weight f."""
import cmath
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
import sympy as sp

from ...core.config import logger
from ...core.errors import PreconditionError
from ...graphcore.exact import mat_pow
from ...graphcore.graph import Graph
from ...graphcore.spectrum import spectral_radius
from ...graphcore.structure import is_irreducible, is_primitive


@dataclass(frozen=True)
class ModPWalkDistribution:
    p: int
    N: int
    counts: Tuple[int, ...]
    rate: float

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def gap(self) -> float:
        """max_q |p N_q / W - 1| for the computed N."""
        total = self.total
        return max(abs(self.p * c / total - 1) for c in self.counts)


def _integer_weights(f: Sequence, k: int):
    values = []
    for x in f:
        if int(x) != x:
            raise PreconditionError(
                f"mod-p distribution needs integer weights, got {x}"
            )
        values.append(int(x))
    if len(values) != k:
        raise PreconditionError(f"expected {k} vertex weights, got {len(values)}")
    return values


def modp_rate(A, f: Sequence[int], p: int) -> float:
    """
    max over nontrivial characters j of rho(U_j A) / rho(A) with
    U_j = diag(exp(2 pi i j f_v / p)); the geometric rate at which the
    residue distribution approaches uniform.
    """
    A = np.asarray(A, dtype=float)
    base = spectral_radius(A)
    rate = 0.0
    for j in range(1, p):
        phases = np.array([cmath.exp(2j * cmath.pi * j * v / p) for v in f])
        rate = max(rate, spectral_radius(phases[:, None] * A) / base)
    return rate


def modp_walk_distribution(
    graph: Graph, f: Sequence, p: int, N: int
) -> ModPWalkDistribution:
    """
    Exact counts of closed walks of length N by sum(f) mod p, from a transfer
    matrix on the k*p states (vertex, residue).

    Raises:
        PreconditionError: p not prime, N < 1, non-integer f, or A not
            irreducible and primitive.
    """
    if p < 2 or not sp.isprime(p):
        raise PreconditionError(f"p must be prime, got {p}")
    if N < 1:
        raise PreconditionError(f"walk length must be >= 1, got {N}")
    A = graph.matrix()
    if not is_irreducible(A) or not is_primitive(A):
        raise PreconditionError("adjacency matrix must be irreducible and primitive")
    k = graph.n
    weights = _integer_weights(f, k)
    M = np.zeros((k * p, k * p), dtype=object)
    for v in range(k):
        for w in range(k):
            if graph.adj[v][w]:
                for a in range(p):
                    M[v * p + a, w * p + (a + weights[w]) % p] += graph.adj[v][w]
    power = mat_pow(M, N)
    counts = tuple(
        int(sum(power[v * p, v * p + q] for v in range(k))) for q in range(p)
    )
    rate = modp_rate(A, weights, p)
    logger.debug(f"modp_walk_distribution(p={p}, N={N}): rate={rate:.6g}")
    return ModPWalkDistribution(p, N, counts, rate)
