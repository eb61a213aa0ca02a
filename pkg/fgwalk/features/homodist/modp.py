# fgwalk/features/homodist/modp.py
"""
Distribution of the total exponent of cyclically reduced words modulo a prime.

Two exact paths are provided: reducing the univariate generating function
mod p, and a transfer matrix on (letter, residue) states.
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

import numpy as np
import sympy as sp

from ...core.config import logger
from ...core.errors import FormulaMismatchError, PreconditionError
from ...graphcore.exact import mat_pow
from ..chebyshev.polynomials import log_abs_cheb_t
from ..freegroup.homology import total_exponent_gf
from ..freegroup.model import FreeRank, build_gr, exponent_vector

MODP_METHODS = ("transfer", "laurent")


@dataclass(frozen=True)
class ModPDistribution:
    r: int
    n: int
    p: int
    counts: Tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)


@dataclass(frozen=True)
class GapReport:
    gap: float
    bound: float
    distribution: ModPDistribution


@dataclass(frozen=True)
class BiasRanking:
    """
    Observed and predicted ordering of the residue counts.

    ``observed`` lists tie groups (equal counts) from largest to smallest.
    ``predicted`` lists the symmetric pairs {q, p-q} (and {0}) ordered by
    (-1)^n (-1)^q cos(pi q / p). The prediction is only claimed when
    ``in_regime`` is True, i.e. c cos(pi/p) > 1.
    """

    distribution: ModPDistribution
    observed: List[List[int]]
    predicted: List[List[int]]
    in_regime: bool
    matches_prediction: bool
    leader: List[int] = field(default_factory=list)


def _require_prime(p: int, allow_two: bool = True):
    if p < 2 or not sp.isprime(p):
        raise PreconditionError(f"p must be prime, got {p}")
    if p == 2 and not allow_two:
        raise PreconditionError("p must be an odd prime")


def _modp_transfer(r: int, n: int, p: int) -> Tuple[int, ...]:
    adj = build_gr(r).adj
    size = 2 * r
    signs = [sum(exponent_vector(v, r)) for v in range(size)]
    M = np.zeros((size * p, size * p), dtype=object)
    for v in range(size):
        for w in range(size):
            if not adj[v][w]:
                continue
            for a in range(p):
                M[v * p + a, w * p + (a + signs[w]) % p] += adj[v][w]
    power = mat_pow(M, n)
    return tuple(
        int(sum(power[v * p, v * p + q] for v in range(size))) for q in range(p)
    )


def _modp_laurent(r: int, n: int, p: int) -> Tuple[int, ...]:
    counts = [0] * p
    for (e,), value in total_exponent_gf(r, n, method="transfer"):
        counts[e % p] += int(value)
    return tuple(counts)


def modp_counts(r: int, n: int, p: int, method: str = "transfer") -> ModPDistribution:
    """
    Number of cyclically reduced words of length n in F_r whose total
    exponent is congruent to q mod p, for q = 0..p-1.

    Args:
        r: Rank, r >= 1.
        n: Word length, n >= 1.
        p: Prime modulus.
        method: "transfer" ((2r*p)-state transfer matrix) or "laurent"
            (reduce the univariate generating function).

    Raises:
        PreconditionError: p not prime, n < 1, or unknown method.
    """
    FreeRank(r)
    _require_prime(p)
    if n < 1:
        raise PreconditionError(f"word length must be >= 1, got {n}")
    if method == "transfer":
        counts = _modp_transfer(r, n, p)
    elif method == "laurent":
        counts = _modp_laurent(r, n, p)
    else:
        raise PreconditionError(f"method must be one of {MODP_METHODS}, got '{method}'")
    logger.debug(f"modp_counts(r={r}, n={n}, p={p}, {method}): {counts}")
    return ModPDistribution(r, n, p, counts)


def _fourier_bound(r: int, n: int, p: int, total: int) -> float:
    """
    Upper bound on max_q |p N_q / W - 1| from the Fourier expansion: each
    nontrivial character contributes at most 2 d^(n/2) T_n(|y_j|) (or
    2 d^(n/2) when |y_j| <= 1) plus the constant term.
    """
    rank = FreeRank(r)
    d = rank.degree
    log_total = math.log(total)
    constant = (r - 1) * (1 + (-1) ** n)
    bound = 0.0
    for j in range(1, p):
        y = abs(rank.c * math.cos(2 * math.pi * j / p))
        log_t = log_abs_cheb_t(n, y)[0] if y > 1 else 0.0
        bound += 2 * math.exp(0.5 * n * math.log(d) + log_t - log_total)
        bound += constant * math.exp(-log_total)
    return bound


def equidistribution_gap(r: int, n: int, p: int) -> GapReport:
    """
    max_q |p N_q / W - 1| with W the number of cyclically reduced words, and
    the Fourier upper bound on it.

    The gap itself need not decrease monotonically in n; the bound does tend
    to 0 for r >= 2 and every odd prime p.

    Raises:
        PreconditionError: p is 2 or not prime.
    """
    _require_prime(p, allow_two=False)
    dist = modp_counts(r, n, p)
    total = dist.total
    gap = max(abs(Fraction(p * count, total) - 1) for count in dist.counts)
    bound = _fourier_bound(r, n, p, total)
    if float(gap) > bound * (1 + 1e-9):
        raise FormulaMismatchError(
            f"gap {float(gap)} exceeds Fourier bound {bound}", (r, n, p)
        )
    return GapReport(float(gap), bound, dist)


def _tie_groups(counts: Tuple[int, ...]) -> List[List[int]]:
    groups: List[List[int]] = []
    for q in sorted(range(len(counts)), key=lambda q: (-counts[q], q)):
        if groups and counts[groups[-1][0]] == counts[q]:
            groups[-1].append(q)
        else:
            groups.append([q])
    return groups


def predicted_ranking(n: int, p: int) -> List[List[int]]:
    pairs = [[0]] + [[q, p - q] for q in range(1, (p - 1) // 2 + 1)]
    sign = (-1) ** n
    return sorted(
        pairs,
        key=lambda pair: -sign * (-1) ** pair[0] * math.cos(math.pi * pair[0] / p),
    )


def bias_ranking(r: int, n: int, p: int) -> BiasRanking:
    """
    Ranks residues by count and compares with the dominant-character
    prediction. For even n in the regime c cos(pi/p) > 1 the residue 0 leads
    and the pair containing p - 2 comes second; odd n reverses the order.
    """
    _require_prime(p, allow_two=False)
    rank = FreeRank(r)
    dist = modp_counts(r, n, p)
    observed = _tie_groups(dist.counts)
    predicted = predicted_ranking(n, p)
    in_regime = float(rank.c) * math.cos(math.pi / p) > 1
    matches = [sorted(g) for g in observed] == [sorted(g) for g in predicted]
    if in_regime and not matches:
        logger.warning(
            f"bias ranking for r={r}, n={n}, p={p} deviates from prediction: "
            f"{observed}"
        )
    return BiasRanking(dist, observed, predicted, in_regime, matches, observed[0])
