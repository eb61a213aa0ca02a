# fgwalk/features/homodist/clt.py
"""Gaussian limit of homology classes of cyclically reduced words."""
import math
from dataclasses import dataclass
from typing import Sequence

from ...core.errors import PreconditionError
from ..chebyshev.polynomials import cheb_eval, log_abs_cheb_t
from ..freegroup.model import FreeRank


@dataclass(frozen=True)
class CltParams:
    c: float
    k: int
    sigma2: float
    printed_sigma2: float


def _require(c: float, k: int):
    if not c > 1:
        raise PreconditionError(f"c must be > 1, got {c}")
    if k < 1:
        raise PreconditionError(f"k must be >= 1, got {k}")


def clt_sigma2(c: float, k: int) -> float:
    """
    Limiting per-coordinate variance c / (k sqrt(c^2 - 1)) of the normalized
    coefficients of R_n(c; x_1..x_k).

    Raises:
        PreconditionError: c <= 1 or k < 1.
    """
    _require(c, k)
    return c / (k * math.sqrt(c * c - 1))


def printed_sigma2(c: float, k: int) -> float:
    """(c/k)[1 + sqrt((c+1)/(c-1))]; a diagnostic that overshoots the exact variance."""
    _require(c, k)
    return (c / k) * (1 + math.sqrt((c + 1) / (c - 1)))


def clt_params(c: float, k: int) -> CltParams:
    return CltParams(c, k, clt_sigma2(c, k), printed_sigma2(c, k))


def free_group_clt(r: int, per_coordinate: bool = False) -> CltParams:
    """
    CLT parameters for F_r with c = r / sqrt(2r - 1).

    The total exponent uses k = 1; a single coordinate of the abelianization
    uses k = r.
    """
    rank = FreeRank(r)
    if r < 2:
        raise PreconditionError("the homology CLT needs rank >= 2 (c > 1)")
    return clt_params(rank.c, r if per_coordinate else 1)


def char_fn(n: int, c: float, theta: Sequence[float]) -> float:
    """
    T_n((c/k) sum_j cos(theta_j)) / T_n(c), evaluated in log space so that
    n up to 10^4 and beyond never overflows.
    """
    if not c > 1:
        raise PreconditionError(f"c must be > 1, got {c}")
    theta = list(theta)
    if not theta:
        raise PreconditionError("theta must have at least one coordinate")
    y = (c / len(theta)) * sum(math.cos(t) for t in theta)
    log_num, sign = log_abs_cheb_t(n, y)
    if sign == 0:
        return 0.0
    log_den, _ = log_abs_cheb_t(n, c)
    return sign * math.exp(log_num - log_den)


def gaussian_char_fn(sigma2: float, theta: Sequence[float]) -> float:
    return math.exp(-0.5 * sigma2 * sum(t * t for t in theta))


def psi(r: int, n: int, z: complex) -> complex:
    """
    Total-exponent generating function of cyclically reduced words of length
    n in F_r at a complex point z != 0:
    2 (2r-1)^(n/2) T_n((c/2)(z + 1/z)) + (r-1)(1 + (-1)^n).

    It satisfies psi(1/z) = psi(z) and psi(-z) = (-1)^n psi(z).
    """
    if z == 0:
        raise PreconditionError("psi is a Laurent polynomial; z must be nonzero")
    rank = FreeRank(r)
    y = 0.5 * rank.c * (z + 1 / z)
    return 2 * rank.degree ** (n / 2) * cheb_eval("T", n, y) + (r - 1) * (1 + (-1) ** n)
