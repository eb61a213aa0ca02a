# fgwalk/features/chebyshev/polynomials.py
"""Exact Chebyshev polynomials T_n and U_n."""
import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Tuple, Union

from ...core.errors import FormulaMismatchError, PreconditionError
from ...graphcore.polynomial import RationalPoly

KINDS = ("T", "U")


@dataclass(frozen=True)
class ChebPoly:
    kind: str
    n: int
    coeffs: Tuple[int, ...]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def coefficient(self, j: int) -> int:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else 0

    def as_poly(self) -> RationalPoly:
        return RationalPoly(self.coeffs)


@lru_cache(maxsize=None)
def _cheb_coeffs(kind: str, n: int) -> Tuple[int, ...]:
    prev = (1,)
    if n == 0:
        return prev
    cur = (0, 1) if kind == "T" else (0, 2)
    for _ in range(n - 1):
        nxt = [0] * (len(cur) + 1)
        for j, c in enumerate(cur):
            nxt[j + 1] += 2 * c
        for j, c in enumerate(prev):
            nxt[j] -= c
        prev, cur = cur, tuple(nxt)
    return cur


def cheb(kind: str, n: int) -> ChebPoly:
    """
    T_n or U_n with exact integer coefficients from p_{n+1} = 2x p_n - p_{n-1}.

    Args:
        kind: "T" (first kind) or "U" (second kind).
        n: Degree, n >= 0.

    Returns:
        ChebPoly whose ``coeffs[j]`` is the coefficient of x^j.
    """
    if kind not in KINDS:
        raise PreconditionError(f"kind must be one of {KINDS}, got '{kind}'")
    if n < 0:
        raise PreconditionError(f"degree must be nonnegative, got {n}")
    return ChebPoly(kind, n, _cheb_coeffs(kind, n))


def cheb_coeff_closed_form(n: int, m: int) -> int:
    """
    Coefficient of x^(n-2m) in T_n:
    (-1)^m * n/(n-m) * C(n-m, m) * 2^(n-2m-1).
    """
    if n < 0 or not 0 <= m <= n // 2:
        raise PreconditionError(f"need 0 <= m <= n//2, got n={n}, m={m}")
    if n == 0:
        return 1
    value = (
        (-1) ** m
        * Fraction(n, n - m)
        * math.comb(n - m, m)
        * Fraction(2) ** (n - 2 * m - 1)
    )
    if value.denominator != 1:
        raise FormulaMismatchError(f"non-integer Chebyshev coefficient {value}", (n, m))
    return value.numerator


def derivative(poly: ChebPoly) -> Tuple[int, ...]:
    return tuple(j * c for j, c in enumerate(poly.coeffs) if j > 0)


def sqrt_form(n: int, x: Union[float, complex]) -> complex:
    """T_n(x) = ((x - sqrt(x^2-1))^n + (x + sqrt(x^2-1))^n) / 2 in floating point."""
    root = cmath.sqrt(x * x - 1)
    return 0.5 * ((x - root) ** n + (x + root) ** n)


def log_abs_cheb_t(n: int, y: float) -> Tuple[float, int]:
    """
    Overflow-free T_n(y) for real y, as (log|T_n(y)|, sign).

    Uses cosh(n arccosh|y|) on the larger branch when |y| > 1 and
    cos(n arccos y) otherwise. Returns (-inf, 0) for an exact zero.
    """
    if abs(y) <= 1.0:
        value = math.cos(n * math.acos(max(-1.0, min(1.0, y))))
        if value == 0.0:
            return float("-inf"), 0
        return math.log(abs(value)), 1 if value > 0 else -1
    a = math.acosh(abs(y))
    log_value = n * a + math.log1p(math.exp(-2 * n * a)) - math.log(2)
    sign = -1 if (y < 0 and n % 2 == 1) else 1
    return log_value, sign


def cheb_eval(kind: str, n: int, y):
    """Evaluate T_n(y) or U_n(y) by the three-term recurrence (any numeric y)."""
    if kind not in KINDS:
        raise PreconditionError(f"kind must be one of {KINDS}, got '{kind}'")
    prev, cur = 1, (y if kind == "T" else 2 * y)
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, 2 * y * cur - prev
    return cur
