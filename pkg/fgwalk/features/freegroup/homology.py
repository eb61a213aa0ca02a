# fgwalk/features/freegroup/homology.py
"""
Generating functions of cyclically reduced words by homology class.

The coefficient of x^e in tr((D_r A_r)^k) is the number of cyclically reduced
words of length k whose abelianization is e; D_r is diagonal with the
monomial x_i at a_i and x_i^-1 at A_i.
"""
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

import numpy as np

from ...core.config import LAURENT_TERM_LIMIT, logger
from ...core.errors import FormulaMismatchError, GuardExceededError, PreconditionError
from ...graphcore.exact import walk_moments
from ...graphcore.laurent import Exponent, LaurentPoly
from ..chebyshev.polynomials import cheb
from ..chebyshev.symmetrized import symmetric_sum
from .model import FreeRank, build_gr, exponent_vector

TOTAL_EXPONENT_METHODS = ("transfer", "collapse", "chebyshev")


class ZSqrt:
    """Element a + b*sqrt(d) of Z[sqrt(d)] for a fixed non-square d."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a: int, b: int, d: int):
        self.a, self.b, self.d = a, b, d

    def __mul__(self, other: "ZSqrt") -> "ZSqrt":
        if self.d != other.d:
            raise PreconditionError("ZSqrt radicands differ")
        return ZSqrt(
            self.a * other.a + self.d * self.b * other.b,
            self.a * other.b + self.b * other.a,
            self.d,
        )

    def __add__(self, other: "ZSqrt") -> "ZSqrt":
        return ZSqrt(self.a + other.a, self.b + other.b, self.d)

    def scale(self, k: int) -> "ZSqrt":
        return ZSqrt(self.a * k, self.b * k, self.d)

    def __pow__(self, m: int) -> "ZSqrt":
        result = ZSqrt(1, 0, self.d)
        for _ in range(m):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, ZSqrt):
            return False
        return (self.a, self.b, self.d) == (other.a, other.b, other.d)

    def __repr__(self):
        return f"{self.a} + {self.b}*sqrt({self.d})"


@dataclass(frozen=True)
class ClosedFormReport:
    ok: bool
    terms: int
    first_mismatch: Optional[Exponent] = None
    expected: Optional[int] = None
    actual: Optional[int] = None


def _check_guard(r: int, k: int):
    size = (2 * k + 1) ** r
    if size > LAURENT_TERM_LIMIT:
        raise GuardExceededError(
            f"homology generating function for r={r}, k={k}", size, LAURENT_TERM_LIMIT
        )


def _validate(r: int, k: int):
    FreeRank(r)
    if k < 1:
        raise PreconditionError(f"word length must be >= 1, got {k}")


def homology_gf(r: int, k: int) -> LaurentPoly:
    """
    tr((D_r A_r)^k) as an exact Laurent polynomial in r variables.

    Args:
        r: Rank of the free group.
        k: Word length.

    Returns:
        LaurentPoly whose coefficient at e counts cyclically reduced words of
        length k with abelianization e.

    Raises:
        GuardExceededError: if the expansion would exceed the term guard.
    """
    _validate(r, k)
    _check_guard(r, k)
    adj = build_gr(r).adj
    size = 2 * r
    steps = [tuple(exponent_vector(v, r)) for v in range(size)]
    total: Dict[Exponent, int] = defaultdict(int)

    for start in range(size):
        current = [dict() for _ in range(size)]
        current[start] = {steps[start]: 1}
        for _ in range(k - 1):
            nxt = [defaultdict(int) for _ in range(size)]
            for v in range(size):
                if not current[v]:
                    continue
                for w in range(size):
                    if not adj[v][w]:
                        continue
                    shift = steps[w]
                    bucket = nxt[w]
                    for exponent, count in current[v].items():
                        moved = tuple(a + b for a, b in zip(exponent, shift))
                        bucket[moved] += count * adj[v][w]
            current = nxt
        for v in range(size):
            if adj[v][start]:
                for exponent, count in current[v].items():
                    total[exponent] += count * adj[v][start]

    logger.debug(f"homology_gf(r={r}, k={k}): {len(total)} classes")
    return LaurentPoly(r, total)


def closed_form_gf(r: int, k: int) -> LaurentPoly:
    """
    2(2r-1)^(k/2) R_k(r/sqrt(2r-1); x_1..x_r) + (r-1)(1 + (-1)^k), expanded
    exactly in Z[sqrt(2r-1)].

    Only even powers of sqrt(2r-1) survive; a surviving odd component raises
    FormulaMismatchError.
    """
    _validate(r, k)
    _check_guard(r, k)
    d = 2 * r - 1
    t_coeffs = cheb("T", k).coeffs
    s = symmetric_sum(r)
    # 2 sum_m t_m s^m sqrt(d)^(k-m) / 2^m, scaled by 2^(k-1) to stay integral
    scaled: Dict[Exponent, ZSqrt] = {}
    power = LaurentPoly.constant(r, 1)
    root = ZSqrt(0, 1, d)
    for m, t_m in enumerate(t_coeffs):
        if m > 0:
            power = power * s
        if t_m == 0:
            continue
        weight = (root ** (k - m)).scale(t_m * 2 ** (k - m))
        for exponent, count in power.terms.items():
            term = weight.scale(int(count))
            scaled[exponent] = scaled[exponent] + term if exponent in scaled else term

    terms: Dict[Exponent, int] = {}
    divisor = 2 ** (k - 1)
    for exponent, value in scaled.items():
        if value.b != 0:
            raise FormulaMismatchError("odd power of sqrt(2r-1) survived", exponent)
        if value.a % divisor:
            raise FormulaMismatchError(
                "closed form coefficient is not an integer", exponent
            )
        terms[exponent] = value.a // divisor
    zero = (0,) * r
    terms[zero] = terms.get(zero, 0) + (r - 1) * (1 + (-1) ** k)
    return LaurentPoly(r, terms)


def homoenum_closed_form_check(r: int, k: int) -> ClosedFormReport:
    """Compares homology_gf with the Chebyshev closed form, exactly."""
    direct = homology_gf(r, k)
    closed = closed_form_gf(r, k)
    keys = sorted(set(direct.terms) | set(closed.terms))
    for exponent in keys:
        expected = closed.coefficient(exponent)
        actual = direct.coefficient(exponent)
        if expected != actual:
            logger.warning(
                f"homology closed form mismatch at {exponent}: {expected} != {actual}"
            )
            return ClosedFormReport(False, len(keys), exponent, expected, actual)
    return ClosedFormReport(True, len(keys))


def _total_exponent_transfer(r: int, n: int) -> LaurentPoly:
    """Univariate DP with coefficient arrays indexed by exponent + n."""
    adj = np.array(build_gr(r).adj, dtype=object)
    size = 2 * r
    signs = [sum(exponent_vector(v, r)) for v in range(size)]
    width = 2 * n + 1
    total = np.zeros(width, dtype=object)
    for start in range(size):
        current = np.zeros((size, width), dtype=object)
        current[start, n + signs[start]] = 1
        for _ in range(n - 1):
            moved = adj.T.dot(current)
            for w in range(size):
                moved[w] = np.roll(moved[w], signs[w])
            current = moved
        total = total + adj[:, start].dot(current)
    return LaurentPoly(1, {(j - n,): int(c) for j, c in enumerate(total) if c})


def _total_exponent_chebyshev(r: int, n: int) -> LaurentPoly:
    """
    Univariate closed form: with c = r/sqrt(d) and y = (c/2)(x + 1/x),
    2 d^(n/2) T_n(y) = 2 sum_m t_m r^m d^((n-m)/2) (x + 1/x)^m / 2^m.
    """
    d = 2 * r - 1
    x_sum = LaurentPoly(1, {(1,): 1, (-1,): 1})
    power = LaurentPoly.constant(1, 1)
    acc = LaurentPoly.constant(1, 0)
    for m, t_m in enumerate(cheb("T", n).coeffs):
        if m > 0:
            power = power * x_sum
        if t_m == 0:
            continue
        acc = acc + power.scale(Fraction(2 * t_m * r**m * d ** ((n - m) // 2), 2**m))
    acc = acc + LaurentPoly.constant(1, (r - 1) * (1 + (-1) ** n))
    terms = {}
    for exponent, value in acc.terms.items():
        value = Fraction(value)
        if value.denominator != 1:
            raise FormulaMismatchError(
                "non-integral total exponent coefficient", exponent
            )
        terms[exponent] = value.numerator
    return LaurentPoly(1, terms)


def total_exponent_gf(r: int, n: int, method: str = "transfer") -> LaurentPoly:
    """
    Image of homology_gf under x_i -> x.

    ``method`` selects the computation path: "transfer" (univariate DP),
    "collapse" (from the r-variable expansion) or "chebyshev" (closed form).
    """
    _validate(r, n)
    if method == "transfer":
        return _total_exponent_transfer(r, n)
    if method == "collapse":
        return homology_gf(r, n).collapse()
    if method == "chebyshev":
        return _total_exponent_chebyshev(r, n)
    raise PreconditionError(
        f"method must be one of {TOTAL_EXPONENT_METHODS}, got '{method}'"
    )


def exact_moments(r: int, n: int) -> Tuple[int, Fraction, Fraction]:
    """
    (count, mean, variance) of the total exponent over cyclically reduced
    words of length n, from moment jets (no polynomial expansion).
    """
    _validate(r, n)
    signs = [sum(exponent_vector(v, r)) for v in range(2 * r)]
    count, first, second = walk_moments(build_gr(r).adj, signs, n)
    mean = first / count
    return count, mean, second / count - mean * mean
