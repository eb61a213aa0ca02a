# fgwalk/features/chebyshev/symmetrized.py
"""
Symmetrized Chebyshev functions

    R_n(c; x_1..x_k) = T_n((c/2k) * sum_i (x_i + 1/x_i))
    S_n(c; x_1..x_k) = U_n((c/2k) * sum_i (x_i + 1/x_i))

expanded exactly as Laurent polynomials with rational coefficients.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple, Union

from ...core.config import logger
from ...core.errors import PreconditionError
from ...graphcore.laurent import Exponent, LaurentPoly
from .polynomials import cheb

KIND_TO_CHEB = {"R": "T", "S": "U"}


@dataclass(frozen=True)
class SymmetrizedCheb:
    kind: str
    n: int
    c: Fraction
    k: int
    coeffs: LaurentPoly

    def t(self, j: int) -> Fraction:
        """Coefficient of x^j for the one-variable case."""
        if self.k != 1:
            raise PreconditionError("t(j) is only defined for k = 1")
        return Fraction(self.coeffs.coefficient((j,)))

    def vector(self) -> Dict[int, Fraction]:
        """k = 1 coefficients indexed -n..n."""
        return {j: self.t(j) for j in range(-self.n, self.n + 1)}


@dataclass(frozen=True)
class PositivityReport:
    ok: bool
    witness: Optional[Exponent] = None
    witness_value: Optional[Fraction] = None
    checked_terms: int = 0


def _require_parameters(kind: str, n: int, c, k: int) -> Fraction:
    if kind not in KIND_TO_CHEB:
        raise PreconditionError(f"kind must be 'R' or 'S', got '{kind}'")
    if n < 0:
        raise PreconditionError(f"degree must be nonnegative, got {n}")
    if k < 1:
        raise PreconditionError(f"number of variables must be >= 1, got {k}")
    c = Fraction(c)
    if c <= 0:
        raise PreconditionError(f"c must be a positive rational, got {c}")
    return c


def symmetric_sum(k: int, scale: Union[int, Fraction] = 1) -> LaurentPoly:
    """scale * sum_i (x_i + 1/x_i) in k variables."""
    terms = {}
    for i in range(k):
        for sign in (1, -1):
            exponent = [0] * k
            exponent[i] = sign
            terms[tuple(exponent)] = Fraction(scale)
    return LaurentPoly(k, terms)


def symmetrized(kind: str, n: int, c, k: int) -> SymmetrizedCheb:
    """
    Exact Laurent expansion of R_n or S_n.

    Args:
        kind: "R" (first kind) or "S" (second kind).
        n: Degree.
        c: Positive rational parameter.
        k: Number of variables.

    Returns:
        SymmetrizedCheb holding the expansion.
    """
    c = _require_parameters(kind, n, c, k)
    poly = cheb(KIND_TO_CHEB[kind], n)
    y = symmetric_sum(k, c / (2 * k))
    acc = LaurentPoly.constant(k, 0)
    for coeff in reversed(poly.coeffs):
        acc = acc * y + LaurentPoly.constant(k, Fraction(coeff))
    logger.debug(f"symmetrized {kind}_{n}(c={c}, k={k}): {len(acc)} terms")
    return SymmetrizedCheb(kind, n, c, k, acc)


def in_parity_support(exponent: Tuple[int, ...], n: int) -> bool:
    return sum(abs(e) for e in exponent) <= n and (sum(exponent) - n) % 2 == 0


def _support_exponents(n: int, k: int):
    """All exponent vectors with sum |e_i| <= n and sum e_i = n (mod 2)."""

    def rec(prefix, budget):
        if len(prefix) == k:
            if (sum(prefix) - n) % 2 == 0:
                yield tuple(prefix)
            return
        for e in range(-budget, budget + 1):
            yield from rec(prefix + [e], budget - abs(e))

    return rec([], n)


def verify_positivity(kind: str, n: int, c, k: int) -> PositivityReport:
    """
    Checks that every coefficient of R_n / S_n is nonnegative and that every
    exponent of the parity support is strictly positive.

    Returns the first violating exponent (in sorted order) as the witness.
    c <= 1 is accepted and typically fails.
    """
    expansion = symmetrized(kind, n, c, k)
    for exponent, value in expansion.coeffs:
        if value < 0 or not in_parity_support(exponent, n):
            return PositivityReport(
                False, exponent, Fraction(value), len(expansion.coeffs)
            )
    checked = 0
    for exponent in sorted(_support_exponents(n, k)):
        checked += 1
        value = Fraction(expansion.coeffs.coefficient(exponent))
        if value <= 0:
            return PositivityReport(False, exponent, value, checked)
    return PositivityReport(True, checked_terms=checked)


def a_coefficients(n_max: int, c) -> Tuple[Dict[int, Fraction], ...]:
    """
    Rows a_n (n = 0..n_max) of Laurent coefficients of U_n((c/2)(x + 1/x)),
    built by a_{n+1}^k = c (a_n^{k-1} + a_n^{k+1}) - a_{n-1}^k.
    """
    c = _require_parameters("S", n_max, c, 1)
    rows = [{0: Fraction(1)}]
    if n_max >= 1:
        rows.append({-1: c, 1: c})
    for n in range(1, n_max):
        cur, prev = rows[n], rows[n - 1]
        nxt = {}
        for k in range(-n - 1, n + 2):
            value = c * (cur.get(k - 1, 0) + cur.get(k + 1, 0)) - prev.get(k, 0)
            if value:
                nxt[k] = value
        rows.append(nxt)
    return tuple(rows[: n_max + 1])


def monotonicity_violation(n_max: int, c) -> Optional[Tuple[int, int]]:
    """
    First (n, k) on the parity support where a_n^k fails to strictly exceed
    a_{n-1}^{k-1}, a_{n-1}^{k+1} or a_{n-2}^k; None when the chain holds.
    """
    rows = a_coefficients(n_max, c)
    for n in range(1, n_max + 1):
        for k in range(-n, n + 1, 2):
            value = rows[n].get(k, 0)
            below = [rows[n - 1].get(k - 1, 0), rows[n - 1].get(k + 1, 0)]
            if n >= 2:
                below.append(rows[n - 2].get(k, 0))
            if any(value <= b for b in below):
                return n, k
    return None
