# fgwalk/graphcore/exact.py
"""
Exact integer/rational matrix arithmetic.

Matrices are numpy object arrays holding Python ints or Fractions, so ``@``
never overflows. Characteristic polynomials go through sympy.
"""
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

import numpy as np
import sympy as sp

from ..core.config import logger
from ..core.errors import PreconditionError
from .polynomial import RationalPoly

MatrixLike = Union[np.ndarray, Sequence[Sequence[int]]]


def as_exact(A: MatrixLike) -> np.ndarray:
    """Copy of A as a square object array of exact numbers."""
    arr = np.array(A, dtype=object)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise PreconditionError(f"expected a square matrix, got shape {arr.shape}")
    out = np.empty(arr.shape, dtype=object)
    for idx, value in np.ndenumerate(arr):
        if isinstance(value, Fraction):
            out[idx] = value
        elif isinstance(value, (int, np.integer)):
            out[idx] = int(value)
        else:
            raise PreconditionError(f"non-exact entry {value!r} at {idx}")
    return out


def identity(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


def mat_pow(A: MatrixLike, m: int) -> np.ndarray:
    """A**m by binary powering in exact arithmetic."""
    if m < 0:
        raise PreconditionError("matrix power must be nonnegative")
    base = as_exact(A)
    result = identity(base.shape[0])
    while m:
        if m & 1:
            result = result.dot(base)
        m >>= 1
        if m:
            base = base.dot(base)
    return result


def trace_power(A: MatrixLike, m: int) -> int:
    """
    Exact tr(A^m).

    Args:
        A: Square integer matrix.
        m: Nonnegative exponent; m = 0 gives the dimension.

    Returns:
        The trace as a Python int (or Fraction for rational input).
    """
    power = mat_pow(A, m)
    total = sum(power[i, i] for i in range(power.shape[0]))
    return int(total) if not isinstance(total, Fraction) else total


def _to_sympy(A: np.ndarray) -> sp.Matrix:
    return sp.Matrix(
        A.shape[0],
        A.shape[1],
        lambda i, j: sp.Rational(A[i, j].numerator, A[i, j].denominator)
        if isinstance(A[i, j], Fraction)
        else sp.Integer(A[i, j]),
    )


def char_poly(A: MatrixLike) -> RationalPoly:
    """Exact det(uI - A), ascending coefficients."""
    exact = as_exact(A)
    n = exact.shape[0]
    if n == 0:
        return RationalPoly([1])
    u = sp.Symbol("u")
    poly = _to_sympy(exact).charpoly(u)
    coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
    logger.debug(f"char_poly: n={n}, degree={len(coeffs) - 1}")
    return RationalPoly(coeffs)


def reversed_char_poly(A: MatrixLike) -> RationalPoly:
    """Exact det(I - uA) = u^n * det((1/u)I - A)."""
    n = as_exact(A).shape[0]
    return char_poly(A).reversed(n)


def det_poly_matrix(entries: Sequence[Sequence[RationalPoly]]) -> RationalPoly:
    """
    Determinant of a square matrix of polynomials in u, via sympy's
    Berkowitz algorithm (division free).
    """
    u = sp.Symbol("u")
    n = len(entries)

    def to_expr(p: RationalPoly):
        return sum(
            sp.Rational(c.numerator, c.denominator) * u**j
            for j, c in enumerate(p.coeffs)
        )

    matrix = sp.Matrix(n, n, lambda i, j: to_expr(entries[i][j]))
    det = sp.Poly(sp.expand(matrix.det(method="berkowitz")), u)
    return RationalPoly(
        Fraction(int(sp.Rational(c).p), int(sp.Rational(c).q))
        for c in reversed(det.all_coeffs())
    )


# --- moment jets ---
#
# A jet (X0, X1, X2) stands for a matrix function X(t) with X(0) = X0,
# X'(0) = X1, X''(0) = X2. The step A * diag(exp(t f)) has jet
# (A, A diag(f), A diag(f^2)), and the jet of its N-th power carries the
# count, first and second moment of sum(f) over all N-step walks.

Jet = Tuple[np.ndarray, np.ndarray, np.ndarray]


def _diag_right(A: np.ndarray, values: Sequence) -> np.ndarray:
    out = A.copy()
    for j, value in enumerate(values):
        out[:, j] = out[:, j] * value
    return out


def jet_step(A: MatrixLike, f: Sequence) -> Jet:
    base = as_exact(A)
    f = [Fraction(x) if not isinstance(x, int) else x for x in f]
    return base, _diag_right(base, f), _diag_right(base, [x * x for x in f])


def jet_mul(X: Jet, Y: Jet) -> Jet:
    return (
        X[0].dot(Y[0]),
        X[0].dot(Y[1]) + X[1].dot(Y[0]),
        X[0].dot(Y[2]) + 2 * X[1].dot(Y[1]) + X[2].dot(Y[0]),
    )


def jet_power(step: Jet, m: int) -> Jet:
    if m < 1:
        raise PreconditionError("jet power must be >= 1")
    result = None
    base = step
    while m:
        if m & 1:
            result = base if result is None else jet_mul(result, base)
        m >>= 1
        if m:
            base = jet_mul(base, base)
    return result


def walk_moments(
    A: MatrixLike,
    f: Sequence,
    m: int,
    start: Optional[int] = None,
    end: Optional[int] = None,
) -> Tuple[Union[int, Fraction], Fraction, Fraction]:
    """
    Exact (total weight, sum of S, sum of S^2) over walks of length m, where S adds
    f at every vertex entered.

    With ``start``/``end`` unset the walks are closed (trace); otherwise they
    run from ``start`` to ``end``.
    """
    jet = jet_power(jet_step(A, f), m)
    if start is None:
        n = jet[0].shape[0]
        values = [sum(X[i, i] for i in range(n)) for X in jet]
    else:
        values = [X[start, end] for X in jet]
    count = Fraction(values[0])
    count = count.numerator if count.denominator == 1 else count
    return count, Fraction(values[1]), Fraction(values[2])
