# fgwalk/features/enumeration/conjugacy.py
"""
Counting conjugacy classes of fixed minimal length.

For a group with generating set S, N(r) counts elements of length r, C(r)
cyclically reduced words of length r and CC(r) conjugacy classes of minimal
length r. Conjugacy classes of cyclically reduced words are rotation orbits,
so Burnside's lemma gives

    r CC(r) = sum over d | r of phi(d) C(r / d).

All sequences are indexed from length 0, where the identity contributes 1.
"""
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import sympy as sp
from sympy.ntheory import mobius

from ...core.config import BRUTE_FORCE_LIMIT, FACTOR_LIMIT, logger
from ...core.errors import FormulaMismatchError, GuardExceededError, PreconditionError
from ...graphcore.polynomial import RationalPoly
from ..freegroup.model import FreeRank
from ..freegroup.words import (
    brute_force_cyclic_words,
    count_cyclically_reduced,
    count_reduced,
)

CC_GF_METHODS = ("lambert", "closed")


@dataclass(frozen=True)
class CountTriple:
    N: Tuple[int, ...]
    C: Tuple[int, ...]
    CC: Tuple[int, ...]

    @property
    def max_length(self) -> int:
        return len(self.CC) - 1


def _require_factorable(n: int):
    if n > FACTOR_LIMIT:
        raise GuardExceededError("totient/mobius factorization", n, FACTOR_LIMIT)


def totient(n: int) -> int:
    _require_factorable(n)
    return int(sp.totient(n))


def moebius(n: int) -> int:
    _require_factorable(n)
    return int(mobius(n))


def divisors(n: int) -> List[int]:
    _require_factorable(n)
    return [int(d) for d in sp.divisors(n)]


def necklace_count(C: Sequence[int], r: int) -> int:
    """(1/r) sum_{d | r} phi(d) C(r/d), with exact divisibility asserted."""
    total = sum(totient(d) * C[r // d] for d in divisors(r))
    if total % r:
        raise FormulaMismatchError(f"totient sum {total} is not divisible by {r}", r)
    return total // r


def free_group_counts(k: int, r_max: int) -> CountTriple:
    """
    N, C and CC for F_k with its free generators, lengths 0..r_max.

    Raises:
        PreconditionError: k < 1 or r_max < 0.
        FormulaMismatchError: a totient sum is not divisible by its length.
    """
    FreeRank(k)
    if r_max < 0:
        raise PreconditionError(f"maximal length must be >= 0, got {r_max}")
    N = [1] + [count_reduced(k, r) for r in range(1, r_max + 1)]
    C = [1] + [count_cyclically_reduced(k, r) for r in range(1, r_max + 1)]
    CC = [1] + [necklace_count(C, r) for r in range(1, r_max + 1)]
    logger.debug(f"free_group_counts(k={k}, r_max={r_max}) done")
    return CountTriple(tuple(N), tuple(C), tuple(CC))


def _canonical_rotation(word: Tuple[int, ...]) -> Tuple[int, ...]:
    return min(word[i:] + word[:i] for i in range(len(word)))


def burnside_oracle(k: int, r: int) -> int:
    """Rotation orbits of the cyclically reduced words of length r, one by one."""
    words = brute_force_cyclic_words(k, r)
    return len({_canonical_rotation(w) for w in words})


def cyclic_word_gf(k: int) -> Tuple[RationalPoly, RationalPoly]:
    """
    Numerator and denominator of the generating function of C(r), r >= 1:

        1/(1 - (2k-1)z) + 1/(1 - z) + 2(k-1)/(1 - z^2) - 2k
    """
    FreeRank(k)
    a = RationalPoly([1, -(2 * k - 1)])
    b = RationalPoly([1, -1])
    c = RationalPoly([1, 0, -1])
    numerator = b * c + a * c + 2 * (k - 1) * a * b - 2 * k * a * b * c
    return numerator, a * b * c


def cyclic_word_series(k: int, n_max: int) -> List[int]:
    numerator, denominator = cyclic_word_gf(k)
    coeffs = numerator.series_div(denominator, n_max + 1)
    return [int(c) for c in coeffs]


def _lambert_coeffs(k: int, n_max: int) -> List[int]:
    """1 + sum_d phi(d) F[C](z^d), assembled one divisor at a time."""
    C = [0] + [count_cyclically_reduced(k, m) for m in range(1, n_max + 1)]
    h = [1] + [0] * n_max
    for d in range(1, n_max + 1):
        phi = totient(d)
        for m in range(1, n_max // d + 1):
            h[d * m] += phi * C[m]
    return h


def _closed_form_coeffs(k: int, n_max: int) -> List[int]:
    """
    1 + sum_d phi(d) [1/(1 - (2k-1)z^d) - 1] + z/(1-z)^2 + 2(k-1) z^2/(1-z^2)^2
    """
    base = 2 * k - 1
    h = [1] + [0] * n_max
    for d in range(1, n_max + 1):
        phi = totient(d)
        for m in range(1, n_max // d + 1):
            h[d * m] += phi * base**m
    for n in range(1, n_max + 1):
        h[n] += n
        if n % 2 == 0:
            h[n] += 2 * (k - 1) * (n // 2)
    return h


def cc_gf_coeffs(k: int, n_max: int, method: str = "lambert") -> List[int]:
    """
    Coefficients h_0..h_n_max of H(z) = 1 + sum_d phi(d) F[C](z^d), where
    h_r = r CC(r) for r >= 1. For k = 1, H(z) = 1 + 2z/(1-z)^2.
    """
    FreeRank(k)
    if n_max < 0:
        raise PreconditionError(f"n_max must be >= 0, got {n_max}")
    if method == "lambert":
        return _lambert_coeffs(k, n_max)
    if method == "closed":
        return _closed_form_coeffs(k, n_max)
    raise PreconditionError(
        f"unknown method '{method}', expected one of {CC_GF_METHODS}"
    )


def printed_cc_gf_coeffs(k: int, n_max: int) -> List[int]:
    """
    Series of 1 + (k-1) z^2/(1-z^2)^2 + sum_d phi(d)(1/(1-(2k-1)z^d) - 1).
    It omits the z/(1-z)^2 term and halves the even-length term, so it does
    not match r CC(r); kept as a diagnostic.
    """
    FreeRank(k)
    h = _closed_form_coeffs(k, n_max)
    for n in range(1, n_max + 1):
        h[n] -= n
        if n % 2 == 0:
            h[n] -= (k - 1) * (n // 2)
    return h


def product_cc_gf(seq_a: Sequence[int], seq_b: Sequence[int]) -> List[int]:
    """
    CC sequence of G1 x G2 (generating set the union) as the Cauchy product
    of the two CC sequences; both must start with the identity term 1.
    """
    if not seq_a or not seq_b or seq_a[0] != 1 or seq_b[0] != 1:
        raise PreconditionError("CC sequences must start with the length-0 term 1")
    size = min(len(seq_a), len(seq_b))
    return [sum(seq_a[i] * seq_b[n - i] for i in range(n + 1)) for n in range(size)]


def integers_cc_counts(r_max: int) -> List[int]:
    """CC sequence of Z with generator {a}: 1, 2, 2, 2, ..."""
    return [1] + [2] * r_max


def lattice_cc_counts(n: int, r_max: int) -> List[int]:
    """CC sequence of Z^n as the n-fold product of the Z sequence."""
    if n < 1:
        raise PreconditionError(f"lattice dimension must be >= 1, got {n}")
    seq = integers_cc_counts(r_max)
    for _ in range(n - 1):
        seq = product_cc_gf(seq, integers_cc_counts(r_max))
    return seq


def lattice_count_formula(n: int, r: int) -> int:
    """Points of Z^n at l1-distance r: sum_k 2^k C(n, k) C(r-1, k-1)."""
    if r == 0:
        return 1
    return sum(
        2**k * math.comb(n, k) * math.comb(r - 1, k - 1)
        for k in range(1, min(n, r) + 1)
    )


def lattice_oracle(n: int, r: int) -> int:
    """
    Brute-force count of points of Z^n with l1 norm r; in an abelian group
    every element is its own conjugacy class.
    """
    size = (2 * r + 1) ** n
    if size > BRUTE_FORCE_LIMIT:
        raise GuardExceededError(
            f"lattice enumeration n={n}, r={r}", size, BRUTE_FORCE_LIMIT
        )
    points = itertools.product(range(-r, r + 1), repeat=n)
    return sum(1 for x in points if sum(map(abs, x)) == r)


@dataclass(frozen=True)
class DeviationReport:
    ratios: Tuple[float, ...]
    constant: float


def cclasses_deviation(k: int, r_max: int) -> DeviationReport:
    """
    |CC(r) - C(r)/r| / sqrt(C(r)) for r = 1..r_max; ``constant`` is the
    largest ratio, a fitted c with |CC(r) - C(r)/r| <= c sqrt(C(r)).
    """
    counts = free_group_counts(k, r_max)
    ratios = tuple(
        float(abs(Fraction(counts.CC[r]) - Fraction(counts.C[r], r)))
        / math.sqrt(counts.C[r])
        for r in range(1, r_max + 1)
    )
    return DeviationReport(ratios, max(ratios, default=0.0))


def linear_recurrence_order(seq: Sequence[int], max_order: int) -> Optional[int]:
    """
    Smallest d <= max_order such that every window s_i..s_(i+d) of the data
    satisfies one common linear relation, found by exact rank of the window
    matrix. Needs at least 2d + 1 terms for order d; None if no order fits.
    """
    values = [sp.Integer(int(x)) for x in seq]
    for d in range(1, max_order + 1):
        rows = len(values) - d
        if rows < d + 1:
            break
        windows = sp.Matrix(rows, d + 1, lambda i, j: values[i + j])
        if windows.rank() <= d:
            return d
    return None
