# fgwalk/graphcore/laurent.py
"""
Sparse multivariate Laurent polynomials.

A polynomial is a dict mapping exponent tuples (one int per variable, possibly
negative) to nonzero int or Fraction coefficients.
"""
from collections import defaultdict
from fractions import Fraction
from typing import Callable, Dict, Iterator, Optional, Sequence, Tuple, Union

from ..core.config import LAURENT_TERM_LIMIT
from ..core.errors import GuardExceededError, PreconditionError
from ..utils.string_utils import format_laurent

Exponent = Tuple[int, ...]
Coeff = Union[int, Fraction]


class LaurentPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[Dict[Exponent, Coeff]] = None):
        if nvars < 1:
            raise PreconditionError("a Laurent polynomial needs at least one variable")
        self.nvars = nvars
        self.terms: Dict[Exponent, Coeff] = {}
        for exponent, coeff in (terms or {}).items():
            if len(exponent) != nvars:
                raise PreconditionError(
                    f"exponent {exponent} has wrong arity for {nvars} variables"
                )
            if coeff:
                self.terms[tuple(exponent)] = coeff

    # --- constructors ---

    @classmethod
    def constant(cls, nvars: int, value: Coeff = 1) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff: Coeff = 1) -> "LaurentPoly":
        return cls(len(exponent), {tuple(exponent): coeff})

    @classmethod
    def variable(cls, nvars: int, index: int, power: int = 1) -> "LaurentPoly":
        exponent = [0] * nvars
        exponent[index] = power
        return cls.monomial(exponent)

    # --- inspection ---

    def coefficient(self, exponent: Sequence[int]) -> Coeff:
        return self.terms.get(tuple(exponent), 0)

    def __iter__(self) -> Iterator[Tuple[Exponent, Coeff]]:
        return iter(sorted(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    def total(self) -> Coeff:
        """Sum of all coefficients (value at x = (1, ..., 1))."""
        return sum(self.terms.values())

    def max_abs_degree(self) -> int:
        return max((sum(abs(e) for e in exp) for exp in self.terms), default=0)

    # --- ring operations ---

    def _check(self, other: "LaurentPoly"):
        if other.nvars != self.nvars:
            raise PreconditionError(
                f"variable count mismatch: {self.nvars} vs {other.nvars}"
            )

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        out = dict(self.terms)
        for exponent, coeff in other.terms.items():
            out[exponent] = out.get(exponent, 0) + coeff
        return LaurentPoly(self.nvars, out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def scale(self, factor: Coeff) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {e: c * factor for e, c in self.terms.items()})

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        size = len(self.terms) * len(other.terms)
        if size > LAURENT_TERM_LIMIT * 16:
            raise GuardExceededError("Laurent product", size, LAURENT_TERM_LIMIT * 16)
        out: Dict[Exponent, Coeff] = defaultdict(int)
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[tuple(a + b for a, b in zip(e1, e2))] += c1 * c2
        if len(out) > LAURENT_TERM_LIMIT:
            raise GuardExceededError("Laurent term count", len(out), LAURENT_TERM_LIMIT)
        return LaurentPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "LaurentPoly":
        if exponent < 0:
            raise PreconditionError("negative powers are not supported")
        result = LaurentPoly.constant(self.nvars, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # --- maps ---

    def map_exponents(
        self, fn: Callable[[Exponent], Exponent], nvars: Optional[int] = None
    ) -> "LaurentPoly":
        """Push coefficients forward along an exponent map (merging collisions)."""
        out: Dict[Exponent, Coeff] = defaultdict(int)
        for exponent, coeff in self.terms.items():
            out[fn(exponent)] += coeff
        return LaurentPoly(nvars or self.nvars, out)

    def collapse(self) -> "LaurentPoly":
        """Image under x_i -> x for every i (one-variable result)."""
        return self.map_exponents(lambda e: (sum(e),), nvars=1)

    def evaluate(self, point: Sequence[complex]) -> complex:
        if len(point) != self.nvars:
            raise PreconditionError("evaluation point has wrong dimension")
        total = 0
        for exponent, coeff in self.terms.items():
            term = complex(coeff)
            for x, e in zip(point, exponent):
                term *= x**e
            total += term
        return total

    def __repr__(self):
        return f"LaurentPoly({format_laurent(self.terms)})"
