# fgwalk/graphcore/polynomial.py
"""Univariate polynomials with exact rational coefficients."""
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

from ..core.errors import PreconditionError
from ..utils.string_utils import format_polynomial

Number = Union[int, Fraction]


class RationalPoly:
    """
    Polynomial sum(c_j u^j) over the rationals in canonical form.

    ``coeffs`` is ascending and never ends in a zero; the zero polynomial has
    no coefficients and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        values = [Fraction(c) for c in coeffs]
        while values and values[-1] == 0:
            values.pop()
        self.coeffs: Tuple[Fraction, ...] = tuple(values)

    @classmethod
    def monomial(cls, degree: int, coeff: Number = 1) -> "RationalPoly":
        return cls([0] * degree + [coeff])

    @classmethod
    def product(cls, factors: Sequence["RationalPoly"]) -> "RationalPoly":
        result = cls([1])
        for factor in factors:
            result = result * factor
        return result

    # --- basic properties ---

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, j: int) -> Fraction:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else Fraction(0)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self) -> List[int]:
        if not self.is_integral():
            raise PreconditionError(f"polynomial {self} has non-integer coefficients")
        return [c.numerator for c in self.coeffs]

    # --- ring operations ---

    def _coerce(self, other) -> "RationalPoly":
        if isinstance(other, RationalPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return RationalPoly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        size = max(len(self.coeffs), len(other.coeffs))
        return RationalPoly(self[j] + other[j] for j in range(size))

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return RationalPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise PreconditionError("negative polynomial power")
        result, base = RationalPoly([1]), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        """Horner evaluation; exact for int/Fraction x, floating otherwise."""
        coeffs = self.coeffs
        if not isinstance(x, (int, Fraction)):
            coeffs = tuple(float(c) for c in coeffs)
        acc = 0
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "RationalPoly":
        return RationalPoly(j * c for j, c in enumerate(self.coeffs) if j > 0)

    def reversed(self, degree: int) -> "RationalPoly":
        """u**degree * p(1/u); requires degree >= self.degree."""
        if degree < self.degree:
            raise PreconditionError("reversal degree below polynomial degree")
        padded = list(self.coeffs) + [Fraction(0)] * (degree + 1 - len(self.coeffs))
        return RationalPoly(reversed(padded))

    def series_div(self, denominator: "RationalPoly", n_terms: int) -> List[Fraction]:
        """First ``n_terms`` power series coefficients of self / denominator."""
        d0 = denominator[0]
        if d0 == 0:
            raise PreconditionError("series division needs a nonzero constant term")
        out: List[Fraction] = []
        for m in range(n_terms):
            top = min(m, denominator.degree)
            acc = self[m] - sum(denominator[i] * out[m - i] for i in range(1, top + 1))
            out.append(acc / d0)
        return out

    def __repr__(self):
        return f"RationalPoly({format_polynomial(self.coeffs)})"

    def format(self, var: str = "u") -> str:
        return format_polynomial(self.coeffs, var)
