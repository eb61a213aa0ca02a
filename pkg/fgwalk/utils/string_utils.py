"""
String utility functions for fgwalk.

Formatting of exact numbers and polynomials for CLI output, and parsing of
user supplied rational values.
"""
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple, Union

Number = Union[int, Fraction]


def parse_rational(text: str) -> Fraction:
    """
    Parses a rational written as ``p/q``, an integer, or a decimal.

    Args:
        text: The value to parse.

    Returns:
        The exact Fraction.

    Raises:
        ValueError: If the text is not a rational number.

    Examples:
        >>> parse_rational("3/2")
        Fraction(3, 2)
        >>> parse_rational("0.25")
        Fraction(1, 4)
    """
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"not a rational number: '{text}'") from e


def parse_value_list(text: str) -> List[Fraction]:
    """
    Parses a comma separated list of rationals.

    Examples:
        >>> parse_value_list("1, -1/2,3")
        [Fraction(1, 1), Fraction(-1, 2), Fraction(3, 1)]
    """
    return [parse_rational(part) for part in text.split(",") if part.strip()]


def format_rational(value: Number) -> str:
    """
    Formats an exact number as ``p`` or ``p/q``.

    Examples:
        >>> format_rational(Fraction(6, 4))
        '3/2'
        >>> format_rational(Fraction(4, 2))
        '2'
    """
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _monomial(coeff: Fraction, body: str, first: bool) -> str:
    sign = "-" if coeff < 0 else "+"
    magnitude = abs(coeff)
    if body and magnitude == 1:
        text = body
    else:
        text = format_rational(magnitude) + body
    if first:
        return text if sign == "+" else f"-{text}"
    return f" {sign} {text}"


def format_polynomial(coeffs: Sequence[Number], var: str = "u") -> str:
    """
    Formats ascending coefficients as a polynomial string.

    Args:
        coeffs: Coefficient of ``var**j`` at index j.
        var: Variable name.

    Returns:
        A human readable polynomial, "0" for the zero polynomial.

    Examples:
        >>> format_polynomial([1, 0, -3, -2])
        '1 - 3u^2 - 2u^3'
        >>> format_polynomial([-1, 1], var="x")
        '-1 + x'
    """
    parts: List[str] = []
    for j, c in enumerate(coeffs):
        c = Fraction(c)
        if c == 0:
            continue
        body = "" if j == 0 else (var if j == 1 else f"{var}^{j}")
        parts.append(_monomial(c, body, first=not parts))
    return "".join(parts) if parts else "0"


def format_laurent(
    terms: Dict[Tuple[int, ...], Number], var_names: Sequence[str] = ()
) -> str:
    """
    Formats a sparse Laurent polynomial, exponents sorted lexicographically.

    Examples:
        >>> format_laurent({(2,): 1, (-2,): 1})
        'x^-2 + x^2'
        >>> format_laurent({(1, 0): 2, (0, -1): 1}, ["a", "b"])
        'b^-1 + 2a'
    """
    parts: List[str] = []
    for exponent in sorted(terms):
        c = Fraction(terms[exponent])
        if c == 0:
            continue
        nvars = len(exponent)
        names = list(var_names)
        if not names:
            names = ["x"] if nvars == 1 else [f"x{i + 1}" for i in range(nvars)]
        factors = []
        for name, e in zip(names, exponent):
            if e == 1:
                factors.append(name)
            elif e != 0:
                factors.append(f"{name}^{e}")
        parts.append(_monomial(c, "*".join(factors), first=not parts))
    return "".join(parts) if parts else "0"
