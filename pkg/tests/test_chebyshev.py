from fractions import Fraction

import pytest

from fgwalk.core.errors import PreconditionError
from fgwalk.features.chebyshev.polynomials import (
    cheb,
    cheb_coeff_closed_form,
    cheb_eval,
    derivative,
    log_abs_cheb_t,
    sqrt_form,
)
from fgwalk.features.chebyshev.symmetrized import (
    a_coefficients,
    monotonicity_violation,
    symmetrized,
    verify_positivity,
)


def test_low_degree_polynomials():
    assert cheb("T", 0).coeffs == (1,)
    assert cheb("T", 4).coeffs == (1, 0, -8, 0, 8)
    assert cheb("U", 3).coeffs == (0, -4, 0, 8)


@pytest.mark.parametrize("n", range(13))
def test_closed_form_coefficients(n):
    T = cheb("T", n)
    for m in range(n // 2 + 1):
        assert cheb_coeff_closed_form(n, m) == T.coefficient(n - 2 * m)


@pytest.mark.parametrize("x", [0.3, -0.9, 1.7, -2.5])
def test_cosine_and_sqrt_forms(x):
    n = 7
    value = cheb("T", n)(x)
    assert cheb_eval("T", n, x) == pytest.approx(value, rel=1e-12)
    assert sqrt_form(n, x).real == pytest.approx(value, rel=1e-9)


def test_log_space_evaluation_handles_huge_degree():
    log_value, sign = log_abs_cheb_t(10_000, 1.5)
    assert sign == 1
    # T_n(cosh a) = cosh(n a)
    expected = 10_000 * 0.9624236501192069 - 0.6931471805599453
    assert log_value == pytest.approx(expected, rel=1e-12)


def test_invalid_kind():
    with pytest.raises(PreconditionError):
        cheb("V", 2)


def test_r2_one_variable():
    expansion = symmetrized("R", 2, 2, 1)
    assert expansion.vector() == {-2: 2, -1: 0, 0: 3, 1: 0, 2: 2}


def test_s2_one_variable():
    expansion = symmetrized("S", 2, 2, 1)
    assert expansion.coeffs.terms == {(-2,): 4, (0,): 7, (2,): 4}


@pytest.mark.parametrize("n", range(1, 7))
def test_positivity_one_variable(n):
    assert verify_positivity("R", n, 2, 1).ok


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("c", [2, 10])
def test_positivity_three_variables(n, c):
    report = verify_positivity("R", n, c, 3)
    assert report.ok
    assert report.checked_terms > 0


def test_negative_constant_term_is_reported():
    report = verify_positivity("R", 2, Fraction(3, 2), 3)
    assert not report.ok
    assert report.witness == (0, 0, 0)
    assert report.witness_value == Fraction(-1, 4)


def test_small_c_fails_positivity():
    # T_2((x + 1/x)/4) = x^2/8 - 3/4 + x^-2/8
    report = verify_positivity("R", 2, Fraction(1, 2), 1)
    assert not report.ok
    assert report.witness == (0,)
    assert report.witness_value == Fraction(-3, 4)


def test_vanishing_support_coefficient_fails():
    # at c = 1 the constant term of R_2 is exactly 0
    report = verify_positivity("R", 2, 1, 1)
    assert not report.ok
    assert report.witness == (0,)
    assert report.witness_value == 0


def test_nonpositive_c_rejected():
    with pytest.raises(PreconditionError):
        symmetrized("R", 2, 0, 1)


@pytest.mark.parametrize("n", range(1, 15))
def test_derivative_of_first_kind(n):
    expected = tuple((n + 1) * c for c in cheb("U", n).coeffs)
    assert derivative(cheb("T", n + 1)) == expected


@pytest.mark.parametrize("n", range(2, 15))
def test_first_kind_from_second_kind(n):
    U, U2 = cheb("U", n), cheb("U", n - 2)
    for j in range(n + 1):
        assert 2 * cheb("T", n).coefficient(j) == U.coefficient(j) - U2.coefficient(j)


def test_recurrence_table_matches_expansion():
    rows = a_coefficients(40, Fraction(3, 2))
    assert len(rows) == 41
    for n in (0, 1, 7, 40):
        vector = symmetrized("S", n, Fraction(3, 2), 1).vector()
        expected = {k: v for k, v in vector.items() if v}
        assert rows[n] == expected
    assert rows[2] == {-2: Fraction(9, 4), 0: Fraction(7, 2), 2: Fraction(9, 4)}


def test_monotonicity_chain():
    assert monotonicity_violation(40, Fraction(3, 2)) is None
    # c = 1: a_2^0 = 1 equals a_0^0
    assert monotonicity_violation(4, 1) == (2, 0)
