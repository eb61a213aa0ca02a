from fractions import Fraction

import pytest

from fgwalk.core.errors import GuardExceededError, PreconditionError
from fgwalk.features.freegroup.homology import (
    ZSqrt,
    closed_form_gf,
    exact_moments,
    homoenum_closed_form_check,
    homology_gf,
    total_exponent_gf,
)
from fgwalk.features.freegroup.model import (
    FreeRank,
    build_gr,
    letter_of_vertex,
    vertex_of_letter,
)
from fgwalk.features.freegroup.words import (
    abelianization,
    brute_force_cyclic_words,
    brute_force_reduced_count,
    count_cyclically_reduced,
    count_reduced,
    format_word,
    is_cyclically_reduced,
    parse_word,
    reduce_word,
)
from fgwalk.graphcore.exact import trace_power


def test_gr_is_regular_with_loops(g2):
    assert g2.n == 4
    assert g2.regular_degree() == 3
    assert g2.has_self_loops()
    # a_1 is not adjacent to its inverse A_1
    assert g2.adj[0][3] == 0


@pytest.mark.parametrize("r", [1, 2, 3])
def test_letter_vertex_bijection(r):
    for v in range(2 * r):
        assert vertex_of_letter(letter_of_vertex(v, r), r) == v


def test_rank_must_be_positive():
    with pytest.raises(PreconditionError):
        FreeRank(0)
    assert FreeRank(2).c_squared == Fraction(4, 3)


def test_word_helpers():
    assert reduce_word((1, 2, -2, -1, 1)) == (1,)
    assert is_cyclically_reduced((1, 2))
    assert not is_cyclically_reduced((1, 2, -1))
    assert format_word((1, -2)) == "aB"
    assert parse_word("aB") == (1, -2)
    assert abelianization((1, 1, -2), 2) == (2, -1)


@pytest.mark.parametrize("r", [1, 2, 3])
@pytest.mark.parametrize("m", range(1, 7))
def test_closed_form_counts_match_enumeration(r, m):
    assert len(brute_force_cyclic_words(r, m)) == count_cyclically_reduced(r, m)
    assert trace_power(build_gr(r).big(), m) == count_cyclically_reduced(r, m)


def test_reduced_count():
    assert count_reduced(2, 3) == 36
    assert brute_force_reduced_count(2, 3) == 36


def test_small_counts():
    assert count_cyclically_reduced(2, 2) == 12
    assert count_cyclically_reduced(1, 5) == 2


def test_brute_force_guard():
    with pytest.raises(GuardExceededError):
        brute_force_cyclic_words(4, 12)


def test_rank_one_homology():
    gf = homology_gf(1, 4)
    assert gf.terms == {(4,): 1, (-4,): 1}


@pytest.mark.parametrize(
    "r, k", [(2, n) for n in range(1, 7)] + [(3, n) for n in range(1, 5)]
)
def test_homology_matches_chebyshev_closed_form(r, k):
    report = homoenum_closed_form_check(r, k)
    assert report.ok
    assert homology_gf(r, k).total() == count_cyclically_reduced(r, k)


def test_homology_by_brute_force():
    r, k = 2, 5
    expected = {}
    for word in brute_force_cyclic_words(r, k):
        e = abelianization(word, r)
        expected[e] = expected.get(e, 0) + 1
    assert homology_gf(r, k).terms == expected


def test_closed_form_constant_term_even_length():
    # the (r - 1)(1 + (-1)^k) correction lands on the zero class
    expected = homology_gf(2, 2).coefficient((0, 0))
    assert closed_form_gf(2, 2).coefficient((0, 0)) == expected


@pytest.mark.parametrize("n", [1, 2, 5, 8])
def test_total_exponent_methods_agree(n):
    transfer = total_exponent_gf(2, n, "transfer")
    assert total_exponent_gf(2, n, "collapse") == transfer
    assert total_exponent_gf(2, n, "chebyshev") == transfer


def test_total_exponent_unknown_method():
    with pytest.raises(PreconditionError):
        total_exponent_gf(2, 3, "fourier")


def test_exact_moments_small():
    # length 1: a, b, A, B with total exponents 1, 1, -1, -1
    count, mean, variance = exact_moments(2, 1)
    assert (count, mean, variance) == (4, 0, 1)


def test_exact_variance_approaches_clt_value():
    count, mean, variance = exact_moments(2, 60)
    assert count == count_cyclically_reduced(2, 60)
    assert mean == 0
    assert float(variance) / 60 == pytest.approx(2.0, rel=1e-6)


def test_zsqrt_arithmetic():
    root = ZSqrt(0, 1, 3)
    assert root * root == ZSqrt(3, 0, 3)
    assert (ZSqrt(1, 1, 3) ** 2) == ZSqrt(4, 2, 3)
