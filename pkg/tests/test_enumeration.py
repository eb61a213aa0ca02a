import networkx as nx
import pytest

from fgwalk.core.errors import (
    FormulaMismatchError,
    GuardExceededError,
    PreconditionError,
)
from fgwalk.features.enumeration.conjugacy import (
    burnside_oracle,
    cc_gf_coeffs,
    cclasses_deviation,
    cyclic_word_series,
    free_group_counts,
    lattice_cc_counts,
    lattice_count_formula,
    lattice_oracle,
    linear_recurrence_order,
    necklace_count,
    printed_cc_gf_coeffs,
    product_cc_gf,
    totient,
)
from fgwalk.features.enumeration.zeta import (
    cycle_counts,
    cycle_counts_from_zeta,
    directed_zeta_identity,
    free_group_cycle_counts,
    free_group_zeta_closed_form,
    ihara_identity_check,
    primitive_cycle_counts,
    printed_free_group_cycle_series,
    zeta,
)
from fgwalk.features.freegroup.model import build_gr
from fgwalk.features.freegroup.words import count_cyclically_reduced
from fgwalk.graphcore.graph import Graph
from fgwalk.graphcore.polynomial import RationalPoly

# --- conjugacy classes ---


def test_free_group_counts_rank_two():
    counts = free_group_counts(2, 6)
    assert counts.CC == (1, 4, 8, 12, 26, 52, 132)
    assert counts.C[:4] == (1, 4, 12, 28)
    assert counts.N[3] == 36
    assert counts.max_length == 6


@pytest.mark.parametrize("k, r", [(1, 3), (2, 4), (2, 5), (3, 3)])
def test_counts_match_burnside(k, r):
    assert free_group_counts(k, r).CC[r] == burnside_oracle(k, r)


def test_rank_one_cube():
    # a^3 and A^3
    assert burnside_oracle(1, 3) == 2


def test_generating_function_methods_agree():
    for k in (1, 2, 3):
        assert cc_gf_coeffs(k, 30, "lambert") == cc_gf_coeffs(k, 30, "closed")


def test_generating_function_counts_classes():
    counts = free_group_counts(2, 12)
    h = cc_gf_coeffs(2, 12)
    assert h[0] == 1
    assert all(h[r] == r * counts.CC[r] for r in range(1, 13))


def test_rank_one_generating_function():
    # H(z) = 1 + 2z/(1-z)^2
    assert cc_gf_coeffs(1, 10)[1:] == [2 * r for r in range(1, 11)]


def test_printed_generating_function_differs():
    assert printed_cc_gf_coeffs(2, 10) != cc_gf_coeffs(2, 10)


def test_unknown_method():
    with pytest.raises(PreconditionError):
        cc_gf_coeffs(2, 5, "euler")


def test_cyclic_word_series():
    series = cyclic_word_series(2, 12)
    assert series[0] == 0
    assert series[1:] == [count_cyclically_reduced(2, r) for r in range(1, 13)]


def test_recurrence_orders():
    C = [count_cyclically_reduced(2, r) for r in range(1, 21)]
    # roots 3, 1 and -1
    assert linear_recurrence_order(C, 6) == 3
    assert linear_recurrence_order(cc_gf_coeffs(2, 40), 6) is None


@pytest.mark.parametrize("r", range(0, 8))
def test_square_lattice(r):
    assert lattice_cc_counts(2, 7)[r] == lattice_count_formula(2, r)
    assert lattice_count_formula(2, r) == (4 * r if r else 1)


@pytest.mark.parametrize("r", range(0, 6))
def test_cubic_lattice_matches_enumeration(r):
    assert lattice_cc_counts(3, 5)[r] == lattice_oracle(3, r)


def test_product_needs_identity_term():
    with pytest.raises(PreconditionError):
        product_cc_gf([0, 2], [1, 2])


def test_deviation_constant():
    report = cclasses_deviation(2, 12)
    assert len(report.ratios) == 12
    assert report.constant < 1


def test_necklace_divisibility_is_asserted():
    with pytest.raises(FormulaMismatchError):
        necklace_count([1, 1, 2], 2)


def test_factorization_guard():
    with pytest.raises(GuardExceededError):
        totient(10**7 + 1)


# --- zeta functions ---


def test_triangle_zeta(c3):
    z = zeta(c3)
    assert z.format() == "1 - 3u^2 - 2u^3"
    assert cycle_counts_from_zeta(z, 4) == [0, 6, 6, 18]


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_free_group_zeta(r):
    G = build_gr(r)
    assert zeta(G) == free_group_zeta_closed_form(r)
    assert free_group_cycle_counts(r, 8) == cycle_counts(G, 8)


def test_printed_cycle_series_differs():
    assert printed_free_group_cycle_series(2, 5) != free_group_cycle_counts(2, 5)


def test_newton_identities_recover_traces(petersen):
    assert cycle_counts_from_zeta(zeta(petersen), 8) == cycle_counts(petersen, 8)


@pytest.mark.parametrize("seed", range(20))
def test_newton_identities_on_random_graphs(seed):
    n = 4 + seed % 6
    G = Graph.from_networkx(nx.gnp_random_graph(n, 0.5, seed=seed))
    assert cycle_counts_from_zeta(zeta(G), 12) == cycle_counts(G, 12)


def test_primitive_counts_k4(k4):
    assert cycle_counts(k4, 3)[2] == 24
    assert primitive_cycle_counts(k4, 4)[2] == 8


def test_zeta_constant_term():
    with pytest.raises(PreconditionError):
        cycle_counts_from_zeta(RationalPoly([2, 1]), 3)


@pytest.mark.parametrize("fixture", ["k4", "petersen", "c5", "cubic8"])
def test_ihara_identity(request, fixture):
    report = ihara_identity_check(request.getfixturevalue(fixture))
    assert report.equal


def test_ihara_cycle(c5):
    expected = RationalPoly([1, 0, 0, 0, 0, -2, 0, 0, 0, 0, 1])
    assert ihara_identity_check(c5).bass == expected


def test_ihara_handles_irregular_graphs():
    # K4 minus the edge 1-3: degrees 3, 2, 3, 2
    G = Graph.from_matrix([[0, 1, 1, 1], [1, 0, 1, 0], [1, 1, 0, 1], [1, 0, 1, 0]])
    assert ihara_identity_check(G).equal


@pytest.mark.parametrize(
    "graph",
    [
        Graph.from_matrix([[0, 1, 0], [1, 0, 1], [0, 1, 0]]),
        Graph.from_matrix([[0, 1], [1, 0]], directed=True),
        build_gr(2),
    ],
)
def test_ihara_preconditions(graph):
    with pytest.raises(PreconditionError):
        ihara_identity_check(graph)


def test_directed_zeta_identity(complete_digraph3):
    report = directed_zeta_identity(complete_digraph3)
    assert report.equal
    # det(I - u(J - I)) = (1 - 2u)(1 + u)^2
    assert report.ihara == RationalPoly([1, 0, -3, -2])
