from fractions import Fraction

import numpy as np
import pytest

from fgwalk.core.errors import ConvergenceError, GraphFormatError, PreconditionError
from fgwalk.graphcore.exact import (
    char_poly,
    mat_pow,
    reversed_char_poly,
    trace_power,
    walk_moments,
)
from fgwalk.graphcore.families import (
    cycle_graph,
    de_bruijn,
    directed_cycle,
    random_regular_digraph,
    random_regular_graph,
)
from fgwalk.graphcore.graph import Graph, emit_graph, load_graph, parse_graph
from fgwalk.graphcore.laurent import LaurentPoly
from fgwalk.graphcore.polynomial import RationalPoly
from fgwalk.graphcore.spectrum import perron_pair, spectral_radius, symmetric_eigen
from fgwalk.graphcore.structure import (
    connectivity_and_bipartite,
    is_irreducible,
    is_primitive,
)


# --- file format ---


def test_parse_graph_triangle(c3_file):
    G = load_graph(c3_file)
    assert G.n == 3
    assert not G.directed
    assert G.regular_degree() == 2
    assert G.num_edges() == 3


def test_emit_is_canonical(c3_file):
    G = load_graph(c3_file)
    text = emit_graph(G)
    assert text == "graph undirected\nvertices 3\nedge 0 1\nedge 0 2\nedge 1 2\n"
    assert parse_graph(text) == G


def test_parse_multiplicity_and_labels():
    G = parse_graph("graph directed\nvertices 2\nedge 0 1 3\nedge 1 0\nlabel 1 -1/2\n")
    assert G.adj == ((0, 3), (1, 0))
    assert G.label_vector() == [Fraction(0), Fraction(-1, 2)]
    assert "edge 0 1 3" in emit_graph(G)
    assert "label 1 -1/2" in emit_graph(G)


def test_undirected_loop_counts_once():
    G = parse_graph("graph undirected\nvertices 1\nedge 0 0\n")
    assert G.adj == ((1,),)
    assert G.has_self_loops()


@pytest.mark.parametrize(
    "text, line_no",
    [
        ("graph sideways\nvertices 2\n", 1),
        ("graph undirected\nedges 2\n", 2),
        ("graph undirected\nvertices 2\nedge 0 2\n", 3),
        ("graph undirected\nvertices 2\n\nedge 0 x\n", 4),
        ("graph undirected\nvertices 2\nloop 0\n", 3),
    ],
)
def test_parse_errors_carry_line_numbers(text, line_no):
    with pytest.raises(GraphFormatError) as info:
        parse_graph(text)
    assert info.value.line_no == line_no


def test_missing_header():
    with pytest.raises(GraphFormatError):
        parse_graph("# nothing here\n")


def test_asymmetric_undirected_matrix_rejected():
    with pytest.raises(PreconditionError):
        Graph.from_matrix([[0, 1], [0, 0]], directed=False)


def test_networkx_round_trip(petersen):
    assert Graph.from_networkx(petersen.to_networkx()) == petersen


# --- exact arithmetic ---


def test_char_poly_k4(k4):
    # (u - 3)(u + 1)^3
    assert char_poly(k4.big()) == RationalPoly([-3, -8, -6, 0, 1])


def test_reversed_char_poly_triangle(c3):
    assert reversed_char_poly(c3.big()).format() == "1 - 3u^2 - 2u^3"


def test_exact_powers_do_not_overflow():
    assert trace_power([[2]], 100) == 2**100
    assert mat_pow([[1, 1], [1, 0]], 90)[0, 1] == 2880067194370816120


def test_trace_power_counts_closed_walks(k4):
    assert trace_power(k4.big(), 0) == 4
    assert trace_power(k4.big(), 2) == 12
    assert trace_power(k4.big(), 3) == 24


def test_walk_moments_constant_weight(k4):
    count, first, second = walk_moments(k4.big(), [1, 1, 1, 1], 2)
    assert count == 12
    assert first == 24
    assert second == 48


def test_walk_moments_between_vertices(k4):
    count, first, _ = walk_moments(k4.big(), [1, 0, 0, 0], 2, start=0, end=0)
    assert count == 3
    # every closed walk 0 -> x -> 0 enters vertex 0 exactly once
    assert first == 3


# --- polynomials ---


def test_series_division_geometric():
    assert RationalPoly([1]).series_div(RationalPoly([1, -1]), 5) == [1] * 5


def test_polynomial_format_and_evaluation():
    p = RationalPoly([Fraction(1, 2), 0, -1])
    assert p.format("x") == "1/2 - x^2"
    assert p(Fraction(1, 2)) == Fraction(1, 4)
    assert p.derivative() == RationalPoly([0, -2])
    assert RationalPoly([0, 0]).degree == -1


def test_laurent_square():
    s = LaurentPoly(1, {(1,): 1, (-1,): 1})
    square = s**2
    assert square.terms == {(2,): 1, (0,): 2, (-2,): 1}
    assert square.total() == 4
    assert list(square)[0] == ((-2,), 1)


def test_laurent_collapse():
    x = LaurentPoly.variable(2, 0)
    y_inv = LaurentPoly.variable(2, 1, -1)
    assert (x * y_inv + x).collapse().terms == {(0,): 1, (1,): 1}


# --- spectra ---


def test_perron_pair_k4(k4):
    rho, v = perron_pair(k4.float_matrix())
    assert rho == pytest.approx(3.0, rel=1e-12)
    assert v == pytest.approx(np.full(4, 0.5), rel=1e-10)


def test_perron_pair_rejects_negative_entries():
    with pytest.raises(PreconditionError):
        perron_pair([[1.0, -1.0], [1.0, 1.0]])


def test_spectral_radius_methods_agree(rng):
    A = rng.random((6, 6))
    assert spectral_radius(A, "power") == pytest.approx(spectral_radius(A), rel=1e-9)


def test_power_iteration_cap():
    # Jordan block: the norm ratio approaches 1 like 1/k
    with pytest.raises(ConvergenceError) as info:
        spectral_radius(np.array([[1.0, 1.0], [0.0, 1.0]]), "power")
    assert "iterations" in info.value.diagnostics


def test_petersen_multiplicities(petersen):
    spectrum = symmetric_eigen(petersen.float_matrix())
    grouped = [(round(float(v.real)), m) for v, m in spectrum.multiplicities]
    assert grouped == [(3, 1), (1, 5), (-2, 4)]


def test_symmetric_eigen_rejects_asymmetric():
    with pytest.raises(PreconditionError):
        symmetric_eigen([[0.0, 1.0], [0.0, 0.0]])


# --- structure and families ---


def test_bipartite_flags():
    assert connectivity_and_bipartite(cycle_graph(4)).bipartite
    flags = connectivity_and_bipartite(cycle_graph(5))
    assert flags.connected and not flags.bipartite


def test_primitivity():
    cycle = directed_cycle(3).matrix()
    assert is_irreducible(cycle)
    assert not is_primitive(cycle)
    assert is_primitive(de_bruijn(2, 3).matrix())


def test_random_regular_graph_is_seeded():
    G = random_regular_graph(3, 10, seed=11)
    assert G.regular_degree() == 3
    assert G == random_regular_graph(3, 10, seed=11)
    flags = connectivity_and_bipartite(G)
    assert flags.connected and not flags.bipartite


def test_random_regular_digraph():
    G = random_regular_digraph(2, 6, seed=3)
    assert G.directed
    assert G.regular_degree() == 2
    assert is_primitive(G.matrix())
