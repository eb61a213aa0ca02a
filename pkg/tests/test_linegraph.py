import numpy as np
import pytest

from fgwalk.core.errors import GuardExceededError, PreconditionError
from fgwalk.features.linegraph.analysis import (
    ata_structure,
    backtrackless_variance,
    cocycle_witness,
    decompose_edgefn,
    directed_variance,
    gram_variance,
    imdel_check,
    lift_projection,
    vertex_backtrackless_variance,
)
from fgwalk.features.linegraph.line import (
    count_backtrackless_cycles,
    grad,
    lift,
    line_digraph,
)
from fgwalk.features.walkstats.variance import exact_walk_moments, walk_variance
from fgwalk.graphcore.exact import trace_power
from fgwalk.graphcore.families import (
    cycle_graph,
    de_bruijn,
    random_regular_digraph,
)
from fgwalk.graphcore.graph import Graph


def test_line_digraph_of_triangle(c3):
    ld = line_digraph(c3)
    assert ld.size == 6
    assert ld.degree == 1
    assert ld.L.regular_degree() == 1
    for x, y in enumerate(ld.reverse):
        assert ld.tails[x] == ld.heads[y]
        assert ld.reverse[y] == x


def test_line_digraph_of_k4(k4):
    ld = line_digraph(k4)
    assert ld.size == 12
    assert ld.L.regular_degree() == 2
    assert ld.L.num_edges() == 24


def test_line_digraph_of_digraph(complete_digraph3):
    ld = line_digraph(complete_digraph3)
    assert ld.size == 6
    assert ld.reverse is None
    assert ld.degree == 2


@pytest.mark.parametrize(
    "graph", [de_bruijn(2, 2), Graph.from_matrix([[1, 1], [1, 0]])]
)
def test_self_loops_rejected(graph):
    with pytest.raises(PreconditionError, match="self-loops"):
        line_digraph(graph)


def test_disconnected_base_rejected():
    two_edges = Graph.from_matrix(
        [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
    )
    with pytest.raises(PreconditionError, match="connected"):
        line_digraph(two_edges)


def test_grad_and_lift(k4):
    ld = line_digraph(k4)
    f = np.array([1, 4, 9, 16])
    assert np.array_equal(grad(ld, f), lift(ld, f) - f[list(ld.heads)])
    assert np.array_equal(ld.gradient_matrix() @ f, grad(ld, f))


# --- A^T A ---


@pytest.mark.parametrize(
    "fixture, expected",
    [
        ("k4", {4.0: 4, 1.0: 8}),
        ("c5", {1.0: 10}),
        ("petersen", {4.0: 10, 1.0: 20}),
        ("complete_digraph3", {4.0: 3, 0.0: 3}),
    ],
)
def test_ata_structure(request, fixture, expected):
    ld = line_digraph(request.getfixturevalue(fixture))
    report = ata_structure(ld)
    assert report.ok
    assert report.eigenvalues == expected
    assert report.mean_zero_norm == pytest.approx(report.degree)


def loopless_regular_digraph(d, n):
    for seed in range(500):
        G = random_regular_digraph(d, n, seed=seed)
        if not G.has_self_loops():
            return G
    raise AssertionError(f"no loopless {d}-regular digraph on {n} vertices")


@pytest.mark.parametrize(
    "d, n, expected",
    [
        (2, 7, {4.0: 7, 0.0: 7}),
        (3, 6, {9.0: 6, 0.0: 12}),
    ],
)
def test_ata_structure_random_digraphs(d, n, expected):
    ld = line_digraph(loopless_regular_digraph(d, n))
    report = ata_structure(ld)
    assert report.degree == d
    assert report.block_identity
    assert report.lift_is_top_eigenspace
    assert report.eigenvalues == expected
    assert report.ok
    assert report.mean_zero_norm == pytest.approx(d)


# --- eigenspace checks ---


@pytest.mark.parametrize("fixture", ["k4", "petersen", "c5", "cubic8"])
def test_imdel_non_bipartite(request, fixture):
    report = imdel_check(line_digraph(request.getfixturevalue(fixture)))
    assert report.lift_is_eigenspace
    assert report.laplacian_maps_lift_to_gradients
    assert report.forbidden_dimension == 0
    assert report.ok


def test_imdel_bipartite_cycle():
    report = imdel_check(line_digraph(cycle_graph(4)))
    assert report.bipartite
    # alternating potentials: grad y = 2 lift y
    assert report.forbidden_dimension >= 1
    assert report.ok


def test_lift_projects_to_half_gradient(petersen, rng):
    ld = line_digraph(petersen)
    f = rng.standard_normal(10)
    assert lift_projection(ld, f).matches_half_gradient


def test_decomposition_is_orthogonal(k4, rng):
    ld = line_digraph(k4)
    g = rng.standard_normal(ld.size)
    parts = decompose_edgefn(ld, g)
    assert parts.gradient_part + parts.circulation_part == pytest.approx(g)
    flux = ld.gradient_matrix().T @ parts.circulation_part
    assert flux == pytest.approx(np.zeros(4), abs=1e-9)
    assert parts.gradient_part @ parts.circulation_part == pytest.approx(0.0, abs=1e-9)


def test_gradients_have_no_circulation(k4):
    ld = line_digraph(k4)
    g = grad(ld, [3.0, -1.0, 2.0, 0.5])
    parts = decompose_edgefn(ld, g)
    assert parts.circulation_part == pytest.approx(np.zeros(ld.size), abs=1e-9)


# --- variance of edge functions ---


def test_gradient_variance_vanishes(k4, complete_digraph3):
    ld = line_digraph(k4)
    g = grad(ld, [1.0, 2.0, 0.0, -3.0])
    assert backtrackless_variance(k4, g) == pytest.approx(0.0, abs=1e-10)
    ld3 = line_digraph(complete_digraph3)
    g3 = grad(ld3, [1.0, 0.0, 5.0])
    assert directed_variance(complete_digraph3, g3) == pytest.approx(0.0, abs=1e-10)


def test_backtrackless_variance_matches_exact_moments(k4):
    ld = line_digraph(k4)
    g = [1] + [0] * (ld.size - 1)
    sigma2 = backtrackless_variance(k4, g)
    assert gram_variance(ld, g) == pytest.approx(sigma2, rel=1e-9)
    assert walk_variance(ld.L, g).sigma2 == pytest.approx(sigma2, rel=1e-9)
    N = 200
    moments = exact_walk_moments(ld.L.big(), g, N)
    assert moments.per_step(N)[1] == pytest.approx(sigma2, rel=1e-6)


def test_vertex_variance_is_lifted_edge_variance(petersen):
    ld = line_digraph(petersen)
    f = [1.0, 0.0, 2.0, 0.0, 0.0, -1.0, 0.0, 0.0, 3.0, 0.0]
    assert vertex_backtrackless_variance(petersen, f) == pytest.approx(
        backtrackless_variance(petersen, lift(ld, f)), rel=1e-9
    )


def test_backtrackless_needs_degree_three(c5):
    with pytest.raises(PreconditionError, match="degree"):
        backtrackless_variance(c5, [1.0] + [0.0] * 9)


def test_variance_direction_checked(k4, complete_digraph3):
    with pytest.raises(PreconditionError):
        directed_variance(k4, [0.0] * 12)
    with pytest.raises(PreconditionError):
        backtrackless_variance(complete_digraph3, [0.0] * 6)


def test_edge_function_length_checked(k4):
    with pytest.raises(PreconditionError):
        backtrackless_variance(k4, [1.0, 0.0])


# --- cocycles ---


def test_cocycle_witness_for_telescoping_weight():
    graph = de_bruijn(2, 2)
    f = [0.0, 1.0, -1.0, 0.0]
    g = cocycle_witness(graph, f)
    assert g is not None
    for u, v, _ in graph.edges():
        assert f[u] == pytest.approx(g[u] - g[v])


def test_no_cocycle_for_independent_bits():
    assert cocycle_witness(de_bruijn(2, 2), [0, 0, 1, 1]) is None


def test_cocycle_needs_digraph(k4):
    with pytest.raises(PreconditionError):
        cocycle_witness(k4, [0, 0, 0, 0])


# --- brute force ---


@pytest.mark.parametrize("N", [3, 4, 5])
def test_backtrackless_cycle_count(k4, N):
    ld = line_digraph(k4)
    assert count_backtrackless_cycles(k4, N) == trace_power(ld.L.big(), N)


def test_triangle_count():
    # 4 triangles, 3 starting arcs, 2 directions
    k4 = Graph.from_matrix(np.ones((4, 4)) - np.eye(4))
    assert count_backtrackless_cycles(k4, 3) == 24


def test_backtrackless_count_guard(petersen):
    with pytest.raises(GuardExceededError):
        count_backtrackless_cycles(petersen, 6)
