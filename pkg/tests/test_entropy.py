import math

import numpy as np
import pytest

from fgwalk.core.errors import PreconditionError
from fgwalk.features.entropy.topological import (
    EntropyProblem,
    convergence_radius,
    convexity_gap,
    entropy,
    growth_count,
    growth_rate,
    min_entropy_weights,
    rho,
    rho_gradient,
    rho_second_directional,
)
from fgwalk.graphcore.families import random_regular_digraph

K4 = np.ones((4, 4)) - np.eye(4)
K4_F = [1, 2, 1, 2]


@pytest.fixture
def k4_root():
    # x = exp(-s0) solves 3x^3 + x^2 + x - 1 = 0
    roots = np.roots([3, 1, 1, -1])
    return min(r.real for r in roots if abs(r.imag) < 1e-12 and r.real > 0)


def test_constant_weight_entropy():
    result = entropy(K4, [1, 1, 1, 1])
    assert result.s0 == pytest.approx(math.log(3), rel=1e-12)
    assert result.rho == pytest.approx(1.0, abs=1e-10)


def test_two_weight_entropy(k4_root):
    s0 = entropy(K4, K4_F).s0
    assert s0 == pytest.approx(-math.log(k4_root), rel=1e-10)
    assert s0 == pytest.approx(0.7563, abs=1e-4)


def test_convergence_radius(k4_root):
    assert convergence_radius(K4, K4_F) == pytest.approx(k4_root, rel=1e-9)


def test_growth_count_small():
    # closed walks of length 1, 2, 3 on K4: 0 + 12 + 24
    assert growth_count(K4.astype(int), [1, 1, 1, 1], 3) == 36


def test_growth_rate_approaches_entropy():
    s0 = entropy(K4, K4_F).s0
    assert growth_rate(K4.astype(int), K4_F, 60) == pytest.approx(s0, rel=0.05)


def test_growth_count_needs_integer_weights():
    with pytest.raises(PreconditionError):
        growth_count(K4.astype(int), [1, 1.5, 1, 1], 5)


def test_rho_gradient_matches_finite_differences():
    s, h = 0.5, 1e-6
    f = np.array(K4_F, dtype=float)
    gradient = rho_gradient(K4, f, s)
    for i in range(4):
        e = np.zeros(4)
        e[i] = h
        up = rho(EntropyProblem(K4, f + e), s)[0]
        down = rho(EntropyProblem(K4, f - e), s)[0]
        fd = (up - down) / (2 * h)
        assert gradient[i] == pytest.approx(fd, rel=1e-6)


def test_rho_second_directional(rng):
    s, h = 0.5, 1e-4
    f = np.array(K4_F, dtype=float)
    g = rng.standard_normal(4)
    second = rho_second_directional(K4, f, s, g)

    def along(t):
        return rho(EntropyProblem(K4, f + t * g), s)[0]

    fd = (along(h) - 2 * along(0.0) + along(-h)) / (h * h)
    assert second == pytest.approx(fd, rel=1e-4, abs=1e-6)


def random_digraph_matrix(d, n, seed):
    return random_regular_digraph(d, n, seed=seed).float_matrix()


@pytest.mark.parametrize(
    "A", [K4, random_digraph_matrix(2, 6, seed=5)], ids=["k4", "digraph"]
)
def test_entropy_is_convex(rng, A):
    n = A.shape[0]
    for _ in range(50):
        f = rng.uniform(0.5, 2.0, n)
        g = rng.uniform(0.5, 2.0, n)
        assert convexity_gap(A, f, g) >= -1e-10


def test_min_entropy_regular():
    result = min_entropy_weights(K4)
    assert result.closed_form_exact
    assert result.agree
    assert result.constant_perron_vector
    assert result.f == pytest.approx(np.full(4, 0.25))
    assert result.s == pytest.approx(4 * math.log(3))


@pytest.mark.parametrize("d, n, seed", [(2, 5, 11), (3, 7, 12)])
def test_min_entropy_random_regular_digraphs(d, n, seed):
    # rows and columns of a sum of d permutations all sum to d
    result = min_entropy_weights(random_digraph_matrix(d, n, seed))
    assert result.closed_form_exact
    assert result.agree
    assert result.f == pytest.approx(np.full(n, 1 / n), abs=1e-6)
    assert result.s == pytest.approx(n * math.log(d))
    assert result.numeric_s == pytest.approx(result.closed_form_s, abs=1e-8)


def test_min_entropy_exact_for_stochastic_rows():
    result = min_entropy_weights([[1, 1], [2, 2]])
    assert result.closed_form_exact
    assert result.agree
    expected = [math.log(2) / math.log(8), math.log(4) / math.log(8)]
    assert result.f == pytest.approx(expected)
    assert result.s == pytest.approx(math.log(8))


def test_min_entropy_closed_form_can_fail():
    result = min_entropy_weights([[1, 2], [1, 1]])
    assert not result.closed_form_exact
    assert not result.agree
    assert result.closed_form_s == pytest.approx(math.log(6))
    # the minimum is at f = (1/2, 1/2): s = 2 log(1 + sqrt 2)
    assert result.s == pytest.approx(2 * math.log(1 + math.sqrt(2)), rel=1e-6)
    assert result.f == pytest.approx([0.5, 0.5], abs=1e-4)


def test_min_entropy_row_sums():
    with pytest.raises(PreconditionError):
        min_entropy_weights([[1, 0], [1, 1]])


@pytest.mark.parametrize(
    "A, f",
    [
        ([[1.0]], [1.0]),
        (K4, [1, 1, 0, 1]),
        (K4, [1, 1, 1]),
        ([[0.0, 2.0], [2.0, 0.0]], [1, 1]),
        ([[1.0, -1.0], [1.0, 1.0]], [1, 1]),
    ],
)
def test_entropy_preconditions(A, f):
    with pytest.raises(PreconditionError):
        entropy(A, f)
