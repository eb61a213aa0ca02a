# fgwalk/features/entropy/topological.py
"""
Entropy of cycle counting with positive vertex weights.

For a primitive nonnegative A and positive weights f, let
M(s, f) = diag(exp(-s f)) A and rho(s, f) its spectral radius. The number of
cycles c with sum of f over c at most L grows like exp(s0 L), where s0 is the
unique root of rho(s0, f) = 1.
"""
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy import optimize

from ...core.config import NEWTON_TOL, logger
from ...core.errors import ConvergenceError, PreconditionError
from ...graphcore.exact import identity
from ...graphcore.spectrum import perron_pair
from ...graphcore.structure import is_irreducible, is_primitive
from ..perturbation.kato import PerturbationProblem, second_order

MAX_NEWTON_STEPS = 200
MAX_BRACKET_DOUBLINGS = 200


@dataclass(frozen=True)
class EntropyProblem:
    A: np.ndarray
    f: np.ndarray

    def __post_init__(self):
        A = np.asarray(self.A, dtype=float)
        f = np.asarray(self.f, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise PreconditionError(f"expected a square matrix, got shape {A.shape}")
        if (A < 0).any():
            raise PreconditionError("A must be nonnegative")
        if not is_irreducible(A) or not is_primitive(A):
            raise PreconditionError("A must be irreducible and primitive")
        if f.shape != (A.shape[0],):
            got = f.shape[0] if f.ndim else 0
            raise PreconditionError(f"expected {A.shape[0]} weights, got {got}")
        if (f <= 0).any():
            raise PreconditionError("weights must be positive")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "f", f)

    def matrix(self, s: float) -> np.ndarray:
        return np.exp(-s * self.f)[:, None] * self.A


@dataclass(frozen=True)
class PerronData:
    rho: float
    v: np.ndarray
    w: np.ndarray

    @property
    def pairing(self) -> float:
        return float(self.w @ self.v)


def perron_data(prob: EntropyProblem, s: float) -> PerronData:
    """Perron root with right and left Perron vectors of M(s, f)."""
    M = prob.matrix(s)
    rho, v = perron_pair(M)
    _, w = perron_pair(M.T)
    return PerronData(rho, v, w)


def rho(prob: EntropyProblem, s: float) -> Tuple[float, np.ndarray]:
    """(rho(s, f), positive unit Perron vector)."""
    data = perron_data(prob, s)
    return data.rho, data.v


def rho_derivative_s(
    prob: EntropyProblem, s: float, data: Optional[PerronData] = None
) -> float:
    """d rho / ds = -rho w^T D(f) v / (w^T v); negative for positive f."""
    data = data or perron_data(prob, s)
    return -data.rho * float(data.w @ (prob.f * data.v)) / data.pairing


@dataclass(frozen=True)
class EntropyResult:
    s0: float
    rho: float
    iterations: int


def entropy(A, f) -> EntropyResult:
    """
    The root s0 of rho(s, f) = 1, by safeguarded Newton on log rho inside a
    bisection bracket [lo, hi] that doubles hi until rho(hi) < 1.

    Raises:
        PreconditionError: rho(A) <= 1, so no positive root exists.
        ConvergenceError: the iteration did not reach |rho - 1| <= NEWTON_TOL.
    """
    prob = A if isinstance(A, EntropyProblem) else EntropyProblem(A, f)
    rho0 = perron_data(prob, 0.0).rho
    if rho0 <= 1:
        raise PreconditionError(
            f"spectral radius {rho0:.12g} <= 1: no positive entropy root"
        )
    lo, hi = 0.0, 1.0
    for _ in range(MAX_BRACKET_DOUBLINGS):
        if perron_data(prob, hi).rho < 1:
            break
        lo, hi = hi, 2 * hi
    else:
        raise ConvergenceError("could not bracket the entropy root", {"hi": hi})

    s = 0.5 * (lo + hi)
    for iteration in range(1, MAX_NEWTON_STEPS + 1):
        data = perron_data(prob, s)
        if abs(data.rho - 1) <= NEWTON_TOL:
            logger.debug(f"entropy: s0={s:.15g} after {iteration} steps")
            return EntropyResult(s, data.rho, iteration)
        if data.rho > 1:
            lo = s
        else:
            hi = s
        slope = rho_derivative_s(prob, s, data) / data.rho
        step = s - math.log(data.rho) / slope if slope < 0 else None
        s = step if step is not None and lo < step < hi else 0.5 * (lo + hi)
        if hi - lo <= 4 * np.finfo(float).eps * max(1.0, hi):
            data = perron_data(prob, s)
            return EntropyResult(s, data.rho, iteration)
    raise ConvergenceError(
        "entropy root iteration did not converge",
        {"lo": lo, "hi": hi, "iterations": MAX_NEWTON_STEPS},
    )


def rho_gradient(A, f, s: float) -> np.ndarray:
    """
    Gradient of rho(s, f) in f: -s rho w_i v_i / (w^T v). For symmetric A
    with a normalized symmetric eigenvector this is -s rho v_i^2.
    """
    prob = EntropyProblem(A, f)
    data = perron_data(prob, s)
    return -s * data.rho * data.w * data.v / data.pairing


def rho_second_directional(A, f, s: float, g: Sequence[float]) -> float:
    """
    d^2/dt^2 rho(s, f + t g) at t = 0, from the second-order perturbation
    coefficient of diag(exp(-s (f + t g))) A.
    """
    prob = EntropyProblem(A, f)
    g = np.asarray(g, dtype=float)
    if g.shape != prob.f.shape:
        raise PreconditionError(f"direction must have {prob.f.shape[0]} entries")
    data = perron_data(prob, s)
    M = prob.matrix(s)
    M1 = -s * g[:, None] * M
    M2 = 0.5 * s * s * (g * g)[:, None] * M
    problem = PerturbationProblem(M, data.rho, data.v, M1, M2, data.w)
    return float(np.real(2 * second_order(problem)))


def convergence_radius(A, f) -> float:
    """
    Smallest positive u with rho(diag(u^f) A) = 1, found by Brent's method
    in u; equals exp(-s0).
    """
    prob = EntropyProblem(A, f)

    def excess(u: float) -> float:
        return perron_pair((u ** prob.f)[:, None] * prob.A)[0] - 1

    if excess(1.0) <= 0:
        raise PreconditionError("spectral radius <= 1: the series converges at u = 1")
    return optimize.brentq(
        excess, 1e-300, 1.0, xtol=1e-15, rtol=4 * np.finfo(float).eps
    )


def convexity_gap(A, f, g) -> float:
    """(s0(f) + s0(g)) / 2 - s0((f + g) / 2); nonnegative by convexity."""
    f = np.asarray(f, dtype=float)
    g = np.asarray(g, dtype=float)
    return 0.5 * (entropy(A, f).s0 + entropy(A, g).s0) - entropy(A, 0.5 * (f + g)).s0


# --- minimal entropy on the simplex ---


@dataclass(frozen=True)
class MinEntropyResult:
    f: np.ndarray
    s: float
    closed_form_f: np.ndarray
    closed_form_s: float
    numeric_f: np.ndarray
    numeric_s: float
    closed_form_exact: bool
    agree: bool
    constant_perron_vector: bool


def _entropy_gradient(prob: EntropyProblem, s0: float) -> np.ndarray:
    """d s0 / d f by implicit differentiation of rho(s0(f), f) = 1."""
    data = perron_data(prob, s0)
    grad_f = -s0 * data.rho * data.w * data.v / data.pairing
    return -grad_f / rho_derivative_s(prob, s0, data)


def _numeric_minimum(A: np.ndarray, start: np.ndarray) -> Tuple[np.ndarray, float]:
    n = A.shape[0]

    def objective(f):
        prob = EntropyProblem(A, f)
        s0 = entropy(prob, None).s0
        return s0, _entropy_gradient(prob, s0)

    result = optimize.minimize(
        objective,
        start,
        jac=True,
        method="SLSQP",
        bounds=[(1e-9, 1.0)] * n,
        constraints=[
            {"type": "eq", "fun": lambda f: f.sum() - 1, "jac": lambda f: np.ones(n)}
        ],
        options={"ftol": 1e-15, "maxiter": 500},
    )
    if not result.success:
        logger.warning(f"numerical entropy minimization: {result.message}")
    return np.asarray(result.x), float(result.fun)


def min_entropy_weights(
    A, tol_f: float = 1e-6, tol_s: float = 1e-8
) -> MinEntropyResult:
    """
    Weights on the simplex sum(f) = 1 minimizing the entropy.

    The closed form f_i = log R_i / sum_j log R_j, s = sum_i log R_i (R = A 1)
    is exact when diag(R)^-1 A is doubly stochastic; a numerical minimizer
    is run as referee in every case, and its value is returned when the two
    disagree.

    Raises:
        PreconditionError: some row sum is <= 1.
    """
    A = np.asarray(A, dtype=float)
    rows = A.sum(axis=1)
    if (rows <= 1).any():
        raise PreconditionError("every row sum of A must exceed 1")
    logs = np.log(rows)
    f_closed = logs / logs.sum()
    s_closed = float(logs.sum())
    stochastic = A / rows[:, None]
    exact = bool(np.allclose(stochastic.sum(axis=0), 1.0, atol=1e-12))

    f_numeric, s_numeric = _numeric_minimum(A, f_closed)
    agree = bool(
        np.abs(f_numeric - f_closed).max() <= tol_f
        and abs(s_numeric - s_closed) <= tol_s
    )
    if not agree:
        logger.warning(
            f"closed-form entropy minimizer differs from the numerical one: "
            f"s={s_closed:.12g} vs {s_numeric:.12g}"
        )
    _, v = rho(EntropyProblem(A, f_closed), s_closed)
    constant = bool(np.allclose(v, v.mean(), rtol=1e-8))
    f_best, s_best = (f_closed, s_closed) if agree else (f_numeric, s_numeric)
    return MinEntropyResult(
        f_best, s_best, f_closed, s_closed, f_numeric, s_numeric, exact, agree, constant
    )


# --- exact growth oracle ---


def growth_count(A, f: Sequence[int], L: int) -> int:
    """
    Number of cycles (closed walks, rooted, length >= 1) whose weight
    sum(f) is at most L, for positive integer f, by dynamic programming over
    the accumulated weight:

        C_w[:, v] = sum_u C_(w - f_v)[:, u] A[u, v],   C_0 = I
    """
    weights = [int(x) for x in f]
    if any(w != x for w, x in zip(weights, f)) or any(w < 1 for w in weights):
        raise PreconditionError("growth_count needs positive integer weights")
    A = np.array(A, dtype=object)
    n = A.shape[0]
    if len(weights) != n:
        raise PreconditionError(f"expected {n} weights, got {len(weights)}")
    layers = [identity(n)]
    total = 0
    for w in range(1, L + 1):
        C = np.zeros((n, n), dtype=object)
        for v in range(n):
            back = w - weights[v]
            if back >= 0:
                C[:, v] = layers[back].dot(A[:, v])
        layers.append(C)
        total += sum(C[i, i] for i in range(n))
    return int(total)


def growth_rate(A, f: Sequence[int], L: int) -> float:
    """log N(f, L) / L, which tends to the entropy s0."""
    count = growth_count(A, f, L)
    if count == 0:
        raise PreconditionError(f"no cycles of weight <= {L}")
    return math.log(count) / L
