# fgwalk/features/perturbation/kato.py
"""
First and second order perturbation of a simple eigenvalue.

For an analytic family M(x) = M + M1 x + M2 x^2 + ... with a simple
eigenvalue lambda, the expansion lambda(x) = lambda + l1 x + l2 x^2 + ...
has

    l1 = tr(M1 P)
    l2 = tr(M2 P - M1 S M1 P)

where P is the spectral projector at lambda and S the reduced resolvent.
"""
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional, Tuple

import numpy as np
from scipy import linalg

from ...core import config
from ...core.config import FD_RTOL, IDENTITY_RTOL, logger
from ...core.errors import ConvergenceError, FormulaMismatchError, PreconditionError
from ...graphcore.structure import is_irreducible, is_primitive


def _as_matrix(M) -> np.ndarray:
    arr = np.asarray(M, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise PreconditionError(f"expected a square matrix, got shape {arr.shape}")
    return arr


def projector(v, w=None, tol: float = 1e-9) -> np.ndarray:
    """
    Rank-one spectral projector.

    Args:
        v: Right eigenvector. Without ``w`` it must be a unit vector and the
            result is the orthogonal projector v v^H.
        w: Left eigenvector (w^T M = lambda w^T). The result is
            v w^T / (w^T v), the spectral projector of a non-normal matrix.
        tol: Tolerance for the unit-norm check and for w^T v != 0.

    Raises:
        PreconditionError: v is not a unit vector, or w^T v vanishes.
    """
    v = np.asarray(v, dtype=complex).ravel()
    if w is None:
        norm = np.linalg.norm(v)
        if abs(norm - 1) > tol:
            raise PreconditionError(
                f"projector needs a unit vector, got norm {norm:.6g}"
            )
        return np.outer(v, v.conj())
    w = np.asarray(w, dtype=complex).ravel()
    pairing = w @ v
    if abs(pairing) <= tol * np.linalg.norm(v) * np.linalg.norm(w):
        raise PreconditionError("left and right eigenvectors are orthogonal")
    return np.outer(v, w) / pairing


@dataclass(frozen=True)
class ReducedResolvent:
    S: np.ndarray
    P: np.ndarray
    lam: complex
    residual: float


def _spectral_gap(M: np.ndarray, lam: complex) -> float:
    values = linalg.eigvals(M)
    distances = np.sort(np.abs(values - lam))
    return float(distances[1]) if len(distances) > 1 else float("inf")


def reduced_resolvent(
    M, lam: complex, v, w=None, tol: Optional[float] = None
) -> ReducedResolvent:
    """
    S = (M - lam I + P)^-1 - P, the inverse of M - lam I on the complement of
    the eigenvector, extended by 0 on it.

    Satisfies S P = P S = 0, (M - lam I) S = I - P and M S = I - P + lam S.

    Raises:
        PreconditionError: lam is not a simple eigenvalue (gap below tol,
            which defaults to the current base tolerance).
        FormulaMismatchError: the resolvent identities fail.
    """
    if tol is None:
        tol = config.BASE_TOL
    M = _as_matrix(M)
    n = M.shape[0]
    scale = max(1.0, float(np.linalg.norm(M, 2)))
    gap = _spectral_gap(M, lam)
    if gap < tol * scale:
        raise PreconditionError(f"eigenvalue {lam} is not simple (gap {gap:.3g})")
    if w is not None:
        P = projector(v, w)
    else:
        P = projector(np.asarray(v) / np.linalg.norm(v))
    eye = np.eye(n)
    S = np.linalg.solve(M - lam * eye + P, eye) - P
    residual = max(
        float(np.abs(S @ P).max()),
        float(np.abs(P @ S).max()),
        float(np.abs((M - lam * eye) @ S - (eye - P)).max()),
    )
    bound = IDENTITY_RTOL * scale / min(1.0, gap)
    if residual > bound:
        raise FormulaMismatchError(
            f"reduced resolvent identities fail (residual {residual:.3g})"
        )
    logger.debug(f"reduced_resolvent: n={n}, gap={gap:.3g}, residual={residual:.3g}")
    return ReducedResolvent(S, P, complex(lam), residual)


@dataclass
class PerturbationProblem:
    """
    A simple eigenvalue of M with its eigenvectors, and the first two
    Taylor coefficients M1, M2 of the family M(x).

    Use :meth:`from_matrices` to pick the eigenvalue automatically.
    """

    M: np.ndarray
    lam: complex
    v: np.ndarray
    M1: np.ndarray
    M2: np.ndarray
    w: Optional[np.ndarray] = None
    gap: float = field(init=False, default=0.0)
    _resolvent: Optional[ReducedResolvent] = field(init=False, default=None, repr=False)

    def __post_init__(self):
        self.M = _as_matrix(self.M)
        self.M1 = _as_matrix(self.M1)
        self.M2 = _as_matrix(self.M2)
        if not self.M.shape == self.M1.shape == self.M2.shape:
            raise PreconditionError("M, M1 and M2 must have the same shape")
        self.v = np.asarray(self.v, dtype=complex).ravel()
        self.v = self.v / np.linalg.norm(self.v)
        scale = max(1.0, float(np.linalg.norm(self.M, 2)))
        residual = float(np.linalg.norm(self.M @ self.v - self.lam * self.v))
        if residual > IDENTITY_RTOL * scale:
            raise PreconditionError(
                f"v is not an eigenvector for {self.lam} (residual {residual:.3g})"
            )
        if self.w is None:
            self.w = _left_vector(self.M, self.lam)
        self.gap = _spectral_gap(self.M, self.lam)

    @classmethod
    def from_matrices(
        cls, M, M1, M2=None, lam: Optional[complex] = None
    ) -> "PerturbationProblem":
        """Eigenpair nearest ``lam``, or of largest real part when lam is None."""
        M = _as_matrix(M)
        values, left, right = linalg.eig(M, left=True, right=True)
        if lam is None:
            index = int(np.argmax(values.real))
        else:
            index = int(np.argmin(np.abs(values - lam)))
        M2 = np.zeros_like(M) if M2 is None else M2
        v = right[:, index]
        # fix the phase so that real eigenvectors come out real
        v = v * np.exp(-1j * np.angle(v[np.argmax(np.abs(v))]))
        return cls(M, complex(values[index]), v, M1, M2, left[:, index].conj())

    def resolvent(self) -> ReducedResolvent:
        if self._resolvent is None:
            self._resolvent = reduced_resolvent(self.M, self.lam, self.v, self.w)
        return self._resolvent


def _left_vector(M: np.ndarray, lam: complex) -> np.ndarray:
    values, vectors = linalg.eig(M.T)
    return vectors[:, int(np.argmin(np.abs(values - lam)))]


def _realify(value: complex, tol: float = 1e-9):
    value = complex(value)
    if abs(value.imag) <= tol * max(1.0, abs(value)):
        return value.real
    return value


def first_order(prob: PerturbationProblem):
    """tr(M1 P); real results are returned as float."""
    P = prob.resolvent().P
    return _realify(np.trace(prob.M1 @ P))


def second_order(prob: PerturbationProblem):
    """tr(M2 P - M1 S M1 P), the coefficient of x^2 in lambda(x)."""
    res = prob.resolvent()
    value = np.trace(prob.M2 @ res.P - prob.M1 @ res.S @ prob.M1 @ res.P)
    return _realify(value)


# --- diagonal perturbations D(x) M with eigenvector proportional to 1 ---


class AssumptionReport(NamedTuple):
    lam: float
    nonnegative: bool
    constant_eigenvector: bool
    doubly_stochastic: bool
    simple: bool
    irreducible: bool
    primitive: bool
    normal: bool

    @property
    def holds(self) -> bool:
        """Constant eigenvector, simple, and lambda times doubly stochastic."""
        return (
            self.nonnegative
            and self.constant_eigenvector
            and self.doubly_stochastic
            and self.simple
        )


def check_assumptions(M, tol: float = 1e-9) -> AssumptionReport:
    """
    Checks each hypothesis of the nonpositivity result separately.

    ``lam`` is the common row sum. The constant vector must span the
    lambda-eigenspace, and M must be lam times a doubly stochastic matrix.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise PreconditionError(f"expected a square matrix, got shape {M.shape}")
    n = M.shape[0]
    scale = max(1.0, float(np.abs(M).max()))
    rows, cols = M.sum(axis=1), M.sum(axis=0)
    lam = float(rows.mean())
    constant = bool(np.allclose(rows, lam, atol=tol * scale))
    doubly = constant and bool(np.allclose(cols, lam, atol=tol * scale))
    nonnegative = bool((M >= -tol * scale).all())
    simple = constant and _spectral_gap(M.astype(complex), lam) > tol * scale
    pattern = (M > tol * scale).astype(int)
    irreducible = is_irreducible(pattern)
    primitive = irreducible and is_primitive(pattern)
    normal = bool(np.allclose(M @ M.T, M.T @ M, atol=tol * scale * scale * n))
    return AssumptionReport(
        lam, nonnegative, constant, doubly, simple, irreducible, primitive, normal
    )


def _require_constant_eigenvector(report: AssumptionReport):
    if not report.constant_eigenvector:
        raise PreconditionError(
            "the constant vector is not an eigenvector (row sums differ)"
        )
    if not report.doubly_stochastic:
        raise PreconditionError(
            "column sums differ from row sums; 1 is not a left eigenvector"
        )
    if not report.simple:
        raise PreconditionError(f"eigenvalue {report.lam} is not simple")


def _constant_resolvent(M, lam: float) -> np.ndarray:
    k = M.shape[0]
    ones = np.ones(k) / np.sqrt(k)
    return reduced_resolvent(M, lam, ones).S


def stochastic_second_variation(M, d1, d2) -> float:
    """
    Second-order coefficient for the real family (I + D1 x + D2 x^2) M when
    the constant vector is a left and right eigenvector:

        (lam/k) [sum(d2) - |d1_0|^2 - lam d1^T S d1]

    with d1_0 the mean-zero part of d1.
    """
    M = np.asarray(M, dtype=float)
    report = check_assumptions(M)
    _require_constant_eigenvector(report)
    d1, d2 = np.asarray(d1, dtype=float), np.asarray(d2, dtype=float)
    k, lam = M.shape[0], report.lam
    S = _constant_resolvent(M, lam)
    d1_0 = d1 - d1.mean()
    value = (lam / k) * (d2.sum() - d1_0 @ d1_0 - lam * (d1 @ S @ d1))
    return float(np.real(value))


def harmonic_second_variation_general(M, f) -> float:
    """
    Second-order coefficient for diag(exp(i f x)) M with no mean-zero
    requirement on f:

        (lam/k) [-|f|^2/2 + |f_0|^2 + lam f^T S f]
    """
    M = np.asarray(M, dtype=float)
    report = check_assumptions(M)
    _require_constant_eigenvector(report)
    f = np.asarray(f, dtype=float)
    k, lam = M.shape[0], report.lam
    S = _constant_resolvent(M, lam)
    f_0 = f - f.mean()
    value = (lam / k) * (-0.5 * (f @ f) + f_0 @ f_0 + lam * (f @ S @ f))
    return float(np.real(value))


def harmonic_second_variation(M, f, tol: float = 1e-9) -> float:
    """
    Second-order coefficient of the top eigenvalue of diag(exp(i f x)) M for
    M = lam * (doubly stochastic) and mean-zero f:

        (lam/k) [|f_0|^2 / 2 + lam f_0^T S f_0]

    Raises:
        PreconditionError: f is not mean-zero, or M violates the hypotheses.
    """
    f = np.asarray(f, dtype=float)
    if abs(f.sum()) > tol * max(1.0, float(np.abs(f).sum())):
        raise PreconditionError(f"f must be mean-zero (sum is {f.sum():.3g})")
    M = np.asarray(M, dtype=float)
    report = check_assumptions(M)
    if not report.holds:
        raise PreconditionError(
            f"M is not lambda times a doubly stochastic matrix: {report}"
        )
    k, lam = M.shape[0], report.lam
    S = _constant_resolvent(M, lam)
    return float(np.real((lam / k) * (0.5 * (f @ f) + lam * (f @ S @ f))))


def harmonic_problem(M, f) -> PerturbationProblem:
    """PerturbationProblem for diag(exp(i f x)) M at the row-sum eigenvalue."""
    M = np.asarray(M, dtype=float)
    f = np.asarray(f, dtype=float)
    k = M.shape[0]
    lam = float(M.sum(axis=1).mean())
    M1 = 1j * np.diag(f) @ M
    M2 = -0.5 * np.diag(f * f) @ M
    return PerturbationProblem(M, lam, np.ones(k) / np.sqrt(k), M1, M2, np.ones(k))


@dataclass(frozen=True)
class NonpositivityReport:
    value: float
    assumptions: AssumptionReport
    strict_expected: bool
    ok: bool


def verify_posthm(M, f, tol: float = 1e-9) -> NonpositivityReport:
    """
    Checks that the harmonic second-order coefficient is <= 0, and < 0 when
    M is also irreducible, primitive and normal and f is nonzero.

    Raises:
        PreconditionError: an individual hypothesis fails (named in the message).
    """
    report = check_assumptions(M)
    for name in ("nonnegative", "constant_eigenvector", "doubly_stochastic", "simple"):
        if not getattr(report, name):
            raise PreconditionError(f"hypothesis '{name}' does not hold")
    f = np.asarray(f, dtype=float)
    value = harmonic_second_variation(M, f, tol)
    scale = max(1.0, report.lam) * max(1.0, float(f @ f))
    nonzero = bool(np.abs(f).max() > tol) if f.size else False
    strict = report.irreducible and report.primitive and report.normal and nonzero
    ok = value <= tol * scale and (not strict or value < -tol * scale)
    if not ok:
        logger.warning(
            f"nonpositivity check failed: value={value:.6g}, strict={strict}"
        )
    return NonpositivityReport(value, report, strict, ok)


# --- finite-difference oracle ---


def eigenvalue_derivatives_fd(
    family: Callable[[float], np.ndarray],
    lam0: complex,
    x: float = 0.0,
    h: float = 1e-4,
) -> Tuple[complex, complex]:
    """
    Central differences (lambda'(x), lambda''(x)) of the eigenvalue of
    family(x) that continues lam0.

    At x and x +- h the eigenvalue nearest the previous value is selected;
    the step is refused when that choice is ambiguous, i.e. when the
    distance to the runner-up is below 10 times the observed shift.

    Raises:
        ConvergenceError: the eigenvalue branch cannot be tracked.
    """
    tracked = {}
    center = None
    for point in (x, x - h, x + h):
        values = linalg.eigvals(family(point))
        target = lam0 if center is None else center
        distances = np.abs(values - target)
        order = np.argsort(distances)
        shift = distances[order[0]]
        runner_up = distances[order[1]] if len(values) > 1 else float("inf")
        if point != x and runner_up < 10 * shift:
            raise ConvergenceError(
                "eigenvalue branch ambiguous for finite differences",
                {"x": point, "shift": float(shift), "runner_up": float(runner_up)},
            )
        tracked[point] = values[order[0]]
        if center is None:
            center = tracked[point]
    d1 = (tracked[x + h] - tracked[x - h]) / (2 * h)
    d2 = (tracked[x + h] - 2 * tracked[x] + tracked[x - h]) / (h * h)
    return _realify(d1, FD_RTOL), _realify(d2, FD_RTOL)
