# fgwalk/graphcore/spectrum.py
"""
Floating point spectra: symmetric eigendecomposition, spectral radius and the
Perron pair of a nonnegative primitive matrix.

Every float comparison routes through a tolerance derived from
``BASE_TOL * ||A||_inf * n``.
"""
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
import scipy.linalg as linalg

from ..core import config
from ..core.config import POWER_ITER_MAX, POWER_ITER_RTOL, logger
from ..core.errors import ConvergenceError, PreconditionError


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray
    multiplicities: List[Tuple[complex, int]]
    eigenvectors: Optional[np.ndarray]
    tol: float
    residual: float = 0.0

    def rounded(self, digits: int = 9) -> List[float]:
        return [round(float(np.real(x)), digits) for x in self.eigenvalues]


def default_tol(A: np.ndarray) -> float:
    A = np.asarray(A)
    n = max(A.shape[0], 1)
    scale = max(float(np.abs(A).sum(axis=1).max(initial=0.0)), 1.0)
    return config.BASE_TOL * scale * n


def group_multiplicities(values, tol: float) -> List[Tuple[complex, int]]:
    """Cluster eigenvalues closer than tol; keeps the input order."""
    groups: List[List] = []
    for value in values:
        for group in groups:
            if abs(value - group[0]) < tol:
                group[1] += 1
                break
        else:
            groups.append([value, 1])
    return [(g[0], g[1]) for g in groups]


def symmetric_eigen(A, tol: Optional[float] = None) -> Spectrum:
    """
    Full orthonormal eigendecomposition of a real symmetric matrix.

    Args:
        A: Real square matrix, symmetric within tol.
        tol: Comparison tolerance; defaults to default_tol(A).

    Returns:
        Spectrum with eigenvalues sorted descending and eigenvectors as columns.

    Raises:
        PreconditionError: If A is not symmetric.
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise PreconditionError(f"expected a square matrix, got shape {A.shape}")
    tol = default_tol(A) if tol is None else tol
    asymmetry = float(np.abs(A - A.T).max(initial=0.0))
    if asymmetry > tol:
        raise PreconditionError(
            f"matrix is not symmetric (max |A - A^T| = {asymmetry:.3e})"
        )
    values, vectors = linalg.eigh((A + A.T) / 2)
    order = np.argsort(values)[::-1]
    values, vectors = values[order], vectors[:, order]
    residual = float(np.abs(A @ vectors - vectors * values).max(initial=0.0))
    if residual > tol:
        logger.warning(f"symmetric_eigen residual {residual:.3e} exceeds tol {tol:.3e}")
    multiplicities = group_multiplicities(values, max(tol, 1e-8))
    return Spectrum(values, multiplicities, vectors, tol, residual)


def eigenvalues(A) -> np.ndarray:
    """All eigenvalues of a general square matrix, sorted by real part descending."""
    A = np.asarray(A)
    values = linalg.eigvals(A)
    return values[np.lexsort((-values.imag, -values.real))]


def spectral_radius(A, method: str = "dense", rtol: float = 1e-12) -> float:
    """
    Largest eigenvalue modulus of a real or complex square matrix.

    ``method="dense"`` uses a full nonsymmetric eigensolve; ``method="power"``
    runs power iteration and requires a unique eigenvalue of maximal modulus.

    Raises:
        ConvergenceError: power iteration did not settle within the cap.
    """
    A = np.asarray(A)
    if A.shape[0] == 0:
        return 0.0
    if method == "dense":
        try:
            return float(np.abs(linalg.eigvals(A)).max())
        except linalg.LinAlgError as e:
            logger.warning(
                f"Dense eigensolve failed ({e}); falling back to power iteration"
            )
    elif method != "power":
        raise PreconditionError(f"unknown spectral radius method '{method}'")

    n = A.shape[0]
    x = np.ones(n, dtype=complex) / np.sqrt(n)
    estimate = 0.0
    change = float("inf")
    for iteration in range(1, POWER_ITER_MAX + 1):
        y = A @ x
        norm = float(np.linalg.norm(y))
        if norm == 0.0:
            return 0.0
        change = abs(norm - estimate)
        estimate = norm
        x = y / norm
        if iteration > 1 and change <= rtol * norm:
            logger.debug(f"power iteration converged in {iteration} steps")
            return estimate
    raise ConvergenceError(
        "power iteration for the spectral radius did not converge",
        {
            "iterations": POWER_ITER_MAX,
            "last_estimate": estimate,
            "last_change": change,
        },
    )


def perron_pair(
    M, rtol: float = POWER_ITER_RTOL, max_iter: int = POWER_ITER_MAX
) -> Tuple[float, np.ndarray]:
    """
    Perron eigenvalue and positive unit eigenvector of a nonnegative
    primitive matrix.

    The iteration keeps the Collatz-Wielandt bracket
    min_i (Mx)_i/x_i <= rho <= max_i (Mx)_i/x_i and stops once its relative
    width is below ``rtol``. The start vector is 1/sqrt(n).

    Raises:
        PreconditionError: M has a negative entry.
        ConvergenceError: the bracket did not close within ``max_iter`` steps.
    """
    M = np.asarray(M, dtype=float)
    if (M < 0).any():
        raise PreconditionError("Perron iteration needs a nonnegative matrix")
    n = M.shape[0]
    rtol = max(rtol, 8 * n * np.finfo(float).eps)
    x = np.ones(n) / np.sqrt(n)
    low, high = 0.0, float("inf")
    for iteration in range(1, max_iter + 1):
        y = M @ x
        if (y <= 0).any():
            raise PreconditionError(
                "matrix is not irreducible (iterate lost positivity)"
            )
        ratios = y / x
        low, high = float(ratios.min()), float(ratios.max())
        x = y / np.linalg.norm(y)
        if high - low <= rtol * high:
            rho = 0.5 * (low + high)
            logger.debug(
                f"perron_pair converged: rho={rho:.15g}, iterations={iteration}"
            )
            return rho, x
    raise ConvergenceError(
        "Perron power iteration did not converge",
        {"iterations": max_iter, "lower_bound": low, "upper_bound": high},
    )
