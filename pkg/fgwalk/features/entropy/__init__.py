from .topological import (
    EntropyProblem,
    EntropyResult,
    MinEntropyResult,
    entropy,
    growth_count,
    growth_rate,
    min_entropy_weights,
    rho,
    rho_gradient,
    rho_second_directional,
)

__all__ = [
    "EntropyProblem",
    "EntropyResult",
    "MinEntropyResult",
    "entropy",
    "growth_count",
    "growth_rate",
    "min_entropy_weights",
    "rho",
    "rho_gradient",
    "rho_second_directional",
]
