from .kato import (
    PerturbationProblem,
    check_assumptions,
    first_order,
    harmonic_second_variation,
    reduced_resolvent,
    second_order,
    stochastic_second_variation,
    verify_posthm,
)

__all__ = [
    "PerturbationProblem",
    "check_assumptions",
    "first_order",
    "harmonic_second_variation",
    "reduced_resolvent",
    "second_order",
    "stochastic_second_variation",
    "verify_posthm",
]
