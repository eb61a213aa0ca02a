from .polynomials import ChebPoly, cheb, cheb_coeff_closed_form
from .symmetrized import (
    PositivityReport,
    SymmetrizedCheb,
    a_coefficients,
    monotonicity_violation,
    symmetrized,
    verify_positivity,
)

__all__ = [
    "ChebPoly",
    "PositivityReport",
    "SymmetrizedCheb",
    "a_coefficients",
    "cheb",
    "cheb_coeff_closed_form",
    "monotonicity_violation",
    "symmetrized",
    "verify_positivity",
]
