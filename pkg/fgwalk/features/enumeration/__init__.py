from .conjugacy import (
    CountTriple,
    burnside_oracle,
    cc_gf_coeffs,
    free_group_counts,
    lattice_cc_counts,
    product_cc_gf,
)
from .zeta import (
    cycle_counts_from_zeta,
    free_group_zeta_closed_form,
    ihara_identity_check,
    primitive_cycle_counts,
    zeta,
)

__all__ = [
    "CountTriple",
    "burnside_oracle",
    "cc_gf_coeffs",
    "cycle_counts_from_zeta",
    "free_group_counts",
    "free_group_zeta_closed_form",
    "ihara_identity_check",
    "lattice_cc_counts",
    "primitive_cycle_counts",
    "product_cc_gf",
    "zeta",
]
