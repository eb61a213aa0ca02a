from .clt import CltParams, char_fn, clt_sigma2, free_group_clt, gaussian_char_fn, psi
from .modp import bias_ranking, equidistribution_gap, modp_counts

__all__ = [
    "CltParams",
    "bias_ranking",
    "char_fn",
    "clt_sigma2",
    "equidistribution_gap",
    "free_group_clt",
    "gaussian_char_fn",
    "modp_counts",
    "psi",
]
