"""
fgwalk: words in free groups, closed walks on graphs and their statistics.

Exact counting of cyclically reduced words by length and homology class,
Chebyshev-polynomial closed forms, central limit and mod-p equidistribution
of homology, eigenvalue perturbation for walk variances, line digraphs,
weighted cycle-count entropy, and graph zeta functions.
"""
from .core.config import VERSION

__version__ = VERSION
