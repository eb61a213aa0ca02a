from .groups import FiniteGroup, GroupLabeling, group_walk_distribution
from .modp import modp_walk_distribution
from .variance import MarkovChain, exact_walk_moments, markov_variance, walk_variance

__all__ = [
    "FiniteGroup",
    "GroupLabeling",
    "MarkovChain",
    "exact_walk_moments",
    "group_walk_distribution",
    "markov_variance",
    "modp_walk_distribution",
    "walk_variance",
]
