"""Normalizer covering numbers of finite groups."""

from .analysis import GroupAnalysis
from .constructions import build, parse_group_expr
from .covering import CoverOutcome, exact_min_cover, sigma, sigma_c, sigma_n
from .elements import ElementSet
from .group import GroupTable, Permutation, group_from_cayley, group_from_generators
from .lattice import SubgroupLattice, enumerate_subgroups

__all__ = [
    "CoverOutcome", "ElementSet", "GroupAnalysis", "GroupTable", "Permutation", "SubgroupLattice",
    "build", "enumerate_subgroups", "exact_min_cover", "group_from_cayley", "group_from_generators",
    "parse_group_expr", "sigma", "sigma_c", "sigma_n",
]
__version__ = "0.1.0"
