"""Fourier analysis on the symmetric group for permutation-based optimization.

The package builds Young's orthogonal representations, computes forward and
inverse Fourier transforms of functions on Sigma_n, characterizes the
coefficient structure of linear-ordering, traveling-salesman and quadratic
assignment objectives, decides membership of value tables in those problem
classes, and runs ranking taxonomy experiments.
"""

__version__ = "0.1.0"

from .fourier import CoefficientFamily, FunctionTable, ft, ft_at_perm_rep, ift, numeric_rank
from .partitions import Partition, enumerate_partitions, irrep_dimension, standard_tableaux
from .permutations import Permutation, compose, enumerate_permutations, inverse, signature
from .problems import LopInstance, QapInstance, TspInstance, random_instance
from .yor import perm_rep_matrix, yor_matrix

__all__ = [
    "__version__",
    "CoefficientFamily",
    "FunctionTable",
    "ft",
    "ft_at_perm_rep",
    "ift",
    "numeric_rank",
    "Partition",
    "enumerate_partitions",
    "irrep_dimension",
    "standard_tableaux",
    "Permutation",
    "compose",
    "enumerate_permutations",
    "inverse",
    "signature",
    "LopInstance",
    "QapInstance",
    "TspInstance",
    "random_instance",
    "perm_rep_matrix",
    "yor_matrix",
]
