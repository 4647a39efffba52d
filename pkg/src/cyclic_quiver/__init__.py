"""Exact model of the lowest-weight affine gl_n module on Kostant partitions of the cyclic quiver."""

from .config import Geometry, RunConfig
from .operators import ModuleParams, chevalley
from .polynomial import Polynomial, commutator, matrix_of, op_equal_on
from .quiver import KostantPartition, Multipartition, Raiz, enumerate_kostant, enumerate_multipartitions, raiz
from .runner import run_suites

__all__ = [
    "Geometry",
    "KostantPartition",
    "ModuleParams",
    "Multipartition",
    "Polynomial",
    "Raiz",
    "RunConfig",
    "chevalley",
    "commutator",
    "enumerate_kostant",
    "enumerate_multipartitions",
    "matrix_of",
    "op_equal_on",
    "raiz",
    "run_suites",
]
