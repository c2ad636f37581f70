"""Exact verification of the polynomial module cutting out the singular
locus of a split simple Lie algebra.

Everything is computed over the rationals: structure constants, Killing
pairings, exterior calculus, invariant theory, and the Casimir spectra
all come out as exact integers or fractions, so every check in the suite
is a strict equality.
"""

from .exactlinalg import kernel_basis, mat_det, mat_inverse, mat_rank, solve
from .liealg import (
    Element,
    LieAlgebra,
    LieAlgebraError,
    build_classical,
    principal_nilpotent,
    singular_functional,
)
from .roots import IdealSet, RootDatum, compute_root_datum, exponents, partition_count

__version__ = "0.1.0"

__all__ = [
    "Element",
    "IdealSet",
    "LieAlgebra",
    "LieAlgebraError",
    "RootDatum",
    "build_classical",
    "compute_root_datum",
    "exponents",
    "kernel_basis",
    "mat_det",
    "mat_inverse",
    "mat_rank",
    "partition_count",
    "principal_nilpotent",
    "singular_functional",
    "solve",
]
