"""Dense symmetric linear algebra: storage, solves, orthonormalization, Jacobi oracle."""

from .decompose import ShiftedLU, canonical_signs, gram_schmidt, orthonormal_basis, shifted_lu_solve
from .jacobi import EigenDecomposition, jacobi_eigensolve
from .matrix import DenseSymMatrix, Vec, a_norm, as_vec, matvec

__all__ = [
    "DenseSymMatrix",
    "Vec",
    "as_vec",
    "matvec",
    "a_norm",
    "gram_schmidt",
    "orthonormal_basis",
    "canonical_signs",
    "shifted_lu_solve",
    "ShiftedLU",
    "EigenDecomposition",
    "jacobi_eigensolve",
]
