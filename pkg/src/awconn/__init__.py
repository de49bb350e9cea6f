"""Exact construction and connection coefficients of nonsymmetric Askey-Wilson polynomials."""

from .arith import NonGenericError, ParamSet, Rat, fmt_rat, genericity_failure, qpoch, to_rat
from .connection import (
    ShiftKind,
    ShiftSpec,
    TransitionMatrix,
    transition_matrix_closed,
    transition_matrix_oracle,
)
from .laurent import LaurentPoly, expand_in_basis, zz_compare
from .operators import OperatorTag, apply
from .polys import hecke_symmetrize, mu_tilde, nonsymmetric_E

__version__ = "0.1.0"

__all__ = [
    "NonGenericError",
    "ParamSet",
    "Rat",
    "fmt_rat",
    "genericity_failure",
    "qpoch",
    "to_rat",
    "ShiftKind",
    "ShiftSpec",
    "TransitionMatrix",
    "transition_matrix_closed",
    "transition_matrix_oracle",
    "LaurentPoly",
    "expand_in_basis",
    "zz_compare",
    "OperatorTag",
    "apply",
    "hecke_symmetrize",
    "mu_tilde",
    "nonsymmetric_E",
]
