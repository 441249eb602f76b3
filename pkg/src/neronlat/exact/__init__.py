"""Exact scalar and matrix kernel: Q, Q(zeta_M), Smith normal form, nilpotent log/exp."""
from .cyclotomic import CycloScalar, CyclotomicField, cyclotomic_field, cyclotomic_polynomial, euler_phi
from .linalg import Subspace, determinant, identity, inverse, matmul, matvec, nullspace, rank, rref, transpose
from .nilpotent import (
    NotQuasiUnipotent,
    NotUnipotent,
    max_torsion_order,
    nilpotent_exp,
    nilpotent_log,
    quasi_unipotent_order,
)
from .snf import saturate, smith_normal_form_int, torsion_of_cokernel

__all__ = [
    "CycloScalar",
    "CyclotomicField",
    "NotQuasiUnipotent",
    "NotUnipotent",
    "Subspace",
    "cyclotomic_field",
    "cyclotomic_polynomial",
    "determinant",
    "euler_phi",
    "identity",
    "inverse",
    "matmul",
    "matvec",
    "max_torsion_order",
    "nilpotent_exp",
    "nilpotent_log",
    "nullspace",
    "quasi_unipotent_order",
    "rank",
    "rref",
    "saturate",
    "smith_normal_form_int",
    "torsion_of_cokernel",
    "transpose",
]
