"""Integral homology of double coverings and rank-one sign local systems,
computed exactly from chain complexes over ``Z[t, 1/t]``."""

from ._backend import BACKEND
from .chain import (
    EquivariantComplex,
    HomologyProfile,
    IntComplex,
    double_cover_complex,
    homology,
    is_minimal,
    random_minimal,
    specialize,
    unit_reduce,
)
from .covers import (
    PipelineReport,
    corollary1_backward,
    corollary1_forward,
    corollary2_check,
    cover_homology_direct,
    cover_homology_formula,
    verify_theorem,
)
from .exact_linalg import AbelianGroup, IntMatrix, SmithForm, homology_pair, snf
from .laurent import LaurentMatrix, LaurentPoly

__all__ = [
    "BACKEND",
    "AbelianGroup",
    "EquivariantComplex",
    "HomologyProfile",
    "IntComplex",
    "IntMatrix",
    "LaurentMatrix",
    "LaurentPoly",
    "PipelineReport",
    "SmithForm",
    "corollary1_backward",
    "corollary1_forward",
    "corollary2_check",
    "cover_homology_direct",
    "cover_homology_formula",
    "double_cover_complex",
    "homology",
    "homology_pair",
    "is_minimal",
    "random_minimal",
    "snf",
    "specialize",
    "unit_reduce",
    "verify_theorem",
]
