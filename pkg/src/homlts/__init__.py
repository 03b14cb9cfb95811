"""Exact computations for multiplicative Hom-Lie triple systems.

Structure constants, twist-compatible representations, the Hom-cochain
complex and its cohomology, central extensions, and one-parameter formal
deformations, over the rationals or a prime field GF(p) with p > 3.
"""

from .field import GF, QQ, Field, FieldError, FieldMismatchError
from .algebra import (
    AxiomReport,
    GeneralHomTripleSystem,
    HomTripleSystem,
    bracket_eval,
    center,
    check_axioms,
    direct_sum,
)
from .representation import (
    Representation,
    adjoint_rep,
    check_representation,
    semidirect_product,
    trivial_rep,
)
from .cohomology import (
    Cochain,
    CochainSpace,
    coboundaries,
    coboundary,
    cochain_space,
    cocycles,
    verify_complex,
)

__version__ = "0.1.0"

__all__ = [
    "GF",
    "QQ",
    "Field",
    "FieldError",
    "FieldMismatchError",
    "AxiomReport",
    "GeneralHomTripleSystem",
    "HomTripleSystem",
    "bracket_eval",
    "center",
    "check_axioms",
    "direct_sum",
    "Representation",
    "adjoint_rep",
    "check_representation",
    "semidirect_product",
    "trivial_rep",
    "Cochain",
    "CochainSpace",
    "coboundaries",
    "coboundary",
    "cochain_space",
    "cocycles",
    "verify_complex",
]
