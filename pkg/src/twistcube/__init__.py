"""Twisted Bhargava cubes, twisted composition algebras and their invariants."""

from .composition import CompAlg2, TitsPair, check_axioms, cube_of, from_tits, k_c, phi, to_tits
from .cube import (
    AlgAut,
    Cube,
    GroupWord,
    Mat2,
    Torus,
    UnipotentLower,
    UnipotentUpper,
    Weyl,
    act,
    delta_E,
    reduce,
)
from .errors import (
    AxiomViolation,
    DegenerateCubeError,
    NotAGoodBasisError,
    NotInvertibleError,
    SearchExhausted,
    UnsupportedShapeError,
    ValidationError,
)
from .etale import CubicAlgebra, CubicElem
from .field import GF, QQ, PrimeField, QuadExt, field_from_spec

__all__ = [
    "AlgAut", "AxiomViolation", "CompAlg2", "Cube", "CubicAlgebra", "CubicElem",
    "DegenerateCubeError", "GF", "GroupWord", "Mat2", "NotAGoodBasisError",
    "NotInvertibleError", "PrimeField", "QQ", "QuadExt", "SearchExhausted", "TitsPair",
    "Torus", "UnipotentLower", "UnipotentUpper", "UnsupportedShapeError",
    "ValidationError", "Weyl", "act", "check_axioms", "cube_of", "delta_E",
    "field_from_spec", "from_tits", "k_c", "phi", "reduce", "to_tits",
]
