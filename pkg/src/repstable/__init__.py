"""Repetitive algebras of gentle algebras over exact fields: string
modules, almost split sequences and the classification of irreducible
morphisms in the stable category."""

__version__ = "0.1.0"

from .fields import QQ, PrimeField, get_field
from .presentation import (
    AlgebraPresentation,
    ParseError,
    PathWord,
    Quiver,
    RelationGen,
    parse_presentation,
    validate_gentle,
)
from .repetitive import (
    RepetitiveElement,
    RepetitiveWindow,
    build_repetitive_window,
    maximal_paths,
    proj_injective_module,
    quotient_by_socle,
    radical_of_projective,
    repetitive_product,
)

__all__ = [
    "QQ", "PrimeField", "get_field",
    "AlgebraPresentation", "ParseError", "PathWord", "Quiver", "RelationGen",
    "parse_presentation", "validate_gentle",
    "RepetitiveElement", "RepetitiveWindow", "build_repetitive_window",
    "maximal_paths", "proj_injective_module", "quotient_by_socle",
    "radical_of_projective", "repetitive_product",
    "__version__",
]
