"""Algebraic and numerical checks for instanton moduli spaces over connected sums of CP^2."""

from .ring import (
    Generator,
    GradedPolynomial,
    IdealPresentation,
    Membership,
    PresentationMismatch,
    RingHom,
    RingPresentation,
    TupleElement,
    TupleRing,
    hom_apply,
    ideal_degree_basis,
    kernel_degree,
    membership,
    monomial_basis,
)

__all__ = [
    "Generator",
    "GradedPolynomial",
    "IdealPresentation",
    "Membership",
    "PresentationMismatch",
    "RingHom",
    "RingPresentation",
    "TupleElement",
    "TupleRing",
    "hom_apply",
    "ideal_degree_basis",
    "kernel_degree",
    "membership",
    "monomial_basis",
]

__version__ = "0.1.0"
