"""Exact matrix algebra over PIDs: similarity normal forms and commutator
decompositions with verifiable witnesses."""

from .rings import (
    IntegerRing,
    PolynomialRing,
    ResidueClassRing,
    PrimeElement,
    Factorisation,
    ZZ,
    ideal_generator,
    maximal_ideals_of_index,
    prime_avoidance,
    avoid_with_vanishing,
    coprimify,
)
from .matrices import SquareMatrix, SimilarityWitness, commutator, conjugate

__all__ = [
    "IntegerRing",
    "PolynomialRing",
    "ResidueClassRing",
    "PrimeElement",
    "Factorisation",
    "ZZ",
    "ideal_generator",
    "maximal_ideals_of_index",
    "prime_avoidance",
    "avoid_with_vanishing",
    "coprimify",
    "SquareMatrix",
    "SimilarityWitness",
    "commutator",
    "conjugate",
]
