"""Finite-scale Kleisli bicategories of profunctors.

Finite categories and profunctors, the planar, symmetric and cartesian
doctrines on bounded words, theories as monads in the composed Kleisli
bicategory, their envelopes, and the comparison between doctrines.
"""

from .builtins import BUILTIN_THEORIES, builtin_theory
from .compare import DoctrineMap, adjunction_check, pullback_theory, pushforward_theory
from .doctrine import CARTESIAN, DOCTRINES, PLANAR, SYMMETRIC, ArityMap, word_category
from .envelope import free_algebra_envelope, lawvere_theory, planar_prop, prop
from .fincat import FinCategory, Functor, NatTransformation, Violation, validate_category
from .profunctor import Profunctor, compose_prof
from .theory import Multicategory, TheoryMap, check_theory, check_theory_map

__all__ = [
    "ArityMap",
    "BUILTIN_THEORIES",
    "CARTESIAN",
    "DOCTRINES",
    "DoctrineMap",
    "FinCategory",
    "Functor",
    "Multicategory",
    "NatTransformation",
    "PLANAR",
    "Profunctor",
    "SYMMETRIC",
    "TheoryMap",
    "Violation",
    "adjunction_check",
    "builtin_theory",
    "check_theory",
    "check_theory_map",
    "compose_prof",
    "free_algebra_envelope",
    "lawvere_theory",
    "planar_prop",
    "prop",
    "pullback_theory",
    "pushforward_theory",
    "validate_category",
    "word_category",
]
