"""Theories as monads: multicategories, their maps, models and clones."""

from .algebras import (
    FiniteAlgebra,
    FunctionCategory,
    MonoidAlgebra,
    PosetAlgebra,
    PowerAlgebra,
    builtin_algebras,
    check_algebra,
    terminal_algebra,
)
from .clones import builtin_op, clone_multicategory, clone_of_algebra, close_clone
from .endomorphism import check_model, endomorphism_theory, enumerate_models, full_subcategory
from .induced import Coend, InducedMonad, induced_monad_on_set
from .maps import (
    CeilingExceeded,
    TheoryCell,
    TheoryMap,
    ceiling_from_env,
    check_theory_cell,
    check_theory_map,
    compose_theory_maps,
    enumerate_theory_maps,
    identity_theory_map,
)
from .multicategory import Multicategory, check_normality, check_theory, subst_cell, truncate_theory, unit_cell

__all__ = [
    "CeilingExceeded",
    "Coend",
    "FiniteAlgebra",
    "FunctionCategory",
    "InducedMonad",
    "MonoidAlgebra",
    "Multicategory",
    "PosetAlgebra",
    "PowerAlgebra",
    "TheoryCell",
    "TheoryMap",
    "builtin_algebras",
    "builtin_op",
    "ceiling_from_env",
    "check_algebra",
    "check_model",
    "check_normality",
    "check_theory",
    "check_theory_cell",
    "check_theory_map",
    "clone_multicategory",
    "clone_of_algebra",
    "close_clone",
    "compose_theory_maps",
    "endomorphism_theory",
    "enumerate_models",
    "enumerate_theory_maps",
    "full_subcategory",
    "identity_theory_map",
    "induced_monad_on_set",
    "subst_cell",
    "terminal_algebra",
    "truncate_theory",
    "unit_cell",
]
