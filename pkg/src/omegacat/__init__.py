"""Finite truncated strict omega-categories: equivalences, fibrations, walking equivalences."""
from .coind import equivalences, find_inverse, flat_equivalences, is_equivalence, similar
from .fib import (
    OmegaFunctor,
    Verdict,
    enumerate_functors,
    is_equifibration,
    is_functor,
    is_gaunt,
    is_trivial_fibration,
    is_weak_equivalence,
)
from .gset import BudgetExceeded, Cell, GlobularData, ValidationReport, count_maps
from .lift import LiftingProblem, check_rlp_JF, enumerate_models, solve_lift
from .poly import (
    Polygraph,
    emit_EF_ladder,
    emit_EF_witness,
    emit_F,
    emit_H,
    emit_OR,
    ladder_colimit,
    suspend_presentation,
)
from .quot import iso_in_quotient, tau1, tau2
from .scat import (
    FiniteOmegaCat,
    cosep,
    globe_cat,
    hom,
    suspend,
    terminal,
    validate_category,
    walking_iso,
)

__version__ = "0.1.0"
