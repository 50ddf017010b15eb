"""Rank-3 torus-fixed points: stability systems, closed-form discriminants
and Euler characteristic counts."""

from .arms import (
    NO_INCLUSION,
    ArmLengths,
    GroupElement,
    InclusionPattern,
    UnsupportedPattern,
    c1_r3,
    c2_r3,
    disc_r3,
    group_elements,
    group_orbit,
    orbit,
)
from .configurations import generic_triple, lemma_triple, standard_lemma_triple
from .counting import (
    MOD0_TERMS,
    MOD4_TERMS,
    Term,
    chi_mod0,
    chi_mod4,
    chi_rank3,
    count_solutions,
    polystable_case,
    series_rank3,
)
from .forms import (
    ArityMismatch,
    ClosedFormId,
    QuadraticForm,
    UnboundedForm,
    all_form_ids,
    alpha_from_k,
    disc_closed,
    form,
)
from .systems import (
    CASE1,
    CASE2,
    CASE3,
    CASES,
    EIGHT_RAYS,
    Case,
    NotRepresentable,
    compose_solution,
    decompose_solution,
    inequality_system,
    is_stable_alpha,
)
