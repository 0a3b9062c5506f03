"""
LG Model Package
Invertible polynomials, their symmetry groups, state spaces, Frobenius products and W-curve
selection rules, all in exact arithmetic
"""
from lg_model.errors import LGMirrorError
from lg_model.polynomial import (
    InvertiblePolynomial,
    canonical_id,
    charges,
    decompose,
    predicates,
    transpose,
)
from lg_model.symmetry import (
    Subgroup,
    SymmetryElement,
    dual_group,
    enumerate_subgroups,
    full_group,
    j_subgroup,
    sl_subgroup,
)
from lg_model.statespace import a_state_space, b_state_space, lg_cy_diamond, mirror_check
from lg_model.frobenius import FrobeniusAlgebra, check_associativity
from lg_model.fjrw import genus0_correlator, grr_expansion, moduli_profile, r_spin_rank

__all__ = [
    "LGMirrorError",
    "InvertiblePolynomial",
    "canonical_id",
    "charges",
    "decompose",
    "predicates",
    "transpose",
    "Subgroup",
    "SymmetryElement",
    "dual_group",
    "enumerate_subgroups",
    "full_group",
    "j_subgroup",
    "sl_subgroup",
    "a_state_space",
    "b_state_space",
    "lg_cy_diamond",
    "mirror_check",
    "FrobeniusAlgebra",
    "check_associativity",
    "genus0_correlator",
    "grr_expansion",
    "moduli_profile",
    "r_spin_rank",
]
