"""Exact-arithmetic Lie algebra structures: left-symmetric products and
symplectic forms on nilpotent cotangent algebras, with verified certificates.

Everything is computed over the rationals; every check is an exact equality
with concrete witnesses on failure.
"""

__version__ = "0.1.0"

from .algebra_core import (
    BasisLabel,
    LieAlgebra,
    LinearMap,
    Subspace,
    bracket,
    center,
    check_jacobi,
    cotangent,
    cotangent_filiform,
    jordan_nilpotent_block,
    lower_central_series,
    nilpotency_step,
    semidirect_sum,
)
from .exactnum import (
    MultiPoly,
    Scalar,
    format_scalar,
    parse_scalar,
    poly_matrix_power_trace,
    scalar_arith,
)
from .families import (
    EquivalenceResult,
    EquivalenceVerdict,
    FamilyParams,
    SequenceTriple,
    build_family_product,
    build_sign_swap_iso,
    check_classification_assumptions,
    check_conditions,
    check_gamma_complement,
    compute_sequences,
    family_equivalence,
    in_set_A,
)
from .lsa import (
    CompletenessResult,
    CompletenessVerdict,
    LsaProduct,
    check_complete,
    check_left_hom,
    check_left_symmetric,
    left_translation,
    lsa_product,
    right_translation,
    verify_lsa_isomorphism,
)
from .symplectic import (
    FormFamilyParams,
    HomothetyCertificate,
    TwoForm,
    build_form_family,
    build_sign_swap_automorphism,
    check_closed,
    check_family_correspondence,
    check_induced_identity,
    form_equivalence,
    in_set_B,
    induce_lsa,
    is_nondegenerate,
    pullback,
    verify_homothety,
)
from .verification import VerificationReport, Witness

__all__ = [
    "__version__",
    "BasisLabel", "LieAlgebra", "LinearMap", "Subspace",
    "bracket", "center", "check_jacobi", "cotangent", "cotangent_filiform",
    "jordan_nilpotent_block", "lower_central_series", "nilpotency_step",
    "semidirect_sum",
    "MultiPoly", "Scalar", "format_scalar", "parse_scalar",
    "poly_matrix_power_trace", "scalar_arith",
    "EquivalenceResult", "EquivalenceVerdict", "FamilyParams", "SequenceTriple",
    "build_family_product", "build_sign_swap_iso",
    "check_classification_assumptions", "check_conditions",
    "check_gamma_complement", "compute_sequences", "family_equivalence",
    "in_set_A",
    "CompletenessResult", "CompletenessVerdict", "LsaProduct",
    "check_complete", "check_left_hom", "check_left_symmetric",
    "left_translation", "lsa_product", "right_translation",
    "verify_lsa_isomorphism",
    "FormFamilyParams", "HomothetyCertificate", "TwoForm",
    "build_form_family", "build_sign_swap_automorphism", "check_closed",
    "check_family_correspondence", "check_induced_identity",
    "form_equivalence", "in_set_B", "induce_lsa", "is_nondegenerate",
    "pullback", "verify_homothety",
    "VerificationReport", "Witness",
]
