"""Exact commuting-probability computations on finite groups."""
from __future__ import annotations

from ._kernels import backend_name
from .autos import (
    Automorphism,
    AutomorphismGroup,
    automorphism_from_generator_images,
    automorphism_from_map,
    coprime_quotient_check,
    elementary_abelian_bound_check,
    fixed_point_subgroup,
    identity_automorphism,
    is_coprime_action,
)
from .catalog import builtin_automorphisms, builtin_group, catalog_names
from .decompose import (
    DecompositionReport,
    commutator_bound_data,
    conjugate_closure_data,
    decompose,
    gamma_class_data,
    series_stabilizer,
    small_ambient_class_set,
    small_relative_class_set,
)
from .errors import (
    AutomorphismError,
    CapExceededError,
    CommprobeError,
    GroupFileError,
    GroupTooLargeError,
    HypothesisError,
    NotContainedError,
    NotNormalError,
    ParentMismatchError,
    TableValidationError,
    UnsupportedWordError,
    VerificationFailure,
    WordSyntaxError,
)
from .group import (
    FiniteGroup,
    GroupHom,
    Permutation,
    direct_product,
    group_from_cayley_table,
    group_from_generators,
    quotient_group,
)
from .groupfile import format_group_file, parse_group_file
from .probability import (
    ClassSizeProfile,
    QuotientSplitReport,
    class_size_profile,
    commuting_probability,
    format_ratio,
    parse_ratio,
    probability_between,
    quotient_split_check,
    relative_commuting_probability,
)
from .reports import TheoremReport, WitnessReport
from .structure import (
    components,
    derived_subgroup,
    exponent,
    exponent_of,
    fitting_subgroup,
    generalized_fitting,
    hypercenter_term,
    is_nilpotent,
    layer_subgroup,
    lower_central_series,
    lower_central_term,
    nilpotency_class,
    nilpotency_class_of,
    p_core,
    perfect_core,
    power_subgroup,
    prime_factors,
    sylow_subgroup,
    upper_central_series,
)
from .subgroups import (
    Subgroup,
    all_normal_subgroups,
    center,
    centralizer,
    centralizer_of_set,
    class_size,
    closure,
    commutator_of_subgroups,
    conjugacy_class_of,
    conjugacy_classes,
    enumerate_all_subgroups,
    full_subgroup,
    normal_closure,
    normal_core,
    normal_subgroups_of,
    normalizer,
    relative_class,
    subgroup_from_members,
    symmetric_set_power,
    trivial_subgroup,
    as_group,
)
from .verify import (
    verify_all_sylow,
    verify_auto2_theorem,
    verify_auto_theorem,
    verify_commutator_bound,
    verify_conjugate_closure,
    verify_coprime_quotients,
    verify_elementary_abelian_bound,
    verify_exp_theorem,
    verify_fitting,
    verify_gamma,
    verify_gamma_classes,
    verify_neumann,
    verify_product_length,
    verify_quotient_refinement,
    verify_sylow,
    verify_virtual_nilpotency,
)
from .words import (
    Comm,
    Inv,
    One,
    Pow,
    Prod,
    Var,
    Word,
    engel_word,
    evaluate_word,
    first_law_violation,
    is_law,
    parse_word,
    power_commutator_word,
    recognize_word_family,
    verbal_subgroup,
    word_to_text,
)

__version__ = "0.1.0"
