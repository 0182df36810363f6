"""Exact low-degree group cohomology and the seven-term sequence of an extension."""

from .abelian import AbelianMorphism, FgAbelianGroup, ModuleElement, diagonal_group
from .cochains import Cochain, coboundary, coboundary_is_zero
from .cohomology import (
    CohomologyClass,
    CohomologyGroup,
    CohomologySubgroup,
    Derivation,
    InducedQModule,
    cohomology_group,
    conjugation_action_on_h1,
    derivation_groups,
    invariant_classes,
)
from .extensions import (
    AmbientExtension,
    ConcreteExtension,
    SDCHandle,
    extension_from_cocycle,
    factor_set_of_section,
    normalize_partially_split,
    normalizer_quotient_class,
    pull_back_extension,
    push_out_extension,
    q_action_and_invariance,
    sdc_of_derivation,
    derivation_of_sdc,
    standard_split_extension,
)
from .gmodules import GModule, invariant_submodule, module_from_generator_action, trivial_module
from .groups import (
    FiniteGroup,
    GroupMorphism,
    SubgroupHandle,
    morphism_kernel_image,
    normalizer,
    quotient_with_transversal,
    semidirect_product,
    structural_subgroups,
    subgroup_closure,
)
from .intlin import IntMatrix, IntegerLattice, SnfDecomposition, smith_normal_form, solve_modular_linear
from .presets import build_extension, build_module, build_preset
from .workbench import RunConfig, run_and_emit
from .sevenmaps import (
    ClassValuedDerivation,
    SevenTermReport,
    SevenTermWorkspace,
    naturality_check,
    seven_term_report,
)

__version__ = "0.1.0"
