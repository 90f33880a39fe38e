"""Exact computation in relatively stable module categories over GF(p)."""

from .ff import FpMatrix, is_prime, nullspace_basis, rref, solve_linear_system
from .groups import FiniteGroup, Subgroup, coset_transversal, cyclic, direct_product, subgroup_closure
from .reps import (
    Module,
    Morphism,
    ShortExactSequence,
    cokernel_module,
    direct_sum,
    dual,
    identity_morphism,
    induce,
    kernel_module,
    module_from_generators,
    regular_module,
    restrict,
    spanned_submodule,
    tensor,
    tensor_morphism,
    trivial_module,
    zero_module,
    zero_morphism,
)
from .homs import (
    DEFAULT_SEARCH_BOUND,
    HomBasis,
    OracleInfeasibleError,
    factors_through,
    find_summand_witness,
    fitting_decomposition,
    has_retraction,
    has_section,
    hom_basis,
    is_summand_bruteforce,
)
from .relative import (
    RelativeContext,
    counit,
    cover,
    is_relatively_projective,
    is_stably_zero,
    is_w_split,
    omega,
    omega_inv,
    stable_hom_dim,
    unit,
)
from .triangles import (
    Chain,
    HocolimResult,
    Pullback,
    Triangle,
    complete_to_triangle,
    finite_hocolim,
    pullback,
    stably_isomorphic_bruteforce,
    triangle_from_ses,
    verify_colimit_comparison,
)
from .constructions import (
    WrapReport,
    WrapResult,
    shift_block_identities_bruteforce,
    verify_binomial_signs,
    verify_shift_block_identities,
    verify_wrap_criterion,
    wrap_ses,
)
from .catalog import NamedInstance, get_example, registry_names

__version__ = "0.1.0"
