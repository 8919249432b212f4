"""torsorlab: exact lattice algebra for torsor computations."""

from .errors import TorsorlabError, InputError, LimitError
from .intmat import (
    IntegerMatrix,
    SnfDecomposition,
    backend_name,
    smith_normal_form,
    snf_diagonal,
    rank,
    is_unimodular,
    kernel_basis,
    solve_columns,
    lattice_contains,
    same_column_span,
)
from .abelian import (
    FGAbelianGroup,
    cokernel,
    cokernel_from_diagonal,
    tensor_finite,
    saturation,
    TorsionDescentData,
    torsion_descent_data,
    brute_force_cokernel_oracle,
    certified_oracle_bound,
    OracleTooLarge,
)
from .exactness import (
    PresentedGroup,
    GroupHom,
    is_exact_pair,
    short_exact_row,
    ExactSequenceReport,
    snake_sequence,
)
from .fans import (
    Fan,
    parse_fan,
    ray_matrix,
    divisor_map,
    spans_ambient,
    is_smooth_fan,
    class_group,
    CoxData,
    cox_construction,
    split_divisor_lattice,
    orbit_permutation_structure,
    galois_intertwining_holds,
)
from .groups import (
    FiniteGroup,
    GModule,
    group_from_spec,
    group_from_permutations,
    direct_product,
    abelianization,
    trivial_module,
    one_dim_module,
    induced_module,
    quotient_module,
)
from .cohomology import (
    CohomologyResult,
    bar_cohomology,
    cyclic_cohomology_oracle,
    shapiro_check,
    BinormReport,
    binorm_brauer_quotient,
)
from .localsym import (
    Place,
    is_prime,
    legendre_symbol,
    quartic_residue_symbol,
    sqrt_mod_prime_power,
    hilbert_symbol,
    product_formula_check,
    hensel_point,
)
from .obstruction import (
    ExampleInstance,
    validate_parameters,
    invariant_table,
    integral_search,
    minus_one_mod_p_insolvable,
    pic_of_complement,
)
from .multinorm import (
    MultiNormSpec,
    geometric_shape,
    divisor_matrix_multinorm,
    units_check,
    pic_multinorm,
    torsion_free_criterion,
    torsor_character_map,
    smooth_point_check,
)
from .limits import Limits, parse_limits_env

__version__ = "0.1.0"
