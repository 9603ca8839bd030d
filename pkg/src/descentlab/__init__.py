"""Exact descent set statistics and the cyclotomic structure of their
generating polynomials, for unsigned and signed permutations."""

from .errors import (
    CacheError,
    ContractViolationError,
    DescentLabError,
    ResourceLimitError,
)
from .numbers import (
    BinaryExpansion,
    Composition,
    SubsetMask,
    carries_base_p,
    composition_to_subset,
    essential_elements,
    euler_number,
    is_multinomial_odd,
    multinomial,
    signed_euler_number,
    subset_to_composition,
)
from .descent import (
    DescentTable,
    ResidueHistogram,
    alpha,
    alpha_signed,
    beta_table,
    brute_force_table,
    load_table,
    mod_p_prediction,
    residue_histogram,
    rho,
    save_table,
)
from .qsym import (
    BQSymPoly,
    OrderedSetPartition,
    QSymPoly,
    f_boolean,
    f_cubical_B,
    l_to_m,
    m_to_l,
    odd_fundamental_count,
    ordered_set_partitions,
    product_monomial_singletons,
)
from .abcd import (
    AbPoly,
    CdPoly,
    MacmahonCheck,
    NotInSpanError,
    SignVector,
    ab_index,
    ab_to_cd,
    cd_to_ab,
    macmahon_multiplication_check,
    omega,
    signed_sum,
)
from .cyclo import (
    DerivativeCheck,
    FactorReport,
    IntPoly,
    cyclotomic,
    divides_order,
    eval_at_primitive_root,
    eval_special,
    factor_scan,
    signed_derivative_theorem_check,
)

__version__ = "1.0.0"

__all__ = [
    "AbPoly",
    "BinaryExpansion",
    "BQSymPoly",
    "CacheError",
    "CdPoly",
    "Composition",
    "ContractViolationError",
    "DerivativeCheck",
    "DescentLabError",
    "DescentTable",
    "FactorReport",
    "IntPoly",
    "MacmahonCheck",
    "NotInSpanError",
    "OrderedSetPartition",
    "QSymPoly",
    "ResidueHistogram",
    "ResourceLimitError",
    "SignVector",
    "SubsetMask",
    "ab_index",
    "ab_to_cd",
    "alpha",
    "alpha_signed",
    "beta_table",
    "brute_force_table",
    "carries_base_p",
    "cd_to_ab",
    "composition_to_subset",
    "cyclotomic",
    "divides_order",
    "essential_elements",
    "euler_number",
    "eval_at_primitive_root",
    "eval_special",
    "f_boolean",
    "f_cubical_B",
    "factor_scan",
    "is_multinomial_odd",
    "l_to_m",
    "load_table",
    "m_to_l",
    "macmahon_multiplication_check",
    "mod_p_prediction",
    "multinomial",
    "odd_fundamental_count",
    "omega",
    "ordered_set_partitions",
    "product_monomial_singletons",
    "residue_histogram",
    "rho",
    "save_table",
    "signed_derivative_theorem_check",
    "signed_euler_number",
    "signed_sum",
    "subset_to_composition",
    "__version__",
]
