"""Negative-type geometry of finite semi-metric spaces.

Decide (strict) p-negative type spectrally, locate the supremal exponent by
bisection, compute the negative-type gap by exhaustive bipartition search
with a projected-gradient solver, and evaluate the closed-form tree, star,
and strictness-interval bounds — all cross-checked by a brute-force simplex
oracle and a self-verification suite.
"""

from .bounds import ZetaReport, gamma_fn, star_exact_type, tree_type_lower_bound, zeta_bound
from .checker import (
    NegTypeVerdict,
    Status,
    SupremalResult,
    check,
    interval_scan,
    supremal_negative_type,
    witness_null_simplex,
)
from .errors import NegTypeError
from .gap import (
    GapResult,
    brute_force_gap,
    minimize_bipartition,
    negative_type_gap,
    tree_gap,
)
from .io import (
    read_matrix_csv,
    read_tree_edge_list,
    read_tree_edges,
    space_from_json,
    space_to_json,
    write_matrix_csv,
)
from .kernels import BACKEND
from .simplex import LoadedSimplex, gap_from_eta, sign_split, simplex_gap
from .space import (
    FiniteSemiMetricSpace,
    diameter,
    from_matrix,
    gen_circle,
    gen_discrete,
    gen_enflo_truncation,
    gen_path,
    gen_random_semimetric,
    gen_star,
    gen_tree,
    is_metric,
    min_positive_distance,
    power_matrix,
    rescale,
    scaled_diameter,
)
from .tolerances import DEFAULT_TOL, ToleranceConfig
from .verify import default_corpus, run_verify

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DEFAULT_TOL",
    "FiniteSemiMetricSpace",
    "GapResult",
    "LoadedSimplex",
    "NegTypeError",
    "NegTypeVerdict",
    "Status",
    "SupremalResult",
    "ToleranceConfig",
    "ZetaReport",
    "brute_force_gap",
    "check",
    "default_corpus",
    "diameter",
    "from_matrix",
    "gamma_fn",
    "gap_from_eta",
    "gen_circle",
    "gen_discrete",
    "gen_enflo_truncation",
    "gen_path",
    "gen_random_semimetric",
    "gen_star",
    "gen_tree",
    "interval_scan",
    "is_metric",
    "min_positive_distance",
    "minimize_bipartition",
    "negative_type_gap",
    "power_matrix",
    "read_matrix_csv",
    "read_tree_edge_list",
    "read_tree_edges",
    "rescale",
    "run_verify",
    "scaled_diameter",
    "sign_split",
    "simplex_gap",
    "space_from_json",
    "space_to_json",
    "star_exact_type",
    "supremal_negative_type",
    "tree_gap",
    "tree_type_lower_bound",
    "witness_null_simplex",
    "write_matrix_csv",
    "zeta_bound",
]
