"""Numeric verification of the inequalities for ``F_c``, ``j_D``, ``h_{D,c}``
and ``W``, plus the constructive counterexample for ``c < 1``."""

from .bounds import (
    C,
    C_hat,
    C_tilde,
    E_t,
    E_t_at_c0,
    E_t_minimiser,
    check_positivity_chain,
    check_Fc_double_bound,
    check_Fc_over_t_monotone,
    check_l_u_sandwich,
    check_limit_L,
    check_refined_upper,
    check_shifted_bounds,
    eval_proof_functions,
    g_prime,
    l_bound,
    shifted_bounds_c0,
    limit_L,
    refined_upper,
    shifted_lower,
    shifted_upper,
    t1,
    t2,
    u_bound,
    u_branches,
)
from .counterexample import Counterexample, H, counterexample_report, find_counterexample, p, p_minus_r, q, r
from .figures import emit_figure_data, figure_columns, rows_ordered
from .grid import DEFAULT_GRID, GridSpec
from .sampled import (
    LU_factors,
    W_j,
    check_h_sandwich,
    check_j_rho,
    check_LU_bounds,
    check_metric_axioms,
    check_F1_bounds,
    crossing_point,
    find_triangle_violation,
    h_c,
)
