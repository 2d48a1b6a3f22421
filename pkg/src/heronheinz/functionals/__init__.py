"""Inequality-chain checkers for Heinz and Heron type functionals."""

from .cauchy_schwarz import check_cs_refinement, check_hiai_zhan
from .core import TAU, ChainBatch, CheckResult, Evaluator, F_of, G_of, K_of, phi_of, r0, r2, t0, tolerance
from .difference import (
    check_convexity_extension,
    check_corollary_sum,
    check_gen_diff,
    check_heinz_diff_classical,
    check_power_diff,
    check_reverse_heinz,
    check_schur_norm_bound,
    check_t2,
    check_t2_integral,
    check_t3,
    check_t4,
)
from .heron import (
    check_conde,
    check_integral_refinement,
    check_kantorovich_s2,
    check_t1,
    check_t1_integral,
    check_t20,
)
from .jensen import (
    ConvexHandle,
    JensenParams,
    check_hermite_hadamard_gap,
    check_jensen_bounds,
    convex_function,
    functional_handle,
)
from .zou import zou_counterexample, zou_matrix

__all__ = [
    "TAU", "ChainBatch", "CheckResult", "Evaluator", "F_of", "G_of", "K_of", "phi_of",
    "r0", "r2", "t0", "tolerance",
    "check_t1", "check_t1_integral", "check_t20", "check_kantorovich_s2", "check_conde",
    "check_integral_refinement", "check_t2", "check_t2_integral", "check_heinz_diff_classical",
    "check_gen_diff", "check_power_diff", "check_reverse_heinz", "check_convexity_extension",
    "check_corollary_sum", "check_t3", "check_t4", "check_schur_norm_bound",
    "check_hiai_zhan", "check_cs_refinement",
    "JensenParams", "ConvexHandle", "convex_function", "functional_handle",
    "check_jensen_bounds", "check_hermite_hadamard_gap",
    "zou_counterexample", "zou_matrix",
]
