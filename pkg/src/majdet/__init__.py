"""majdet: majorization orders and determinantal inequalities for positive
definite matrices, with seeded counterexample fuzzing and exact rational
certification."""

from .blocks import Partition, diag_blocks, direct_sum, principal_submatrix, validate_partition
from .catalog import (
    EVALUATOR_IDS,
    INEQUALITY_IDS,
    THEOREM_IDS,
    InequalityVerdict,
    Instance,
    check_choi,
    check_det_power,
    check_fischer_tail,
    check_kyfan,
    check_lemma31,
    check_main_theorem,
    check_matic,
    check_open_q,
    check_thm32,
    evaluate_general,
    identity_abs_square,
    run_check,
)
from .exact import det_exact, inverse_exact, rational_matrix
from .fuzzing import FuzzReport, GenConfig, GenStyle, TrialRecord, fuzz, gen_pd, replay
from .linalg import (
    cholesky,
    det_pd,
    eig_pd_product,
    eigvals_sym,
    hyperbolic_power,
    is_pd,
    jacobi_eigen,
    loewner_le,
    logdet_pd,
    pd_inverse,
    pd_sqrt,
    singular_values,
    sym_power,
)
from .orders import (
    OrderKind,
    OrderReport,
    check_order,
    geometric_mean,
    power_mean,
    sort_desc,
)

__version__ = "0.1.0"

__all__ = [
    "Partition", "diag_blocks", "direct_sum", "principal_submatrix", "validate_partition",
    "EVALUATOR_IDS", "INEQUALITY_IDS", "THEOREM_IDS",
    "InequalityVerdict", "Instance",
    "check_choi", "check_det_power", "check_fischer_tail", "check_kyfan",
    "check_lemma31", "check_main_theorem", "check_matic", "check_open_q",
    "check_thm32", "evaluate_general", "identity_abs_square", "run_check",
    "det_exact", "inverse_exact", "rational_matrix",
    "FuzzReport", "GenConfig", "GenStyle", "TrialRecord", "fuzz", "gen_pd", "replay",
    "cholesky", "det_pd", "eig_pd_product", "eigvals_sym", "hyperbolic_power",
    "is_pd", "jacobi_eigen", "loewner_le", "logdet_pd", "pd_inverse", "pd_sqrt",
    "singular_values", "sym_power",
    "OrderKind", "OrderReport", "check_order", "geometric_mean", "power_mean", "sort_desc",
    "__version__",
]
