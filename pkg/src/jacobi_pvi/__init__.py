"""Hankel determinants, orthogonal polynomials and Painleve VI for the weight
``(x - t)**gamma * x**alpha * (1 - x)**beta`` on ``[0, 1]`` with ``t < 0``.

Everything is computed in gmpy2 multiprecision arithmetic at a
user-chosen number of decimal digits.
"""

from .derivatives import DerivativeEstimate, finite_diff
from .errors import ConvergenceError, DegeneratePointError, DomainError, JacobiPVIError, PrecisionLossError
from .ladder import (
    ConditioningWarning,
    LadderQuantities,
    LadderTable,
    an_bn_eval,
    check_a_decay,
    check_compatibility,
    check_sum_rules,
    ladder_quantities,
    solve,
)
from .moments import MomentTable, WeightParams, hankel_det, moment, moment_table, weight_eval
from .orthopoly import RecurrenceTable, build_recurrence, eval_monic, norms_product, zeros_in_unit_interval
from .painleve import (
    Family,
    H_pointwise,
    PviConstants,
    SigmaConstants,
    asymptotic_check_R0,
    aux_identity_residuals,
    pvi_constants,
    pvi_residual,
    sigma_constants,
    sigma_residual,
    special_case_residuals,
    toda_residual,
)
from .precision import PrecisionContext, beta_fn, hyp2f1, log_gamma
from .quadrature import QuadratureRule, gauss_jacobi_rule, integrate_factor
from .reports import ResidualReport

__version__ = "0.1.0"

__all__ = [
    "ConditioningWarning",
    "ConvergenceError",
    "DegeneratePointError",
    "DerivativeEstimate",
    "DomainError",
    "Family",
    "H_pointwise",
    "JacobiPVIError",
    "LadderQuantities",
    "LadderTable",
    "MomentTable",
    "PrecisionContext",
    "PrecisionLossError",
    "PviConstants",
    "QuadratureRule",
    "RecurrenceTable",
    "ResidualReport",
    "SigmaConstants",
    "WeightParams",
    "an_bn_eval",
    "asymptotic_check_R0",
    "aux_identity_residuals",
    "beta_fn",
    "build_recurrence",
    "check_a_decay",
    "check_compatibility",
    "check_sum_rules",
    "eval_monic",
    "finite_diff",
    "gauss_jacobi_rule",
    "hankel_det",
    "hyp2f1",
    "integrate_factor",
    "ladder_quantities",
    "log_gamma",
    "moment",
    "moment_table",
    "norms_product",
    "pvi_constants",
    "pvi_residual",
    "sigma_constants",
    "sigma_residual",
    "solve",
    "special_case_residuals",
    "toda_residual",
    "weight_eval",
    "zeros_in_unit_interval",
]
