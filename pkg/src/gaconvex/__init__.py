"""Numerical verification of fractional Hermite--Hadamard type inequalities
for (alpha, m)-GA-convex functions through Hadamard fractional integrals."""

from __future__ import annotations

from gaconvex.constants import BoundConstants, InequalityParams, Route, Tag, evaluate_constant
from gaconvex.convexity import ConvexityVerdict, check_alpha_m_ga
from gaconvex.errors import (
    DomainError,
    EvaluationError,
    ExprSyntaxError,
    QuadratureError,
    UnknownIdentifierError,
)
from gaconvex.expr import compile_expr, diff, evaluate, parse, to_string
from gaconvex.functions import CATALOG, FunctionSpec, from_expr, get_function
from gaconvex.harness import (
    Report,
    SweepConfig,
    emit_plotdata,
    emit_report,
    load_config,
    run_sweep,
)
from gaconvex.ineq import (
    KfDecomposition,
    Statement,
    Verdict,
    VerificationRecord,
    bound_thm5,
    bound_thm6,
    bound_thm7,
    bound_thm8,
    corollary,
    hh_chain,
    kf_lhs,
    kf_rhs_identity,
    verify,
)
from gaconvex.quad import QuadratureConfig, QuadResult, hadamard_left, hadamard_right, integrate
from gaconvex.specfun import beta, gamma, hyp2f1, lgamma

__version__ = "0.1.0"

__all__ = (
    "CATALOG", "BoundConstants", "ConvexityVerdict", "DomainError", "EvaluationError",
    "ExprSyntaxError", "FunctionSpec", "InequalityParams", "KfDecomposition",
    "QuadResult", "QuadratureConfig", "QuadratureError", "Report", "Route",
    "Statement", "SweepConfig", "Tag", "UnknownIdentifierError", "Verdict",
    "VerificationRecord", "beta", "bound_thm5", "bound_thm6", "bound_thm7",
    "bound_thm8", "check_alpha_m_ga", "compile_expr", "corollary", "diff",
    "emit_plotdata", "emit_report", "evaluate", "evaluate_constant", "from_expr",
    "gamma", "get_function", "hadamard_left", "hadamard_right", "hh_chain",
    "hyp2f1", "integrate", "kf_lhs", "kf_rhs_identity", "lgamma", "load_config",
    "parse", "run_sweep", "to_string", "verify",
)
