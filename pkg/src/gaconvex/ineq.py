r"""Both sides of the identity and of every inequality being verified.

The functional

.. math::

    K_f = (1 - \lambda) m^\theta \left[\ln^\theta\frac{x}{a}
        + \ln^\theta\frac{b}{x}\right] f(x^m)
        + \lambda m^\theta \left[f(a^m) \ln^\theta\frac{x}{a}
        + f(b^m) \ln^\theta\frac{b}{x}\right]
        - \Gamma(\theta + 1) \left[J_{x^m-}^\theta f(a^m)
        + J_{x^m+}^\theta f(b^m)\right]

is computed from Hadamard integrals of ``f`` (:func:`kf_lhs`) and, separately,
from two integrals of ``f'`` (:func:`kf_rhs_identity`).  Upper bounds come
from the constants module only, so the two sides of each inequality never
share a code path.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Optional

import numpy as np
from scipy.special import roots_jacobi

from gaconvex import constants as K
from gaconvex.constants import InequalityParams
from gaconvex.convexity import (
    DEFAULT_GRID,
    DEFAULT_TOL,
    ConvexityVerdict,
    check_alpha_m_ga,
)
from gaconvex.errors import DomainError, EvaluationError, QuadratureError
from gaconvex.functions import FunctionSpec, derivative_power
from gaconvex.quad import DEFAULT_CONFIG, QuadratureConfig, hadamard_left, hadamard_right, integrate
from gaconvex.specfun import gamma

# {{{ enums and records


class Statement(str, enum.Enum):
    lemma2 = "lemma2"
    thm4 = "thm4"
    thm5 = "thm5"
    thm6 = "thm6"
    thm7 = "thm7"
    thm8 = "thm8"
    simpson5 = "simpson5"
    simpson6 = "simpson6"
    simpson7 = "simpson7"
    simpson8 = "simpson8"
    midpoint5 = "midpoint5"
    midpoint6 = "midpoint6"
    midpoint7 = "midpoint7"
    midpoint8 = "midpoint8"
    trapezoid5 = "trapezoid5"
    trapezoid6 = "trapezoid6"
    trapezoid7 = "trapezoid7"
    trapezoid8 = "trapezoid8"
    ostrowski5 = "ostrowski5"
    ostrowski6 = "ostrowski6"
    ostrowski7 = "ostrowski7"
    ostrowski8 = "ostrowski8"
    remark_19_midpoint_pm = "remark_19_midpoint_pm"
    remark_19_midpoint_holder = "remark_19_midpoint_holder"

    @property
    def family(self) -> str:
        """``lemma2``, ``thm4``, ``theorem``, ``simpson``, ... or ``remark``."""
        name = self.value
        if name.startswith("remark"):
            return "remark"
        if name in ("lemma2", "thm4"):
            return name
        if name.startswith("thm"):
            return "theorem"
        return name.rstrip("5678")

    @property
    def parent(self) -> Optional[int]:
        """Number of the theorem a bound or corollary instantiates."""
        if self is Statement.remark_19_midpoint_pm:
            return 5
        if self is Statement.remark_19_midpoint_holder:
            return 6
        last = self.value[-1]
        if self.family in ("theorem", "simpson", "midpoint", "trapezoid", "ostrowski"):
            return int(last)
        return None

    @property
    def min_q_exclusive(self) -> bool:
        """Whether the statement needs ``q > 1`` (Hölder route)."""
        return self.parent in (6, 7, 8)


class Verdict(str, enum.Enum):
    holds = "holds"
    violated = "violated"
    skipped_convexity = "skipped_convexity"
    numeric_fail = "numeric_fail"


#: parameters each statement family actually depends on
USED_PARAMS = {
    "lemma2": ("a", "b", "x", "theta", "lambda", "m"),
    "thm4": ("a", "b", "theta"),
    "theorem": ("a", "b", "x", "theta", "lambda", "alpha", "m", "q", "p"),
    "simpson": ("a", "b", "x", "theta", "lambda", "alpha", "m", "q", "p"),
    "midpoint": ("a", "b", "x", "theta", "lambda", "alpha", "m", "q", "p"),
    "trapezoid": ("a", "b", "x", "theta", "lambda", "alpha", "m", "q", "p"),
    "ostrowski": ("a", "b", "x", "theta", "lambda", "alpha", "m", "q", "p"),
    "remark": ("a", "b", "x", "theta", "lambda", "alpha", "m", "q", "p"),
}


@dataclass(frozen=True)
class VerdictTolerance:
    """A bound holds when ``lhs <= rhs + max(abs_floor, rel * |rhs|)``."""

    rel: float = 1.0e-7
    abs_floor: float = 1.0e-9

    def __call__(self, rhs: float) -> float:
        return max(self.abs_floor, self.rel * abs(rhs))


DEFAULT_VERDICT_TOL = VerdictTolerance()

#: Lemma-type identity check: |lhs - rhs| <= IDENTITY_TOL * max(1, |lhs|)
IDENTITY_TOL = 1.0e-7
#: Hermite-Hadamard chain tolerance, relative to max(1, |middle|)
CHAIN_TOL = 1.0e-9
#: relative agreement required between a remark formula and its corollary
REDUCTION_TOL = 1.0e-9
#: points and safety factor of the synthesized derivative bound M
OSTROWSKI_POINTS = 4096
OSTROWSKI_SAFETY = 1.0 + 1.0e-9


@dataclass(frozen=True)
class KfDecomposition:
    lhs_direct: float
    rhs_identity: float
    boundary_term: float
    fractional_term: float


@dataclass(frozen=True, slots=True)
class VerificationRecord:
    """One checked (function, parameters, statement) triple.

    ``slack`` is ``rhs - lhs``. For ``lemma2`` the verdict compares
    ``|lhs - rhs|`` against the identity tolerance; for ``thm4`` the
    ``lhs`` is the largest gap in the chain ``left <= middle <= right``
    and ``rhs`` is 0.
    """

    function_name: str
    statement: Statement
    params: InequalityParams
    lhs: float
    rhs: float
    slack: float
    verdict: Verdict
    tol_verdict: float
    convexity: Optional[ConvexityVerdict] = None
    notes: tuple[str, ...] = ()
    extras: Mapping[str, float] = field(default_factory=dict)


# }}}

# {{{ helpers


def _log_power(ratio: float, power: float) -> float:
    # ln(ratio)^power for ratio >= 1, with the vanished term exactly 0
    if ratio <= 1.0:
        return 0.0
    return math.log(ratio) ** power


def param_hull(params: InequalityParams) -> tuple[float, float]:
    """Smallest interval holding ``a, b, a^m, b^m`` (and hence ``x^m``)."""
    a, b, m = params.a, params.b, params.m
    return min(a, a**m), max(b, b**m)


def _require_domain(f: FunctionSpec, params: InequalityParams) -> None:
    f.require(*param_hull(params))


@lru_cache(maxsize=1 << 15)
def _fractional_terms(f: FunctionSpec, a: float, b: float, x: float, theta: float,
                      m: float, cfg: QuadratureConfig) -> tuple[float, float]:
    am, bm, xm = a**m, b**m, x**m
    left = hadamard_right(f, am, xm, theta, cfg) if xm > am else 0.0
    right = hadamard_left(f, xm, bm, theta, cfg) if bm > xm else 0.0
    return left, right


def fractional_terms(f: FunctionSpec, params: InequalityParams,
                     cfg: QuadratureConfig = DEFAULT_CONFIG) -> tuple[float, float]:
    r""":math:`(J_{x^m-}^\theta f(a^m), J_{x^m+}^\theta f(b^m))`."""
    _require_domain(f, params)
    p = params
    return _fractional_terms(f, p.a, p.b, p.x, p.theta, p.m, cfg)


@lru_cache(maxsize=1 << 15)
def _identity_terms(f: FunctionSpec, a: float, b: float, x: float, theta: float,
                    lam: float, m: float, cfg: QuadratureConfig) -> tuple[float, float]:
    df = f.df
    la, lb = math.log(x / a), math.log(b / x)

    def side(end: float, log_ratio: float) -> float:
        # t in [0, 1] maps to u = x^{mt} end^{m(1-t)} = end^m (x/end)^{mt}
        log_end = math.log(end)
        log_x = math.log(x)

        def integrand(t):
            u = np.exp(m * (t * log_x + (1.0 - t) * log_end))
            return (t**theta - lam) * np.exp(m * log_ratio * t) * df(u)

        return integrate(integrand, 0.0, 1.0, cfg).value

    a_term = 0.0
    if la > 0:
        a_term = m ** (theta + 1) * a**m * la ** (theta + 1) * side(a, la)
    b_term = 0.0
    if lb > 0:
        b_term = m ** (theta + 1) * b**m * lb ** (theta + 1) * side(b, -lb)
    return a_term, b_term


def kf_identity_terms(f: FunctionSpec, params: InequalityParams,
                      cfg: QuadratureConfig = DEFAULT_CONFIG) -> tuple[float, float]:
    """The two summands of the derivative form; ``K_f = a_term - b_term``."""
    if f.df is None:
        raise ValueError(f"{f.name} has no derivative")
    _require_domain(f, params)
    p = params
    return _identity_terms(f, p.a, p.b, p.x, p.theta, p.lam, p.m, cfg)


def kf_rhs_identity(f: FunctionSpec, params: InequalityParams,
                    cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """``K_f`` through the integrals of ``f'`` (signed kernel, no kink split)."""
    a_term, b_term = kf_identity_terms(f, params, cfg)
    return a_term - b_term


def kf_lhs(f: FunctionSpec, params: InequalityParams,
           cfg: QuadratureConfig = DEFAULT_CONFIG,
           with_identity: bool = True) -> KfDecomposition:
    """``K_f`` from its definition through Hadamard integrals.

    With *with_identity* the derivative form is evaluated as well and stored
    in ``rhs_identity``; otherwise that field is NaN.
    """
    p = params
    left, right = fractional_terms(f, p, cfg)
    m, theta, lam = p.m, p.theta, p.lam
    ln_a = _log_power(p.x / p.a, theta)
    ln_b = _log_power(p.b / p.x, theta)
    fx, fa, fb = (f.value(v) for v in (p.x**m, p.a**m, p.b**m))

    boundary = (
        (1 - lam) * m**theta * (ln_a + ln_b) * fx
        + lam * m**theta * (fa * ln_a + fb * ln_b)
    )
    fractional = gamma(theta + 1) * (left + right)
    rhs = kf_rhs_identity(f, p, cfg) if with_identity else math.nan
    return KfDecomposition(boundary - fractional, rhs, boundary, fractional)


def hh_chain(f: FunctionSpec, a: float, b: float, theta: float,
             cfg: QuadratureConfig = DEFAULT_CONFIG) -> tuple[float, float, float]:
    r"""``(f(sqrt(ab)), middle, (f(a) + f(b)) / 2)`` of the fractional
    Hermite--Hadamard chain, with

    .. math::

        \text{middle} = \frac{\Gamma(\theta + 1)}{2 \ln^\theta(b/a)}
            \left[J_{a+}^\theta f(b) + J_{b-}^\theta f(a)\right].
    """
    if not 0 < a < b:
        raise DomainError(f"expected 0 < a < b, got a = {a}, b = {b}")
    f.require(a, b)
    left = f.value(math.sqrt(a * b))
    j_sum = hadamard_left(f, a, b, theta, cfg) + hadamard_right(f, a, b, theta, cfg)
    middle = gamma(theta + 1) / (2 * math.log(b / a) ** theta) * j_sum
    right = 0.5 * (f.value(a) + f.value(b))
    return left, middle, right


# }}}

# {{{ bounds


def derivative_moments(f: FunctionSpec, params: InequalityParams) -> tuple[float, float, float]:
    """``(|f'(x^m)|^q, |f'(a)|^q, |f'(b)|^q)``."""
    q = params.q
    return tuple(abs(f.deriv(u)) ** q for u in (params.x**params.m, params.a, params.b))


def _sides(params: InequalityParams) -> tuple[float, float]:
    # a^m ln^{theta+1}(x/a) and b^m ln^{theta+1}(b/x), zero when degenerate
    p = params
    return (
        p.a**p.m * _log_power(p.x / p.a, p.theta + 1),
        p.b**p.m * _log_power(p.b / p.x, p.theta + 1),
    )


def _bound5(p: InequalityParams, gx, ga, gb, cfg) -> float:
    sa, sb = _sides(p)
    q, m = p.q, p.m
    total = 0.0
    if sa > 0:
        total += sa * (gx * K.c_k(1, p, cfg) + m * ga * K.c_k(2, p, cfg)) ** (1 / q)
    if sb > 0:
        total += sb * (gx * K.c_k(3, p, cfg) + m * gb * K.c_k(4, p, cfg)) ** (1 / q)
    return m ** (p.theta + 1) * K.c0(p.theta, p.lam) ** (1 - 1 / q) * total


def _bound6(p: InequalityParams, gx, ga, gb, cfg) -> float:
    sa, sb = _sides(p)
    q, m, pp = p.q, p.m, p.holder_p
    total = 0.0
    if sa > 0:
        total += sa * (gx * K.r_k(1, p, cfg) + m * ga * K.r_k(2, p, cfg)) ** (1 / q)
    if sb > 0:
        total += sb * (gx * K.r_k(3, p, cfg) + m * gb * K.r_k(4, p, cfg)) ** (1 / q)
    return m ** (p.theta + 1) * K.r0(p.theta, p.lam, pp) ** (1 / pp) * total


def _bound7(p: InequalityParams, gx, ga, gb, cfg) -> float:
    sa, sb = _sides(p)
    q, m, pp, alpha = p.q, p.m, p.holder_p, p.alpha
    total = 0.0
    if sa > 0:
        mean_a = (gx + m * alpha * ga) / (alpha + 1)
        total += sa * K.t_k(1, p, cfg) ** (1 / pp) * mean_a ** (1 / q)
    if sb > 0:
        mean_b = (gx + m * alpha * gb) / (alpha + 1)
        total += sb * K.t_k(2, p, cfg) ** (1 / pp) * mean_b ** (1 / q)
    return m ** (p.theta + 1) * total


def _bound8(p: InequalityParams, gx, ga, gb, cfg) -> float:
    sa, sb = _sides(p)
    q, m, pp = p.q, p.m, p.holder_p
    v1 = K.v12(1, p.theta, p.lam, p.alpha, q)
    v2 = K.v12(2, p.theta, p.lam, p.alpha, q)
    total = 0.0
    if sa > 0:
        total += sa * K.v34(3, p) ** (1 / pp) * (v1 * gx + m * v2 * ga) ** (1 / q)
    if sb > 0:
        total += sb * K.v34(4, p) ** (1 / pp) * (v1 * gx + m * v2 * gb) ** (1 / q)
    return m ** (p.theta + 1) * total


_BOUNDS = {5: _bound5, 6: _bound6, 7: _bound7, 8: _bound8}


def theorem_bound(n: int, f: FunctionSpec, params: InequalityParams,
                  cfg: QuadratureConfig = DEFAULT_CONFIG,
                  derivative_bound: Optional[float] = None) -> float:
    """Right-hand side of theorem *n* (5 to 8) for ``|K_f|``.

    With *derivative_bound* ``M`` every ``|f'(.)|`` is replaced by ``M``
    (the Ostrowski instantiation).
    """
    if n not in _BOUNDS:
        raise ValueError(f"no bound for theorem {n}")
    if n in (6, 7, 8) and not params.q > 1:
        raise DomainError(f"theorem {n} needs q > 1, got q = {params.q}")
    if derivative_bound is None:
        _require_domain(f, params)
        gx, ga, gb = derivative_moments(f, params)
    else:
        gx = ga = gb = derivative_bound**params.q
    return _BOUNDS[n](params, gx, ga, gb, cfg)


def bound_thm5(f, params, cfg=DEFAULT_CONFIG) -> float:
    """Power-mean bound; at ``q = 1`` the ``C0`` factor has exponent 0."""
    return theorem_bound(5, f, params, cfg)


def bound_thm6(f, params, cfg=DEFAULT_CONFIG) -> float:
    return theorem_bound(6, f, params, cfg)


def bound_thm7(f, params, cfg=DEFAULT_CONFIG) -> float:
    return theorem_bound(7, f, params, cfg)


def bound_thm8(f, params, cfg=DEFAULT_CONFIG) -> float:
    return theorem_bound(8, f, params, cfg)


@lru_cache(maxsize=4096)
def _sup_abs_derivative(f: FunctionSpec, lo: float, hi: float) -> float:
    u = np.geomspace(lo, hi, OSTROWSKI_POINTS)
    return float(np.max(np.abs(f.df(u))))


def derivative_sup(f: FunctionSpec, params: InequalityParams) -> float:
    """Grid supremum of ``|f'|`` over the parameter hull, times a safety factor."""
    lo, hi = param_hull(params)
    return _sup_abs_derivative(f, lo, hi) * OSTROWSKI_SAFETY


# }}}

# {{{ screening


def screen(f: FunctionSpec, statement: Statement, params: InequalityParams,
           n: int = DEFAULT_GRID, tol: float = DEFAULT_TOL) -> ConvexityVerdict:
    """Run the convexity hypothesis of *statement* through the grid check.

    ``thm4`` screens ``f`` itself for GA-convexity on ``[a, b]``; everything
    else screens ``|f'|^q`` for (alpha, m)-GA-convexity on the parameter hull.
    """
    statement = Statement(statement)
    if statement is Statement.lemma2:
        raise ValueError("the identity has no convexity hypothesis")
    if statement is Statement.thm4:
        return check_alpha_m_ga(f, 1.0, 1.0, params.a, params.b, n, tol)
    lo, hi = param_hull(params)
    return check_alpha_m_ga(derivative_power(f, params.q), params.alpha, params.m, lo, hi, n, tol)


# }}}

# {{{ record builders

_NUMERIC_ERRORS = (QuadratureError, EvaluationError, ArithmeticError, FloatingPointError)


def _record(f, statement, params, lhs, rhs, tol, convexity, notes=(), extras=None, verdict=None):
    if verdict is None:
        verdict = Verdict.holds if lhs <= rhs + tol else Verdict.violated
    return VerificationRecord(
        function_name=f.name,
        statement=statement,
        params=params,
        lhs=lhs,
        rhs=rhs,
        slack=rhs - lhs,
        verdict=verdict,
        tol_verdict=tol,
        convexity=convexity,
        notes=tuple(notes),
        extras=dict(extras or {}),
    )


def _skipped(f, statement, params, convexity):
    return _record(f, statement, params, math.nan, math.nan, math.nan, convexity,
                   verdict=Verdict.skipped_convexity)


def _failed(f, statement, params, convexity, exc):
    return _record(f, statement, params, math.nan, math.nan, math.nan, convexity,
                   notes=(f"{type(exc).__name__}: {exc}",), verdict=Verdict.numeric_fail)


def instantiate(statement: Statement, params: InequalityParams) -> InequalityParams:
    """Fix ``x`` and ``lambda`` the way the corollary *statement* does."""
    family = Statement(statement).family
    mid = math.sqrt(params.a * params.b)
    if family == "simpson":
        return params.replace(x=mid, lam=1 / 3)
    if family == "midpoint":
        return params.replace(x=mid, lam=0.0)
    if family == "trapezoid":
        return params.replace(x=mid, lam=1.0)
    if family == "ostrowski":
        return params.replace(lam=0.0)
    if family == "remark":
        return params.replace(x=mid, lam=0.0, theta=1.0, m=1.0)
    if family == "thm4":
        return params.replace(x=mid, lam=0.0, m=1.0)
    return params


def verify(
    statement: Statement | str,
    f: FunctionSpec,
    params: InequalityParams,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    convexity: Optional[ConvexityVerdict] = None,
    screening: bool = True,
    tol: VerdictTolerance = DEFAULT_VERDICT_TOL,
    grid_n: int = DEFAULT_GRID,
) -> VerificationRecord:
    """Check one statement for one function and parameter tuple.

    Corollaries and remarks first :func:`instantiate` their fixed ``x`` and
    ``lambda``. The convexity hypothesis is screened unless a verdict is
    passed in or *screening* is off; a failed screen yields a
    ``skipped_convexity`` record without evaluating either side.
    """
    statement = Statement(statement)
    params = instantiate(statement, params)
    _require_domain(f, params)

    try:
        if statement is not Statement.lemma2 and screening and convexity is None:
            convexity = screen(f, statement, params, n=grid_n)
        if convexity is not None and not convexity.certified:
            return _skipped(f, statement, params, convexity)
        return _BUILDERS[statement.family](statement, f, params, cfg, convexity, tol)
    except _NUMERIC_ERRORS as exc:
        return _failed(f, statement, params, convexity, exc)


def _verify_lemma2(statement, f, params, cfg, convexity, tol):
    dec = kf_lhs(f, params, cfg)
    lhs, rhs = dec.lhs_direct, dec.rhs_identity
    tol_id = IDENTITY_TOL * max(1.0, abs(lhs))
    verdict = Verdict.holds if abs(lhs - rhs) <= tol_id else Verdict.violated
    extras = {"boundary_term": dec.boundary_term, "fractional_term": dec.fractional_term}
    return _record(f, statement, params, lhs, rhs, tol_id, convexity,
                   extras=extras, verdict=verdict)


def _verify_thm4(statement, f, params, cfg, convexity, tol):
    left, middle, right = hh_chain(f, params.a, params.b, params.theta, cfg)
    gap = max(left - middle, middle - right)
    tol_chain = CHAIN_TOL * max(1.0, abs(middle))
    extras = {"left": left, "middle": middle, "right": right}
    return _record(f, statement, params, gap, 0.0, tol_chain, convexity, extras=extras)


def _verify_theorem(statement, f, params, cfg, convexity, tol):
    lhs = abs(kf_lhs(f, params, cfg, with_identity=False).lhs_direct)
    rhs = theorem_bound(statement.parent, f, params, cfg)
    return _record(f, statement, params, lhs, rhs, tol(rhs), convexity)


def corollary_scale(params: InequalityParams) -> float:
    r""":math:`2^{\theta - 1} / (m \ln(b/a))^\theta`, turning ``K_f`` at
    ``x = sqrt(ab)`` into the corollary's left-hand side."""
    return 2 ** (params.theta - 1) / (params.m * math.log(params.b / params.a)) ** params.theta


def _verify_sharp_corollary(statement, f, params, cfg, convexity, tol):
    # Simpson, midpoint and trapezoid: x = sqrt(ab), fixed lambda
    p = params
    scale = corollary_scale(p)
    left, right = fractional_terms(f, p, cfg)
    averaged = scale * gamma(p.theta + 1) * (left + right)
    fa, fx, fb = (f.value(v) for v in (p.a**p.m, p.x**p.m, p.b**p.m))
    family = statement.family
    if family == "simpson":
        rule = (fa + 4 * fx + fb) / 6
    elif family == "midpoint":
        rule = fx
    else:
        rule = (fa + fb) / 2
    lhs = abs(rule - averaged)
    rhs = scale * theorem_bound(statement.parent, f, p, cfg)
    return _record(f, statement, p, lhs, rhs, tol(rhs), convexity)


def _ostrowski_printed(n: int, p: InequalityParams, M: float, cfg) -> Optional[float]:
    # the two corollaries whose printed right-hand side is not a verbatim
    # instantiation of the parent theorem
    sa, sb = _sides(p)
    q, m = p.q, p.m
    if n == 6:
        pp = p.holder_p
        total = 0.0
        if sa > 0:
            total += sa * (K.r_k(1, p, cfg) + m * K.r_k(2, p, cfg)) ** (1 / q)
        if sb > 0:
            total += sb * (K.r_k(3, p, cfg) + K.r_k(4, p, cfg)) ** (1 / q)
        return m * M / (p.theta * pp + 1) ** (1 / pp) * total
    if n == 7:
        pp = p.holder_p
        total = 0.0
        if sa > 0:
            total += sa * K.t_k(1, p, cfg) ** (1 / pp)
        if sb > 0:
            total += sb * K.t_k(2, p, cfg) ** (1 / pp)
        return m * M * ((1 + m * p.alpha) / (p.alpha + 1)) ** (1 / q) * total
    return None


def _verify_ostrowski(statement, f, params, cfg, convexity, tol):
    p = params
    n = statement.parent
    left, right = fractional_terms(f, p, cfg)
    fx = f.value(p.x**p.m)
    ln_a = _log_power(p.x / p.a, p.theta)
    ln_b = _log_power(p.b / p.x, p.theta)
    lhs = abs((ln_a + ln_b) * fx - gamma(p.theta + 1) / p.m**p.theta * (left + right))

    M = derivative_sup(f, p)
    rhs = theorem_bound(n, f, p, cfg, derivative_bound=M) / p.m**p.theta

    notes = []
    extras = {"M": M}
    printed = _ostrowski_printed(n, p, M, cfg)
    if printed is not None:
        extras["printed_rhs"] = printed
        if abs(printed - rhs) > 1e-12 * max(abs(rhs), abs(printed)):
            notes.append(
                "printed corollary differs from the parent instantiation "
                f"(printed {printed!r}, parent {rhs!r})"
            )
    return _record(f, statement, p, lhs, rhs, tol(rhs), convexity, notes, extras)


def _verify_remark(statement, f, params, cfg, convexity, tol):
    p = params
    if statement is Statement.remark_19_midpoint_pm:
        rhs = remark_pm_rhs(f, p.a, p.b, p.alpha, p.q)
    else:
        rhs = remark_holder_rhs(f, p.a, p.b, p.alpha, p.q)
    lhs = remark_lhs(f, p.a, p.b)

    parent = Statement.midpoint5 if statement is Statement.remark_19_midpoint_pm else Statement.midpoint6
    cor = _verify_sharp_corollary(parent, f, instantiate(parent, p), cfg, convexity, tol)
    scale = max(abs(rhs), abs(cor.rhs))
    delta = abs(rhs - cor.rhs) / scale if scale > 0 else 0.0
    extras = {
        "corollary_rhs": cor.rhs,
        "corollary_lhs": cor.lhs,
        "reduction_delta": delta,
    }
    holds = lhs <= rhs + tol(rhs) and delta <= REDUCTION_TOL
    notes = () if delta <= REDUCTION_TOL else (f"reduction mismatch {delta:.3e}",)
    return _record(f, statement, p, lhs, rhs, tol(rhs), convexity, notes, extras,
                   verdict=Verdict.holds if holds else Verdict.violated)


_BUILDERS = {
    "lemma2": _verify_lemma2,
    "thm4": _verify_thm4,
    "theorem": _verify_theorem,
    "simpson": _verify_sharp_corollary,
    "midpoint": _verify_sharp_corollary,
    "trapezoid": _verify_sharp_corollary,
    "ostrowski": _verify_ostrowski,
    "remark": _verify_remark,
}


def corollary(statement: Statement | str, f: FunctionSpec, base_params: InequalityParams,
              cfg: QuadratureConfig = DEFAULT_CONFIG, **kwargs) -> VerificationRecord:
    """Verify a Simpson, midpoint, trapezoid or Ostrowski corollary."""
    statement = Statement(statement)
    if statement.family not in ("simpson", "midpoint", "trapezoid", "ostrowski"):
        raise ValueError(f"{statement.value} is not a corollary")
    return verify(statement, f, base_params, cfg, **kwargs)


# }}}

# {{{ remark formulas, on an independent quadrature path

_JACOBI_NODES = 48
_LEGENDRE_NODES = 64


@lru_cache(maxsize=64)
def _jacobi_rule(power: float) -> tuple[np.ndarray, np.ndarray]:
    x, w = roots_jacobi(_JACOBI_NODES, 0.0, power)
    # map the weight (1 + x)^power on [-1, 1] to t^power on [0, 1]
    return 0.5 * (1.0 + x), w * 0.5 ** (power + 1)


def _moment(power: float, rate: float) -> float:
    r""":math:`\int_0^1 t^{power} e^{rate\, t}\,dt` by Gauss--Jacobi."""
    t, w = _jacobi_rule(power)
    return float(w @ np.exp(rate * t))


def remark_lhs(f: FunctionSpec, a: float, b: float) -> float:
    r""":math:`|f(\sqrt{ab}) - \frac{1}{\ln b - \ln a}\int_a^b f(x)/x\,dx|`,
    integrated in the variable ``s = ln x`` by Gauss--Legendre."""
    s, w = np.polynomial.legendre.leggauss(_LEGENDRE_NODES)
    la, lb = math.log(a), math.log(b)
    half = 0.5 * (lb - la)
    nodes = np.exp(la + half * (s + 1.0))
    mean = half * float(w @ f.f(nodes)) / (lb - la)
    return abs(f.value(math.sqrt(a * b)) - mean)


def remark_pm_rhs(f: FunctionSpec, a: float, b: float, alpha: float, q: float) -> float:
    """Midpoint bound for alpha-GA-convex ``|f'|^q`` (power-mean form, ``q >= 1``)."""
    L = math.log(b / a)
    g_mid = abs(f.deriv(math.sqrt(a * b))) ** q
    ga, gb = abs(f.deriv(a)) ** q, abs(f.deriv(b)) ** q
    up, down = 0.5 * q * L, -0.5 * q * L
    c1 = _moment(1 + alpha, up)
    c2 = _moment(1.0, up) - c1
    c3 = _moment(1 + alpha, down)
    c4 = _moment(1.0, down) - c3
    brace = a * (g_mid * c1 + ga * c2) ** (1 / q) + b * (g_mid * c3 + gb * c4) ** (1 / q)
    return L * 0.5 ** (3 - 1 / q) * brace


def remark_holder_rhs(f: FunctionSpec, a: float, b: float, alpha: float, q: float) -> float:
    """Midpoint bound for alpha-GA-convex ``|f'|^q`` (Hölder form, ``q > 1``)."""
    if not q > 1:
        raise DomainError(f"the Hölder form needs q > 1, got {q}")
    L = math.log(b / a)
    g_mid = abs(f.deriv(math.sqrt(a * b))) ** q
    ga, gb = abs(f.deriv(a)) ** q, abs(f.deriv(b)) ** q
    up, down = 0.5 * q * L, -0.5 * q * L
    r1 = _moment(alpha, up)
    r2 = _moment(0.0, up) - r1
    r3 = _moment(alpha, down)
    r4 = _moment(0.0, down) - r3
    brace = a * (g_mid * r1 + ga * r2) ** (1 / q) + b * (g_mid * r3 + gb * r4) ** (1 / q)
    return L / 4 * ((q - 1) / (2 * q - 1)) ** (1 - 1 / q) * brace


# }}}
