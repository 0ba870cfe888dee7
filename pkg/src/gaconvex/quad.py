r"""Adaptive quadrature and the Hadamard fractional integral operators.

The workhorse is a global adaptive Gauss--Kronrod (10/21) scheme in the
style of QUADPACK's ``QAG``: the interval with the largest error estimate is
bisected until the summed estimate meets the tolerance.  Integrands are
called with numpy arrays and must be vectorized.

The Hadamard integrals of order :math:`\theta`

.. math::

    J_{a+}^\theta f(x) = \frac{1}{\Gamma(\theta)} \int_a^x
        \left(\ln\frac{x}{t}\right)^{\theta - 1} f(t) \frac{\mathrm{d}t}{t},
    \qquad
    J_{b-}^\theta f(x) = \frac{1}{\Gamma(\theta)} \int_x^b
        \left(\ln\frac{t}{x}\right)^{\theta - 1} f(t) \frac{\mathrm{d}t}{t}

have a weakly singular kernel for :math:`\theta < 1`.  With
:math:`u = \ln(x/t)` and then :math:`u = v^{1/\theta}` the weight is absorbed
exactly, leaving the bounded integrand :math:`f(x e^{-v^{1/\theta}})` on
:math:`[0, \ln^\theta(x/a)]`.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Literal, Union

import numpy as np

from gaconvex.errors import DomainError, QuadratureError

ArrayFunction = Callable[[np.ndarray], Union[np.ndarray, float]]
HadamardMethod = Literal["auto", "substitution", "log", "raw"]

# {{{ Gauss-Kronrod 10/21 rule

# QUADPACK qk21 abscissae (non-negative half) and weights
_XGK = np.array([
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077685008604140,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
])
_WG = np.array([
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
])

NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_WEIGHTS = np.zeros(21)
GAUSS_WEIGHTS[1:10:2] = _WG
GAUSS_WEIGHTS[11:20:2] = _WG[::-1]

_EPMACH = np.finfo(float).eps
_UFLOW = np.finfo(float).tiny

# }}}


@dataclass(frozen=True)
class QuadratureConfig:
    """Accuracy targets shared by every numeric integration."""

    rel_tol: float = 1.0e-10
    abs_tol: float = 1.0e-12
    max_subdivisions: int = 2000

    def __post_init__(self) -> None:
        if not self.rel_tol > 0:
            raise ValueError(f"rel_tol must be positive: {self.rel_tol}")
        if not self.abs_tol > 0:
            raise ValueError(f"abs_tol must be positive: {self.abs_tol}")
        if self.max_subdivisions < 1:
            raise ValueError(f"max_subdivisions must be >= 1: {self.max_subdivisions}")


DEFAULT_CONFIG = QuadratureConfig()


@dataclass(frozen=True)
class QuadResult:
    value: float
    est_error: float
    subdivisions_used: int


def _evaluate(f: ArrayFunction, x: np.ndarray) -> np.ndarray:
    y = np.asarray(f(x), dtype=float)
    if y.shape != x.shape:
        y = np.broadcast_to(y, x.shape)
    if not np.all(np.isfinite(y)):
        bad = x[~np.isfinite(y)].ravel()[0]
        raise QuadratureError(f"integrand is not finite at t = {bad!r}")
    return y


def _gk21(f: ArrayFunction, lo: np.ndarray, hi: np.ndarray):
    """Apply the 21-point rule to every interval ``[lo[i], hi[i]]`` at once."""
    center = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    x = center[:, None] + half[:, None] * NODES[None, :]
    fx = _evaluate(f, x)

    resk = fx @ KRONROD_WEIGHTS
    resg = fx @ GAUSS_WEIGHTS
    reskh = 0.5 * resk
    resabs = np.abs(fx) @ KRONROD_WEIGHTS
    resasc = np.abs(fx - reskh[:, None]) @ KRONROD_WEIGHTS

    ahalf = np.abs(half)
    value = resk * half
    resabs = resabs * ahalf
    resasc = resasc * ahalf
    err = np.abs((resk - resg) * half)

    # QUADPACK error scaling and round-off floor
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = resasc * np.minimum(1.0, (200.0 * err / resasc) ** 1.5)
    err = np.where((resasc != 0.0) & (err != 0.0), scaled, err)
    floor = 50.0 * _EPMACH * resabs
    err = np.where(resabs > _UFLOW / (50.0 * _EPMACH), np.maximum(floor, err), err)
    return value, err


def integrate(
    f: ArrayFunction,
    lo: float,
    hi: float,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
) -> QuadResult:
    """Integrate the vectorized function *f* over ``[lo, hi]``.

    Integrable endpoint singularities are fine: the rule never evaluates *f*
    at the endpoints.

    :raises DomainError: if ``lo > hi`` or a bound is not finite.
    :raises QuadratureError: if the tolerance is not met within
        ``cfg.max_subdivisions`` bisections.
    """
    lo = float(lo)
    hi = float(hi)
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise DomainError(f"integration bounds must be finite: [{lo}, {hi}]")
    if lo > hi:
        raise DomainError(f"lower bound exceeds upper bound: {lo} > {hi}")
    if lo == hi:
        return QuadResult(0.0, 0.0, 0)

    value, err = _gk21(f, np.array([lo]), np.array([hi]))
    total = float(value[0])
    total_err = float(err[0])

    def tolerance(v: float) -> float:
        return max(cfg.abs_tol, cfg.rel_tol * abs(v))

    if total_err <= tolerance(total):
        return QuadResult(total, total_err, 0)

    # max-heap on error; entries are (-err, lo, hi, value)
    heap = [(-total_err, lo, hi, total)]
    frozen_value = 0.0
    frozen_err = 0.0
    nsplit = 0
    while heap:
        if total_err <= tolerance(total):
            break
        if nsplit >= cfg.max_subdivisions:
            raise QuadratureError(
                f"no convergence after {nsplit} subdivisions on [{lo}, {hi}] "
                f"(estimate {total!r}, error {total_err:.3e})",
                value=total, error=total_err,
            )

        neg_err, a, b, v = heapq.heappop(heap)
        mid = 0.5 * (a + b)
        if not (a < mid < b):
            # interval at machine resolution: keep its contribution as is
            frozen_value += v
            frozen_err += -neg_err
            continue

        values, errs = _gk21(f, np.array([a, mid]), np.array([mid, b]))
        nsplit += 1
        heapq.heappush(heap, (-float(errs[0]), a, mid, float(values[0])))
        heapq.heappush(heap, (-float(errs[1]), mid, b, float(values[1])))

        total = math.fsum([frozen_value] + [item[3] for item in heap])
        total_err = frozen_err + math.fsum(-item[0] for item in heap)

    if total_err > tolerance(total):
        raise QuadratureError(
            f"round-off limits accuracy on [{lo}, {hi}] "
            f"(estimate {total!r}, error {total_err:.3e})",
            value=total, error=total_err,
        )

    return QuadResult(total, total_err, nsplit)


def integrate_value(f: ArrayFunction, lo: float, hi: float,
                    cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    return integrate(f, lo, hi, cfg).value


# {{{ Hadamard fractional integrals


def _as_callable(f) -> ArrayFunction:
    return getattr(f, "f", f)


def _check_order(theta: float) -> None:
    if not (math.isfinite(theta) and theta > 0):
        raise DomainError(f"order must be positive: theta = {theta}")


def _hadamard(f: ArrayFunction, x: float, length: float, sign: float,
              theta: float, cfg: QuadratureConfig, method: HadamardMethod) -> float:
    # integrate over u = |ln(t/x)| in [0, length], with t = x * exp(sign * u)
    if method == "auto":
        method = "substitution" if theta < 1 else "log"

    if method == "substitution":
        upper = length**theta
        inv = 1.0 / theta

        def integrand(v):
            return f(x * np.exp(sign * v**inv))

        return integrate(integrand, 0.0, upper, cfg).value / math.gamma(theta + 1)

    if method == "log":
        def integrand(u):
            return u ** (theta - 1) * f(x * np.exp(sign * u))

        return integrate(integrand, 0.0, length, cfg).value / math.gamma(theta)

    if method == "raw":
        end = x * math.exp(sign * length)
        if sign < 0:
            def integrand(t):
                return np.log(x / t) ** (theta - 1) * f(t) / t

            return integrate(integrand, end, x, cfg).value / math.gamma(theta)

        def integrand(t):
            return np.log(t / x) ** (theta - 1) * f(t) / t

        return integrate(integrand, x, end, cfg).value / math.gamma(theta)

    raise ValueError(f"unknown method: {method!r}")


def hadamard_left(
    f,
    a: float,
    x: float,
    theta: float,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    method: HadamardMethod = "auto",
) -> float:
    r"""Evaluate :math:`J_{a+}^\theta f(x)` for ``0 < a < x``.

    *f* is a vectorized callable or a
    :class:`~gaconvex.functions.FunctionSpec`. ``method="auto"`` uses the
    singularity-removing substitution for :math:`\theta < 1` and the
    logarithmic variable :math:`u = \ln(x/t)` otherwise; ``"raw"`` integrates
    the kernel in the original variable and is only sensible for
    :math:`\theta \ge 1`.
    """
    _check_order(theta)
    if not 0 < a < x:
        raise DomainError(f"expected 0 < a < x, got a = {a}, x = {x}")
    return _hadamard(_as_callable(f), x, math.log(x / a), -1.0, theta, cfg, method)


def hadamard_right(
    f,
    x: float,
    b: float,
    theta: float,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    method: HadamardMethod = "auto",
) -> float:
    r"""Evaluate :math:`J_{b-}^\theta f(x)` for ``0 < x < b``.

    Mirror image of :func:`hadamard_left`; the kernel singularity sits at
    :math:`t = x`.
    """
    _check_order(theta)
    if not 0 < x < b:
        raise DomainError(f"expected 0 < x < b, got x = {x}, b = {b}")
    return _hadamard(_as_callable(f), x, math.log(b / x), 1.0, theta, cfg, method)


# }}}
