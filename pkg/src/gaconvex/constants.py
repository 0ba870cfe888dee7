r"""Bound constants of the power-mean and Hölder estimates.

Every constant is an integral over :math:`t \in [0, 1]` of a product of

* the kernel :math:`|t^\theta - \lambda|^s` (``s`` is 1, ``p`` or ``q``),
* an exponential :math:`r^{c t}` with ``r`` equal to ``x/a`` or ``x/b``,
* a weight :math:`1`, :math:`t^\alpha` or :math:`1 - t^\alpha`.

Closed forms (:func:`c0`, :func:`r0`, :func:`v12`, :func:`v34`) are
evaluated with Beta and :math:`{}_2F_1`; everything else goes through
adaptive quadrature split at the kink :math:`t^* = \lambda^{1/\theta}`.
The ``*_quadrature`` functions integrate the defining integrals directly
and double as oracles for the closed forms.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from gaconvex.errors import DomainError
from gaconvex.quad import DEFAULT_CONFIG, QuadratureConfig, integrate
from gaconvex.specfun import beta, hyp2f1

CONJUGATE_TOL = 1.0e-12


@dataclass(frozen=True)
class InequalityParams:
    """Parameter tuple ``(a, b, x, theta, lambda, alpha, m, q, p)``.

    ``p`` defaults to the conjugate exponent ``q / (q - 1)``; it stays
    ``None`` when ``q == 1``.
    """

    a: float
    b: float
    x: float
    theta: float
    lam: float
    alpha: float = 1.0
    m: float = 1.0
    q: float = 1.0
    p: Optional[float] = None

    def __post_init__(self) -> None:
        if not 0 < self.a < self.b:
            raise DomainError(f"expected 0 < a < b, got a = {self.a}, b = {self.b}")
        if not self.a <= self.x <= self.b:
            raise DomainError(f"x = {self.x} is outside [{self.a}, {self.b}]")
        if not (math.isfinite(self.theta) and self.theta > 0):
            raise DomainError(f"theta must be positive, got {self.theta}")
        if not 0 <= self.lam <= 1:
            raise DomainError(f"lambda must lie in [0, 1], got {self.lam}")
        if not 0 < self.alpha <= 1:
            raise DomainError(f"alpha must lie in (0, 1], got {self.alpha}")
        if not 0 < self.m <= 1:
            raise DomainError(f"m must lie in (0, 1], got {self.m}")
        if not (math.isfinite(self.q) and self.q >= 1):
            raise DomainError(f"q must be at least 1, got {self.q}")

        if self.p is None:
            if self.q > 1:
                object.__setattr__(self, "p", self.q / (self.q - 1))
        else:
            if not self.p > 1:
                raise DomainError(f"p must exceed 1, got {self.p}")
            if abs(1 / self.p + 1 / self.q - 1) > CONJUGATE_TOL:
                raise DomainError(f"p = {self.p} and q = {self.q} are not conjugate")

    @property
    def holder_p(self) -> float:
        if self.p is None:
            raise DomainError("the Hölder estimates need q > 1")
        return self.p

    def replace(self, **changes) -> "InequalityParams":
        fields = {
            "a": self.a, "b": self.b, "x": self.x, "theta": self.theta,
            "lam": self.lam, "alpha": self.alpha, "m": self.m, "q": self.q,
        }
        if "q" not in changes:
            fields["p"] = self.p
        fields.update(changes)
        return InequalityParams(**fields)


class Route(str, enum.Enum):
    closed_form = "closed_form"
    quadrature = "quadrature"


class Tag(str, enum.Enum):
    C0 = "C0"
    C1 = "C1"
    C2 = "C2"
    C3 = "C3"
    C4 = "C4"
    R0 = "R0"
    R1 = "R1"
    R2 = "R2"
    R3 = "R3"
    R4 = "R4"
    T1 = "T1"
    T2 = "T2"
    V1 = "V1"
    V2 = "V2"
    V3 = "V3"
    V4 = "V4"


@dataclass(frozen=True)
class BoundConstants:
    tag: Tag
    value: float
    route: Route
    oracle_delta: Optional[float] = None


def _check_theta_lambda(theta: float, lam: float) -> None:
    if not (math.isfinite(theta) and theta > 0):
        raise DomainError(f"theta must be positive, got {theta}")
    if not 0 <= lam <= 1:
        raise DomainError(f"lambda must lie in [0, 1], got {lam}")


# {{{ generic kernel integral


@lru_cache(maxsize=1 << 16)
def kernel_integral(
    theta: float,
    lam: float,
    power: float,
    rate: float,
    alpha: float,
    weight: str,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
) -> float:
    r"""Integrate :math:`|t^\theta - \lambda|^s e^{c t} w(t)` over ``[0, 1]``.

    *weight* is ``"one"``, ``"t^a"`` (:math:`t^\alpha`) or ``"1-t^a"``.
    With ``power == 0`` the kernel factor is dropped.
    """
    if weight == "one":
        def w(t):
            return 1.0
    elif weight == "t^a":
        def w(t):
            return t**alpha
    elif weight == "1-t^a":
        def w(t):
            return 1.0 - t**alpha
    else:
        raise ValueError(f"unknown weight: {weight!r}")

    if power == 0:
        def integrand(t):
            return np.exp(rate * t) * w(t)

        return integrate(integrand, 0.0, 1.0, cfg).value

    def integrand(t):
        return np.abs(t**theta - lam) ** power * np.exp(rate * t) * w(t)

    kink = lam ** (1.0 / theta)
    total = 0.0
    if kink > 0.0:
        total += integrate(integrand, 0.0, kink, cfg).value
    if kink < 1.0:
        total += integrate(integrand, kink, 1.0, cfg).value
    return total


# }}}

# {{{ power-mean constants


def c0(theta: float, lam: float) -> float:
    r"""Closed form of :math:`\int_0^1 |t^\theta - \lambda| \,\mathrm{d}t`."""
    _check_theta_lambda(theta, lam)
    return (2 * theta * lam ** (1 + 1 / theta) + 1) / (theta + 1) - lam


def c0_quadrature(theta: float, lam: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    _check_theta_lambda(theta, lam)
    return kernel_integral(theta, lam, 1.0, 0.0, 1.0, "one", cfg)


def _ratio_rate(k: int, params: InequalityParams, power: float) -> float:
    ratio = params.x / params.a if k in (1, 2) else params.x / params.b
    return power * params.m * math.log(ratio)


def c_k(k: int, params: InequalityParams, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    r""":math:`C_k`: :math:`\int_0^1 |t^\theta - \lambda| r^{q m t} w(t)\,dt`.

    ``r = x/a`` for ``k`` in {1, 2} and ``x/b`` for ``k`` in {3, 4};
    ``w = t^alpha`` for odd ``k`` and ``1 - t^alpha`` for even ``k``.
    """
    if k not in (1, 2, 3, 4):
        raise ValueError(f"k must be 1..4, got {k}")
    rate = _ratio_rate(k, params, params.q)
    weight = "t^a" if k % 2 else "1-t^a"
    return kernel_integral(params.theta, params.lam, 1.0, rate, params.alpha, weight, cfg)


# }}}

# {{{ Hölder constants


def r0(theta: float, lam: float, p: float) -> float:
    r"""Closed form of :math:`\int_0^1 |t^\theta - \lambda|^p \,\mathrm{d}t`."""
    _check_theta_lambda(theta, lam)
    if not p > 1:
        raise DomainError(f"p must exceed 1, got {p}")
    if 1 - lam == 1:
        # includes lambda so small that z = 1 - lambda rounds to 1; the
        # neglected change is O(p * lambda)
        return 1 / (theta * p + 1)
    if lam == 1:
        return beta(1 / theta, p + 1) / theta
    head = lam ** ((theta * p + 1) / theta) / theta * beta(1 / theta, p + 1)
    tail = (1 - lam) ** (p + 1) / (theta * (p + 1)) * hyp2f1(1 - 1 / theta, 1, p + 2, 1 - lam)
    return head + tail


def r0_quadrature(theta: float, lam: float, p: float,
                  cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    _check_theta_lambda(theta, lam)
    return kernel_integral(theta, lam, p, 0.0, 1.0, "one", cfg)


def r_k(k: int, params: InequalityParams, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    r""":math:`R_k`: :math:`\int_0^1 r^{m q t} w(t)\,dt` with ``r`` and ``w`` as in :func:`c_k`."""
    if k not in (1, 2, 3, 4):
        raise ValueError(f"k must be 1..4, got {k}")
    rate = _ratio_rate(k, params, params.q)
    weight = "t^a" if k % 2 else "1-t^a"
    return kernel_integral(1.0, 0.0, 0.0, rate, params.alpha, weight, cfg)


def t_k(k: int, params: InequalityParams, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    r""":math:`T_k`: :math:`\int_0^1 |t^\theta - \lambda|^p r^{m p t}\,dt`, ``r = x/a`` or ``x/b``."""
    if k not in (1, 2):
        raise ValueError(f"k must be 1 or 2, got {k}")
    p = params.holder_p
    rate = _ratio_rate(1 if k == 1 else 3, params, p)
    return kernel_integral(params.theta, params.lam, p, rate, 1.0, "one", cfg)


def _v1(theta: float, lam: float, alpha: float, q: float) -> float:
    s = (alpha + 1) / theta
    if 1 - lam == 1:
        return 1 / (theta * q + alpha + 1)
    if lam == 1:
        return beta(s, q + 1) / theta
    head = lam ** ((theta * q + alpha + 1) / theta) / theta * beta(s, q + 1)
    tail = (1 - lam) ** (q + 1) / (theta * (q + 1)) * hyp2f1(1 - s, 1, q + 2, 1 - lam)
    return head + tail


def _v2(theta: float, lam: float, alpha: float, q: float) -> float:
    s = (alpha + 1) / theta
    if 1 - lam == 1:
        return 1 / (theta * q + 1) - 1 / (theta * q + alpha + 1)
    if lam == 1:
        return beta(1 / theta, q + 1) / theta - beta(s, q + 1) / theta
    head = (
        lam ** ((theta * q + 1) / theta) / theta * beta(1 / theta, q + 1)
        - lam ** ((theta * q + alpha + 1) / theta) / theta * beta(s, q + 1)
    )
    z = 1 - lam
    tail = (1 - lam) ** (q + 1) / (theta * (q + 1)) * (
        hyp2f1(1 - 1 / theta, 1, q + 2, z) - hyp2f1(1 - s, 1, q + 2, z)
    )
    return head + tail


def v12(which: int, theta: float, lam: float, alpha: float, q: float) -> float:
    r""":math:`V_1 = \int_0^1 |t^\theta - \lambda|^q t^\alpha\,dt` or
    :math:`V_2 = \int_0^1 |t^\theta - \lambda|^q (1 - t^\alpha)\,dt` in closed form."""
    _check_theta_lambda(theta, lam)
    if not 0 < alpha <= 1:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    if not q > 1:
        raise DomainError(f"q must exceed 1, got {q}")
    if which == 1:
        return _v1(theta, lam, alpha, q)
    if which == 2:
        return _v2(theta, lam, alpha, q)
    raise ValueError(f"which must be 1 or 2, got {which}")


def v12_quadrature(which: int, theta: float, lam: float, alpha: float, q: float,
                   cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    _check_theta_lambda(theta, lam)
    weight = {1: "t^a", 2: "1-t^a"}[which]
    return kernel_integral(theta, lam, q, 0.0, alpha, weight, cfg)


#: below this |exponent| the exponential mean uses its Taylor polynomial
V34_SERIES_THRESHOLD = 1.0e-8


def exp_mean(w: float) -> float:
    r""":math:`\int_0^1 e^{w t}\,dt = (e^w - 1)/w`, equal to 1 at ``w = 0``."""
    if abs(w) < V34_SERIES_THRESHOLD:
        return 1 + w / 2 + w * w / 6
    return math.expm1(w) / w


def v34(which: int, params: InequalityParams) -> float:
    r""":math:`V_3 = \int_0^1 (x/a)^{p m t}\,dt` or :math:`V_4 = \int_0^1 (x/b)^{p m t}\,dt`."""
    if which not in (3, 4):
        raise ValueError(f"which must be 3 or 4, got {which}")
    return exp_mean(_ratio_rate(1 if which == 3 else 3, params, params.holder_p))


def v34_quadrature(which: int, params: InequalityParams,
                   cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    rate = _ratio_rate(1 if which == 3 else 3, params, params.holder_p)
    return kernel_integral(1.0, 0.0, 0.0, rate, 1.0, "one", cfg)


# }}}

# {{{ dispatch


def evaluate_constant(tag: Tag | str, params: InequalityParams,
                      cfg: QuadratureConfig = DEFAULT_CONFIG,
                      with_oracle: bool = True) -> BoundConstants:
    """Evaluate one constant, cross-checking closed forms by quadrature.

    Constants without a closed form are reported on the quadrature route and
    carry no oracle delta.
    """
    tag = Tag(tag)
    th, lam, alpha, q = params.theta, params.lam, params.alpha, params.q

    closed = None
    oracle = None
    if tag is Tag.C0:
        closed = c0(th, lam)
        oracle = (lambda: c0_quadrature(th, lam, cfg))
    elif tag is Tag.R0:
        p = params.holder_p
        closed = r0(th, lam, p)
        oracle = (lambda: r0_quadrature(th, lam, p, cfg))
    elif tag in (Tag.V1, Tag.V2):
        which = 1 if tag is Tag.V1 else 2
        closed = v12(which, th, lam, alpha, q)
        oracle = (lambda: v12_quadrature(which, th, lam, alpha, q, cfg))
    elif tag in (Tag.V3, Tag.V4):
        which = 3 if tag is Tag.V3 else 4
        closed = v34(which, params)
        oracle = (lambda: v34_quadrature(which, params, cfg))

    if closed is not None:
        delta = abs(closed - oracle()) if with_oracle else None
        return BoundConstants(tag, closed, Route.closed_form, delta)

    k = int(tag.value[1])
    if tag.value[0] == "C":
        value = c_k(k, params, cfg)
    elif tag.value[0] == "R":
        value = r_k(k, params, cfg)
    else:
        value = t_k(k, params, cfg)
    return BoundConstants(tag, value, Route.quadrature)


# }}}


def constant_routes(tag: Tag | str, params: InequalityParams,
                    cfg: QuadratureConfig = DEFAULT_CONFIG) -> tuple[Optional[float], float]:
    """``(closed form or None, quadrature)`` values of one constant."""
    tag = Tag(tag)
    th, lam, alpha, q = params.theta, params.lam, params.alpha, params.q
    if tag is Tag.C0:
        return c0(th, lam), c0_quadrature(th, lam, cfg)
    if tag is Tag.R0:
        p = params.holder_p
        return r0(th, lam, p), r0_quadrature(th, lam, p, cfg)
    if tag in (Tag.V1, Tag.V2):
        which = 1 if tag is Tag.V1 else 2
        return v12(which, th, lam, alpha, q), v12_quadrature(which, th, lam, alpha, q, cfg)
    if tag in (Tag.V3, Tag.V4):
        which = 3 if tag is Tag.V3 else 4
        return v34(which, params), v34_quadrature(which, params, cfg)
    return None, evaluate_constant(tag, params, cfg).value
