r"""Gamma, Beta and the Gauss hypergeometric function on the real line.

:func:`hyp2f1` ships the Euler integral representation

.. math::

    {}_2F_1(a, b; c; z) = \frac{1}{B(b, c - b)} \int_0^1
        t^{b - 1} (1 - t)^{c - b - 1} (1 - z t)^{-a} \,\mathrm{d}t,
    \qquad c > b > 0,\ |z| < 1,

and :func:`hyp2f1_series` sums the Gauss series, which serves as an
independent check for :math:`|z| \le 0.9`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from gaconvex.errors import DomainError
from gaconvex.quad import QuadratureConfig, integrate

# largest x with a finite double-precision Gamma(x)
GAMMA_MAX_ARG = 171.62437695630272

# internal accuracy for the Euler integral, well below the 1e-10 contract
_HYP2F1_CONFIG = QuadratureConfig(rel_tol=1.0e-13, abs_tol=1.0e-300, max_subdivisions=4000)


@dataclass(frozen=True)
class SpecFunResult:
    value: float
    est_abs_error: float


def _check_positive(name: str, x: float) -> None:
    if not (math.isfinite(x) and x > 0):
        raise DomainError(f"{name} must be positive and finite, got {x!r}")


def gamma(x: float) -> float:
    """Gamma function for real ``x > 0``."""
    x = float(x)
    _check_positive("x", x)
    if x > GAMMA_MAX_ARG:
        raise OverflowError(f"gamma({x}) exceeds the double-precision range")
    # CPython's math.gamma is a Lanczos approximation (g ~ 6.02, 13 terms)
    return math.gamma(x)


def lgamma(x: float) -> float:
    x = float(x)
    _check_positive("x", x)
    return math.lgamma(x)


def beta(x: float, y: float) -> float:
    r"""Beta function :math:`B(x, y) = \Gamma(x)\Gamma(y) / \Gamma(x + y)`."""
    x = float(x)
    y = float(y)
    _check_positive("x", x)
    _check_positive("y", y)
    if x + y < 150.0:
        return math.gamma(x) * math.gamma(y) / math.gamma(x + y)
    return math.exp(math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y))


def _check_hyp2f1(a: float, b: float, c: float, z: float) -> None:
    if not all(math.isfinite(v) for v in (a, b, c, z)):
        raise DomainError(f"hyp2f1 arguments must be finite: {(a, b, c, z)}")
    if not b > 0:
        raise DomainError(f"hyp2f1 requires b > 0, got b = {b}")
    if not c > b:
        raise DomainError(f"hyp2f1 requires c > b, got b = {b}, c = {c}")
    if not abs(z) < 1:
        raise DomainError(f"hyp2f1 requires |z| < 1, got z = {z}")


def hyp2f1_with_error(a: float, b: float, c: float, z: float) -> SpecFunResult:
    """Euler-integral evaluation of :math:`{}_2F_1` with an error estimate.

    The integral is split at ``t = 1/2``. On each half an algebraic endpoint
    factor with exponent below zero is absorbed by a power substitution
    (``s = t**b`` near 0, ``s = (1 - t)**(c - b)`` near 1), so the adaptive
    rule only ever sees bounded integrands.
    """
    a, b, c, z = float(a), float(b), float(c), float(z)
    _check_hyp2f1(a, b, c, z)
    if z == 0.0 or a == 0.0:
        return SpecFunResult(1.0, 0.0)

    e = c - b

    def weight(t):
        return (1.0 - z * t) ** (-a)

    if b < 1:
        inv_b = 1.0 / b

        def left(s):
            t = s**inv_b
            return (1.0 - t) ** (e - 1) * weight(t) * inv_b

        left_hi = 0.5**b
    else:
        def left(t):
            return t ** (b - 1) * (1.0 - t) ** (e - 1) * weight(t)

        left_hi = 0.5

    if e < 1:
        inv_e = 1.0 / e

        def right(s):
            t = 1.0 - s**inv_e
            return t ** (b - 1) * weight(t) * inv_e

        right_lo, right_hi = 0.0, 0.5**e
    else:
        def right(t):
            return t ** (b - 1) * (1.0 - t) ** (e - 1) * weight(t)

        right_lo, right_hi = 0.5, 1.0

    r_left = integrate(left, 0.0, left_hi, _HYP2F1_CONFIG)
    r_right = integrate(right, right_lo, right_hi, _HYP2F1_CONFIG)
    norm = beta(b, e)
    value = (r_left.value + r_right.value) / norm
    error = (r_left.est_error + r_right.est_error) / norm + 4 * np.finfo(float).eps * abs(value)
    return SpecFunResult(value, error)


def hyp2f1(a: float, b: float, c: float, z: float) -> float:
    """Gauss hypergeometric function for ``c > b > 0`` and ``|z| < 1``."""
    return hyp2f1_with_error(a, b, c, z).value


def hyp2f1_series(a: float, b: float, c: float, z: float, max_terms: int = 20000) -> float:
    r"""Sum the Gauss series :math:`\sum_n (a)_n (b)_n / (c)_n \, z^n / n!`.

    Only meant for moderate ``|z|``; convergence is geometric in ``|z|``.
    """
    a, b, c, z = float(a), float(b), float(c), float(z)
    _check_hyp2f1(a, b, c, z)

    total = 1.0
    term = 1.0
    small = 0
    for n in range(max_terms):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        total += term
        if term == 0.0:
            return total
        if abs(term) <= 1e-17 * abs(total):
            small += 1
            if small >= 3:
                return total
        else:
            small = 0

    raise ArithmeticError(f"hyp2f1 series did not converge in {max_terms} terms (z = {z})")
