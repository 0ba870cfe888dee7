r"""Grid screening of (alpha, m)-GA-convexity.

A function :math:`g` is (alpha, m)-GA-convex when

.. math::

    g(x^t y^{m(1 - t)}) \le t^\alpha g(x) + m (1 - t^\alpha) g(y)

for all admissible :math:`x, y` and :math:`t \in [0, 1]`. The check below
samples the inequality on a tensor grid; it certifies nothing beyond the
grid, but it reliably flags the common failures and returns a witness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from gaconvex.errors import DomainError
from gaconvex.functions import FunctionSpec

DEFAULT_GRID = 32
DEFAULT_TOL = 1.0e-9


@dataclass(frozen=True)
class ConvexityVerdict:
    """Outcome of :func:`check_alpha_m_ga`.

    ``worst_violation`` is the largest scaled excess
    ``(lhs - rhs) / max(1, |rhs|)`` over the grid, clamped at zero when the
    function is certified.
    """

    certified: bool
    worst_violation: float
    witness: Optional[tuple[float, float, float]]
    grid_density: int
    tol: float = DEFAULT_TOL
    lo: float = math.nan
    hi: float = math.nan


def evaluation_hull(lo: float, hi: float, m: float) -> tuple[float, float]:
    """Range of ``x^t y^(m(1-t))`` over ``x, y in [lo, hi]``, ``t in [0, 1]``.

    The logarithm is affine in ``t`` and monotone in ``x`` and ``y``, so the
    extremes sit at the corners ``t = 0`` and ``t = 1``.
    """
    return min(lo, lo**m), max(hi, hi**m)


def check_alpha_m_ga(
    g: FunctionSpec,
    alpha: float,
    m: float,
    lo: float,
    hi: float,
    n: int = DEFAULT_GRID,
    tol: float = DEFAULT_TOL,
) -> ConvexityVerdict:
    """Screen *g* for (alpha, m)-GA-convexity on ``[lo, hi]``.

    ``x`` and ``y`` run over *n* geometrically spaced points and ``t`` over
    *n* uniform points including both endpoints.

    :raises DomainError: if the parameters are invalid or the points
        ``x^t y^(m(1-t))`` leave the domain of *g*.
    """
    if not 0 < alpha <= 1:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    if not 0 < m <= 1:
        raise DomainError(f"m must lie in (0, 1], got {m}")
    if not 0 < lo < hi:
        raise DomainError(f"expected 0 < lo < hi, got [{lo}, {hi}]")
    if n < 8:
        raise DomainError(f"grid density must be at least 8, got {n}")

    hull_lo, hull_hi = evaluation_hull(lo, hi, m)
    g.require(hull_lo, hull_hi)

    xs = np.geomspace(lo, hi, n)
    xs[0], xs[-1] = lo, hi
    ts = np.linspace(0.0, 1.0, n)

    gx = np.asarray(g.f(xs), dtype=float)
    x = xs[:, None, None]
    y = xs[None, :, None]
    t = ts[None, None, :]

    points = x**t * y ** (m * (1.0 - t))
    lhs = np.asarray(g.f(points), dtype=float)
    ta = t**alpha
    rhs = ta * gx[:, None, None] + m * (1.0 - ta) * gx[None, :, None]
    if not (np.all(np.isfinite(lhs)) and np.all(np.isfinite(rhs))):
        raise DomainError(f"{g.name} is not finite on the screening grid")

    excess = (lhs - rhs) / np.maximum(1.0, np.abs(rhs))
    flat = int(np.argmax(excess))
    worst = float(excess.flat[flat])

    if worst <= tol:
        return ConvexityVerdict(True, max(worst, 0.0), None, n, tol, lo, hi)

    i, j, k = np.unravel_index(flat, excess.shape)
    witness = (float(xs[i]), float(xs[j]), float(ts[k]))
    return ConvexityVerdict(False, worst, witness, n, tol, lo, hi)
