"""Scalar test functions on a positive domain, paired with their derivatives."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from gaconvex.errors import DomainError
from gaconvex.expr import compile_expr, diff, parse, to_string

ArrayFunction = Callable[[np.ndarray], np.ndarray]

#: default lower end of an "unbounded" positive domain
POSITIVE_LO = 1.0e-300


@dataclass(frozen=True)
class FunctionSpec:
    """A function ``f`` with derivative ``df`` on ``[domain_lo, domain_hi]``.

    Both callables take and return numpy arrays. ``convexity_hints`` lists
    ``(alpha, m, q)`` triples for which ``|f'|^q`` is known to be
    (alpha, m)-GA-convex; they are informational and never bypass screening.
    """

    name: str
    f: ArrayFunction
    df: Optional[ArrayFunction]
    domain_lo: float = POSITIVE_LO
    domain_hi: float = math.inf
    convexity_hints: tuple[tuple[float, float, float], ...] = ()
    source: Optional[str] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if not self.domain_lo > 0:
            raise DomainError(f"domain_lo must be positive, got {self.domain_lo}")
        if not self.domain_hi > self.domain_lo:
            raise DomainError(f"empty domain [{self.domain_lo}, {self.domain_hi}]")

    def __call__(self, u):
        return self.f(np.asarray(u, dtype=float))

    def covers(self, lo: float, hi: float) -> bool:
        return self.domain_lo <= lo and hi <= self.domain_hi

    def require(self, lo: float, hi: float) -> None:
        if not self.covers(lo, hi):
            raise DomainError(
                f"{self.name}: [{lo:g}, {hi:g}] is outside the domain "
                f"[{self.domain_lo:g}, {self.domain_hi:g}]"
            )

    def value(self, u: float) -> float:
        return float(self.f(np.float64(u)))

    def deriv(self, u: float) -> float:
        if self.df is None:
            raise ValueError(f"{self.name} has no derivative")
        return float(self.df(np.float64(u)))


def from_expr(src: str, domain_lo: float = POSITIVE_LO, domain_hi: float = math.inf,
              name: Optional[str] = None) -> FunctionSpec:
    """Build a :class:`FunctionSpec` from an expression in ``u``."""
    e = parse(src)
    return FunctionSpec(
        name=name or src,
        f=compile_expr(e),
        df=compile_expr(diff(e)),
        domain_lo=domain_lo,
        domain_hi=domain_hi,
        source=to_string(e),
    )


def derivative_power(spec: FunctionSpec, q: float) -> FunctionSpec:
    """The function ``|f'|^q`` on the domain of *spec*."""
    if spec.df is None:
        raise ValueError(f"{spec.name} has no derivative")
    df = spec.df

    def g(u):
        return np.abs(df(u)) ** q

    return FunctionSpec(
        name=f"|d/du {spec.name}|^{q:g}",
        f=g,
        df=None,
        domain_lo=spec.domain_lo,
        domain_hi=spec.domain_hi,
    )


# {{{ catalog


def _constant(c: float) -> ArrayFunction:
    def f(u):
        return np.full(np.shape(u), c)

    return f


def _power(c: float) -> FunctionSpec:
    return FunctionSpec(
        name="u" if c == 1 else f"u^{c:g}",
        f=lambda u: np.asarray(u, dtype=float) ** c,
        df=lambda u: c * np.asarray(u, dtype=float) ** (c - 1),
        convexity_hints=((1.0, 1.0, 1.0),),
    )


CATALOG: dict[str, FunctionSpec] = {
    "1": FunctionSpec(
        name="1", f=_constant(1.0), df=_constant(0.0),
        convexity_hints=((1.0, 1.0, 1.0),),
    ),
    "u": _power(1.0),
    "u^2": _power(2.0),
    "u^3": _power(3.0),
    "ln(u)": FunctionSpec(
        name="ln(u)",
        f=np.log,
        df=lambda u: 1.0 / np.asarray(u, dtype=float),
        convexity_hints=((1.0, 1.0, 1.0),),
    ),
    "exp(u/4)": FunctionSpec(
        name="exp(u/4)",
        f=lambda u: np.exp(np.asarray(u, dtype=float) / 4),
        df=lambda u: 0.25 * np.exp(np.asarray(u, dtype=float) / 4),
        domain_lo=0.5,
        domain_hi=2.0,
        convexity_hints=((1.0, 1.0, 1.0),),
    ),
    "u^-1": _power(-1.0),
}

#: the functions swept by default
DEFAULT_FUNCTIONS = ("u", "u^2", "u^3", "ln(u)", "exp(u/4)", "u^-1")


def get_function(ref) -> FunctionSpec:
    """Resolve a catalog name, an expression string or a table
    ``{"expr": ..., "lo": ..., "hi": ..., "name": ...}``."""
    if isinstance(ref, FunctionSpec):
        return ref
    if isinstance(ref, dict):
        return from_expr(
            ref["expr"],
            domain_lo=float(ref.get("lo", POSITIVE_LO)),
            domain_hi=float(ref.get("hi", math.inf)),
            name=ref.get("name"),
        )
    if ref in CATALOG:
        return CATALOG[ref]
    return from_expr(ref)


# }}}
