from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gaconvex.convexity import check_alpha_m_ga, evaluation_hull
from gaconvex.errors import DomainError
from gaconvex.functions import CATALOG, derivative_power, from_expr


def brute_force_violation(g, alpha, m, lo, hi, n=64):
    # plain loops over a uniform (not geometric) grid
    worst = -np.inf
    xs = np.linspace(lo, hi, n)
    for x in xs:
        for y in xs:
            for t in np.linspace(0, 1, n):
                lhs = g.value(x**t * y ** (m * (1 - t)))
                rhs = t**alpha * g.value(x) + m * (1 - t**alpha) * g.value(y)
                worst = max(worst, (lhs - rhs) / max(1.0, abs(rhs)))
    return worst


def test_square_certified():
    v = check_alpha_m_ga(CATALOG["u^2"], 1.0, 1.0, 0.5, 2.0)
    assert v.certified and v.witness is None and 0.0 <= v.worst_violation <= v.tol
    assert brute_force_violation(CATALOG["u^2"], 1.0, 1.0, 0.5, 2.0, n=24) <= 1e-12


@pytest.mark.parametrize("c", [-1.0, 0.5, 1.0, 2.0, 3.0])
def test_powers_are_ga_convex(c):
    assert check_alpha_m_ga(from_expr(f"u^{c}"), 1.0, 1.0, 0.5, 4.0).certified


def test_log_derivative_fails_for_m_half():
    g = derivative_power(CATALOG["ln(u)"], 2.0)
    v = check_alpha_m_ga(g, 1.0, 0.5, 0.5, 4.0)
    assert not v.certified
    x, y, t = v.witness
    lhs = g.value(x**t * y ** (0.5 * (1 - t)))
    rhs = t * g.value(x) + 0.5 * (1 - t) * g.value(y)
    assert lhs > rhs
    assert brute_force_violation(g, 1.0, 0.5, 0.5, 4.0, n=16) > 0


def test_log_concave_function_fails():
    v = check_alpha_m_ga(from_expr("4 - ln(u)^2"), 1.0, 1.0, 0.5, 4.0)
    assert not v.certified and v.worst_violation > 1e-3


@given(st.sampled_from(["u", "u^2", "u^3", "u^-1", "ln(u)"]),
       st.sampled_from([0.25, 0.5, 1.0]), st.sampled_from([0.5, 0.9, 1.0]),
       st.sampled_from([1.0, 2.0]))
def test_agrees_with_brute_force(name, alpha, m, q):
    g = derivative_power(CATALOG[name], q)
    v = check_alpha_m_ga(g, alpha, m, 0.5, 2.0, n=16)
    brute = brute_force_violation(g, alpha, m, 0.5, 2.0, n=12)
    if brute > 1e-6:
        assert not v.certified
    if v.certified:
        assert brute <= 1e-6


def test_evaluation_hull():
    assert evaluation_hull(0.25, 4.0, 0.5) == (0.25, 4.0)
    assert evaluation_hull(2.0, 4.0, 0.5) == (2.0**0.5, 4.0)


def test_hull_outside_domain():
    with pytest.raises(DomainError):
        check_alpha_m_ga(CATALOG["exp(u/4)"], 1.0, 0.5, 0.4, 2.0)


@pytest.mark.parametrize("kw", [
    {"alpha": 0.0}, {"alpha": 1.5}, {"m": 0.0}, {"m": 1.1}, {"n": 4}, {"lo": 2.0},
])
def test_invalid_arguments(kw):
    args = {"alpha": 1.0, "m": 1.0, "lo": 0.5, "hi": 2.0, "n": 16}
    args.update(kw)
    with pytest.raises(DomainError):
        check_alpha_m_ga(CATALOG["u"], **args)
