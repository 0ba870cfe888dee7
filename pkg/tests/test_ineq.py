from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from gaconvex import constants as K
from gaconvex.constants import InequalityParams
from gaconvex.errors import DomainError
from gaconvex.functions import CATALOG, DEFAULT_FUNCTIONS, from_expr
from gaconvex.ineq import (
    Statement,
    Verdict,
    bound_thm5,
    bound_thm6,
    bound_thm7,
    bound_thm8,
    corollary,
    corollary_scale,
    derivative_sup,
    hh_chain,
    instantiate,
    kf_identity_terms,
    kf_lhs,
    kf_rhs_identity,
    param_hull,
    remark_holder_rhs,
    remark_lhs,
    remark_pm_rhs,
    screen,
    theorem_bound,
    verify,
)

SQUARE = CATALOG["u^2"]
LOG = CATALOG["ln(u)"]
FIXTURE = InequalityParams(a=1.0, b=4.0, x=2.0, theta=1.5, lam=1 / 3, alpha=1.0, m=0.5, q=2.0)

# K_f and the four bounds at FIXTURE for u^2, from 30-digit mpmath quadrature
# of the defining integrals (no code shared with the package)
KF_FIXTURE = 0.0223191617458453378743892743238
BOUND_FIXTURES = {
    5: 0.19084727540503631,
    6: 0.23099938973446541,
    7: 0.21780794696483809,
    8: 0.20979672725872975,
}


def identity_holds(dec):
    return abs(dec.lhs_direct - dec.rhs_identity) <= 1e-7 * max(1.0, abs(dec.lhs_direct))


# {{{ K_f


@pytest.mark.parametrize("c", ["1", "3.5"])
@pytest.mark.parametrize("theta", [0.3, 1.0, 2.5])
@pytest.mark.parametrize("lam", [0.0, 0.4, 1.0])
@pytest.mark.parametrize("x", [1.0, 1.7, 3.0])
def test_kf_of_constant_vanishes(c, theta, lam, x):
    f = from_expr(c)
    p = InequalityParams(a=1.0, b=3.0, x=x, theta=theta, lam=lam)
    dec = kf_lhs(f, p)
    assert abs(dec.lhs_direct) <= 1e-12 * max(1.0, dec.boundary_term)
    assert dec.rhs_identity == 0.0
    assert dec.lhs_direct == dec.boundary_term - dec.fractional_term


def test_kf_log_symmetric_case():
    p = InequalityParams(a=1.0, b=math.e**2, x=math.e, theta=1.0, lam=0.0)
    dec = kf_lhs(LOG, p)
    assert dec.boundary_term == pytest.approx(2.0, rel=1e-15)
    assert abs(dec.lhs_direct) < 1e-13
    assert abs(dec.rhs_identity) < 1e-13


def test_kf_fixture():
    dec = kf_lhs(SQUARE, FIXTURE)
    assert dec.lhs_direct == pytest.approx(KF_FIXTURE, rel=1e-9)
    assert dec.rhs_identity == pytest.approx(KF_FIXTURE, rel=1e-7)


def test_degenerate_x_endpoints():
    for x in (1.0, 4.0):
        p = FIXTURE.replace(x=x, theta=0.4)
        dec = kf_lhs(SQUARE, p)
        assert identity_holds(dec)
    a_term, b_term = kf_identity_terms(SQUARE, FIXTURE.replace(x=1.0))
    assert a_term == 0.0 and b_term != 0.0


def test_kf_requires_domain():
    f = CATALOG["exp(u/4)"]
    with pytest.raises(DomainError):
        kf_lhs(f, InequalityParams(a=0.3, b=1.8, x=1.0, theta=1.0, lam=0.0, m=0.5))


catalog_s = st.sampled_from(DEFAULT_FUNCTIONS)
params_s = st.builds(
    lambda a, ratio, s, theta, lam, m: InequalityParams(
        a=a, b=a * ratio, x=a * ratio**s, theta=theta, lam=lam, m=m),
    st.floats(0.5, 2.0), st.floats(1.1, 4.0), st.floats(0.0, 1.0),
    st.floats(0.2, 3.0), st.floats(0.0, 1.0), st.floats(0.3, 1.0),
)


@given(catalog_s, params_s)
def test_lemma2_identity(name, p):
    f = CATALOG[name]
    lo, hi = param_hull(p)
    assume(f.covers(lo, hi))
    assert identity_holds(kf_lhs(f, p))


def test_identity_symmetry():
    # f(u) = ln^2(u / sqrt(ab)) is symmetric under u -> ab/u
    f = from_expr("ln(u/2)^2")
    p = InequalityParams(a=1.0, b=4.0, x=2.0, theta=1.3, lam=0.25)
    a_term, b_term = kf_identity_terms(f, p)
    assert abs(a_term) == pytest.approx(abs(b_term), rel=1e-10)


# }}}

# {{{ Hermite-Hadamard chain


def test_chain_examples():
    assert hh_chain(from_expr("2"), 1.0, 4.0, 0.7) == pytest.approx((2.0, 2.0, 2.0), rel=1e-13)
    left, middle, right = hh_chain(LOG, 1.0, 4.0, 0.7)
    assert left == pytest.approx(math.log(2), rel=1e-14)
    assert middle == pytest.approx(math.log(2), rel=1e-12)
    assert right == pytest.approx(math.log(2), rel=1e-14)
    left, middle, right = hh_chain(CATALOG["u"], 1.0, 4.0, 1.0)
    assert left == pytest.approx(2.0)
    assert middle == pytest.approx(3 / math.log(4), rel=1e-13)
    assert right == pytest.approx(2.5)


@given(st.sampled_from(["u", "u^2", "u^3", "u^-1", "ln(u)"]),
       st.floats(0.3, 3.0), st.floats(1.1, 6.0), st.floats(0.2, 4.0))
def test_chain_ordering(name, a, ratio, theta):
    f = CATALOG[name]
    b = a * ratio
    assert screen(f, Statement.thm4, InequalityParams(a=a, b=b, x=a, theta=theta, lam=0)).certified
    left, middle, right = hh_chain(f, a, b, theta)
    tol = 1e-9 * max(1.0, abs(middle))
    assert left <= middle + tol and middle <= right + tol


# }}}

# {{{ bounds


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_bound_fixtures(n):
    assert theorem_bound(n, SQUARE, FIXTURE) == pytest.approx(BOUND_FIXTURES[n], rel=1e-9)
    assert abs(kf_lhs(SQUARE, FIXTURE).lhs_direct) <= BOUND_FIXTURES[n]


@pytest.mark.parametrize("bound", [bound_thm5, bound_thm6, bound_thm7, bound_thm8])
def test_bounds_vanish_for_constants(bound):
    assert bound(from_expr("3"), FIXTURE) == 0.0


def test_holder_bounds_need_q_above_one():
    with pytest.raises(DomainError):
        bound_thm6(SQUARE, FIXTURE.replace(q=1.0))


def test_bound5_at_q_one_drops_c0():
    p = FIXTURE.replace(q=1.0)
    sa = p.a**p.m * math.log(p.x / p.a) ** (p.theta + 1)
    sb = p.b**p.m * math.log(p.b / p.x) ** (p.theta + 1)
    gx, ga, gb = (abs(SQUARE.deriv(u)) for u in (p.x**p.m, p.a, p.b))
    expected = p.m ** (p.theta + 1) * (
        sa * (gx * K.c_k(1, p) + p.m * ga * K.c_k(2, p))
        + sb * (gx * K.c_k(3, p) + p.m * gb * K.c_k(4, p)))
    assert bound_thm5(SQUARE, p) == pytest.approx(expected, rel=1e-14)


def test_bound5_continuity_in_q():
    at_one = bound_thm5(SQUARE, FIXTURE.replace(q=1.0))
    above = bound_thm5(SQUARE, FIXTURE.replace(q=1 + 1e-6))
    assert above == pytest.approx(at_one, rel=1e-4)


def test_bound7_only_b_term_at_x_equal_a():
    p = FIXTURE.replace(x=1.0)
    sb = p.b**p.m * math.log(p.b) ** (p.theta + 1)
    gx, gb = abs(SQUARE.deriv(1.0)) ** 2, abs(SQUARE.deriv(4.0)) ** 2
    expected = p.m ** (p.theta + 1) * sb * K.t_k(2, p) ** 0.5 * ((gx + p.m * gb) / 2) ** 0.5
    assert bound_thm7(SQUARE, p) == pytest.approx(expected, rel=1e-14)


def test_bound8_lambda_zero_branch():
    assert K.v12(1, 1.5, 0.0, 0.5, 2.0) == 1 / (1.5 * 2 + 0.5 + 1)
    assert bound_thm8(SQUARE, FIXTURE.replace(lam=0.0)) > 0


ineq_params_s = st.builds(
    lambda a, ratio, s, theta, lam, alpha, m, q: InequalityParams(
        a=a, b=a * ratio, x=a * ratio**s, theta=theta, lam=lam, alpha=alpha, m=m, q=q),
    st.floats(0.5, 2.0), st.floats(1.1, 4.0), st.floats(0.0, 1.0), st.floats(0.2, 3.0),
    st.floats(0.0, 1.0), st.sampled_from([0.25, 0.5, 1.0]), st.sampled_from([0.8, 1.0]),
    st.floats(1.0, 4.0),
)


@given(catalog_s, ineq_params_s, st.sampled_from(["thm5", "thm6", "thm7", "thm8"]))
def test_theorem_chains(name, p, statement):
    f = CATALOG[name]
    lo, hi = param_hull(p)
    assume(f.covers(lo, hi))
    assume(statement == "thm5" or p.q > 1)
    record = verify(statement, f, p)
    assert record.verdict in (Verdict.holds, Verdict.skipped_convexity)
    if record.verdict is Verdict.holds:
        assert record.lhs <= record.rhs + 1e-7 * max(1.0, record.rhs)


# }}}

# {{{ corollaries and records


def test_trapezoid_of_constant():
    p = InequalityParams(a=1.0, b=3.0, x=2.0, theta=0.8, lam=0.0, q=2.0)
    r = corollary("trapezoid6", from_expr("5"), p)
    assert r.verdict is Verdict.holds
    assert abs(r.lhs) < 1e-13 and r.rhs == 0.0


def test_simpson8_fixture():
    p = InequalityParams(a=1.0, b=4.0, x=2.0, theta=1.0, lam=0.0, alpha=1.0, m=1.0, q=2.0)
    r = corollary("simpson8", SQUARE, p)
    assert r.verdict is Verdict.holds
    assert r.params.x == 2.0 and r.params.lam == 1 / 3
    # 11/2 - 15 / (2 ln 4), and the stated right-hand side evaluated in mpmath
    assert r.lhs == pytest.approx(0.0898935966663872224, rel=1e-10)
    assert r.rhs == pytest.approx(2.41126712021755358, rel=1e-10)


@pytest.mark.parametrize("statement", [s for s in Statement if s.family in
                                       ("simpson", "midpoint", "trapezoid")])
def test_corollary_is_theorem_instantiation(statement):
    base = InequalityParams(a=0.5, b=2.0, x=0.7, theta=1.7, lam=0.9, alpha=0.5, m=0.9, q=3.0)
    record = verify(statement, SQUARE, base, screening=False)
    p = instantiate(statement, base)
    assert p.x == 1.0
    assert record.rhs == corollary_scale(p) * theorem_bound(statement.parent, SQUARE, p)
    # the corollary's left-hand side is the scaled |K_f| at its (x, lambda)
    lhs = corollary_scale(p) * abs(kf_lhs(SQUARE, p).lhs_direct)
    assert record.lhs == pytest.approx(lhs, rel=1e-10, abs=1e-13)


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_ostrowski(n):
    p = InequalityParams(a=0.5, b=2.0, x=0.9, theta=0.7, lam=0.6, alpha=1.0, m=0.7, q=2.0)
    r = verify(f"ostrowski{n}", SQUARE, p, screening=False)
    M = derivative_sup(SQUARE, p)
    assert M == pytest.approx(4.0, rel=1e-8) and M > 4.0
    assert r.extras["M"] == M
    assert r.params.lam == 0.0
    q = instantiate(Statement(f"ostrowski{n}"), p)
    assert r.lhs == pytest.approx(abs(kf_lhs(SQUARE, q).lhs_direct) / q.m**q.theta, rel=1e-10)
    assert r.lhs <= r.rhs
    if n == 6:
        # the printed corollary omits m on one term; with m < 1 the forms differ
        assert r.notes and r.extras["printed_rhs"] > r.rhs
    if n == 7:
        assert r.extras["printed_rhs"] == pytest.approx(r.rhs, rel=1e-12)


@given(st.floats(0.3, 2.0), st.floats(1.2, 5.0), st.sampled_from([0.25, 0.5, 1.0]),
       st.floats(1.0, 4.0), st.sampled_from(["u", "u^2", "u^3", "ln(u)", "u^-1"]))
def test_remark_reductions(a, ratio, alpha, q, name):
    f = CATALOG[name]
    b = a * ratio
    mid = math.sqrt(a * b)
    p = InequalityParams(a=a, b=b, x=mid, theta=1.0, lam=0.0, alpha=alpha, q=q)
    pm = verify("midpoint5", f, p, screening=False)
    assert remark_pm_rhs(f, a, b, alpha, q) == pytest.approx(pm.rhs, rel=1e-9)
    assert remark_lhs(f, a, b) == pytest.approx(pm.lhs, rel=1e-9, abs=1e-13)
    if q > 1:
        holder = verify("midpoint6", f, p, screening=False)
        assert remark_holder_rhs(f, a, b, alpha, q) == pytest.approx(holder.rhs, rel=1e-9)


def test_remark_records():
    p = InequalityParams(a=1.0, b=3.0, x=1.0, theta=2.0, lam=0.5, alpha=1.0, m=0.5, q=2.0)
    for statement in ("remark_19_midpoint_pm", "remark_19_midpoint_holder"):
        r = verify(statement, SQUARE, p)
        assert r.params.theta == 1.0 and r.params.m == 1.0
        assert r.verdict is Verdict.holds
        assert r.extras["reduction_delta"] <= 1e-9


def test_skipped_when_screening_fails():
    p = InequalityParams(a=0.5, b=2.0, x=1.0, theta=1.0, lam=0.0, alpha=1.0, m=0.5, q=2.0)
    r = verify("thm6", LOG, p)
    assert r.verdict is Verdict.skipped_convexity
    assert not r.convexity.certified and r.convexity.witness is not None
    assert math.isnan(r.lhs) and math.isnan(r.slack)


def test_numeric_failure_is_recorded():
    f = from_expr("1/(u - 1.5)")
    p = InequalityParams(a=1.0, b=2.0, x=1.2, theta=1.0, lam=0.0, q=2.0)
    r = verify("thm6", f, p, screening=False)
    assert r.verdict is Verdict.numeric_fail and r.notes


def test_verdict_and_slack_consistent():
    r = verify("thm5", SQUARE, FIXTURE.replace(m=1.0))
    assert r.slack == r.rhs - r.lhs
    assert (r.verdict is Verdict.holds) == (r.lhs <= r.rhs + r.tol_verdict)


def test_lemma2_record():
    r = verify("lemma2", SQUARE, FIXTURE)
    assert r.verdict is Verdict.holds and r.convexity is None
    assert r.extras["boundary_term"] - r.extras["fractional_term"] == r.lhs


def test_statement_metadata():
    assert Statement.simpson7.parent == 7 and Statement.simpson7.family == "simpson"
    assert Statement.thm5.family == "theorem" and not Statement.thm5.min_q_exclusive
    assert Statement.remark_19_midpoint_holder.parent == 6
    assert Statement.lemma2.parent is None
    assert len(Statement) == 24


# }}}
