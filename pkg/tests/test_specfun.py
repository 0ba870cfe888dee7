from __future__ import annotations

import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gaconvex.errors import DomainError
from gaconvex.specfun import (
    GAMMA_MAX_ARG,
    beta,
    gamma,
    hyp2f1,
    hyp2f1_series,
    hyp2f1_with_error,
    lgamma,
)


def rel(x, y):
    return abs(x - y) / max(abs(y), 1e-300)


# {{{ gamma


def test_gamma_examples():
    assert gamma(1.0) == 1.0
    assert gamma(5.0) == 24.0
    assert rel(gamma(0.5), math.sqrt(math.pi)) < 1e-15


@pytest.mark.parametrize("x", np.geomspace(1e-3, 170, 41))
def test_gamma_against_mpmath(x):
    assert rel(gamma(x), float(mpmath.gamma(x))) < 1e-13


@given(st.floats(0.1, 10.0))
def test_gamma_recurrence(x):
    assert abs(gamma(x + 1) - x * gamma(x)) <= 1e-12 * gamma(x + 1)


@pytest.mark.parametrize("x", [0.0, -1.0, -0.5, math.nan, math.inf])
def test_gamma_domain(x):
    with pytest.raises(DomainError):
        gamma(x)


def test_gamma_overflow():
    with pytest.raises(OverflowError):
        gamma(GAMMA_MAX_ARG + 1)


def test_lgamma_large():
    assert rel(lgamma(500.0), float(mpmath.loggamma(500))) < 1e-14


# }}}

# {{{ beta


def test_beta_examples():
    assert beta(1, 1) == pytest.approx(1.0, rel=1e-15)
    assert beta(1, 4) == pytest.approx(0.25, rel=1e-15)
    assert beta(2, 3) == pytest.approx(1 / 12, rel=1e-14)


@given(st.floats(1e-3, 5.0), st.floats(1e-3, 5.0))
def test_beta_symmetry(x, y):
    assert rel(beta(x, y), beta(y, x)) <= 1e-12


@pytest.mark.parametrize("x, y", [(0.3, 0.7), (2.5, 4.0), (0.5, 120.0), (90.0, 95.0)])
def test_beta_against_integral(x, y):
    from scipy.integrate import quad

    expected = float(mpmath.beta(x, y))
    assert rel(beta(x, y), expected) < 1e-12
    if x >= 1 and y >= 1 and x + y < 20:
        value, _ = quad(lambda t: t ** (x - 1) * (1 - t) ** (y - 1), 0, 1, epsabs=0, epsrel=1e-13)
        assert rel(beta(x, y), value) < 1e-12


@pytest.mark.parametrize("x, y", [(0.0, 1.0), (1.0, -2.0)])
def test_beta_domain(x, y):
    with pytest.raises(DomainError):
        beta(x, y)


# }}}

# {{{ hyp2f1


def test_hyp2f1_examples():
    assert hyp2f1(0.3, 1.2, 2.7, 0.0) == 1.0
    assert hyp2f1(0.0, 1.0, 3.0, 0.7) == 1.0
    assert rel(hyp2f1(1, 1, 2, 0.5), 2 * math.log(2)) < 1e-14


@pytest.mark.parametrize("z", np.round(np.arange(0.1, 1.0, 0.1), 1))
def test_hyp2f1_log_identity(z):
    assert rel(hyp2f1(1, 1, 2, z), -math.log1p(-z) / z) <= 1e-10


hyp_params = st.tuples(
    st.floats(-3.0, 3.0),
    st.floats(0.05, 4.0),
    st.floats(0.05, 4.0),
    st.floats(-0.9, 0.9),
)


@given(hyp_params)
def test_hyp2f1_series_vs_integral(args):
    a, b, gap, z = args
    c = b + gap
    assert rel(hyp2f1(a, b, c, z), hyp2f1_series(a, b, c, z)) <= 1e-9


@given(hyp_params)
def test_hyp2f1_against_mpmath(args):
    a, b, gap, z = args
    c = b + gap
    assert rel(hyp2f1(a, b, c, z), float(mpmath.hyp2f1(a, b, c, z))) <= 1e-10


@given(st.floats(0.1, 3.0), st.floats(0.1, 3.0), st.floats(0.1, 3.0))
def test_hyp2f1_monotone_in_z(a, b, gap):
    zs = np.linspace(0.0, 0.95, 20)
    values = [hyp2f1(a, b, b + gap, z) for z in zs]
    assert all(v1 <= v2 * (1 + 1e-12) for v1, v2 in zip(values, values[1:]))


def test_hyp2f1_error_estimate():
    res = hyp2f1_with_error(0.5, 1.0, 4.0, 0.99)
    assert res.est_abs_error >= 0 and math.isfinite(res.est_abs_error)
    assert rel(res.value, float(mpmath.hyp2f1(0.5, 1, 4, 0.99))) < 1e-10


@pytest.mark.parametrize("args", [
    (1.0, 2.0, 2.0, 0.5),    # c == b
    (1.0, 0.0, 2.0, 0.5),    # b == 0
    (1.0, 1.0, 2.0, 1.0),    # |z| == 1
    (1.0, 1.0, 2.0, -1.5),
])
def test_hyp2f1_domain(args):
    with pytest.raises(DomainError):
        hyp2f1(*args)


# }}}
