import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import brute_If, quad, random_subinterval
from pquad.catalog import Func1D, Interval, catalog, lookup
from pquad.errors import IntegrationError, ParameterError
from pquad.quadrature import (
    RuleParams,
    compute_If,
    integral_of,
    lemma_identity_rhs,
    reference_integral,
)

unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


@pytest.mark.parametrize(
    "g, iv, expected",
    [
        (lambda x: x * x, Interval(0.0, 1.0), 1 / 3),
        (lambda x: x**3, Interval(1.0, 2.0), 15 / 4),
        (math.exp, Interval(0.0, 1.0), math.e - 1),
    ],
)
def test_reference_integral_closed_forms(g, iv, expected):
    val, err = reference_integral(g, iv)
    assert abs(val - expected) <= 1e-12
    assert 0 <= err <= 1e-10


def test_reference_integral_kink():
    val, _ = reference_integral(abs, Interval(-1.0, 2.0))
    assert val == pytest.approx(2.5, abs=1e-10)


def test_reference_integral_rejects_tiny_tol():
    with pytest.raises(ParameterError):
        reference_integral(math.sin, Interval(0.0, 1.0), tol=1e-15)


def test_reference_integral_nonconvergence_reports_subinterval():
    # 1/sqrt|x| is integrable but the adaptive rule cannot resolve x = 0 at depth 8
    g = lambda x: 1.0 / math.sqrt(abs(x)) if x else 1e300  # noqa: E731
    with pytest.raises(IntegrationError) as exc:
        reference_integral(g, Interval(-1.0, 1.0), max_depth=8)
    lo, hi = exc.value.subinterval
    assert lo <= 0.0 <= hi or hi - lo < 0.1


def test_reference_integral_nonfinite():
    with pytest.raises(IntegrationError):
        reference_integral(lambda x: math.inf if x > 0.3 else 0.0, Interval(0.0, 1.0))


def test_rule_params_validation():
    with pytest.raises(ParameterError):
        RuleParams(1.5, 0.0)
    with pytest.raises(ParameterError):
        RuleParams(0.5, math.nan)


def test_constant_gives_zero_for_all_rules():
    f = lookup("const1")
    for alpha in (0.0, 0.3, 0.5, 1.0):
        for lam in (0.0, 0.4, 1.0):
            assert abs(compute_If(f, Interval(-2.0, 1.5), RuleParams(alpha, lam)).i_f) < 1e-15


@given(unit)
def test_affine_midpoint_node_is_exact(lam):
    f = lookup("affine")
    assert abs(compute_If(f, Interval(-1.0, 2.5), RuleParams(0.5, lam)).i_f) < 1e-13


def test_trapezoid_on_square():
    r = compute_If(lookup("pow2"), Interval(0.0, 1.0), RuleParams(0.5, 1.0))
    assert r.i_f == pytest.approx(1 / 6, abs=1e-15)
    assert r.ref_integral == pytest.approx(1 / 3, abs=1e-15)
    assert r.ref_error_est == 0.0


def test_closed_form_and_oracle_paths_agree(funcs):
    rng = np.random.default_rng(5)
    for f in funcs:
        a, b = random_subinterval(rng, f.p_cert_domain)
        rp = RuleParams(*map(float, rng.uniform(0, 1, 2)))
        iv = Interval(a, b)
        x = compute_If(f, iv, rp).i_f
        y = compute_If(f, iv, rp, use_closed_form=False).i_f
        assert abs(x - y) <= 1e-9 * max(1.0, abs(x)), f.name


def test_compute_If_against_scipy(funcs):
    rng = np.random.default_rng(8)
    for f in funcs:
        for _ in range(5):
            a, b = random_subinterval(rng, f.p_cert_domain)
            alpha, lam = map(float, rng.uniform(0, 1, 2))
            got = compute_If(f, Interval(a, b), RuleParams(alpha, lam)).i_f
            want = brute_If(f, a, b, alpha, lam)
            assert abs(got - want) <= 1e-9 * max(1.0, abs(want))


def test_compute_If_outside_domain():
    with pytest.raises(ParameterError):
        compute_If(lookup("recip"), Interval(-1.0, 1.0), RuleParams(0.5, 0.5))


def test_kernel_identity_examples():
    f = lookup("pow2")
    assert lemma_identity_rhs(f, Interval(0.0, 1.0), RuleParams(0.5, 1.0)) == pytest.approx(1 / 6, abs=1e-12)
    assert lemma_identity_rhs(lookup("const1"), Interval(0.0, 1.0), RuleParams(0.3, 0.2)) == 0.0
    g = lookup("pow3")
    iv, rp = Interval(1.0, 2.0), RuleParams(1 / 3, 0.7)
    assert abs(lemma_identity_rhs(g, iv, rp) - compute_If(g, iv, rp).i_f) <= 1e-9


def test_lemma_identity_rhs_against_scipy():
    f = lookup("exp")
    a, b, alpha, lam = 0.2, 2.7, 0.35, 0.8
    d = f.derivative
    x = lambda t: t * b + (1 - t) * a  # noqa: E731
    want = (b - a) * (
        quad(lambda t: (t - alpha * lam) * d(x(t)), 0, 1 - alpha)
        + quad(lambda t: (t - 1 + lam * (1 - alpha)) * d(x(t)), 1 - alpha, 1)
    )
    assert lemma_identity_rhs(f, Interval(a, b), RuleParams(alpha, lam)) == pytest.approx(want, abs=1e-10)


@pytest.mark.parametrize("alpha", [0.0, 1.0])
def test_lemma_identity_degenerate_alpha(alpha, funcs):
    for f in funcs:
        iv = f.p_cert_domain
        rp = RuleParams(alpha, 0.37)
        i_f = compute_If(f, iv, rp).i_f
        assert abs(lemma_identity_rhs(f, iv, rp) - i_f) <= 1e-8 * max(1.0, abs(i_f)), f.name


@given(unit, unit, st.integers(0, 10_000))
@settings(max_examples=60, deadline=None)
def test_identity_property(alpha, lam, k):
    funcs = catalog()
    f = funcs[k % len(funcs)]
    a, b = random_subinterval(np.random.default_rng(k), f.p_cert_domain)
    iv, rp = Interval(a, b), RuleParams(alpha, lam)
    i_f = compute_If(f, iv, rp).i_f
    assert abs(i_f - lemma_identity_rhs(f, iv, rp)) <= 1e-8 * max(1.0, abs(i_f))


@given(
    st.lists(st.floats(-3, 3, allow_nan=False), min_size=4, max_size=4),
    st.floats(-2, 0, allow_nan=False),
    st.floats(0.01, 2, allow_nan=False),
)
@settings(max_examples=80, deadline=None)
def test_simpson_exact_on_cubics(coef, a, width):
    c0, c1, c2, c3 = coef
    f = Func1D(
        "cubic",
        lambda x: c0 + c1 * x + c2 * x**2 + c3 * x**3,
        lambda x: c1 + 2 * c2 * x + 3 * c3 * x**2,
        Interval(-10, 10),
        Interval(-10, 10),
        antiderivative=lambda x: c0 * x + c1 * x**2 / 2 + c2 * x**3 / 3 + c3 * x**4 / 4,
    )
    iv = Interval(a, a + width)
    scale = max(1.0, sum(abs(c) for c in coef) * 8)
    assert abs(compute_If(f, iv, RuleParams(0.5, 1 / 3)).i_f) <= 1e-10 * scale / min(1.0, width)


@given(st.floats(-50, 50, allow_nan=False).filter(lambda c: abs(c) > 1e-3), unit, unit)
@settings(max_examples=60, deadline=None)
def test_scale_covariance(c, alpha, lam):
    base = lookup("exp")
    scaled = Func1D(
        "cexp",
        lambda x: c * math.exp(x),
        lambda x: c * math.exp(x),
        base.valid_domain,
        base.p_cert_domain,
        antiderivative=lambda x: c * math.exp(x),
    )
    iv, rp = Interval(0.3, 2.1), RuleParams(alpha, lam)
    x = compute_If(base, iv, rp).i_f
    y = compute_If(scaled, iv, rp).i_f
    assert y == pytest.approx(c * x, rel=1e-12, abs=1e-13 * abs(c))


def test_integral_of_uses_closed_form():
    val, err = integral_of(lookup("sin"), Interval(0.0, math.pi))
    assert val == pytest.approx(2.0, abs=1e-15) and err == 0.0
