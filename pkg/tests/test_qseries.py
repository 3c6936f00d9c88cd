from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from mpmath import mp, mpc, mpf

from mahler21 import qseries as qs
from mahler21.curve import original_named_points
from mahler21.numerics import DomainError, PrecisionContext
from mahler21.qseries import QSeries

CTX = PrecisionContext()
TOL = mpf(10) ** -28

coeff = st.integers(-20, 20)


@st.composite
def series(draw, order=8, unit=False):
    cs = draw(st.lists(coeff, min_size=order, max_size=order))
    if unit:
        cs[0] = draw(st.sampled_from([1, -1, 2, 3]))
    g = Fraction(draw(st.integers(-5, 5)), draw(st.sampled_from([1, 24])))
    return QSeries(g, tuple(cs), order)


def _same_grading(a: QSeries, b: QSeries) -> QSeries:
    return QSeries(a.grading, b.coeffs, b.order)


@given(series(), series(), series())
def test_ring_axioms(a, b, c):
    b, c = _same_grading(a, b), _same_grading(a, c)
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()


@given(series(unit=True))
def test_inverse(a):
    one = a * a.inverse()
    assert one.grading == 0 and one.coeffs[0] == 1 and all(x == 0 for x in one.coeffs[1:])
    assert a ** -2 == (a * a).inverse()
    assert a ** 3 == a * a * a


@given(series(unit=True), series(unit=True), st.integers(1, 4))
def test_substitution_is_multiplicative(a, b, m):
    lhs = (a * b).substitute(m)
    rhs = a.substitute(m) * b.substitute(m)
    assert lhs == rhs


def test_truncation_bookkeeping():
    a = QSeries(Fraction(-1), (1, 2, 3, 4), 4)
    assert a.precision == 3
    assert (a + QSeries(0, (1, 1), 2)).precision == 2
    assert a[1] == 3
    with pytest.raises(IndexError):
        a[3]
    with pytest.raises(ValueError):
        a + QSeries(Fraction(1, 2), (1,), 1)


def test_eta_pentagonal():
    # oracle: Euler's pentagonal theorem, prod(1-q^n) = sum (-1)^k q^(k(3k-1)/2)
    N = 300
    expected = [0] * N
    for k in range(-20, 21):
        e = k * (3 * k - 1) // 2
        if e < N:
            expected[e] += (-1) ** k
    s = qs.eta_series(1, N)
    assert s.grading == Fraction(1, 24) and list(s.coeffs) == expected


def test_dump_format_and_round_trip():
    s = qs.eta_series(1, 5)
    assert s.dump() == "grading 1/24, order 5\n0 1\n1 -1\n2 -1\n3 0\n4 0\n"
    g = qs.modular_unit_g(1, 10)
    assert g.dump().startswith("grading 107/84, order 10\n")
    assert QSeries.parse(g.dump()) == g and QSeries.parse(s.dump()) == s
    half = QSeries(0, (Fraction(1, 2), Fraction(-3, 4)), 2)
    assert QSeries.parse(half.dump()).coeffs == half.coeffs


def test_unit_gradings():
    for a in range(1, 11):
        g = qs.modular_unit_g(a, 5)
        assert g.grading == Fraction(a * a, 42) - Fraction(a, 2) + Fraction(7, 4)
    assert qs.unit_product(qs.UNIT_EXPONENTS_X0, 5).grading == -1
    assert qs.x0_series(5).grading == -1
    with pytest.raises(ValueError):
        qs.modular_unit_g(11, 5)


def test_eta_identity_and_units():
    assert qs.ramanujan_eta_residual(120).is_zero()
    N = 80
    assert qs.unit_product(qs.UNIT_EXPONENTS_X0, N) == qs.x0_series(N)
    assert -qs.unit_product(qs.UNIT_EXPONENTS_Y, N) == qs.y_series(N)
    assert qs.curve_residual_series(N).is_zero()


def test_eta_identity_detects_a_wrong_sign():
    A = qs.eta_quotient({1: 1, 7: -1}, 40)
    B = A.substitute(3)
    AB = A * B
    ratio = A / B
    wrong = AB + 7 / AB - ratio ** 2 - ratio ** -2 - 3
    assert not wrong.truncate(Fraction(30)).is_zero()


def test_E2_series():
    s = qs.E2_series(10)
    assert list(s.coeffs[:5]) == [1, -24, -72, -96, -168]
    assert qs.sigma1(12) == 28


def test_eta_numeric(ctx):
    with ctx.workprec():
        # oracle: closed form at tau = i and mpmath's q-Pochhammer
        assert abs(qs.eta_numeric(1, mpc(0, 1), ctx) - mp.gamma(0.25) / (2 * mp.pi ** 0.75)) < TOL
        tau = mpc("0.2", "0.3")
        q = mp.exp(2j * mp.pi * tau)
        assert abs(qs.eta_numeric(1, tau, ctx) - mp.exp(2j * mp.pi * tau / 24) * mp.qp(q)) < TOL
        # series evaluation agrees with the product
        assert abs(qs.eta_series(1, 200).evaluate(tau, ctx) - qs.eta_numeric(1, tau, ctx)) < TOL


def test_E2_is_log_derivative_of_eta(ctx):
    with ctx.workprec():
        tau = mpc("0.1", "0.5")
        h = mpf(10) ** -12
        d = (mp.log(qs.eta_numeric(1, tau + h, ctx)) - mp.log(qs.eta_numeric(1, tau - h, ctx))) / (2 * h)
        assert abs(qs.E2_numeric(tau, ctx) - 12 * d / (mp.pi * 1j)) < mpf(10) ** -18
        assert abs(qs.E2_series(150).evaluate(tau, ctx) - qs.E2_numeric(tau, ctx)) < TOL


def test_refuses_near_real_axis(ctx):
    with pytest.raises(DomainError):
        qs.eta_numeric(1, mpc(0.2, 1e-4), ctx)
    with pytest.raises(DomainError):
        qs.x_tilde(mpc(0.2, -1), ctx)


@given(st.floats(-0.5, 0.5), st.floats(0.04, 1.5))
def test_parametrization_property(re, im):
    with CTX.workprec():
        tau = mpc(re, im)
        x = qs.x_tilde(tau, CTX)
        assert abs(qs.parametrization_residual(tau, CTX)) < mpf(10) ** -25 * max(1, abs(x))


def test_cm_images(ctx):
    with ctx.workprec():
        cm = qs.cm_points(ctx)
        orig = original_named_points(mp.sqrt(7), 3, ctx)
        for tk, lab in (("tau+", "S+"), ("tau-", "S-"), ("tau'+", "T+"), ("tau'-", "T-")):
            assert abs(qs.x_tilde(cm[tk], ctx) - orig[lab][0]) < mpf(10) ** -25
            assert abs(qs.y_tilde(cm[tk], ctx) - orig[lab][1]) < mpf(10) ** -25


def test_atkin_lehner(ctx):
    with ctx.workprec():
        for tau in (mpc("0.1", "0.3"), mpc("-0.3", "0.2")):
            for name, d in qs.atkin_lehner_checks(tau, ctx).items():
                assert d < mpf(10) ** -25, name
        for name, d in qs.cm_action_checks(ctx).items():
            assert d == 0 if isinstance(d, Fraction) else d < mpf(10) ** -30, name
        assert qs.W7(Fraction(0)) == Fraction(2, 7)
        for tau in qs.geodesic_samples(4, ctx):
            assert abs(abs(qs.x_tilde(tau, ctx)) - 1) < mpf(10) ** -25
            assert abs(qs.y_tilde(tau, ctx).imag) < mpf(10) ** -25


def test_g_eisenstein_prefix():
    g = qs.g_eisenstein_series(6)
    assert list(g.coeffs) == [0, 24, 72, 24, 168, 144]
