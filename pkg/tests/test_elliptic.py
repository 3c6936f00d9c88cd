from __future__ import annotations

import pytest
from hypothesis import given, strategies as st
from mpmath import mp, mpf

from mahler21 import elliptic as el
from mahler21.numerics import DomainError, PrecisionContext

CTX = PrecisionContext()
CTX20 = PrecisionContext.from_digits(20)
TOL = mpf(10) ** -28


def test_values_at_zero(ctx):
    with ctx.workprec():
        half_pi = mp.pi / 2
        assert abs(el.ellint_K(0, ctx) - half_pi) < TOL
        assert abs(el.ellint_E(0, ctx) - half_pi) < TOL
        assert abs(el.ellint_Pi(0, 0, ctx) - half_pi) < TOL
        assert el.hyp2f1_half(0, ctx) == 1


@pytest.mark.parametrize("z", ["0.1", "0.3", "0.5", "0.7", "0.9"])
def test_agm_against_quadrature_and_mpmath(z, ctx):
    # oracles: direct quadrature of the defining integrals, and mpmath.ellipk/ellipe (parameter m = z^2)
    with ctx.workprec():
        z = mpf(z)
        K, E = el.ellint_K(z, ctx), el.ellint_E(z, ctx)
        assert abs(K - el.ellint_K_quad(z, ctx)) < TOL
        assert abs(E - el.ellint_E_quad(z, ctx)) < TOL
        assert abs(K - mp.ellipk(z * z)) < TOL
        assert abs(E - mp.ellipe(z * z)) < TOL


@pytest.mark.parametrize("n,z", [("0.2", "0.4"), ("-0.5", "0.6"), ("0.9", "0.3")])
def test_pi_against_mpmath(n, z, ctx):
    with ctx.workprec():
        n, z = mpf(n), mpf(z)
        assert abs(el.ellint_Pi(n, z, ctx) - mp.ellippi(n, z * z)) < TOL


def test_domain_errors(ctx):
    for bad in (lambda: el.ellint_K(1, ctx), lambda: el.ellint_E(-0.1, ctx),
                lambda: el.ellint_Pi(1, 0.5, ctx), lambda: el.hyp2f1_half(1, ctx),
                lambda: el.SubstitutionParams.from_v(1.5, ctx),
                lambda: el.u_parametrisation(2, ctx)):
        with pytest.raises(DomainError):
            bad()


def test_hypergeometric_series(ctx):
    with ctx.workprec():
        # oracle: F(z) = (2/pi) K(sqrt z), and mpmath.hyp2f1
        assert abs(el.hyp2f1_half(0.5, ctx) - 2 / mp.pi * el.ellint_K_quad(mp.sqrt(0.5), ctx)) < TOL
        assert abs(el.hyp2f1_half(0.5, ctx) - mp.hyp2f1(0.5, 0.5, 1, 0.5)) < TOL
        z = mpf("0.37")
        assert abs(el.hyp2f1_half(4 * z / (1 + z) ** 2, ctx) - (1 + z) * el.hyp2f1_half(z * z, ctx)) < TOL


@given(st.floats(0.01, 0.6))
def test_quadratic_transformation_property(z):
    with CTX20.workprec():
        z = mpf(z)
        lhs = el.hyp2f1_half(4 * z / (1 + z) ** 2, CTX20)
        rhs = (1 + z) * el.hyp2f1_half(z * z, CTX20)
        assert abs(lhs - rhs) < mpf(10) ** -18


def _fd(f, x, h):
    return (f(x + h) - f(x - h)) / (2 * h)


def test_derivative_formulas(ctx):
    h = mpf(10) ** -10
    with ctx.workprec():
        z = mpf("0.3")
        assert abs(el.dK_dz(z, ctx) - _fd(lambda t: el.ellint_K(t, ctx), z, h)) < mpf(10) ** -10
        n, z = mpf("0.2"), mpf("0.4")
        assert abs(el.dPi_dn(n, z, ctx) - _fd(lambda t: el.ellint_Pi(t, z, ctx), n, h)) < mpf(10) ** -10
        assert abs(el.dPi_dz(n, z, ctx) - _fd(lambda t: el.ellint_Pi(n, t, ctx), z, h)) < mpf(10) ** -10
        r = mpf("0.3")
        assert abs(el.dK_r2_dr(r, ctx) - _fd(lambda t: el.ellint_K(t * t, ctx), r, h)) < mpf(10) ** -10
        assert abs(el.dPi_f_r2_dr(r, ctx)
                   - _fd(lambda t: el.ellint_Pi(el.legendre_f(t), t * t, ctx), r, h)) < mpf(10) ** -10
        assert abs(el.legendre_f_prime(r) - _fd(el.legendre_f, r, h)) < mpf(10) ** -15


@pytest.mark.parametrize("v", ["1.05", "1.2", "1.4"])
def test_period_and_constant_identities(v, ctx):
    with ctx.workprec():
        v = mpf(v)
        lhs, rhs = el.period_identity_check(v, ctx)
        assert abs(lhs - rhs) < TOL
        left, right = el.period_identity_closed_forms(v, ctx)
        assert abs(lhs - left) < TOL and abs(rhs - right) < TOL
        assert abs(el.constant_integral_check(v, ctx) - 3 * mp.pi / 2) < TOL


def test_legendre_form_and_derivative(ctx):
    with ctx.workprec():
        p = el.SubstitutionParams.from_v(mpf("1.25"), ctx)
        assert abs(el.constant_integral_legendre(p.r, ctx) - 3 * mp.pi / 2) < TOL
        assert abs(el.constant_integral_legendre_derivative(p.r, ctx)) < TOL


@given(st.floats(1.01, 1.41))
def test_substitution_invariants(v):
    with CTX20.workprec():
        p = el.SubstitutionParams.from_v(v, CTX20)
        v = p.v
        assert abs(4 * p.w / (1 + p.w) ** 2 - (v * v - 1) ** 2) < mpf(10) ** -18
        assert abs((p.u ** 2 + 2 * p.u - 1) / (p.u ** 2 + 1) - v) < mpf(10) ** -18
        assert 0 < p.w < 1 and abs(p.r ** 2 - p.w) < mpf(10) ** -18
        assert p.u > 1 + mp.sqrt(2)


def test_periods_at_u3(ctx):
    with ctx.workprec():
        u = mpf(3)
        pr = el.periods_IJK(u, ctx)
        assert abs(pr.J_minus - pr.J_plus - 4) < TOL
        assert abs(pr.I - pr.I_left) < TOL
        s = u * u + 2 * u - 1
        assert abs(pr.Kp - 2 * (u * u + 1) / s * pr.I) < TOL
        assert abs(pr.J_minus + 3 * pr.J_plus + 2 * s / (u * u + 1) * pr.I) < TOL
        lhs, rhs = el.derivative_identity(u, ctx)
        assert abs(lhs - rhs) < TOL
