"""Complete elliptic integrals, 2F1(1/2,1/2;1;z) and the period integrals of
the P_{a,c} family.

``K(z)``, ``E(z)`` and ``Pi(n, z)`` take the modulus ``z`` (``z**2`` sits under
the radical), matching the Legendre forms

    K(z)     = int_0^1 dx / sqrt((1-x^2)(1-z^2 x^2))
    E(z)     = int_0^1 sqrt(1-z^2 x^2) / sqrt(1-x^2) dx
    Pi(n, z) = int_0^1 dx / ((1-n x^2) sqrt((1-x^2)(1-z^2 x^2)))
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpf

from .numerics import (
    DEFAULT_CTX,
    DomainError,
    NonConvergence,
    PrecisionContext,
    Singularity,
    agm,
    quad,
)

HYP_MAX_TERMS = 200_000


def _check_modulus(z):
    if not (0 <= z < 1):
        raise DomainError(f"modulus must lie in [0, 1), got {z}")


def ellint_K(z, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    with ctx.workprec():
        z = mpf(z)
        _check_modulus(z)
        return mp.pi / (2 * agm(1, mp.sqrt((1 - z) * (1 + z)), ctx))


def ellint_E(z, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    """E(z) = K(z) * (1 - sum 2^(n-1) c_n^2) along the AGM of (1, sqrt(1-z^2))."""
    with ctx.workprec():
        z = mpf(z)
        _check_modulus(z)
        a, b = mpf(1), mp.sqrt((1 - z) * (1 + z))
        c = z
        total = c * c / 2
        weight = mpf(1) / 2
        stop = mpf(2) ** (-ctx.work_bits)
        while abs(c) > stop:
            a, b, c = (a + b) / 2, mp.sqrt(a * b), (a - b) / 2
            weight *= 2
            total += weight * c * c
        return mp.pi / (2 * a) * (1 - total)


def _pi_domain(n, z):
    _check_modulus(z)
    if not n < 1:
        raise DomainError(f"characteristic must be < 1, got {n}")


def ellint_Pi(n, z, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    """Complete third-kind integral by quadrature of its defining integral."""
    with ctx.workprec():
        n = mpf(n)
        z = mpf(z)
        _pi_domain(n, z)
        z2 = z * z

        def f(x):
            x2 = x * x
            return 1 / ((1 - n * x2) * mp.sqrt((1 - x) * (1 + x) * (1 - z2 * x2)))

        return quad(f, 0, 1, ctx, Singularity.INVERSE_SQRT_RIGHT)


def ellint_K_quad(z, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    """K(z) straight from its defining integral; used to cross-check the AGM."""
    return ellint_Pi(0, z, ctx)


def ellint_E_quad(z, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    with ctx.workprec():
        z = mpf(z)
        _check_modulus(z)
        z2 = z * z
        return quad(lambda x: mp.sqrt(1 - z2 * x * x) / mp.sqrt((1 - x) * (1 + x)),
                    0, 1, ctx, Singularity.INVERSE_SQRT_RIGHT)


# Derivative formulas for K and Pi (classical; expressed through K, E, Pi).

def dK_dz(z, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    with ctx.workprec():
        z = mpf(z)
        return ellint_E(z, ctx) / (z * (1 - z * z)) - ellint_K(z, ctx) / z


def dPi_dn(n, z, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    with ctx.workprec():
        n, z = mpf(n), mpf(z)
        z2 = z * z
        K, E, P = ellint_K(z, ctx), ellint_E(z, ctx), ellint_Pi(n, z, ctx)
        return (n * E + (z2 - n) * K + (n * n - z2) * P) / (2 * n * (n - 1) * (z2 - n))


def dPi_dz(n, z, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    with ctx.workprec():
        n, z = mpf(n), mpf(z)
        z2 = z * z
        E, P = ellint_E(z, ctx), ellint_Pi(n, z, ctx)
        return z / ((z2 - 1) * (n - z2)) * (E + (z2 - 1) * P)


def legendre_f(r):
    s = mp.sqrt(r * r + 1)
    return r * (s + 1) * (s - r)


def legendre_f_prime(r):
    # d/dr of r (s+1)(s-r) with s = sqrt(r^2+1)
    s = mp.sqrt(r * r + 1)
    ds = r / s
    return (s + 1) * (s - r) + r * ds * (s - r) + r * (s + 1) * (ds - 1)


def dK_r2_dr(r, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    """d/dr K(r^2) written through E(r^2) and K(r^2)."""
    with ctx.workprec():
        r = mpf(r)
        r4 = r ** 4
        return 2 / (r * (1 - r4)) * ellint_E(r * r, ctx) - 2 / r * ellint_K(r * r, ctx)


def dPi_f_r2_dr(r, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    """d/dr Pi(f(r), r^2) written through E, K and Pi at (f(r), r^2)."""
    with ctx.workprec():
        r = mpf(r)
        f = legendre_f(r)
        fp = legendre_f_prime(r)
        r4 = r ** 4
        E = ellint_E(r * r, ctx)
        K = ellint_K(r * r, ctx)
        P = ellint_Pi(f, r * r, ctx)
        cE = fp / (2 * (f - 1) * (r4 - f)) + 2 * r ** 3 / ((r4 - 1) * (f - r4))
        cK = fp / (2 * f * (f - 1))
        cP = (f * f - r4) * fp / (2 * f * (f - 1) * (r4 - f)) + 2 * r ** 3 / (f - r4)
        return cE * E + cK * K + cP * P


def hyp2f1_half(z, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    """2F1(1/2, 1/2; 1; z) from sum binom(2n, n)^2 (z/16)^n.

    Successive term ratios are below ``z``, so the tail after a term ``t`` is
    at most ``t * z / (1 - z)``.
    """
    with ctx.workprec():
        z = mpf(z)
        if not (0 <= z < 1):
            raise DomainError(f"series needs 0 <= z < 1, got {z}")
        tol = mpf(2) ** (-ctx.work_bits)
        term = mpf(1)
        total = mpf(1)
        bound = z / (1 - z) if z else mpf(0)
        for n in range(HYP_MAX_TERMS):
            if term * bound <= tol * total:
                return total
            term *= ((2 * n + 1) / mpf(2 * n + 2)) ** 2 * z
            total += term
    raise NonConvergence(f"2F1 series too slow at z={mp.nstr(z, 10)}; use 2K(sqrt z)/pi")


@dataclass(frozen=True)
class SubstitutionParams:
    """Auxiliary quantities of the v-parametrisation, 1 < v < sqrt(2)."""

    u: mpf
    v: mpf
    w: mpf
    r: mpf
    alpha: mpf
    beta: mpf

    @classmethod
    def from_v(cls, v, ctx: PrecisionContext = DEFAULT_CTX) -> "SubstitutionParams":
        with ctx.workprec():
            v = mpf(v)
            if not (1 < v < mp.sqrt(2)):
                raise DomainError("v must lie in (1, sqrt 2)")
            root = mp.sqrt(2 - v * v)
            v2 = v * v
            w = (1 - 2 * v * root + 2 * v2 - v2 * v2) / (v2 - 1) ** 2
            alpha = (root - v2 + 1) / v
            beta = (-root - v2 + 1) / v
            # invert v = (u^2+2u-1)/(u^2+1) on the branch u > 1 + sqrt 2
            # (v - 1) u^2 - 2u + (v + 1) = 0
            u = (1 + mp.sqrt(1 - (v2 - 1))) / (v - 1)
            return cls(u=u, v=v, w=w, r=mp.sqrt(w), alpha=alpha, beta=beta)

    @classmethod
    def from_u(cls, u, ctx: PrecisionContext = DEFAULT_CTX) -> "SubstitutionParams":
        with ctx.workprec():
            u = mpf(u)
            if not u > 1 + mp.sqrt(2):
                raise DomainError("u must exceed 1 + sqrt 2")
            return cls.from_v((u * u + 2 * u - 1) / (u * u + 1), ctx)

    def radical(self) -> mpf:
        """sqrt(1 + 2 v sqrt(2-v^2) + 2 v^2 - v^4)."""
        v = self.v
        return mp.sqrt(1 + 2 * v * mp.sqrt(2 - v * v) + 2 * v * v - v ** 4)


def _quartic_rhs(v, ctx, weight=None):
    """int_alpha^1 weight(t) dt / sqrt((1-t^2)(v^2 t^2 + 2(v^2-1) v t + v^4 - v^2 - 1))."""
    p = SubstitutionParams.from_v(v, ctx)
    alpha, beta, v = p.alpha, p.beta, p.v
    v2 = v * v

    def f(t):
        val = 1 / mp.sqrt((1 - t) * (1 + t) * v2 * (t - alpha) * (t - beta))
        return val if weight is None else weight(t) * val

    return quad(f, alpha, 1, ctx, Singularity.INVERSE_SQRT_BOTH)


def period_identity_check(v, ctx: PrecisionContext = DEFAULT_CTX) -> tuple[mpf, mpf]:
    """Both sides of the T- and t-integral identity for 1 < v < sqrt 2."""
    with ctx.workprec():
        v = mpf(v)
        v2 = v * v
        lo = 3 - 2 * v2

        def f(T):
            return 1 / mp.sqrt((1 - T) * (1 + T) * (T + 2 * v2 - 1) * (T - lo))

        lhs = quad(f, lo, 1, ctx, Singularity.INVERSE_SQRT_BOTH)
        rhs = _quartic_rhs(v, ctx)
        return lhs, rhs


def period_identity_closed_forms(v, ctx: PrecisionContext = DEFAULT_CTX) -> tuple[mpf, mpf]:
    """(pi/2) F((v^2-1)^2) and pi F(w^2) / radical, the hypergeometric forms of the two sides."""
    with ctx.workprec():
        p = SubstitutionParams.from_v(v, ctx)
        left = mp.pi / 2 * hyp2f1_half((p.v ** 2 - 1) ** 2, ctx)
        right = mp.pi * hyp2f1_half(p.w ** 2, ctx) / p.radical()
        return left, right


def constant_integral_check(v, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    """v * int_alpha^1 (2t+v) dt / sqrt(...); constant 3*pi/2 on (1, sqrt 2)."""
    with ctx.workprec():
        v = mpf(v)
        return v * _quartic_rhs(v, ctx, weight=lambda t: 2 * t + v)


def constant_integral_legendre(r, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    """(1-r)((1-r-2s) K(r^2) + 4 s Pi(f(r), r^2)), s = sqrt(r^2+1)."""
    with ctx.workprec():
        r = mpf(r)
        s = mp.sqrt(r * r + 1)
        K = ellint_K(r * r, ctx)
        P = ellint_Pi(legendre_f(r), r * r, ctx)
        return (1 - r) * ((1 - r - 2 * s) * K + 4 * s * P)


def constant_integral_legendre_derivative(r, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    """d/dr of :func:`constant_integral_legendre` assembled from the derivative formulas."""
    with ctx.workprec():
        r = mpf(r)
        s = mp.sqrt(r * r + 1)
        ds = r / s
        K = ellint_K(r * r, ctx)
        P = ellint_Pi(legendre_f(r), r * r, ctx)
        dK = dK_r2_dr(r, ctx)
        dP = dPi_f_r2_dr(r, ctx)
        inner = (1 - r - 2 * s) * K + 4 * s * P
        d_inner = (-1 - 2 * ds) * K + (1 - r - 2 * s) * dK + 4 * ds * P + 4 * s * dP
        return -inner + (1 - r) * d_inner


@dataclass(frozen=True)
class Periods:
    I: mpf
    I_left: mpf
    J_minus: mpf
    J_plus: mpf
    Kp: mpf
    u: mpf
    a: mpf
    c: mpf
    k: mpf
    t_minus: mpf
    t_plus: mpf


def u_parametrisation(u, ctx: PrecisionContext = DEFAULT_CTX) -> dict:
    """a, c, k, t_-, t_+ as rational functions of u > 1 + sqrt 2."""
    with ctx.workprec():
        u = mpf(u)
        if not u > 1 + mp.sqrt(2):
            raise DomainError("u must exceed 1 + sqrt 2")
        u2 = u * u
        p = u2 + 2 * u - 1
        m = u2 - 2 * u - 1
        a = p / m
        c = 8 * u * (u2 - 1) / ((u2 + 1) * m)
        k = 16 * u * (u2 - 1) / (u2 + 1) ** 2
        t_minus = -(u ** 4 + 2 * u ** 3 - 6 * u - 1) / ((u2 + 1) * p)
        t_plus = (u ** 4 - 6 * u ** 3 + 2 * u - 1) / ((u2 + 1) * p)
        return dict(u=u, a=a, c=c, k=k, t_minus=t_minus, t_plus=t_plus)


def periods_IJK(u, ctx: PrecisionContext = DEFAULT_CTX) -> Periods:
    """The period-type integrals I, J_-, J_+ and K of the u-parametrised family."""
    with ctx.workprec():
        d = u_parametrisation(u, ctx)
        tm, tp, k = d["t_minus"], d["t_plus"], d["k"]
        scale = 4 / mp.pi

        def base(t):
            return 1 / mp.sqrt((1 - t) * (1 + t) * (t - tm) * (t - tp))

        both = Singularity.INVERSE_SQRT_BOTH
        I = scale * quad(base, tp, 1, ctx, both)
        I_left = scale * quad(base, -1, tm, ctx, both)
        Jm = scale * quad(lambda t: t * base(t), tp, 1, ctx, both)
        Jp = scale * quad(lambda t: t * base(t), -1, tm, ctx, both)
        lo = 1 - k / 2

        def kf(T):
            return 1 / mp.sqrt((1 - T) * (1 + T) * (T - lo) * (T + k / 2 + 1))

        Kp = 2 * scale * quad(kf, lo, 1, ctx, both)
        return Periods(I=I, I_left=I_left, J_minus=Jm, J_plus=Jp, Kp=Kp, u=d["u"],
                       a=d["a"], c=d["c"], k=k, t_minus=tm, t_plus=tp)


def derivative_identity(u, ctx: PrecisionContext = DEFAULT_CTX) -> tuple[mpf, mpf]:
    """Both sides of the u-derivative identity matching d m(P_{1,k}) with d(m^- - 3 m^+)."""
    with ctx.workprec():
        pr = periods_IJK(u, ctx)
        u = pr.u
        u2 = u * u
        q = u ** 4 - 6 * u2 + 1
        lhs = q / (u2 + 1) ** 3 * pr.Kp
        rhs = ((u2 + 1) ** 3 * (pr.J_minus + 3 * pr.J_plus)
               + 4 * (u2 + 2 * u - 1) * (u ** 4 - 2 * u ** 3 + 2 * u2 + 2 * u + 1) * pr.I) / (
            (u2 + 1) ** 2 * q)
        return lhs, rhs
