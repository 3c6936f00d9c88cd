"""Mahler measures of P_{a,b,c} = a(x + 1/x) + b(y + 1/y) + c via Jensen's formula.

For |x| = 1, y * P is a monic quadratic in y with real middle coefficient
A(theta) = 2 a' cos(theta) + c' (after dividing by b), so the two roots have
product 1 and log+|y+| + log+|y-| = acosh(|A|/2) when |A| > 2, and 0 otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpc, mpf

from .numerics import DEFAULT_CTX, DomainError, PrecisionContext, Singularity, quad


class EmptyRegion(DomainError):
    pass


@dataclass(frozen=True)
class FamilyParams:
    a: mpf
    b: mpf
    c: mpf

    def __post_init__(self):
        if self.a == 0 or self.b == 0:
            raise DomainError("a and b must be nonzero")

    @classmethod
    def of(cls, a, b=1, c=0, ctx: PrecisionContext = DEFAULT_CTX) -> "FamilyParams":
        with ctx.workprec():
            return cls(mpf(a), mpf(b), mpf(c))

    def normalized(self) -> "FamilyParams":
        """(a/b, 1, c/b); the measure shifts by log|b|."""
        return FamilyParams(self.a / self.b, mpf(1), self.c / self.b)

    def __call__(self, x, y):
        return self.a * (x + 1 / x) + self.b * (y + 1 / y) + self.c


@dataclass(frozen=True)
class CriticalData:
    t_minus: mpf
    t_plus: mpf
    theta_minus: mpf
    theta_plus: mpf


def critical_data(p: FamilyParams, ctx: PrecisionContext = DEFAULT_CTX) -> CriticalData:
    """t_- = -(2+c)/(2a), t_+ = (2-c)/(2a), clamped to [-1, 1], and their arccosines."""
    _require_normalized(p)
    with ctx.workprec():
        a, c = p.a, p.c
        one = mpf(1)
        tm = min(one, max(-one, -(2 + c) / (2 * a)))
        tp = min(one, max(-one, (2 - c) / (2 * a)))
        return CriticalData(tm, tp, mp.acos(tm), mp.acos(tp))


def _require_normalized(p: FamilyParams):
    if p.b != 1:
        raise DomainError("operation needs the normalised family b = 1")


def _acosh_half(x):
    """acosh(x) for x >= 1, written to stay accurate as x -> 1."""
    return mp.log(x + mp.sqrt((x - 1) * (x + 1)))


def trivial_region_value(p: FamilyParams, ctx: PrecisionContext = DEFAULT_CTX):
    """log max(|a|, |b|) when |c| <= 2 ||a| - |b||, otherwise None."""
    with ctx.workprec():
        a, b, c = abs(p.a), abs(p.b), abs(p.c)
        if c <= 2 * abs(a - b):
            return mp.log(max(a, b))
        return None


def y_branches(theta, p: FamilyParams, ctx: PrecisionContext = DEFAULT_CTX) -> tuple[mpc, mpc]:
    """Roots y_+, y_- of y^2 + (a(x+1/x)+c) y + 1 at x = exp(i theta), principal root."""
    _require_normalized(p)
    with ctx.workprec():
        x = mp.expjpi(mpf(theta) / mp.pi)
        A = p.a * (x + 1 / x) + p.c
        root = mp.sqrt(A * A - 4)
        return (-A + root) / 2, (-A - root) / 2


def _jensen_breakpoints(a, c):
    """Angles in (0, pi) where |2 a cos(theta) + c| = 2."""
    out = []
    for s in (2, -2):
        t = (s - c) / (2 * a)
        if -1 < t < 1:
            out.append(mp.acos(t))
    return sorted(out)


def mahler_full(p: FamilyParams, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    """m(P_{a,b,c}) = log|b| + (1/pi) int_0^pi (log+|y_+| + log+|y_-|) d theta."""
    with ctx.workprec():
        shift = mp.log(abs(p.b))
        q = p.normalized()
        a, c = q.a, q.c

        def integrand(theta):
            A = abs(2 * a * mp.cos(theta) + c) / 2
            return _acosh_half(A) if A > 1 else mpf(0)

        cuts = [mpf(0)] + _jensen_breakpoints(a, c) + [+mp.pi]
        total = mpf(0)
        for lo, hi in zip(cuts, cuts[1:]):
            if not lo < hi:
                continue
            mid = (lo + hi) / 2
            if abs(2 * a * mp.cos(mid) + c) <= 2:
                continue  # both roots on the unit circle throughout
            sing = Singularity.NONE
            total += quad(integrand, lo, hi, ctx, sing)
        return shift + total / mp.pi


def _half_measure_args(p: FamilyParams):
    _require_normalized(p)
    if not (p.a >= 1 and p.c > 0):
        raise DomainError("half-measures need a >= 1 and c > 0")


def mahler_minus(p: FamilyParams, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    """(1/pi) int_{t_+}^1 acosh(a t + c/2) / sqrt(1 - t^2) dt."""
    _half_measure_args(p)
    with ctx.workprec():
        a, c = p.a, p.c
        cd = critical_data(p, ctx)
        if cd.t_plus >= 1:
            # unreachable for a >= 1, c > 0; kept for callers that relax the checks
            raise EmptyRegion("t_+ >= 1: the region for m^- is empty")

        def f(t):
            s = a * t + c / 2
            if s <= 1:
                return mpf(0)
            return _acosh_half(s) / mp.sqrt((1 - t) * (1 + t))

        sing = Singularity.INVERSE_SQRT_BOTH if cd.t_plus <= -1 else Singularity.INVERSE_SQRT_RIGHT
        return quad(f, cd.t_plus, 1, ctx, sing) / mp.pi


def mahler_plus(p: FamilyParams, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    """(1/pi) int_{-1}^{t_-} acosh(-(a t + c/2)) / sqrt(1 - t^2) dt; zero if t_- = -1."""
    _half_measure_args(p)
    with ctx.workprec():
        a, c = p.a, p.c
        cd = critical_data(p, ctx)
        if cd.t_minus <= -1:
            return mpf(0)

        def f(t):
            s = -(a * t + c / 2)
            if s <= 1:
                return mpf(0)
            return _acosh_half(s) / mp.sqrt((1 - t) * (1 + t))

        sing = Singularity.INVERSE_SQRT_BOTH if cd.t_minus >= 1 else Singularity.INVERSE_SQRT_LEFT
        return quad(f, -1, cd.t_minus, ctx, sing) / mp.pi


def boyd_params(a, ctx: PrecisionContext = DEFAULT_CTX) -> tuple[mpf, mpf]:
    """(c, k) with c = sqrt2 (a^2-1)/sqrt(a^2+1), k = 4(a^2-1)/(a^2+1)."""
    with ctx.workprec():
        a = mpf(a)
        if not a > 1:
            raise DomainError("boyd_params needs a > 1")
        a2 = a * a
        return mp.sqrt(2) * (a2 - 1) / mp.sqrt(a2 + 1), 4 * (a2 - 1) / (a2 + 1)


def a_from_k(k, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    with ctx.workprec():
        k = mpf(k)
        if not 0 < k < 4:
            raise DomainError("k must lie in (0, 4)")
        return mp.sqrt((4 + k) / (4 - k))


def product_family_coefficients(x, a):
    """Coefficients (y^2, y, 1) of (1+x)(1+y)(x+y) - (a^2-1) x y."""
    return 1 + x, (1 + x) ** 2 - (a * a - 1) * x, x * (1 + x)


def mahler_product_family(a, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    """m((1+x)(1+y)(x+y) - (a^2-1) x y) for a >= 1.

    Jensen in y at x = exp(i theta): log|1+x| plus log+ of both roots.  Writing
    y = exp(i theta/2) w turns the quadratic into w^2 + beta w + 1 with real
    beta = (3 - a^2 + 2 cos theta) / (2 cos(theta/2)), so the single breakpoint
    on (0, pi) is at cos(theta/2) = (a-1)/2.  The roots themselves are taken from
    the complex quadratic.
    """
    with ctx.workprec():
        a = mpf(a)
        if a < 1:
            raise DomainError("product family needs a >= 1")

        def integrand(theta):
            x = mp.expjpi(theta / mp.pi)
            lead, mid, const = product_family_coefficients(x, a)
            disc = mp.sqrt(mid * mid - 4 * lead * const)
            total = mp.log(abs(lead))
            for y in ((-mid + disc) / (2 * lead), (-mid - disc) / (2 * lead)):
                ay = abs(y)
                if ay > 1:
                    total += mp.log(ay)
            return total

        cuts = [mpf(0)]
        s0 = (a - 1) / 2
        if 0 < s0 < 1:
            cuts.append(2 * mp.acos(s0))
        cuts.append(+mp.pi)
        total = mpf(0)
        for lo, hi in zip(cuts, cuts[1:]):
            # log|1+x| and the large root are both logarithmic at theta = pi but cancel
            sing = Singularity.LOG_ENDPOINT if hi == cuts[-1] else Singularity.NONE
            total += quad(integrand, lo, hi, ctx, sing)
        return total / mp.pi
