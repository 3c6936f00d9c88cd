"""Truncated q-series with exact rational coefficients, eta quotients and the
level-21 modular units, plus numerical evaluation in the upper half-plane.

A :class:`QSeries` stores ``coeffs[n]`` as the coefficient of
``q**(grading + n)`` for ``0 <= n < order``; everything from
``q**(grading + order)`` on is unknown.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from mpmath import mp, mpc, mpf

from .numerics import DEFAULT_CTX, DomainError, PrecisionContext

MIN_IM_TAU = mpf("1e-3")

UNIT_EXPONENTS_X0 = {1: 1, 2: 1, 3: 2, 4: 1, 5: 1, 6: 2, 8: 1, 9: 2, 10: 1}
UNIT_EXPONENTS_Y = {1: 2, 2: 2, 4: 2, 5: 2, 8: 2, 10: 2}


def _exact(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


@dataclass(frozen=True)
class QSeries:
    grading: Fraction
    coeffs: tuple
    order: int = -1

    def __post_init__(self):
        object.__setattr__(self, "grading", Fraction(self.grading))
        coeffs = tuple(_exact(c) for c in self.coeffs)
        order = len(coeffs) if self.order < 0 else self.order
        coeffs = (coeffs + (0,) * order)[:order]
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "order", order)

    # construction helpers

    @classmethod
    def constant(cls, value, precision) -> "QSeries":
        """``value`` known up to (excluding) absolute exponent ``precision``."""
        n = max(0, int(precision))
        return cls(Fraction(0), (value,) + (0,) * (n - 1), n)

    @classmethod
    def from_product(cls, grading, factors: Sequence[int], order: int) -> "QSeries":
        """q^grading * prod over n in ``factors`` of (1 - q^n), truncated."""
        c = [0] * order
        c[0] = 1
        for n in factors:
            if n >= order:
                continue
            for i in range(order - 1, n - 1, -1):
                c[i] -= c[i - n]
        return cls(grading, tuple(c), order)

    @property
    def precision(self) -> Fraction:
        """Absolute exponent from which on coefficients are unknown."""
        return self.grading + self.order

    def __getitem__(self, exponent) -> Fraction:
        """Coefficient of q**exponent (absolute)."""
        n = Fraction(exponent) - self.grading
        if n.denominator != 1 or n < 0:
            return 0
        if n >= self.order:
            raise IndexError(f"q^{exponent} beyond truncation")
        return self.coeffs[int(n)]

    def truncate(self, precision) -> "QSeries":
        n = precision - self.grading
        if n.denominator != 1:
            n = int(n) + 1
        n = max(0, min(self.order, int(n)))
        return QSeries(self.grading, self.coeffs[:n], n)

    def normalized(self) -> "QSeries":
        """Strip leading zero coefficients into the grading."""
        k = 0
        while k < self.order and self.coeffs[k] == 0:
            k += 1
        if k == 0:
            return self
        return QSeries(self.grading + k, self.coeffs[k:], self.order - k)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    # arithmetic

    def _coerce(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            return other
        return QSeries.constant(other, self.precision)

    def __add__(self, other):
        other = self._coerce(other)
        shift = other.grading - self.grading
        if shift.denominator != 1:
            if self.is_zero():
                return other
            if other.is_zero():
                return self
            raise ValueError("cannot add series whose gradings differ by a non-integer")
        g = min(self.grading, other.grading)
        prec = min(self.precision, other.precision)
        n = int(prec - g)
        out = [0] * max(n, 0)
        for s in (self, other):
            off = int(s.grading - g)
            for i, c in enumerate(s.coeffs):
                if off + i < n:
                    out[off + i] += c
        return QSeries(g, tuple(out), max(n, 0))

    __radd__ = __add__

    def __neg__(self):
        return QSeries(self.grading, tuple(-c for c in self.coeffs), self.order)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return QSeries(self.grading, tuple(other * c for c in self.coeffs), self.order)
        a, b = self.normalized(), other.normalized()
        n = min(a.order, b.order)
        out = [0] * n
        ac, bc = a.coeffs, b.coeffs
        for i in range(n):
            ci = ac[i]
            if ci == 0:
                continue
            for j in range(n - i):
                if bc[j]:
                    out[i + j] += ci * bc[j]
        return QSeries(a.grading + b.grading, tuple(out), n)

    __rmul__ = __mul__

    def inverse(self) -> "QSeries":
        a = self.normalized()
        if a.order == 0:
            raise ZeroDivisionError("series has no known nonzero coefficient")
        lead = Fraction(a.coeffs[0])
        n = a.order
        out = [Fraction(0)] * n
        out[0] = 1 / lead
        for k in range(1, n):
            s = sum(a.coeffs[j] * out[k - j] for j in range(1, k + 1))
            out[k] = -s / lead
        return QSeries(-a.grading, tuple(out), n)

    def __truediv__(self, other):
        if isinstance(other, QSeries):
            return self * other.inverse()
        return self * Fraction(1, 1) * (Fraction(1) / Fraction(other))

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = None
        base = self
        while e:
            if e & 1:
                result = base if result is None else result * base
            base = base * base
            e >>= 1
        if result is None:
            return QSeries.constant(1, self.order)
        return result

    def substitute(self, m: int) -> "QSeries":
        """f(m tau): q -> q^m."""
        n = self.order * m
        out = [0] * n
        for i, c in enumerate(self.coeffs):
            out[i * m] = c
        return QSeries(self.grading * m, tuple(out), n)

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.grading, self.coeffs))

    # numerics and serialisation

    def evaluate(self, tau, ctx: PrecisionContext = DEFAULT_CTX) -> mpc:
        with ctx.workprec():
            tau = _check_tau(tau)
            q = mp.exp(2j * mp.pi * tau)
            total = mpc(0)
            power = mpc(1)
            for c in self.coeffs:
                if c:
                    total += mpf(Fraction(c).numerator) / Fraction(c).denominator * power
                power *= q
            return mp.exp(2j * mp.pi * self.grading.numerator * tau / self.grading.denominator) * total

    def dump(self) -> str:
        """Header ``grading p/24, order N`` then one ``n c_n`` line per term."""
        g = self.grading * 24
        if g.denominator == 1:
            head = f"grading {g.numerator}/24, order {self.order}"
        else:
            head = f"grading {self.grading.numerator}/{self.grading.denominator}, order {self.order}"
        lines = [head] + [f"{i} {c}" for i, c in enumerate(self.coeffs)]
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "QSeries":
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        head = lines[0].replace(",", " ").split()
        grading = Fraction(head[1])
        order = int(head[3])
        coeffs = [0] * order
        for ln in lines[1:]:
            i, c = ln.split()
            coeffs[int(i)] = Fraction(c)
        return cls(grading, tuple(coeffs), order)


# Building blocks

def eta_series(m: int, N: int) -> QSeries:
    """eta(m tau) = q^(m/24) prod (1 - q^(mn)), to relative order N."""
    if m < 1 or N < 1:
        raise ValueError("m and N must be positive")
    return QSeries.from_product(Fraction(m, 24), range(m, N, m), N)


def bernoulli2(x) -> Fraction:
    x = Fraction(x)
    return x * x - x + Fraction(1, 6)


def modular_unit_g(a: int, N: int) -> QSeries:
    """g_a = q^(21 B2(a/21)/2) prod_{n = +-a mod 21} (1 - q^n), 1 <= a <= 10."""
    if not 1 <= a <= 10:
        raise ValueError("a must lie in 1..10")
    grading = 21 * bernoulli2(Fraction(a, 21)) / 2
    factors = [n for n in range(1, N) if n % 21 in (a, 21 - a)]
    return QSeries.from_product(grading, factors, N)


def unit_product(exponents: dict, N: int) -> QSeries:
    out = None
    for a, e in sorted(exponents.items()):
        term = modular_unit_g(a, N) ** e
        out = term if out is None else out * term
    return out


def eta_quotient(exponents: dict, N: int) -> QSeries:
    """prod eta(m tau)^e_m to relative order N."""
    out = None
    for m, e in sorted(exponents.items()):
        term = eta_series(m, N) ** e
        out = term if out is None else out * term
    return out


def x0_series(N: int) -> QSeries:
    """sqrt(7) x~ = eta(t) eta(3t) / (eta(7t) eta(21t))."""
    return eta_quotient({1: 1, 3: 1, 7: -1, 21: -1}, N)


def y_series(N: int) -> QSeries:
    """y~ = -(eta(t) eta(21t) / (eta(3t) eta(7t)))^2."""
    return -eta_quotient({1: 2, 21: 2, 3: -2, 7: -2}, N)


def sigma1(n: int) -> int:
    return sum(d for d in range(1, n + 1) if n % d == 0)


@lru_cache(maxsize=8)
def _sigma_table(N: int) -> tuple:
    s = [0] * N
    for d in range(1, N):
        for m in range(d, N, d):
            s[m] += d
    return tuple(s)


def E2_series(N: int) -> QSeries:
    """1 - 24 sum sigma_1(n) q^n."""
    s = _sigma_table(N)
    return QSeries(0, tuple([1] + [-24 * s[n] for n in range(1, N)]), N)


def g_eisenstein_series(N: int) -> QSeries:
    """96 - E2(t) + 3 E2(3t) + 49 E2(7t) - 147 E2(21t)."""
    E = E2_series(N)
    out = 96 - E + 3 * E.substitute(3) + 49 * E.substitute(7) - 147 * E.substitute(21)
    return out.truncate(Fraction(N))


def ramanujan_eta_residual(N: int) -> QSeries:
    """AB + 7/(AB) - (A/B)^2 - (B/A)^2 + 3 with A = eta(t)/eta(7t), B = A(3t).

    Returned through q^N; an exact identity makes it the zero series.
    """
    M = N + 4
    A = eta_quotient({1: 1, 7: -1}, M)
    B = A.substitute(3)
    AB = A * B
    ratio = A / B
    res = AB + 7 / AB - ratio ** 2 - ratio ** -2 + 3
    return res.truncate(Fraction(N + 1))


def curve_residual_series(N: int) -> QSeries:
    """sqrt(7) * P_{sqrt7,3}(x~, y~) = x0^2 + 7 + sqrt(7)... expressed without radicals.

    sqrt(7)(x + 1/x) = x0 + 7/x0 with x0 = sqrt(7) x, so the curve residual is
    x0 + 7/x0 + y + 1/y + 3, all with rational coefficients.
    """
    M = N + 4
    x0 = x0_series(M)
    y = y_series(M)
    res = x0 + 7 / x0 + y + 1 / y + 3
    return res.truncate(Fraction(N + 1))


# Numerics in the upper half-plane

def _check_tau(tau) -> mpc:
    tau = mpc(tau)
    if tau.imag <= 0:
        raise DomainError("tau must lie in the upper half-plane")
    if tau.imag < MIN_IM_TAU:
        raise DomainError("Im(tau) below 1e-3: too close to the real axis")
    return tau


def eta_numeric(m: int, tau, ctx: PrecisionContext = DEFAULT_CTX) -> mpc:
    """q^(m/24) prod (1 - q^(mn)) with the product cut once |q|^(mn) < 2^-(work_bits+10)."""
    with ctx.workprec():
        tau = _check_tau(tau)
        mt = m * tau
        q = mp.exp(2j * mp.pi * mt)
        aq = abs(q)
        stop = mpf(2) ** (-(ctx.work_bits + 10))
        prod = mpc(1)
        qn = q
        aqn = aq
        while aqn > stop:
            prod *= 1 - qn
            qn *= q
            aqn *= aq
        return mp.exp(2j * mp.pi * mt / 24) * prod


def x_tilde(tau, ctx: PrecisionContext = DEFAULT_CTX) -> mpc:
    with ctx.workprec():
        e = {m: eta_numeric(m, tau, ctx) for m in (1, 3, 7, 21)}
        return e[1] * e[3] / (mp.sqrt(7) * e[7] * e[21])


def y_tilde(tau, ctx: PrecisionContext = DEFAULT_CTX) -> mpc:
    with ctx.workprec():
        e = {m: eta_numeric(m, tau, ctx) for m in (1, 3, 7, 21)}
        return -(e[1] * e[21] / (e[3] * e[7])) ** 2


def E2_numeric(tau, ctx: PrecisionContext = DEFAULT_CTX) -> mpc:
    """1 - 24 sum n q^n / (1 - q^n), truncated where |q|^n n/(1-|q|) is negligible."""
    with ctx.workprec():
        tau = _check_tau(tau)
        q = mp.exp(2j * mp.pi * tau)
        aq = abs(q)
        stop = mpf(2) ** (-(ctx.work_bits + 10)) * (1 - aq)
        total = mpc(0)
        qn = q
        n = 1
        while n * abs(qn) > stop:
            total += n * qn / (1 - qn)
            qn *= q
            n += 1
        return 1 - 24 * total


def parametrization_residual(tau, ctx: PrecisionContext = DEFAULT_CTX) -> mpc:
    """P_{sqrt7,3}(x~(tau), y~(tau))."""
    with ctx.workprec():
        x = x_tilde(tau, ctx)
        y = y_tilde(tau, ctx)
        return mp.sqrt(7) * (x + 1 / x) + y + 1 / y + 3


def cm_points(ctx: PrecisionContext = DEFAULT_CTX) -> dict:
    """tau_+- = (-+9 + sqrt(-3))/42 and tau'_+- = (-+9 + sqrt(-3))/21."""
    with ctx.workprec():
        r = mpc(0, mp.sqrt(3))
        return {"tau+": (-9 + r) / 42, "tau-": (9 + r) / 42,
                "tau'+": (-9 + r) / 21, "tau'-": (9 + r) / 21}


def W21(tau):
    """tau -> -1/(21 tau)."""
    return -1 / (21 * tau)


def W7(tau):
    """tau -> (7 tau + 2)/(21 tau + 7)."""
    return (7 * tau + 2) / (21 * tau + 7)


def atkin_lehner_checks(tau, ctx: PrecisionContext = DEFAULT_CTX) -> dict:
    """Residuals of the W_21 and W_7 transformation rules of x~, y~ at ``tau``."""
    with ctx.workprec():
        tau = _check_tau(tau)
        x, y = x_tilde(tau, ctx), y_tilde(tau, ctx)
        t21, t7 = W21(tau), W7(tau)
        x21, y21 = x_tilde(t21, ctx), y_tilde(t21, ctx)
        x7, y7 = x_tilde(t7, ctx), y_tilde(t7, ctx)
        return {
            "W21: x -> 1/x": abs(x21 * x - 1),
            "W21: y -> y": abs(y21 - y) / max(1, abs(y)),
            "W7: x -> 1/x": abs(x7 * x - 1),
            "W7: y -> 1/y": abs(y7 * y - 1),
        }


def cm_action_checks(ctx: PrecisionContext = DEFAULT_CTX) -> dict:
    """W_21 and W_7 on the CM points, and W_7(0) = 2/7 exactly."""
    with ctx.workprec():
        cm = cm_points(ctx)
        return {
            "W21(tau+) = tau-": abs(W21(cm["tau+"]) - cm["tau-"]),
            "W21(tau-) = tau+": abs(W21(cm["tau-"]) - cm["tau+"]),
            "W21(tau'+) = tau'-/4": abs(W21(cm["tau'+"]) - cm["tau'-"] / 4),
            "W7(tau+) = tau-": abs(W7(cm["tau+"]) - cm["tau-"]),
            "W7(tau'+) = tau'-": abs(W7(cm["tau'+"]) - cm["tau'-"]),
            "W7(0) = 2/7": abs(W7(Fraction(0)) - Fraction(2, 7)),
        }


def geodesic_samples(count: int = 7, ctx: PrecisionContext = DEFAULT_CTX) -> list:
    """Points exp(i phi)/sqrt(21) between tau_- and tau_+ (on |tau|^2 = 1/21)."""
    with ctx.workprec():
        cm = cm_points(ctx)
        lo, hi = mp.arg(cm["tau-"]), mp.arg(cm["tau+"])
        return [mp.expj(lo + (hi - lo) * (k + 1) / (count + 1)) / mp.sqrt(21)
                for k in range(count)]
