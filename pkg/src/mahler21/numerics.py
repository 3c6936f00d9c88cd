"""Precision handling, tanh-sinh quadrature and the arithmetic-geometric mean.

All real and complex values are ``mpmath`` numbers.  A :class:`PrecisionContext`
carries the binary working precision and the number of decimal digits a caller
wants to trust; every numeric routine in the package takes one and evaluates
inside ``mp.workprec(ctx.work_bits)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from mpmath import mp, mpc, mpf

Real = mpf
Complex = mpc

DEFAULT_DIGITS = 30
DEFAULT_GUARD_BITS = 32
DEFAULT_MAX_LEVEL = 12
MIN_LEVEL = 3


class NumericsError(ArithmeticError):
    """Base class for numerical failures in this package."""


class NonConvergence(NumericsError):
    pass


class DomainError(NumericsError, ValueError):
    pass


@dataclass(frozen=True)
class PrecisionContext:
    target_digits: int = DEFAULT_DIGITS
    guard_bits: int = DEFAULT_GUARD_BITS
    work_bits: int = 0

    def __post_init__(self):
        if self.target_digits < 1:
            raise ValueError("target_digits must be positive")
        if self.guard_bits < 16:
            raise ValueError("guard_bits must be at least 16")
        needed = math.ceil(self.target_digits * math.log2(10)) + self.guard_bits
        if self.work_bits == 0:
            object.__setattr__(self, "work_bits", needed)
        elif self.work_bits < needed:
            raise ValueError(f"work_bits={self.work_bits} below required {needed}")

    @classmethod
    def from_digits(cls, digits: int, guard_bits: int = DEFAULT_GUARD_BITS) -> "PrecisionContext":
        return cls(target_digits=digits, guard_bits=guard_bits)

    def workprec(self):
        return mp.workprec(self.work_bits)

    def doubled(self) -> "PrecisionContext":
        """Same target, twice the working bits."""
        return PrecisionContext(self.target_digits, self.guard_bits, 2 * self.work_bits)

    def with_digits(self, digits: int) -> "PrecisionContext":
        return PrecisionContext(digits, self.guard_bits)

    @property
    def eps(self) -> mpf:
        """10^-target_digits as an mpf."""
        with self.workprec():
            return mpf(10) ** (-self.target_digits)


DEFAULT_CTX = PrecisionContext()


def to_decimal(x, ctx: PrecisionContext = DEFAULT_CTX) -> str:
    """Canonical decimal string of ``x`` at the context's target digits."""
    with ctx.workprec():
        return mp.nstr(x, ctx.target_digits, min_fixed=-mp.inf, max_fixed=mp.inf)


def from_decimal(s: str, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    with ctx.workprec():
        return mpf(s)


def is_finite(v) -> bool:
    if isinstance(v, mpc):
        return mp.isfinite(v.real) and mp.isfinite(v.imag)
    return mp.isfinite(v)


class Singularity(enum.Enum):
    NONE = "none"
    INVERSE_SQRT_LEFT = "inverse_sqrt_left"
    INVERSE_SQRT_RIGHT = "inverse_sqrt_right"
    INVERSE_SQRT_BOTH = "inverse_sqrt_both"
    LOG_ENDPOINT = "log_endpoint"

    @property
    def left(self) -> bool:
        return self in (Singularity.INVERSE_SQRT_LEFT, Singularity.INVERSE_SQRT_BOTH,
                        Singularity.LOG_ENDPOINT)

    @property
    def right(self) -> bool:
        return self in (Singularity.INVERSE_SQRT_RIGHT, Singularity.INVERSE_SQRT_BOTH,
                        Singularity.LOG_ENDPOINT)


@dataclass(frozen=True)
class IntegrandSpec:
    """A real integrand on ``[left, right]`` with its endpoint behaviour.

    Near an endpoint declared singular the evaluator is called at raised
    precision, so expressions such as ``1 - t*t`` stay accurate when ``t`` sits
    within ``2**-work_bits`` of the endpoint.
    """

    evaluator: Callable[[mpf], mpf]
    left_endpoint: mpf
    right_endpoint: mpf
    singularity_class: Singularity = Singularity.NONE
    max_level: int = field(default=DEFAULT_MAX_LEVEL, compare=False)


@lru_cache(maxsize=64)
def _level_nodes(level: int, prec: int, cutoff_bits: int) -> tuple[tuple[mpf, mpf], ...]:
    """Positive-side nodes of level ``level`` as (1 - x, weight) pairs.

    Level 0 uses abscissae s = 0, 1, 2, ...; level l > 0 adds the odd
    multiples of 2**-l.  Generation stops once 1 - x drops below 2**-cutoff_bits.
    """
    out = []
    with mp.workprec(prec):
        h = mpf(2) ** (-level)
        half_pi = mp.pi / 2
        tiny = mpf(2) ** (-cutoff_bits)
        j = 0 if level == 0 else None
        k = 1
        while True:
            if level == 0:
                s = mpf(j)
                j += 1
            else:
                s = (2 * k - 1) * h
                k += 1
            u = half_pi * mp.sinh(s)
            comp = 2 / (1 + mp.exp(2 * u))
            if comp < tiny:
                break
            w = half_pi * mp.cosh(s) / mp.cosh(u) ** 2
            out.append((comp, w))
    return tuple(out)


def _evaluate(f, t_of, comp, ctx_bits, singular_here, extra_bits=12):
    if singular_here:
        _, exp = mp.frexp(comp)
        bits = ctx_bits + max(0, -int(exp)) + extra_bits
    else:
        bits = ctx_bits
    with mp.workprec(bits):
        t = t_of(comp)
        try:
            v = f(t)
        except ZeroDivisionError as e:
            raise DomainError(f"integrand division by zero at t={mp.nstr(t, 20)}") from e
    if not is_finite(v):
        raise DomainError(f"integrand non-finite at t={mp.nstr(t, 20)}")
    if isinstance(v, mpc):
        if v.imag != 0:
            raise DomainError("integrand returned a complex value")
        v = v.real
    return v


def integrate(spec: IntegrandSpec, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    """Tanh-sinh quadrature with level doubling.

    Stops when two successive levels agree to ``target_digits + 2`` decimal
    digits (absolute), raising :class:`NonConvergence` past ``spec.max_level``.
    """
    f = spec.evaluator
    sing = spec.singularity_class
    wb = ctx.work_bits
    with mp.workprec(wb):
        a = mpf(spec.left_endpoint)
        b = mpf(spec.right_endpoint)
        if not a < b:
            raise DomainError("integration requires left < right")
        half = (b - a) / 2
        mid = (a + b) / 2
        tol = mpf(10) ** (-(ctx.target_digits + 2))

    cutoff = 2 * wb + 16 if sing is not Singularity.NONE else wb + 16
    node_prec = wb + 24

    def right_t(comp):
        return b - half * comp

    def left_t(comp):
        return a + half * comp

    total = mpf(0)
    previous = None
    for level in range(spec.max_level + 1):
        nodes = _level_nodes(level, node_prec, cutoff)
        acc = mpf(0)
        if level == 0:
            with mp.workprec(wb):
                acc = mp.pi / 2 * _evaluate(f, lambda c: mid, mpf(1), wb, False)
            nodes = nodes[1:]  # s = 0 handled above
        for comp, w in nodes:
            fr = _evaluate(f, right_t, comp, wb, sing.right)
            fl = _evaluate(f, left_t, comp, wb, sing.left)
            with mp.workprec(wb):
                acc += w * (fr + fl)
        with mp.workprec(wb):
            h = mpf(2) ** (-level)
            total = total / 2 + h * acc if level else acc
            estimate = half * total
        if previous is not None and level >= MIN_LEVEL:
            with mp.workprec(wb):
                if abs(estimate - previous) <= tol:
                    return +estimate
        previous = estimate
    raise NonConvergence(
        f"tanh-sinh did not settle by level {spec.max_level} on "
        f"[{mp.nstr(a, 10)}, {mp.nstr(b, 10)}]"
    )


def quad(f, a, b, ctx: PrecisionContext = DEFAULT_CTX,
         singularity: Singularity = Singularity.NONE) -> mpf:
    """Shorthand for ``integrate(IntegrandSpec(f, a, b, singularity), ctx)``."""
    return integrate(IntegrandSpec(f, a, b, singularity), ctx)


def agm(a0, b0, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    """Arithmetic-geometric mean of two positive reals."""
    with ctx.workprec():
        a = mpf(a0)
        b = mpf(b0)
        if not (a > 0 and b > 0):
            raise DomainError("agm needs positive arguments")
        stop = mpf(2) ** (-ctx.work_bits + ctx.guard_bits)
        for _ in range(10 * ctx.work_bits):
            if abs(a - b) < stop * a:
                # one more step: the error after it is quadratic in |a - b|
                return (a + b) / 2
            a, b = (a + b) / 2, mp.sqrt(a * b)
    raise NonConvergence("agm iteration did not converge")
