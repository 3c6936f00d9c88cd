"""The curve a(x + 1/x) + y + 1/y + c = 0 in Weierstrass form.

With X = -a/(xy) and Y = a/(2xy) (y - 1/y - a(x - 1/x)) the curve becomes

    Y^2 = X (X^2 + (c^2/4 - 1 - a^2) X + a^2).

Points use floating mpmath coordinates (complex allowed); equality and the
recognition of the identity use a tolerance of 10^(-target_digits/2).
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from mpmath import mp, mpc, mpf

from .numerics import DEFAULT_CTX, DomainError, PrecisionContext


class RegionError(DomainError):
    pass


class KernelPoint(DomainError):
    pass


@dataclass(frozen=True)
class CurvePoint:
    X: object = None
    Y: object = None

    @property
    def is_infinity(self) -> bool:
        return self.X is None

    @property
    def is_real(self) -> bool:
        if self.is_infinity:
            return True
        return all(not isinstance(v, mpc) or v.imag == 0 for v in (self.X, self.Y))

    def __repr__(self):
        if self.is_infinity:
            return "O"
        return f"({mp.nstr(self.X, 12)}, {mp.nstr(self.Y, 12)})"


INFINITY = CurvePoint()


def _tol(ctx: PrecisionContext) -> mpf:
    with ctx.workprec():
        return mpf(10) ** (-(ctx.target_digits // 2))


def _close(u, v, tol) -> bool:
    return abs(u - v) <= tol * max(1, abs(u), abs(v))


def _clean(z):
    """Drop a negligible imaginary part so real points stay mpf."""
    if isinstance(z, mpc) and abs(z.imag) <= mpf(2) ** (-mp.prec + 8) * max(1, abs(z.real)):
        return z.real
    return z


@dataclass(frozen=True)
class WeierstrassCurve:
    """Y^2 = X^3 + A2 X^2 + A4 X."""

    A2: object
    A4: object
    ctx: PrecisionContext = DEFAULT_CTX

    @classmethod
    def from_family(cls, a, c, ctx: PrecisionContext = DEFAULT_CTX) -> "WeierstrassCurve":
        with ctx.workprec():
            a, c = mpf(a), mpf(c)
            return cls(c * c / 4 - 1 - a * a, a * a, ctx)

    def rhs(self, X):
        return X * (X * X + self.A2 * X + self.A4)

    def discriminant(self):
        # cubic X (X^2 + A2 X + A4): 16 A4^2 (A2^2 - 4 A4)
        return 16 * self.A4 ** 2 * (self.A2 ** 2 - 4 * self.A4)

    def residual(self, pt: CurvePoint):
        if pt.is_infinity:
            return mpf(0)
        with self.ctx.workprec():
            return abs(pt.Y ** 2 - self.rhs(pt.X)) / max(1, abs(pt.Y) ** 2)

    def contains(self, pt: CurvePoint) -> bool:
        with self.ctx.workprec():
            return self.residual(pt) <= mpf(10) ** (-self.ctx.target_digits)

    def point(self, X, Y) -> CurvePoint:
        return CurvePoint(_clean(X), _clean(Y))

    def lift_x(self, X, sign: int = 1) -> CurvePoint:
        with self.ctx.workprec():
            return self.point(X, sign * mp.sqrt(self.rhs(X)))

    def equal(self, p: CurvePoint, q: CurvePoint) -> bool:
        if p.is_infinity or q.is_infinity:
            return p.is_infinity and q.is_infinity
        t = _tol(self.ctx)
        with self.ctx.workprec():
            return _close(p.X, q.X, t) and _close(p.Y, q.Y, t)

    def negate(self, p: CurvePoint) -> CurvePoint:
        if p.is_infinity:
            return p
        return CurvePoint(p.X, -p.Y)

    def add(self, p: CurvePoint, q: CurvePoint) -> CurvePoint:
        if p.is_infinity:
            return q
        if q.is_infinity:
            return p
        t = _tol(self.ctx)
        with self.ctx.workprec():
            if _close(p.X, q.X, t):
                if _close(p.Y, -q.Y, t):
                    return INFINITY
                lam = (3 * p.X ** 2 + 2 * self.A2 * p.X + self.A4) / (2 * p.Y)
            else:
                lam = (q.Y - p.Y) / (q.X - p.X)
            X3 = lam * lam - self.A2 - p.X - q.X
            Y3 = -(p.Y + lam * (X3 - p.X))
            return self.point(X3, Y3)

    def sub(self, p: CurvePoint, q: CurvePoint) -> CurvePoint:
        return self.add(p, self.negate(q))

    def scalar_mul(self, n: int, p: CurvePoint) -> CurvePoint:
        if n < 0:
            return self.scalar_mul(-n, self.negate(p))
        result = INFINITY
        addend = p
        while n:
            if n & 1:
                result = self.add(result, addend)
            addend = self.add(addend, addend)
            n >>= 1
        return result

    def torsion_order(self, p: CurvePoint, bound: int = 16):
        """Least n <= bound with n p = O, or None."""
        acc = p
        for n in range(1, bound + 1):
            if acc.is_infinity:
                return n
            acc = self.add(acc, p)
        return None

    def random_point(self, rng: random.Random, real: bool = True) -> CurvePoint:
        """A point with random X; complex coordinates unless a real one exists."""
        with self.ctx.workprec():
            while True:
                if real:
                    X = mpf(rng.uniform(-4, 8))
                else:
                    X = mpc(rng.uniform(-3, 3), rng.uniform(-3, 3))
                r = self.rhs(X)
                if real and r < 0:
                    continue
                return self.lift_x(X, rng.choice((1, -1)))


def to_weierstrass(x, y, a, c, ctx: PrecisionContext = DEFAULT_CTX) -> CurvePoint:
    with ctx.workprec():
        a = mpf(a)
        if x == 0 or y == 0:
            raise DomainError("x = 0 or y = 0 maps to a labelled point, not an affine one")
        X = -a / (x * y)
        Y = a / (2 * x * y) * (y - 1 / y - a * (x - 1 / x))
        return CurvePoint(_clean(X), _clean(Y))


def from_weierstrass(pt: CurvePoint, a, c, ctx: PrecisionContext = DEFAULT_CTX):
    if pt.is_infinity:
        raise DomainError("O has no affine (x, y) image")
    with ctx.workprec():
        a, c = mpf(a), mpf(c)
        X, Y = pt.X, pt.Y
        if X == 0 or X == a * a or X == 1:
            raise DomainError("X in {0, 1, a^2} is excluded")
        x = a * (c * X - 2 * Y) / (2 * X * (X - a * a))
        y = (c * X + 2 * Y) / (2 * X * (X - 1))
        return _clean(x), _clean(y)


def family_points(a, c, ctx: PrecisionContext = DEFAULT_CTX) -> dict:
    """P, Q, P + Q = (0, 0), 2P and 2Q from their closed forms."""
    with ctx.workprec():
        a, c = mpf(a), mpf(c)
        a2 = a * a
        x2 = (a2 - 1) ** 2 / c ** 2
        y2 = (a2 - 1) * (2 * a2 * a2 - a2 * c * c - 4 * a2 - c * c + 2) / (2 * c ** 3)
        return {
            "P": CurvePoint(mpf(1), c / 2),
            "Q": CurvePoint(a2, c * a2 / 2),
            "P+Q": CurvePoint(mpf(0), mpf(0)),
            "2P": CurvePoint(x2, y2),
            "2Q": CurvePoint(x2, -y2),
        }


def named_points(a, c, ctx: PrecisionContext = DEFAULT_CTX, require_real: bool = False) -> dict:
    """P, Q, S_+, S_-, T_+, T_- on the Weierstrass model.

    S_+- need c/2 < a + 1 and T_+- need c/2 < a - 1.  The square roots may be
    imaginary, giving complex points; ``require_real`` turns that into a
    :class:`RegionError`.
    """
    with ctx.workprec():
        a, c = mpf(a), mpf(c)
        pts = family_points(a, c, ctx)
        out = {"P": pts["P"], "Q": pts["Q"]}
        complex_flags = {}
        if c / 2 < a + 1:
            r = mp.sqrt(mpc((1 - c / 2) ** 2 - a * a))
            base = 1 - c / 2
            out["S+"] = CurvePoint(_clean(base - r), _clean(r * (base - r)))
            out["S-"] = CurvePoint(_clean(base + r), _clean(-r * (base + r)))
            complex_flags["S"] = (1 - c / 2) ** 2 < a * a
        if c / 2 < a - 1:
            s = mp.sqrt(mpc((1 + c / 2) ** 2 - a * a))
            base = 1 + c / 2
            out["T+"] = CurvePoint(_clean(base + s), _clean(s * (base + s)))
            out["T-"] = CurvePoint(_clean(base - s), _clean(-s * (base - s)))
            complex_flags["T"] = (1 + c / 2) ** 2 < a * a
        if require_real and any(complex_flags.values()):
            raise RegionError("the defining radicals are imaginary for these (a, c)")
        out["complex"] = complex_flags
        return out


def original_named_points(a, c, ctx: PrecisionContext = DEFAULT_CTX) -> dict:
    """S-bar_+-, T-bar_+- and Q-bar in the original (x, y) coordinates."""
    with ctx.workprec():
        a, c = mpf(a), mpf(c)
        r = mp.sqrt(mpc((1 - c / 2) ** 2 - a * a))
        s = mp.sqrt(mpc((1 + c / 2) ** 2 - a * a))
        return {
            "S+": (_clean((1 - c / 2 + r) / a), mpf(-1)),
            "S-": (_clean((1 - c / 2 - r) / a), mpf(-1)),
            "T+": (_clean((-1 - c / 2 + s) / a), mpf(1)),
            "T-": (_clean((-1 - c / 2 - s) / a), mpf(1)),
            "Q": ((1 - a * a) / (a * c), c / (a * a - 1)),
        }


def c0_value(a, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    """The c for which 2P = 2Q = ((a^2+1)/2, 0)."""
    with ctx.workprec():
        a = mpf(a)
        return mp.sqrt(2) * (a * a - 1) / mp.sqrt(a * a + 1)


def isogeny_target(a, ctx: PrecisionContext = DEFAULT_CTX) -> WeierstrassCurve:
    """Y'^2 = X'(X'^2 + 2(a^4 - 6a^2 + 1)/(a^2+1)^2 X' + 1)."""
    with ctx.workprec():
        a = mpf(a)
        a2 = a * a
        return WeierstrassCurve(2 * (a2 * a2 - 6 * a2 + 1) / (a2 + 1) ** 2, mpf(1), ctx)


def isogeny_phi(pt: CurvePoint, a, ctx: PrecisionContext = DEFAULT_CTX) -> CurvePoint:
    """Degree-2 isogeny from the (c0) curve to the target above; kernel is X = 2a^2/(a^2+1)."""
    if pt.is_infinity:
        return INFINITY
    with ctx.workprec():
        a = mpf(a)
        a2 = a * a
        d = (a2 + 1) * pt.X - 2 * a2
        if abs(d) <= mpf(2) ** (-ctx.work_bits // 2):
            raise KernelPoint("point lies in the kernel of the isogeny")
        X1 = 2 * (a2 + 1) * pt.Y ** 2 / d ** 2
        Y1 = 2 * mp.sqrt(2) * pt.Y / (a2 + 1) ** mpf(1.5) * (1 + a2 * (a2 - 1) ** 2 / d ** 2)
        return CurvePoint(_clean(X1), _clean(Y1))


# Divisors on the subgroup generated by P and Q, modulo (R) + (-R) = 0.

_LABELS = {(0, 0): "O", (1, 0): "P", (0, 1): "Q", (1, 1): "P+Q",
           (-1, 0): "-P", (0, -1): "-Q"}
_NAMES = {v: k for k, v in _LABELS.items()}


class Divisor:
    """Formal sum of points iP + jQ with relations coming from torsion.

    ``relations`` are vectors (i, j) known to be O; elements are reduced modulo
    the lattice they span (plus sign identification in the anti-invariant quotient).
    """

    def __init__(self, terms: dict | None = None, relations: Iterable[tuple[int, int]] = ((2, 2),)):
        self.relations = tuple(relations)
        self.terms = Counter()
        for key, m in (terms or {}).items():
            if isinstance(key, str):
                key = _NAMES[key]
            self.terms[key] += m

    def degree(self) -> int:
        return sum(self.terms.values())

    def _reduce(self, v):
        # brute-force canonical representative of v + lattice within a box
        best = None
        for r1 in range(-4, 5):
            for r2 in range(-4, 5) if len(self.relations) > 1 else (0,):
                cand = list(v)
                for coef, rel in zip((r1, r2), self.relations):
                    cand[0] += coef * rel[0]
                    cand[1] += coef * rel[1]
                cand = tuple(cand)
                key = (abs(cand[0]) + abs(cand[1]), -cand[0], -cand[1])
                if best is None or key < best[0]:
                    best = (key, cand)
        return best[1]

    def anti_invariant(self) -> Counter:
        """Image in Z[E]^- (tensor Q): (R) = -(-R), and 2-torsion classes vanish."""
        out = Counter()
        for v, m in self.terms.items():
            r = self._reduce(v)
            neg = self._reduce((-r[0], -r[1]))
            if r == neg:
                continue  # R = -R: (R) is killed in the anti-invariant quotient
            if (r[0], r[1]) < (neg[0], neg[1]):
                r, m = neg, -m
            out[r] += m
        return Counter({k: v for k, v in out.items() if v})

    def named(self) -> dict:
        return {_label(k): v for k, v in sorted(self.anti_invariant().items())}

    def raw(self) -> dict:
        return {_label(k): v for k, v in sorted(self.terms.items()) if v}

    def diamond(self, other: "Divisor") -> "Divisor":
        out = Counter()
        for va, ma in self.terms.items():
            for vb, nb in other.terms.items():
                out[(va[0] - vb[0], va[1] - vb[1])] += ma * nb
        return Divisor(out, self.relations)

    def pullback(self, fibres: dict) -> "Divisor":
        out = Counter()
        for v, m in self.terms.items():
            for w in fibres[v]:
                out[w] += m
        return Divisor(out, self.relations)

    def scaled(self, k: int) -> "Divisor":
        return Divisor({v: k * m for v, m in self.terms.items()}, self.relations)


def _label(v) -> str:
    if v in _LABELS:
        return _LABELS[v]
    i, j = v
    parts = []
    if i:
        parts.append(f"{'' if i == 1 else '-' if i == -1 else i}P")
    if j:
        parts.append(f"{'' if j == 1 else '-' if j == -1 else j}Q")
    return "+".join(parts).replace("+-", "-")


def divisors_and_diamond(a=None, c=None) -> tuple[Divisor, Divisor, Divisor]:
    """(x), (y) and (x) <> (y) on the generic curve (a != 1), where P + Q is 2-torsion."""
    if a is not None and a == 1:
        raise DomainError("a = 1 collapses P and Q")
    div_x = Divisor({"P+Q": -1, "P": 1, "-Q": -1, "O": 1})
    div_y = Divisor({"P+Q": -1, "P": -1, "-Q": 1, "O": 1})
    return div_x, div_y, div_x.diamond(div_y)


def pullback_diamond() -> Divisor:
    """(x' o phi) <> (y' o phi) on the (c0) curve.

    There 4P = O and 2(P + Q) = O.  On the target, with P' = phi(P) of order 4,
    (x') = -(2P') + (P') - (-P') + (O') and (y') = -(2P') - (P') + (-P') + (O').
    Fibres of phi are cosets of the kernel {O, 3P + Q}.
    """
    rel = ((4, 0), (2, 2))
    kern = (3, 1)
    # target labels written as source representatives: P' <- P, 2P' <- 2P, O' <- O
    target_x = {(2, 0): -1, (1, 0): 1, (-1, 0): -1, (0, 0): 1}
    target_y = {(2, 0): -1, (1, 0): -1, (-1, 0): 1, (0, 0): 1}
    fibres = {v: [v, (v[0] + kern[0], v[1] + kern[1])] for v in target_x}
    dx = Divisor(target_x, rel).pullback(fibres)
    dy = Divisor(target_y, rel).pullback(fibres)
    return dx.diamond(dy)


# Tame symbols, checked numerically by approaching each point along the curve.

def _approach(curve: WeierstrassCurve, target: str, base: CurvePoint | None, eps):
    """A curve point at distance ~eps from ``target`` along a local parameter."""
    if target == "O":
        X = 1 / eps ** 2
        return curve.lift_x(X, 1)
    if base.Y == 0:
        # 2-torsion: use Y as the local parameter and solve the cubic near base.X
        X = base.X
        for _ in range(200):
            g = curve.rhs(X) - eps ** 2
            dg = 3 * X ** 2 + 2 * curve.A2 * X + curve.A4
            step = g / dg
            X -= step
            if abs(step) < mpf(2) ** (-mp.prec + 4):
                break
        return CurvePoint(X, eps)
    X = base.X + eps
    Y = mp.sqrt(curve.rhs(X))
    if abs(Y - base.Y) > abs(Y + base.Y):
        Y = -Y
    return CurvePoint(X, Y)


def tame_symbol_numeric(f, g, vf: int, vg: int, curve: WeierstrassCurve, target: str,
                        base: CurvePoint | None, ctx: PrecisionContext = DEFAULT_CTX,
                        steps=(mpf("1e-6"), mpf("1e-8"))) -> mpf:
    """|(f, g)_R| = |f^vg / g^vf| at R, Richardson-extrapolated along an approach path."""
    with mp.workprec(ctx.work_bits + 64):
        vals = []
        for eps in steps:
            pt = _approach(curve, target, base, mpf(eps))
            fx, gx = f(pt), g(pt)
            vals.append(abs(fx ** vg / gx ** vf))
        h1, h2 = (mpf(s) for s in steps)
        v1, v2 = vals
        return +((h1 * v2 - h2 * v1) / (h1 - h2))


VALUATIONS_X = {"P": 1, "-Q": -1, "P+Q": -1, "O": 1}
VALUATIONS_Y = {"P": -1, "-Q": 1, "P+Q": -1, "O": 1}


def tame_symbol_magnitudes(a, c=None, ctx: PrecisionContext = DEFAULT_CTX,
                           x_scale=1) -> dict:
    """|(x_scale * x, y)_R| for R in {P, -Q, P+Q, O}, evaluated numerically.

    ``c`` only has to be admissible; the magnitudes do not depend on it.
    ``x_scale`` allows the rescaled variants such as x_0 = sqrt(7) x.
    """
    with ctx.workprec():
        a = mpf(a)
        if not a > 0:
            raise DomainError("a must be positive")
        c = mpf(3) / 2 if c is None else mpf(c)
        curve = WeierstrassCurve.from_family(a, c, ctx)
        pts = family_points(a, c, ctx)
        bases = {"P": pts["P"], "-Q": curve.negate(pts["Q"]), "P+Q": pts["P+Q"], "O": None}
        s = mpf(x_scale)

        def xf(pt):
            return s * a * (c * pt.X - 2 * pt.Y) / (2 * pt.X * (pt.X - a * a))

        def yf(pt):
            return (c * pt.X + 2 * pt.Y) / (2 * pt.X * (pt.X - 1))

        out = {}
        for label, base in bases.items():
            out[label] = tame_symbol_numeric(xf, yf, VALUATIONS_X[label], VALUATIONS_Y[label],
                                             curve, label, base, ctx)
        return out


def tame_symbol_expected(a, x_scale=1) -> dict:
    """Closed forms: |(x,y)| = 1/a, 1/a, a, a at P, -Q, P+Q, O, times x_scale^v_R(y)."""
    a = mpf(a)
    base = {"P": 1 / a, "-Q": 1 / a, "P+Q": a, "O": a}
    return {k: v * mpf(x_scale) ** VALUATIONS_Y[k] for k, v in base.items()}
