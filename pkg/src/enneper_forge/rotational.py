"""Rotational harmonic immersions and the two-coaxial-circle problem.

The rotational family is X(r, theta) = (1/c)(e^{i theta}(a r + b/r), ln r).
For a = b real and positive, a member passes through the circles of radius
r at heights -l and +l exactly when

    g(c) = (a/c) (e^{cl} + e^{-cl}) = r.

g decreases on (0, x*/l) and increases afterwards, where x* solves
coth(x) = x, so there are 2, 1 or 0 solutions according to the sign of
r - g(x*/l).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .cexpr import HoloFn
from .cexpr.nodes import Z, const, div, mul
from .errors import DegenerateAt
from .geometry import immersion_margin
from .hfield import Domain, HarmonicField
from .surface import EnneperData

TANGENCY_RTOL = 1e-9
_NEWTON_MIN_SLOPE = 1e-14


@dataclass(frozen=True)
class RotationalSurface:
    a: complex
    b: complex
    c: float

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError("c must be positive")
        if self.a == 0 and self.b == 0:
            raise ValueError("a and b cannot both vanish")


def make_rotational(s: RotationalSurface, domain: Domain | None = None) -> EnneperData:
    """Enneper data L = (a/c) z, P = (conj(b)/c)/z, h = (1/c) ln|z|.

    The default domain is the annulus exp(-c) < |z| < exp(c), i.e. heights
    in (-1, 1).  Raises DegenerateAt if the circle |z|^2 = |b/a| lies in the
    domain and the immersion margin vanishes there.
    """
    a, b, c = complex(s.a), complex(s.b), float(s.c)
    if domain is None:
        domain = Domain.annulus(math.exp(-c), math.exp(c))
    if domain.kind != "annulus":
        raise ValueError("rotational surfaces live on annuli")
    L = HoloFn(mul(const(a / c), Z))
    P = HoloFn(div(const(b.conjugate() / c), Z), (0j,))
    h = HarmonicField(HoloFn.constant(0), 1.0 / c)
    data = EnneperData(L, P, h, domain, complex(math.sqrt(domain.params[0] * domain.params[1]), 0))
    if a != 0 and b != 0:
        rho = math.sqrt(abs(b / a))
        if domain.contains(rho, closed=True):
            for k in range(16):
                z = rho * complex(math.cos(2 * math.pi * k / 16), math.sin(2 * math.pi * k / 16))
                margin = immersion_margin(data, z)
                if margin <= 1e-12 * max(1.0, abs(a) ** 2 / c**2):
                    raise DegenerateAt(z, margin)
    return data


def profile(s: RotationalSurface, R: float) -> complex:
    """Radial function (1/c)(a e^{cR} + b e^{-cR}) at height R."""
    return (s.a * math.exp(s.c * R) + s.b * math.exp(-s.c * R)) / s.c


def _coth(x):
    return math.cosh(x) / math.sinh(x)


def coth_star() -> float:
    """The positive root of coth(x) = x."""
    def f(x):
        return _coth(x) - x

    lo, hi = 1.0, 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-10:
            break
    x = 0.5 * (lo + hi)
    for _ in range(20):
        # d/dx (coth x - x) = -1/sinh^2 x - 1
        step = f(x) / (-1.0 / math.sinh(x) ** 2 - 1.0)
        x -= step
        if abs(step) < 1e-16:
            break
    return x


X_STAR = coth_star()


def critical_ratio(a: float) -> float:
    """c1(a) = x*/(2 a cosh x*): two solutions for l/r below it, none above."""
    if not a > 0:
        raise ValueError("a must be positive")
    return X_STAR / (2 * a * math.cosh(X_STAR))


@dataclass(frozen=True)
class CircleProblem:
    a: float
    r: float
    l: float

    def __post_init__(self):
        for name in ("a", "r", "l"):
            value = getattr(self, name)
            if isinstance(value, complex):
                if value.imag != 0:
                    raise ValueError(f"{name} must be real (the circle problem needs a = b real)")
                object.__setattr__(self, name, value.real)
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class Root:
    c: float
    residual: float


@dataclass(frozen=True)
class CircleSolution:
    count: int
    roots: tuple[Root, ...] = field(default=())


def g(p: CircleProblem, c: float) -> float:
    """Planar radius at height l of the a = b member with parameter c."""
    return 2 * p.a * math.cosh(c * p.l) / c


def g_prime(p: CircleProblem, c: float) -> float:
    cl = c * p.l
    return 2 * p.a * (cl * math.sinh(cl) - math.cosh(cl)) / c**2


def _refine(p: CircleProblem, lo: float, hi: float) -> float:
    """Root of g - r in [lo, hi] (sign change assumed): Newton steps,
    replaced by bisection whenever they leave the shrinking bracket."""
    def f(c):
        return g(p, c) - p.r

    flo = f(lo)
    c = 0.5 * (lo + hi)
    for _ in range(200):
        fc = f(c)
        if fc == 0:
            return c
        if (fc > 0) == (flo > 0):
            lo, flo = c, fc
        else:
            hi = c
        slope = g_prime(p, c)
        nxt = c - fc / slope if abs(slope) > _NEWTON_MIN_SLOPE else None
        if nxt is None or not lo < nxt < hi:
            nxt = 0.5 * (lo + hi)
        if abs(nxt - c) <= 2 * math.ulp(c) or hi - lo <= 4 * math.ulp(c):
            return nxt
        c = nxt
    return c


def solve_two_circles(p: CircleProblem, tol: float = TANGENCY_RTOL) -> CircleSolution:
    """Count (and locate) the rotational surfaces through both circles.

    A minimum of g within relative ``tol`` of r counts as tangency (one
    solution)."""
    r, l = p.r, p.l
    c_min = X_STAR / l
    g_min = g(p, c_min)
    if g_min > r * (1 + tol):
        return CircleSolution(0)
    if abs(g_min - r) <= tol * r:
        return CircleSolution(1, (Root(c_min, abs(g_min - r)),))
    lo = c_min / 2
    while g(p, lo) <= r:
        lo /= 2
    hi = c_min * 2
    while g(p, hi) <= r:
        hi *= 2
    roots = []
    for bracket in ((lo, c_min), (c_min, hi)):
        c = _refine(p, *bracket)
        roots.append(Root(c, abs(g(p, c) - r)))
    return CircleSolution(2, tuple(roots))


def count_table(a: float, r: float, l_values) -> list[tuple[float, int]]:
    return [(l, solve_two_circles(CircleProblem(a, r, l)).count) for l in l_values]


def surface_through(p: CircleProblem, root: Root, margin: float = 0.1) -> EnneperData:
    """The a = b member for ``root`` on an annulus covering heights
    [-(1+margin) l, (1+margin) l]."""
    c = root.c
    ext = (1 + margin) * c * p.l
    return make_rotational(RotationalSurface(p.a, p.a, c), Domain.annulus(math.exp(-ext), math.exp(ext)))
