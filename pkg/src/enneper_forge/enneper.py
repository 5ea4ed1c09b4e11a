"""Enneper-type construction X = (L + conj(P), h) and its transformations."""
from __future__ import annotations

import math

import numpy as np

from .cexpr import HoloFn, holomorphy_residual, integrate_path, primitive
from .cexpr.nodes import Z, add, const, div, mul, sub
from .errors import DegenerateAt, NotHolomorphic
from .geometry import DEGENERACY_RTOL, validate
from .hfield import Domain, HarmonicField, laplacian_residual
from .surface import (
    EnneperData,
    HarmonicImmersion,
    WeierstrassData,
    enneper_of,
    eval_point,
    weierstrass_triple,
)

__all__ = [
    "EnneperData", "HarmonicImmersion", "build", "conjugate", "eval_point",
    "holomorphy_check", "hopf", "scale", "to_weierstrass",
]

PERIOD_TOL = 1e-9
_FD_STEP = 1e-4
_CHECK_SEED = 7


def _check_points(domain: Domain, n: int = 16) -> np.ndarray:
    rng = np.random.default_rng(_CHECK_SEED)
    p = domain.params
    if domain.kind == "annulus":
        margin = 0.05 * (p[1] - p[0])
    elif domain.kind == "rectangle":
        margin = 0.05 * min(p[1] - p[0], p[3] - p[2])
    elif domain.kind == "disk":
        margin = 0.05 * p[2]
    else:
        margin = 0.05
    return domain.random_points(rng, n, margin)


def _far_from(points, singularities, dist):
    return [z for z in points if all(abs(z - s) > dist for s in singularities)]


def holomorphy_check(data: EnneperData, n: int = 16) -> float:
    """Largest relative dbar-residual of L and P and Laplacian residual of h
    over ``n`` fixed interior points."""
    data = enneper_of(data)
    pts = _check_points(data.domain, n)
    if data.domain.kind == "annulus":
        # principal-branch logs jump across the negative real axis
        pts = [z for z in pts if z.real > 0 or abs(z.imag) > 1e-2]
    worst = 0.0
    for fn in (data.L, data.P):
        for z in _far_from(pts, fn.singularities, 10 * _FD_STEP):
            res = holomorphy_residual(fn, [z], _FD_STEP)
            worst = max(worst, res / max(1.0, abs(fn(z))))
    for z in _far_from(pts, (0j,) if data.h.log_coeff else (), 1e-2):
        res = laplacian_residual(data.h, z, 1e-3)
        worst = max(worst, res / max(1.0, abs(data.h(z))))
    return worst


def build(L, P, h: HarmonicField, domain: Domain, samples: int = 64,
          base_point=None, rtol: float = DEGENERACY_RTOL) -> HarmonicImmersion:
    """Validate Enneper data on a samples x samples grid and wrap it.

    The immersion criterion is the sharp one, |hopf| < ||Phi||^2.  Where
    |L'| = |P'| the report flags it but the surface is not rejected.
    """
    L = HoloFn.parse(L) if isinstance(L, str) else L
    P = HoloFn.parse(P) if isinstance(P, str) else P
    data = EnneperData(L, P, h, domain, base_point)
    residual = holomorphy_check(data)
    if residual >= 1e-6:
        raise NotHolomorphic(f"holomorphy residual {residual:.3e}")
    report = validate(data, samples, samples, residual, rtol)
    bad = report.first_degenerate()
    if bad is not None:
        raise DegenerateAt(*bad)
    return HarmonicImmersion(data, report)


def hopf(data) -> HoloFn:
    """L' P' + (h_z)^2."""
    data = enneper_of(data)
    a, b, c = data.dL, data.dP, data.hz
    body = add(mul(a.body, b.body), mul(c.body, c.body))
    sing = tuple(dict.fromkeys(a.singularities + b.singularities + c.singularities))
    return HoloFn(body, sing)


def to_weierstrass(data) -> WeierstrassData:
    return weierstrass_triple(data)


def _residue(fn: HoloFn, domain: Domain) -> complex:
    """(1/2 pi i) times the integral of ``fn`` around the domain's hole."""
    loop = domain.hole_loop()
    if loop is None:
        return 0j
    c = integrate_path(fn, loop, 1e-12) / (2j * math.pi)
    return complex(round(c.real, 12), round(c.imag, 12))


def _check_nonvanishing(f: HoloFn, domain: Domain, z0: complex):
    # polar grids skip the centre, so add it and the base point explicitly
    extra = [z0, domain.default_base_point()]
    zs = np.concatenate([domain.grid(32, 32).ravel(), extra])
    vals = f.values(zs)
    scale = max(1.0, float(np.nanmax(np.abs(vals))))
    bad = np.flatnonzero(~np.isfinite(vals) | (np.abs(vals) <= 1e-12 * scale))
    if bad.size:
        raise DegenerateAt(complex(zs[bad[0]]), float(abs(vals[bad[0]])))


def scale(data, f, h1_at_z0: float | None = None) -> EnneperData:
    """Enneper data of the surface with data (f L', f P', f h_z).

    L1, P1 vanish at the base point and h1 takes the value ``h1_at_z0``
    there (default: h(z0)).  On an annulus the periods of L1 + conj(P1) and
    of h1 around the hole are computed; nonzero ones are recorded in
    ``periods`` and the result is then valid on the slit annulus only.
    """
    data = enneper_of(data)
    f = HoloFn.parse(f) if isinstance(f, str) else f
    if isinstance(f, (int, float, complex)):
        f = HoloFn.constant(f)
    domain, z0 = data.domain, data.base_point
    _check_nonvanishing(f, domain, z0)
    if h1_at_z0 is None:
        h1_at_z0 = data.h(z0)

    sing = tuple(dict.fromkeys(f.singularities + data.dL.singularities))
    fL = HoloFn(mul(f.body, data.dL.body), sing)
    sing = tuple(dict.fromkeys(f.singularities + data.dP.singularities))
    fP = HoloFn(mul(f.body, data.dP.body), sing)
    sing = tuple(dict.fromkeys(f.singularities + data.hz.singularities))
    fh = HoloFn(mul(f.body, data.hz.body), sing)

    L1 = primitive(fL, z0, 0j, domain.route)
    P1 = primitive(fP, z0, 0j, domain.route)

    c = _residue(fh, domain)
    beta = 2 * c.real + 0.0
    if beta:
        sing = tuple(dict.fromkeys(fh.singularities + (0j,)))
        integrand = HoloFn(sub(mul(const(2), fh.body), div(const(beta), Z)), sing)
    else:
        integrand = HoloFn(mul(const(2), fh.body), fh.singularities)
    F1 = primitive(integrand, z0, h1_at_z0 - beta * math.log(abs(z0)) if beta else h1_at_z0,
                   domain.route)
    h1 = HarmonicField(F1, beta)

    periods = {}
    loop = domain.hole_loop()
    if loop is not None:
        planar = integrate_path(fL, loop, 1e-12) + integrate_path(fP, loop, 1e-12).conjugate()
        height = -4 * math.pi * c.imag
        if abs(planar) > PERIOD_TOL:
            periods["planar"] = planar
        if abs(height) > PERIOD_TOL:
            periods["height"] = height
    return EnneperData(L1, P1, h1, domain, z0, periods)


def conjugate(data) -> EnneperData:
    """Scale by f = i, keeping h at the base point.  The Hopf differential
    changes sign."""
    data = enneper_of(data)
    return scale(data, HoloFn.constant(1j), data.h(data.base_point))
