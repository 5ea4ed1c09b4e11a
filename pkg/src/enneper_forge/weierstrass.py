"""Weierstrass triples: validation, reconstruction and Enneper decomposition."""
from __future__ import annotations

import math

import numpy as np

from .cexpr import HoloFn, holomorphy_residual, integrate_path, primitive
from .cexpr.nodes import Z, const, div, mul, sub, add
from .errors import PeriodObstruction
from .geometry import ValidationReport
from .hfield import HarmonicField
from .surface import EnneperData, WeierstrassData

__all__ = ["WeierstrassData", "decompose", "loop_periods", "reconstruct", "validate_data"]

PERIOD_TOL = 1e-9


def validate_data(phi: WeierstrassData, nu: int = 64, nv: int = 64) -> ValidationReport:
    """Margin ||Phi||^2 - |sum phi_j^2| on the sample grid plus the largest
    dbar-residual of the three components."""
    rng = np.random.default_rng(11)
    pts = phi.domain.random_points(rng, 16, 0.0)
    worst = 0.0
    for p in phi.phis:
        ok = [z for z in pts if all(abs(z - s) > 1e-3 for s in p.singularities)]
        for z in ok:
            worst = max(worst, holomorphy_residual(p, [z], 1e-4) / max(1.0, abs(p(z))))
    return ValidationReport.from_samples(phi, phi.domain.grid(nu, nv), worst)


def reconstruct(phi: WeierstrassData, z, tol: float = 1e-12) -> np.ndarray:
    """X(z0) + 2 Re of the integral of Phi from z0 to z along the domain route."""
    path = phi.domain.route(phi.base_point, complex(z))
    x = [2 * integrate_path(p, path, tol).real for p in phi.phis]
    return np.asarray(phi.base_value) + np.array(x)


def loop_periods(phi: WeierstrassData, loop, tol: float = 1e-12) -> tuple[complex, complex, complex]:
    return tuple(integrate_path(p, loop, tol) for p in phi.phis)


def decompose(phi: WeierstrassData) -> EnneperData:
    """Enneper data with L' = phi1 + i phi2, P' = phi1 - i phi2 and
    h = h(z0) + 2 Re int phi3.

    On an annulus a 1/z term of phi3 with real coefficient c becomes the
    log term 2c ln|z| of h.  Nonzero periods of L', P' or of h raise
    PeriodObstruction.
    """
    domain, z0 = phi.domain, phi.base_point
    x0 = phi.base_value
    sing12 = tuple(dict.fromkeys(phi.phi1.singularities + phi.phi2.singularities))
    dL = HoloFn(add(phi.phi1.body, mul(const(1j), phi.phi2.body)), sing12)
    dP = HoloFn(sub(phi.phi1.body, mul(const(1j), phi.phi2.body)), sing12)

    loop = domain.hole_loop()
    c = 0j
    if loop is not None:
        for name, fn in (("L", dL), ("P", dP)):
            period = integrate_path(fn, loop, 1e-12)
            if abs(period) > PERIOD_TOL:
                raise PeriodObstruction(name, period)
        period3 = integrate_path(phi.phi3, loop, 1e-12)
        if abs(2 * period3.real) > PERIOD_TOL:
            raise PeriodObstruction("h", 2 * period3.real)
        c = period3 / (2j * math.pi)
        c = complex(round(c.real, 12), 0.0)

    L = primitive(dL, z0, complex(x0[0], x0[1]), domain.route)
    P = primitive(dP, z0, 0j, domain.route)
    beta = 2 * c.real + 0.0
    body = mul(const(2), phi.phi3.body)
    sing3 = phi.phi3.singularities
    if beta:
        body = sub(body, div(const(beta), Z))
        sing3 = tuple(dict.fromkeys(sing3 + (0j,)))
    F = primitive(HoloFn(body, sing3), z0, x0[2] - beta * math.log(abs(z0)) if beta else x0[2],
                  domain.route)
    return EnneperData(L, P, HarmonicField(F, beta), domain, z0)
