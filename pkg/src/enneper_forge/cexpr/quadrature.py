"""Globally adaptive Gauss-Kronrod (7/15) quadrature of f(z) dz along polylines."""
from __future__ import annotations

import heapq

import numpy as np

from ..errors import IntegrationError
from .calculus import evaluate_array
from .nodes import CExpr

MAX_SUBDIVISIONS = 2**16

_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
K_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
G_WEIGHTS = np.zeros(15)
# Gauss nodes are the odd-indexed Kronrod nodes
G_WEIGHTS[[1, 3, 5]] = _WG[:3]
G_WEIGHTS[7] = _WG[3]
G_WEIGHTS[[9, 11, 13]] = _WG[2::-1]

_EPS = np.finfo(float).eps


def vectorize(f):
    """Array-valued evaluator for an expression, a HoloFn-like object with a
    ``values`` method, or a plain scalar callable."""
    if isinstance(f, CExpr):
        return lambda zs: evaluate_array(f, zs)
    if hasattr(f, "values"):
        return f.values
    return lambda zs: np.array([complex(f(complex(z))) for z in np.ravel(zs)]).reshape(np.shape(zs))


def _segment_distance(p, a, b):
    d = b - a
    if d == 0:
        return abs(p - a)
    t = ((p - a) * d.conjugate()).real / abs(d) ** 2
    t = min(1.0, max(0.0, t))
    return abs(p - (a + t * d))


def _rule(fv, a, b):
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    values = fv(mid + half * NODES)
    if not np.all(np.isfinite(values)):
        raise IntegrationError(f"integrand not finite on [{a}, {b}]")
    k = half * np.dot(K_WEIGHTS, values)
    g = half * np.dot(G_WEIGHTS, values)
    return k, abs(k - g), abs(half) * np.dot(K_WEIGHTS, np.abs(values))


def integrate_path(f, path, tol: float = 1e-10, singularities=None) -> complex:
    """Integral of f(z) dz along the polyline ``path``.

    The error estimate summed over all pieces is driven below ``tol`` (or the
    double-precision floor of the integrand, whichever is larger).  Raises
    IntegrationError when the budget of 2**16 subdivisions runs out or when
    the path touches a declared singularity.
    """
    pts = [complex(p) for p in path]
    if len(pts) < 2:
        return 0j
    if singularities is None:
        singularities = getattr(f, "singularities", ())
    for s in singularities:
        for a, b in zip(pts, pts[1:]):
            if _segment_distance(complex(s), a, b) <= 1e-12 * max(1.0, abs(s)):
                raise IntegrationError(f"path passes through singularity {s}")

    fv = vectorize(f)
    heap = []
    total = 0j
    total_err = 0.0
    total_abs = 0.0
    for k, (a, b) in enumerate(zip(pts, pts[1:])):
        if a == b:
            continue
        val, err, mag = _rule(fv, a, b)
        total += val
        total_err += err
        total_abs += mag
        heapq.heappush(heap, (-err, k, a, b, val, mag))
    counter = len(pts)
    splits = 0
    while heap and total_err > max(tol, 50 * _EPS * total_abs):
        if splits >= MAX_SUBDIVISIONS:
            raise IntegrationError(
                f"tolerance {tol:g} not reached within {MAX_SUBDIVISIONS} subdivisions "
                f"(estimate {total_err:.3e})"
            )
        neg_err, _, a, b, val, mag = heapq.heappop(heap)
        m = 0.5 * (a + b)
        v1, e1, m1 = _rule(fv, a, m)
        v2, e2, m2 = _rule(fv, m, b)
        total += v1 + v2 - val
        total_err += e1 + e2 + neg_err
        total_abs += m1 + m2 - mag
        heapq.heappush(heap, (-e1, counter, a, m, v1, m1))
        heapq.heappush(heap, (-e2, counter + 1, m, b, v2, m2))
        counter += 2
        splits += 1
    return complex(total)


def circle(center: complex = 0j, radius: float = 1.0, n: int = 64) -> list[complex]:
    """Closed regular n-gon inscribed in the circle, first vertex repeated."""
    k = np.arange(n + 1) % n
    return list(center + radius * np.exp(2j * np.pi * k / n))
