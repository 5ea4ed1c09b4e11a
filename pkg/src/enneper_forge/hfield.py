"""Planar domains and real harmonic fields h = Re F + beta*ln|z|."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cexpr import HoloFn, integrate_path
from .errors import EvaluationError
from .cexpr.nodes import Z, add, const, div, mul

KINDS = ("rectangle", "disk", "annulus", "half_plane")

# Half-planes are unbounded; sampling uses the window
# [c, c + HALF_PLANE_WIDTH] x [-HALF_PLANE_HEIGHT/2, HALF_PLANE_HEIGHT/2].
HALF_PLANE_WIDTH = 4.0
HALF_PLANE_HEIGHT = 8.0
# relative offset keeping grid samples off the disk centre / half-plane edge
EDGE_EPS = 1e-6


@dataclass(frozen=True)
class Domain:
    kind: str
    params: tuple[float, ...]

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown domain kind {self.kind!r}")
        p = tuple(float(v) for v in self.params)
        object.__setattr__(self, "params", p)
        if not all(math.isfinite(v) for v in p):
            raise ValueError("domain parameters must be finite")
        expected = {"rectangle": 4, "disk": 3, "annulus": 2, "half_plane": 1}[self.kind]
        if len(p) != expected:
            raise ValueError(f"{self.kind} takes {expected} parameters, got {len(p)}")
        if self.kind == "rectangle" and not (p[0] < p[1] and p[2] < p[3]):
            raise ValueError("rectangle needs x0 < x1 and y0 < y1")
        if self.kind == "disk" and not p[2] > 0:
            raise ValueError("disk radius must be positive")
        if self.kind == "annulus" and not (0 < p[0] < p[1]):
            raise ValueError("annulus needs 0 < r1 < r2")

    @classmethod
    def rectangle(cls, x0, x1, y0, y1):
        return cls("rectangle", (x0, x1, y0, y1))

    @classmethod
    def disk(cls, center=0j, radius=1.0):
        center = complex(center)
        return cls("disk", (center.real, center.imag, radius))

    @classmethod
    def annulus(cls, r1, r2):
        return cls("annulus", (r1, r2))

    @classmethod
    def half_plane(cls, c=0.0):
        return cls("half_plane", (c,))

    @property
    def simply_connected(self) -> bool:
        return self.kind != "annulus"

    def contains(self, z, closed=False) -> bool:
        z = complex(z)
        p = self.params
        if self.kind == "rectangle":
            if closed:
                return p[0] <= z.real <= p[1] and p[2] <= z.imag <= p[3]
            return p[0] < z.real < p[1] and p[2] < z.imag < p[3]
        if self.kind == "disk":
            d = abs(z - complex(p[0], p[1]))
            return d <= p[2] if closed else d < p[2]
        if self.kind == "annulus":
            r = abs(z)
            return p[0] <= r <= p[1] if closed else p[0] < r < p[1]
        return z.real >= p[0] if closed else z.real > p[0]

    def contains_origin(self) -> bool:
        return self.contains(0j)

    def default_base_point(self) -> complex:
        p = self.params
        if self.kind == "rectangle":
            return complex(0.5 * (p[0] + p[1]), 0.5 * (p[2] + p[3]))
        if self.kind == "disk":
            return complex(p[0], p[1])
        if self.kind == "annulus":
            return complex(math.sqrt(p[0] * p[1]), 0.0)
        return complex(p[0] + 1.0, 0.0)

    def grid(self, nu: int, nv: int) -> np.ndarray:
        """Sample grid of shape (nv, nu); u is the fast index.

        Annuli and disks are sampled in polar form with the angular seam
        duplicated (theta = 0 and 2*pi both present).
        """
        if nu < 2 or nv < 2:
            raise ValueError("grid needs nu, nv >= 2")
        p = self.params
        if self.kind == "rectangle":
            u = np.linspace(p[0], p[1], nu)
            v = np.linspace(p[2], p[3], nv)
            return u[None, :] + 1j * v[:, None]
        if self.kind == "half_plane":
            u = np.linspace(p[0] + EDGE_EPS * HALF_PLANE_WIDTH, p[0] + HALF_PLANE_WIDTH, nu)
            v = np.linspace(-HALF_PLANE_HEIGHT / 2, HALF_PLANE_HEIGHT / 2, nv)
            return u[None, :] + 1j * v[:, None]
        theta = np.linspace(0.0, 2 * np.pi, nv)
        if self.kind == "annulus":
            radius = np.exp(np.linspace(math.log(p[0]), math.log(p[1]), nu))
            radius[0], radius[-1] = p[0], p[1]
            return radius[None, :] * np.exp(1j * theta[:, None])
        radius = np.linspace(EDGE_EPS * p[2], p[2], nu)
        return complex(p[0], p[1]) + radius[None, :] * np.exp(1j * theta[:, None])

    def random_points(self, rng: np.random.Generator, n: int, margin: float = 0.0) -> np.ndarray:
        """``n`` points at distance > ``margin`` from the boundary."""
        p = self.params
        if self.kind == "rectangle":
            x = rng.uniform(p[0] + margin, p[1] - margin, n)
            y = rng.uniform(p[2] + margin, p[3] - margin, n)
            return x + 1j * y
        if self.kind == "half_plane":
            x = rng.uniform(p[0] + margin, p[0] + HALF_PLANE_WIDTH, n)
            y = rng.uniform(-HALF_PLANE_HEIGHT / 2, HALF_PLANE_HEIGHT / 2, n)
            return x + 1j * y
        theta = rng.uniform(-np.pi, np.pi, n)
        if self.kind == "annulus":
            rho = rng.uniform(math.log(p[0] + margin), math.log(p[1] - margin), n)
            return np.exp(rho + 1j * theta)
        r = (p[2] - margin) * np.sqrt(rng.uniform(0.0, 1.0, n))
        return complex(p[0], p[1]) + r * np.exp(1j * theta)

    def route(self, a: complex, b: complex) -> list[complex]:
        """A polyline from ``a`` to ``b`` inside the domain.

        On an annulus the path runs radially to the middle circle, along it
        without crossing the negative real axis, and radially out again, so
        integrals agree with principal-branch logarithms.
        """
        a, b = complex(a), complex(b)
        if self.kind != "annulus":
            return [a, b]
        mid = math.sqrt(self.params[0] * self.params[1])
        ta, tb = np.angle(a), np.angle(b)
        n = max(2, int(math.ceil(abs(tb - ta) / (np.pi / 64))))
        arc = mid * np.exp(1j * np.linspace(ta, tb, n + 1))
        return [a, *arc, b]

    def hole_loop(self, n: int = 256) -> list[complex] | None:
        if self.kind != "annulus":
            return None
        mid = math.sqrt(self.params[0] * self.params[1])
        k = np.arange(n + 1) % n
        return list(mid * np.exp(2j * np.pi * k / n))

    def to_config(self) -> dict:
        p = self.params
        if self.kind == "rectangle":
            return {"kind": "rectangle", "x0": p[0], "x1": p[1], "y0": p[2], "y1": p[3]}
        if self.kind == "disk":
            return {"kind": "disk", "cx": p[0], "cy": p[1], "radius": p[2]}
        if self.kind == "annulus":
            return {"kind": "annulus", "r1": p[0], "r2": p[1]}
        return {"kind": "half_plane", "c": p[0]}


@dataclass(frozen=True, eq=False)
class HarmonicField:
    """h(z) = Re F(z) + log_coeff * ln|z|."""

    holo: object  # HoloFn or QuadratureFn
    log_coeff: float = 0.0

    @classmethod
    def parse(cls, text: str, log_coeff: float = 0.0) -> "HarmonicField":
        return cls(HoloFn.parse(text), float(log_coeff))

    def __call__(self, z) -> float:
        return eval_h(self, z)

    def values(self, zs) -> np.ndarray:
        zs = np.asarray(zs, dtype=complex)
        out = self.holo.values(zs).real
        if self.log_coeff:
            with np.errstate(divide="ignore"):
                out = out + self.log_coeff * np.log(np.abs(zs))
        return out


def eval_h(h: HarmonicField, z) -> float:
    z = complex(z)
    value = h.holo(z).real
    if h.log_coeff:
        if z == 0:
            raise EvaluationError("ln|z| is singular at z=0")
        value += h.log_coeff * math.log(abs(z))
    return value


def h_wirtinger(h: HarmonicField) -> HoloFn:
    """dh/dz = F'/2 + beta/(2z)."""
    dF = h.holo.derivative()
    body = mul(const(0.5), dF.body)
    sing = tuple(dF.singularities)
    if h.log_coeff:
        body = add(body, div(const(0.5 * h.log_coeff), Z))
        if 0j not in sing:
            sing = sing + (0j,)
    return HoloFn(body, sing)


def conjugate_period(h: HarmonicField, loop, tol: float = 1e-11) -> float:
    """Increase of the harmonic conjugate of h once around ``loop``."""
    return (2 * integrate_path(h_wirtinger(h), loop, tol)).imag


def five_point_laplacian(f, z: complex, step: float):
    """5-point Laplacian at spacings ``step`` and ``step/2``, Richardson
    combined to fourth order.  Works for scalar- or array-valued ``f``."""
    def lap(s):
        return (f(z + s) + f(z - s) + f(z + 1j * s) + f(z - 1j * s) - 4 * f(z)) / s**2

    coarse, fine = lap(step), lap(step / 2)
    return (4 * fine - coarse) / 3


def laplacian_residual(h, z, step: float = 1e-3) -> float:
    """|h_xx + h_yy| by central differences; ``h`` may be any real callable."""
    return abs(five_point_laplacian(h, complex(z), step))
