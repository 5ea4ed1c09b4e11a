"""Data types shared by the Enneper and Weierstrass sides.

Wirtinger derivatives carry the 1/2 factor throughout, so for holomorphic
L the derivative L_z is the ordinary complex derivative L' and a surface is
recovered from its Weierstrass triple as X = X(z0) + 2 Re int Phi dz.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .cexpr import HoloFn
from .cexpr.nodes import Const, add, const, mul, sub
from .hfield import Domain, HarmonicField, h_wirtinger


@dataclass(frozen=True, eq=False)
class EnneperData:
    """X = (L + conj(P), h) on ``domain``.

    ``periods`` is filled by operations that integrate around a hole and
    found a nonzero period; such data is only valid on the annulus slit
    along the negative real axis.
    """

    L: object
    P: object
    h: HarmonicField
    domain: Domain
    base_point: complex | None = None
    periods: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.base_point is None:
            object.__setattr__(self, "base_point", self.domain.default_base_point())
        object.__setattr__(self, "base_point", complex(self.base_point))
        if self.h.log_coeff and self.domain.contains_origin():
            raise ValueError("log term in h requires a domain excluding 0")

    @cached_property
    def dL(self) -> HoloFn:
        return self.L.derivative()

    @cached_property
    def dP(self) -> HoloFn:
        return self.P.derivative()

    @cached_property
    def hz(self) -> HoloFn:
        return h_wirtinger(self.h)

    @property
    def slit(self) -> bool:
        return bool(self.periods)

    @property
    def base_value(self) -> tuple[complex, float]:
        return eval_point(self, self.base_point)

    def planar_and_height(self, zs):
        zs = np.asarray(zs, dtype=complex)
        return self.L.values(zs) + np.conj(self.P.values(zs)), self.h.values(zs)

    def points(self, zs) -> np.ndarray:
        """Surface points for an array of parameters, shape (..., 3)."""
        planar, height = self.planar_and_height(zs)
        return np.stack([planar.real, planar.imag, height], axis=-1)

    def phi_values(self, zs):
        zs = np.asarray(zs, dtype=complex)
        a, b, c = self.dL.values(zs), self.dP.values(zs), self.hz.values(zs)
        return (a + b) / 2, 1j * (b - a) / 2, c


@dataclass(frozen=True, eq=False)
class WeierstrassData:
    phi1: HoloFn
    phi2: HoloFn
    phi3: HoloFn
    domain: Domain
    base_point: complex | None = None
    base_value: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        if self.base_point is None:
            object.__setattr__(self, "base_point", self.domain.default_base_point())
        object.__setattr__(self, "base_point", complex(self.base_point))
        object.__setattr__(self, "base_value", tuple(float(v) for v in self.base_value))

    @property
    def phis(self) -> tuple[HoloFn, HoloFn, HoloFn]:
        return self.phi1, self.phi2, self.phi3

    def phi_values(self, zs):
        zs = np.asarray(zs, dtype=complex)
        return tuple(p.values(zs) for p in self.phis)

    def hopf(self) -> HoloFn:
        body = Const(0)
        for p in self.phis:
            body = add(body, mul(p.body, p.body))
        return HoloFn(body, _union(*(p.singularities for p in self.phis)))


@dataclass(frozen=True, eq=False)
class HarmonicImmersion:
    data: EnneperData
    report: object = None

    @cached_property
    def weierstrass(self) -> WeierstrassData:
        return weierstrass_triple(self.data)


def _union(*groups):
    out = []
    for g in groups:
        for s in g:
            if s not in out:
                out.append(s)
    return tuple(out)


def enneper_of(obj) -> EnneperData:
    return obj.data if isinstance(obj, HarmonicImmersion) else obj


def eval_point(data, z) -> tuple[complex, float]:
    """(L(z) + conj(P(z)), h(z))."""
    data = enneper_of(data)
    z = complex(z)
    return data.L(z) + data.P(z).conjugate(), data.h(z)


def weierstrass_triple(data) -> WeierstrassData:
    """phi1 = (L'+P')/2, phi2 = i(P'-L')/2, phi3 = h_z."""
    data = enneper_of(data)
    a, b = data.dL, data.dP
    sing = _union(a.singularities, b.singularities)
    phi1 = HoloFn(mul(const(0.5), add(a.body, b.body)), sing)
    phi2 = HoloFn(mul(const(0.5j), sub(b.body, a.body)), sing)
    planar, height = eval_point(data, data.base_point)
    return WeierstrassData(
        phi1, phi2, data.hz, data.domain, data.base_point,
        (planar.real, planar.imag, height),
    )
