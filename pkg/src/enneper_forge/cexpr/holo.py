from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..errors import EvaluationError
from .calculus import antiderivative, differentiate, evaluate, evaluate_array
from .nodes import CExpr, Const, add, const, mul, to_text
from .parser import parse
from .quadrature import integrate_path


@dataclass(frozen=True)
class HoloFn:
    """A holomorphic function given by an expression body.

    ``singularities`` lists the points the constructor declared as poles or
    branch points; quadrature refuses to pass through them.
    """

    body: CExpr
    singularities: tuple[complex, ...] = ()

    @classmethod
    def parse(cls, text: str) -> "HoloFn":
        body = parse(text)
        return cls(body, _origin_flag(body))

    @classmethod
    def of(cls, body: CExpr) -> "HoloFn":
        return cls(body, _origin_flag(body))

    @classmethod
    def constant(cls, value) -> "HoloFn":
        return cls(Const(value))

    def __call__(self, z) -> complex:
        return evaluate(self.body, z)

    def values(self, zs) -> np.ndarray:
        return evaluate_array(self.body, zs)

    def derivative(self) -> "HoloFn":
        return HoloFn(differentiate(self.body), self.singularities)

    @property
    def text(self) -> str:
        return to_text(self.body)

    def scaled(self, factor) -> "HoloFn":
        return HoloFn(mul(const(factor), self.body), self.singularities)


def _origin_flag(body):
    try:
        evaluate(body, 0)
    except (EvaluationError, ValueError):
        return (0j,)
    return ()


def straight_route(a: complex, b: complex) -> list[complex]:
    return [a, b]


@dataclass(frozen=True, eq=False)
class QuadratureFn:
    """Primitive of ``integrand`` normalised to ``base_value`` at
    ``base_point``, evaluated by path quadrature along ``route``."""

    integrand: HoloFn
    base_point: complex
    base_value: complex = 0j
    route: Callable[[complex, complex], list] = straight_route
    tol: float = 1e-12
    singularities: tuple[complex, ...] = field(default=())

    def __post_init__(self):
        if not self.singularities:
            object.__setattr__(self, "singularities", tuple(self.integrand.singularities))

    def __call__(self, z) -> complex:
        path = self.route(complex(self.base_point), complex(z))
        return self.base_value + integrate_path(self.integrand, path, self.tol)

    def values(self, zs) -> np.ndarray:
        zs = np.asarray(zs, dtype=complex)
        return np.array([self(z) for z in zs.ravel()], dtype=complex).reshape(zs.shape)

    def derivative(self):
        return self.integrand

    text = None

    def scaled(self, factor) -> "QuadratureFn":
        return QuadratureFn(
            _scaled(self.integrand, factor), self.base_point, factor * self.base_value,
            self.route, self.tol,
        )


def _scaled(fn, factor):
    return fn.scaled(factor)


def primitive(integrand, base_point: complex, base_value: complex = 0j,
              route=straight_route):
    """Primitive F of ``integrand`` with F(base_point) = base_value.

    Uses the closed form when one exists, otherwise falls back to path
    quadrature along ``route``.
    """
    if isinstance(integrand, HoloFn):
        body = antiderivative(integrand.body)
        if body is not None:
            try:
                offset = evaluate(body, base_point)
            except EvaluationError:
                offset = None
            if offset is not None:
                shifted = add(body, const(complex(base_value) - offset))
                return HoloFn.of(shifted)
    return QuadratureFn(integrand, complex(base_point), complex(base_value), route)
