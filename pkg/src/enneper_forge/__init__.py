"""Harmonic immersions of planar domains into R^3 built from Enneper data
(L, P, h), their Weierstrass triples, and the rotational two-circle problem."""
from .config import SurfaceConfig
from .enneper import build, conjugate, hopf, scale, to_weierstrass
from .errors import (
    ConfigError,
    DegenerateAt,
    EnneperError,
    EvaluationError,
    ExpressionSyntaxError,
    IntegrationError,
    MeshError,
    NorthPole,
    NotHolomorphic,
    PeriodObstruction,
)
from .geometry import frame, gauss_map, immersion_margin, qc_ratio, qc_ratio_sup, validate
from .hfield import Domain, HarmonicField
from .mesh import TriangleMesh, tessellate, write_obj
from .rotational import (
    CircleProblem,
    RotationalSurface,
    coth_star,
    critical_ratio,
    make_rotational,
    solve_two_circles,
)
from .surface import EnneperData, HarmonicImmersion, WeierstrassData, eval_point
from .weierstrass import decompose, reconstruct

__version__ = "0.1.0"

__all__ = [
    "CircleProblem", "ConfigError", "DegenerateAt", "Domain", "EnneperData",
    "EnneperError", "EvaluationError", "ExpressionSyntaxError", "HarmonicField",
    "HarmonicImmersion", "IntegrationError", "MeshError", "NorthPole",
    "NotHolomorphic", "PeriodObstruction", "RotationalSurface", "SurfaceConfig",
    "TriangleMesh", "WeierstrassData", "build", "conjugate", "coth_star",
    "critical_ratio", "decompose", "eval_point", "frame", "gauss_map", "hopf",
    "immersion_margin", "make_rotational", "qc_ratio", "qc_ratio_sup",
    "reconstruct", "scale", "solve_two_circles", "tessellate", "to_weierstrass",
    "validate", "write_obj",
]
