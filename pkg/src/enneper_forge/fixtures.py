"""Reference surfaces used by the CLI ``examples`` command and the tests."""
from __future__ import annotations

import math

from .hfield import Domain
from .rotational import RotationalSurface, make_rotational
from .surface import EnneperData

PLANE = {
    "L": "z",
    "P": "0",
    "h": {"holo": "0", "log_coeff": 0.0},
    "domain": {"kind": "rectangle", "x0": 0.0, "x1": 1.0, "y0": 0.0, "y1": 1.0},
}

CATENOID = {
    "L": "z/2",
    "P": "1/(2*z)",
    "h": {"holo": "0", "log_coeff": 1.0},
    "domain": {"kind": "annulus", "r1": math.exp(-1.0), "r2": math.exp(1.0)},
}

# quasiconformal but not conformal
HELICOID_Y1 = {
    "L": "(exp(z) + i*z*exp(z))/2",
    "P": "(exp(z) - i*z*exp(z))/2",
    "h": {"holo": "i*z", "log_coeff": 0.0},
    "domain": {"kind": "disk", "cx": 0.0, "cy": 0.0, "radius": 2.0},
}

# conformal: phi = (cosh z, i sinh z, i)/2
HELICOID_Y2 = {
    "L": "-exp(-z)/2",
    "P": "exp(z)/2",
    "h": {"holo": "i*z", "log_coeff": 0.0},
    "domain": {"kind": "half_plane", "c": 0.0},
}


def _fmt(x: complex) -> str:
    x = complex(x)
    if x.imag == 0:
        return repr(x.real)
    return f"({x.real!r} + {x.imag!r}*i)"


def rotational_config(a=1.0, b=1.0, c=1.0) -> dict:
    """Config for the rotational surface (a, b, c) on exp(-c) < |z| < exp(c)."""
    s = RotationalSurface(complex(a), complex(b), float(c))
    return {
        "L": f"{_fmt(s.a / s.c)}*z",
        "P": f"{_fmt(s.b.conjugate() / s.c)}/z",
        "h": {"holo": "0", "log_coeff": 1.0 / s.c},
        "domain": {"kind": "annulus", "r1": math.exp(-s.c), "r2": math.exp(s.c)},
    }


def configs() -> dict[str, dict]:
    return {
        "plane": PLANE,
        "catenoid": CATENOID,
        "helicoid_y1": HELICOID_Y1,
        "helicoid_y2": HELICOID_Y2,
        "rotational": rotational_config(1.0, 2.0, 1.0),
    }


def from_config(cfg: dict) -> EnneperData:
    from .config import SurfaceConfig

    return SurfaceConfig.from_dict(cfg).data()


def plane() -> EnneperData:
    return from_config(PLANE)


def catenoid() -> EnneperData:
    return make_rotational(RotationalSurface(0.5, 0.5, 1.0))


def helicoid_y1() -> EnneperData:
    return from_config(HELICOID_Y1)


def helicoid_y2() -> EnneperData:
    return from_config(HELICOID_Y2)


def rotational(a=1.0, b=2.0, c=1.0, domain: Domain | None = None) -> EnneperData:
    return make_rotational(RotationalSurface(complex(a), complex(b), float(c)), domain)


def all_fixtures() -> dict[str, EnneperData]:
    return {
        "plane": plane(),
        "catenoid": catenoid(),
        "helicoid_y1": helicoid_y1(),
        "helicoid_y2": helicoid_y2(),
        "rotational": rotational(),
    }
