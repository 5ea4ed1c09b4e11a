"""JSON surface configuration files."""
from __future__ import annotations

import json
from dataclasses import dataclass

import jsonschema

from .cexpr import HoloFn
from .errors import ConfigError, EnneperError
from .hfield import Domain, HarmonicField
from .surface import EnneperData

_NUM = {"type": "number"}

_DOMAIN_KEYS = {
    "rectangle": ("x0", "x1", "y0", "y1"),
    "disk": ("cx", "cy", "radius"),
    "annulus": ("r1", "r2"),
    "half_plane": ("c",),
}


def _domain_schema(kind, keys):
    props = {"kind": {"const": kind}}
    props.update({k: _NUM for k in keys})
    return {
        "type": "object",
        "properties": props,
        "required": ["kind", *keys],
        "additionalProperties": False,
    }


SCHEMA = {
    "type": "object",
    "properties": {
        "L": {"type": "string"},
        "P": {"type": "string"},
        "h": {
            "type": "object",
            "properties": {"holo": {"type": "string"}, "log_coeff": _NUM},
            "required": ["holo", "log_coeff"],
            "additionalProperties": False,
        },
        "domain": {"oneOf": [_domain_schema(k, v) for k, v in _DOMAIN_KEYS.items()]},
        "base_point": {"type": "array", "items": _NUM, "minItems": 2, "maxItems": 2},
        "samples": {
            "type": "object",
            "properties": {
                "nu": {"type": "integer", "minimum": 2},
                "nv": {"type": "integer", "minimum": 2},
            },
            "required": ["nu", "nv"],
            "additionalProperties": False,
        },
    },
    "required": ["L", "P", "h", "domain"],
    "additionalProperties": False,
}


@dataclass(frozen=True)
class SurfaceConfig:
    L: str
    P: str
    h_holo: str
    log_coeff: float
    domain: Domain
    base_point: complex | None = None
    nu: int = 64
    nv: int = 64

    @classmethod
    def from_dict(cls, doc) -> "SurfaceConfig":
        try:
            jsonschema.validate(doc, SCHEMA)
        except jsonschema.ValidationError as exc:
            where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
            raise ConfigError(f"{where}: {exc.message}") from None
        d = doc["domain"]
        try:
            domain = Domain(d["kind"], tuple(d[k] for k in _DOMAIN_KEYS[d["kind"]]))
        except ValueError as exc:
            raise ConfigError(f"domain: {exc}") from None
        bp = doc.get("base_point")
        samples = doc.get("samples", {"nu": 64, "nv": 64})
        return cls(
            L=doc["L"], P=doc["P"], h_holo=doc["h"]["holo"],
            log_coeff=float(doc["h"]["log_coeff"]), domain=domain,
            base_point=None if bp is None else complex(bp[0], bp[1]),
            nu=samples["nu"], nv=samples["nv"],
        )

    @classmethod
    def load(cls, path) -> "SurfaceConfig":
        try:
            with open(path, encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON ({exc})") from None
        return cls.from_dict(doc)

    def data(self) -> EnneperData:
        """Parse the expressions (ExpressionSyntaxError propagates) and
        assemble Enneper data."""
        L, P = HoloFn.parse(self.L), HoloFn.parse(self.P)
        h = HarmonicField.parse(self.h_holo, self.log_coeff)
        try:
            return EnneperData(L, P, h, self.domain, self.base_point)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def to_dict(self) -> dict:
        doc = {
            "L": self.L, "P": self.P,
            "h": {"holo": self.h_holo, "log_coeff": self.log_coeff},
            "domain": self.domain.to_config(),
            "samples": {"nu": self.nu, "nv": self.nv},
        }
        if self.base_point is not None:
            doc["base_point"] = [self.base_point.real, self.base_point.imag]
        return doc


def config_of(data: EnneperData, nu: int = 64, nv: int = 64) -> SurfaceConfig:
    """Serializable config for ``data``; needs closed-form L, P and h."""
    texts = (data.L.text, data.P.text, data.h.holo.text)
    if any(t is None for t in texts):
        raise EnneperError("data has no closed form (numerical primitive)")
    return SurfaceConfig(*texts, data.h.log_coeff, data.domain, data.base_point, nu, nv)
