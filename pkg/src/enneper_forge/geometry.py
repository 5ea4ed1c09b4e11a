"""Pointwise differential geometry of a harmonic immersion.

Everything is computed from the canonical Weierstrass triple
phi = ((L'+P')/2, i(P'-L')/2, h_z): X_x = 2 Re phi, X_y = -2 Im phi,
||Phi||^2 = sum |phi_j|^2, hopf = sum phi_j^2.  Finite-difference oracles
at the bottom of the module check these closed forms independently.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateAt, EvaluationError, NorthPole
from .hfield import five_point_laplacian
from .surface import WeierstrassData, enneper_of, eval_point

# margin <= DEGENERACY_RTOL * ||Phi||^2 counts as degenerate
DEGENERACY_RTOL = 1e-12
NORTH_POLE_TOL = 1e-12


def phi_values(obj, zs):
    if isinstance(obj, WeierstrassData):
        return obj.phi_values(zs)
    return enneper_of(obj).phi_values(zs)


def frame_arrays(obj, zs) -> dict:
    """Vectorized frame quantities at every point of ``zs``."""
    zs = np.asarray(zs, dtype=complex)
    phi = np.stack(phi_values(obj, zs), axis=-1)
    Xx = 2 * phi.real
    Xy = -2 * phi.imag
    E = np.sum(Xx * Xx, axis=-1)
    F = np.sum(Xx * Xy, axis=-1)
    G = np.sum(Xy * Xy, axis=-1)
    hopf = np.sum(phi * phi, axis=-1)
    norm2 = np.sum(np.abs(phi) ** 2, axis=-1)
    margin = norm2 - np.abs(hopf)
    cross = np.cross(Xx, Xy)
    cross_norm = np.linalg.norm(cross, axis=-1)
    with np.errstate(divide="ignore", invalid="ignore"):
        normal = cross / cross_norm[..., None]
        dilatation = (E + G) / (2 * cross_norm)
        qc = np.abs(hopf) / norm2
    return {
        "z": zs, "phi": phi, "X_x": Xx, "X_y": Xy, "E": E, "F": F, "G": G,
        "hopf": hopf, "phi_norm_sq": norm2, "margin": margin,
        "cross": cross, "cross_norm": cross_norm, "normal": normal,
        "D_X": dilatation, "qc_ratio": qc,
    }


def degenerate_mask(arrays, rtol: float = DEGENERACY_RTOL) -> np.ndarray:
    margin, norm2 = arrays["margin"], arrays["phi_norm_sq"]
    bad = ~np.isfinite(margin) | ~np.isfinite(norm2)
    with np.errstate(invalid="ignore"):
        bad |= margin <= rtol * norm2
    return bad


@dataclass
class FrameSample:
    z: complex
    X: np.ndarray
    X_x: np.ndarray
    X_y: np.ndarray
    E: float
    F: float
    G: float
    normal: np.ndarray
    hopf_value: complex
    phi_norm_sq: float
    margin: float
    D_X: float

    @property
    def conformality_defect(self) -> float:
        return self.D_X - 1.0


def frame(imm, z) -> FrameSample:
    """Closed-form tangent frame, fundamental form and normal at ``z``."""
    data = enneper_of(imm)
    z = complex(z)
    a = frame_arrays(data, np.array([z]))
    if not np.all(np.isfinite(a["phi"])):
        raise EvaluationError(f"singular at z={z!r}")
    if degenerate_mask(a)[0]:
        raise DegenerateAt(z, float(a["margin"][0]))
    planar, height = eval_point(data, z)
    return FrameSample(
        z=z,
        X=np.array([planar.real, planar.imag, height]),
        X_x=a["X_x"][0], X_y=a["X_y"][0],
        E=float(a["E"][0]), F=float(a["F"][0]), G=float(a["G"][0]),
        normal=a["normal"][0],
        hopf_value=complex(a["hopf"][0]),
        phi_norm_sq=float(a["phi_norm_sq"][0]),
        margin=float(a["margin"][0]),
        D_X=float(a["D_X"][0]),
    )


def stereographic(n) -> complex:
    x1, x2, x3 = (float(v) for v in n)
    if 1.0 - x3 <= NORTH_POLE_TOL:
        raise NorthPole("stereographic projection undefined at (0, 0, 1)")
    return complex(x1, x2) / (1.0 - x3)


def gauss_map(imm, z) -> tuple[np.ndarray, complex]:
    """Unit normal and its stereographic image.

    At the north pole NorthPole is raised; its ``normal`` attribute still
    carries the unit vector.
    """
    n = frame(imm, z).normal
    try:
        return n, stereographic(n)
    except NorthPole as exc:
        exc.normal = n
        raise


def second_dilatation(data, z) -> complex:
    """P'/L' for the planar part f = L + conj(P)."""
    data = enneper_of(data)
    z = complex(z)
    lp = data.dL(z)
    if lp == 0:
        raise EvaluationError(f"second dilatation has a pole at z={z!r} (L'=0)")
    return data.dP(z) / lp


def immersion_margin(imm, z) -> float:
    """||Phi||^2 - |hopf|; positive exactly where X is immersed."""
    return float(frame_arrays(imm, np.array([complex(z)]))["margin"][0])


def qc_ratio(imm, z) -> float:
    return float(frame_arrays(imm, np.array([complex(z)]))["qc_ratio"][0])


def qc_ratio_sup(imm, samples) -> float:
    """max |hopf| / ||Phi||^2 over ``samples``; < 1 means quasiconformal."""
    a = frame_arrays(imm, np.ravel(np.asarray(samples, dtype=complex)))
    return float(np.max(a["qc_ratio"]))


@dataclass
class ValidationReport:
    z: np.ndarray
    E: np.ndarray
    F: np.ndarray
    G: np.ndarray
    margin: np.ndarray
    qc_ratio: np.ndarray
    D_X: np.ndarray
    degenerate: np.ndarray
    holomorphy_residual: float = 0.0
    # points where |L'| = |P'| (the planar part is not locally injective there)
    planar_degenerate_points: list = field(default_factory=list)
    planar_condition_fails: bool = False

    @classmethod
    def from_samples(cls, obj, zs, holomorphy_residual=0.0,
                     rtol=DEGENERACY_RTOL) -> "ValidationReport":
        zs = np.ravel(np.asarray(zs, dtype=complex))
        with np.errstate(all="ignore"):
            a = frame_arrays(obj, zs)
        report = cls(
            z=zs, E=a["E"], F=a["F"], G=a["G"], margin=a["margin"],
            qc_ratio=a["qc_ratio"], D_X=a["D_X"], degenerate=degenerate_mask(a, rtol),
            holomorphy_residual=holomorphy_residual,
        )
        if not isinstance(obj, WeierstrassData):
            data = enneper_of(obj)
            diff = np.abs(data.dL.values(zs)) - np.abs(data.dP.values(zs))
            finite = np.isfinite(diff)
            scale = np.maximum(np.abs(data.dL.values(zs)), 1e-300)
            hits = finite & (np.abs(diff) <= 1e-9 * scale)
            report.planar_degenerate_points = [complex(v) for v in zs[hits]]
            signs = np.sign(diff[finite & ~hits])
            report.planar_condition_fails = bool(hits.any() or (signs.size and signs.min() < 0 < signs.max()))
        return report

    @property
    def passed(self) -> bool:
        return not bool(self.degenerate.any()) and self.holomorphy_residual < 1e-6

    @property
    def min_margin(self) -> float:
        return float(np.nanmin(self.margin))

    @property
    def sup_qc_ratio(self) -> float:
        return float(np.nanmax(self.qc_ratio))

    @property
    def sup_dilatation(self) -> float:
        return float(np.nanmax(self.D_X))

    @property
    def quasiconformal(self) -> bool:
        return self.sup_qc_ratio < 1.0

    def first_degenerate(self):
        idx = np.flatnonzero(self.degenerate)
        return (complex(self.z[idx[0]]), float(self.margin[idx[0]])) if idx.size else None

    def to_tsv(self) -> str:
        lines = ["#re(z)\tim(z)\tE\tF\tG\tmargin\tqc_ratio\tD_X"]
        for k in range(self.z.size):
            row = (self.z[k].real, self.z[k].imag, self.E[k], self.F[k], self.G[k],
                   self.margin[k], self.qc_ratio[k], self.D_X[k])
            lines.append("\t".join(repr(float(v)) for v in row))
        return "\n".join(lines) + "\n"


def validate(obj, nu: int = 64, nv: int = 64, holomorphy_residual: float = 0.0,
             rtol: float = DEGENERACY_RTOL) -> ValidationReport:
    """Frame quantities on the domain's nu x nv sample grid."""
    grid = obj_domain(obj).grid(nu, nv)
    return ValidationReport.from_samples(obj, grid, holomorphy_residual, rtol)


def obj_domain(obj):
    return obj.domain if isinstance(obj, WeierstrassData) else enneper_of(obj).domain


# -- finite-difference oracles ------------------------------------------------

def _richardson_diff(f, z, direction, step):
    def central(s):
        return (f(z + s * direction) - f(z - s * direction)) / (2 * s)

    return (4 * central(step / 2) - central(step)) / 3


def surface_point(imm, z) -> np.ndarray:
    planar, height = eval_point(imm, z)
    return np.array([planar.real, planar.imag, height])


def fd_oracle(imm, z, step: float = 1e-4, lap_step: float = 1e-3):
    """X_x, X_y and per-coordinate Laplacians of the surface by central
    differences (Richardson-extrapolated) of point evaluations only."""
    z = complex(z)

    def f(w):
        return surface_point(imm, w)

    Xx = _richardson_diff(f, z, 1.0, step)
    Xy = _richardson_diff(f, z, 1j, step)
    laps = five_point_laplacian(f, z, lap_step)
    return Xx, Xy, laps
