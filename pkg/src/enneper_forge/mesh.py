"""Grid sampling, triangulation and OBJ output."""
from __future__ import annotations

import io
import os
from dataclasses import dataclass

import numpy as np

from .errors import MeshError
from .geometry import DEGENERACY_RTOL, degenerate_mask, frame_arrays
from .hfield import Domain
from .errors import EvaluationError
from .surface import enneper_of, eval_point

MAX_SKIPPED_FRACTION = 0.5
OBJ_HEADER = "# enneper-forge"


@dataclass
class TriangleMesh:
    vertices: np.ndarray  # (n, 3)
    normals: np.ndarray  # (n, 3)
    uvs: np.ndarray  # (n, 2)
    faces: np.ndarray  # (m, 3), 0-based
    skipped_cells: int = 0

    def check(self):
        n = len(self.vertices)
        if self.faces.size and (self.faces.min() < 0 or self.faces.max() >= n):
            raise MeshError("face index out of range")
        if not (np.all(np.isfinite(self.vertices)) and np.all(np.isfinite(self.normals))):
            raise MeshError("non-finite vertex data")


def sample_grid(domain: Domain, nu: int, nv: int) -> np.ndarray:
    """Parameter grid of shape (nv, nu), u fastest; see Domain.grid."""
    return domain.grid(nu, nv)


def tessellate(imm, grid, nu: int | None = None, nv: int | None = None,
               rtol: float = DEGENERACY_RTOL) -> TriangleMesh:
    """Two triangles per grid cell.  Cells touching a degenerate or
    non-evaluable sample are dropped; more than half dropped is an error."""
    data = enneper_of(imm)
    grid = np.asarray(grid, dtype=complex)
    if nu is not None and nv is not None:
        grid = grid.reshape(nv, nu)
    nv, nu = grid.shape
    zs = grid.ravel()
    points = np.array([_point(data, z) for z in zs])
    with np.errstate(all="ignore"):
        arrays = frame_arrays(data, zs)
    bad = degenerate_mask(arrays, rtol)
    bad |= ~np.all(np.isfinite(points), axis=1) | ~np.all(np.isfinite(arrays["normal"]), axis=1)

    idx = np.arange(nu * nv).reshape(nv, nu)
    k00, k10 = idx[:-1, :-1].ravel(), idx[:-1, 1:].ravel()
    k01, k11 = idx[1:, :-1].ravel(), idx[1:, 1:].ravel()
    cell_bad = bad[k00] | bad[k10] | bad[k01] | bad[k11]
    n_cells = cell_bad.size
    skipped = int(cell_bad.sum())
    if skipped > MAX_SKIPPED_FRACTION * n_cells:
        raise MeshError(f"{skipped} of {n_cells} cells degenerate")
    ok = ~cell_bad
    faces = np.empty((2 * int(ok.sum()), 3), dtype=np.int64)
    faces[0::2] = np.stack([k00[ok], k10[ok], k11[ok]], axis=1)
    faces[1::2] = np.stack([k00[ok], k11[ok], k01[ok]], axis=1)

    used = np.zeros(nu * nv, dtype=bool)
    used[faces.ravel()] = True
    remap = np.cumsum(used) - 1
    mesh = TriangleMesh(
        vertices=points[used],
        normals=arrays["normal"][used],
        uvs=np.stack([zs.real, zs.imag], axis=1)[used],
        faces=remap[faces],
        skipped_cells=skipped,
    )
    mesh.check()
    return mesh


def _point(data, z):
    # scalar evaluation so vertices equal eval_point bit for bit
    try:
        planar, height = eval_point(data, z)
    except (EvaluationError, OverflowError, ZeroDivisionError):
        return (np.nan, np.nan, np.nan)
    return (planar.real, planar.imag, height)


def _fmt(v) -> str:
    return "%.17g" % float(v)


def obj_text(mesh: TriangleMesh) -> str:
    out = io.StringIO()
    out.write(OBJ_HEADER + "\n")
    for x, y, z in mesh.vertices:
        out.write(f"v {_fmt(x)} {_fmt(y)} {_fmt(z)}\n")
    for x, y, z in mesh.normals:
        out.write(f"vn {_fmt(x)} {_fmt(y)} {_fmt(z)}\n")
    for u, v in mesh.uvs:
        out.write(f"vt {_fmt(u)} {_fmt(v)}\n")
    for a, b, c in mesh.faces + 1:
        out.write(f"f {a}/{a}/{a} {b}/{b}/{b} {c}/{c}/{c}\n")
    return out.getvalue()


def write_obj(mesh: TriangleMesh, sink) -> int:
    """Write ``mesh`` as OBJ to a path or binary/text stream; returns the
    number of bytes written."""
    payload = obj_text(mesh).encode("ascii")
    if isinstance(sink, (str, os.PathLike)):
        with open(sink, "wb") as fh:
            fh.write(payload)
    elif isinstance(sink, io.TextIOBase):
        sink.write(payload.decode("ascii"))
    else:
        sink.write(payload)
    return len(payload)


def read_obj_vertices(text: str) -> np.ndarray:
    """Minimal reader for the 'v' records, used to round-trip output."""
    rows = [line.split()[1:4] for line in text.splitlines() if line.startswith("v ")]
    return np.array(rows, dtype=float)
