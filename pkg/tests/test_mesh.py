import io
import math

import numpy as np
import pytest

from enneper_forge.cexpr import HoloFn
from enneper_forge.errors import MeshError
from enneper_forge.geometry import fd_oracle
from enneper_forge.hfield import Domain, HarmonicField
from enneper_forge.mesh import (
    TriangleMesh,
    obj_text,
    read_obj_vertices,
    sample_grid,
    tessellate,
    write_obj,
)
from enneper_forge.surface import EnneperData, eval_point


def test_sample_grid_examples():
    g = sample_grid(Domain.rectangle(0, 1, 0, 1), 2, 2)
    assert set(g.ravel()) == {0, 1, 1j, 1 + 1j}
    g = sample_grid(Domain.annulus(1, math.e), 3, 4)
    assert np.allclose(np.abs(g[0]), [1, math.exp(0.5), math.e])
    assert not np.any(sample_grid(Domain.disk(0, 1), 8, 8) == 0)


def test_plane_mesh(surfaces):
    plane = surfaces["plane"]
    mesh = tessellate(plane, sample_grid(plane.domain, 8, 8))
    assert len(mesh.vertices) == 64
    assert len(mesh.faces) == 98
    assert np.allclose(np.abs(mesh.normals[:, 2]), 1)


def test_catenoid_radius_law(surfaces):
    cat = surfaces["catenoid"]
    mesh = tessellate(cat, sample_grid(cat.domain, 64, 64))
    assert len(mesh.vertices) == 64 * 64 and mesh.skipped_cells == 0
    radius = np.hypot(mesh.vertices[:, 0], mesh.vertices[:, 1])
    r = np.hypot(mesh.uvs[:, 0], mesh.uvs[:, 1])
    assert np.max(np.abs(radius - np.cosh(np.log(r)))) < 1e-9


def test_degenerate_mesh_fails():
    d = EnneperData(HoloFn.parse("z"), HoloFn.parse("z"), HarmonicField.parse("0"), Domain.rectangle(0, 1, 0, 1))
    with pytest.raises(MeshError):
        tessellate(d, sample_grid(d.domain, 8, 8))


def test_partially_degenerate_mesh_skips_cells():
    # a = 1, b = -1 degenerates on |z| = 1 only
    d = EnneperData(HoloFn.parse("z"), HoloFn.parse("-1/z"), HarmonicField(HoloFn.constant(0), 1.0),
                    Domain.annulus(0.5, 2))
    grid = sample_grid(d.domain, 5, 6)  # radii 0.5, ..., 1, ..., 2
    mesh = tessellate(d, grid)
    assert mesh.skipped_cells == 2 * 5
    assert len(mesh.faces) == 2 * (4 * 5 - mesh.skipped_cells)


def test_vertices_are_evaluated_points(rng, surfaces):
    y1 = surfaces["helicoid_y1"]
    mesh = tessellate(y1, sample_grid(y1.domain, 6, 6))
    for k in rng.integers(0, len(mesh.vertices), 10):
        planar, h = eval_point(y1, complex(*mesh.uvs[k]))
        assert np.array_equal(mesh.vertices[k], [planar.real, planar.imag, h])


def test_normals_match_fd(rng, surfaces):
    y1 = surfaces["helicoid_y1"]
    mesh = tessellate(y1, sample_grid(y1.domain, 6, 6))
    for k in rng.integers(0, len(mesh.vertices), 10):
        z = complex(*mesh.uvs[k])
        if abs(z) < 1e-3:
            continue
        Xx, Xy, _ = fd_oracle(y1, z)
        n = np.cross(Xx, Xy)
        assert np.max(np.abs(mesh.normals[k] - n / np.linalg.norm(n))) < 1e-6


def test_single_triangle_obj():
    mesh = TriangleMesh(
        vertices=np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0]], dtype=float),
        normals=np.array([[0, 0, 1]] * 3, dtype=float),
        uvs=np.array([[0, 0], [1, 0], [0, 1]], dtype=float),
        faces=np.array([[0, 1, 2]]),
    )
    text = obj_text(mesh)
    lines = text.splitlines()
    assert lines[0] == "# enneper-forge"
    assert [line for line in lines if line.startswith("f ")] == ["f 1/1/1 2/2/2 3/3/3"]
    assert lines[1] == "v 0 0 0" and lines[4] == "vn 0 0 1" and lines[7] == "vt 0 0"
    assert "\r" not in text
    buf = io.BytesIO()
    assert write_obj(mesh, buf) == len(buf.getvalue()) == len(text)


def test_obj_roundtrip_and_determinism(tmp_path, surfaces):
    plane = surfaces["plane"]
    mesh = tessellate(plane, sample_grid(plane.domain, 8, 8))
    a, b = tmp_path / "a.obj", tmp_path / "b.obj"
    write_obj(mesh, a)
    write_obj(tessellate(plane, sample_grid(plane.domain, 8, 8)), b)
    assert a.read_bytes() == b.read_bytes()
    assert np.array_equal(read_obj_vertices(a.read_text()), mesh.vertices)


def test_precision_seventeen_digits():
    mesh = TriangleMesh(np.array([[1 / 3, math.pi, -1e-20]] * 3), np.array([[0, 0, 1.0]] * 3),
                        np.zeros((3, 2)), np.array([[0, 1, 2]]))
    assert np.array_equal(read_obj_vertices(obj_text(mesh))[0], [1 / 3, math.pi, -1e-20])


def test_write_failure(tmp_path, surfaces):
    plane = surfaces["plane"]
    mesh = tessellate(plane, sample_grid(plane.domain, 4, 4))
    with pytest.raises(OSError):
        write_obj(mesh, tmp_path / "missing" / "x.obj")
