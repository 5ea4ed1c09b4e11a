"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` or ``python tests/test_acceptance.py``.
The lines are also repeated in the pytest terminal summary.
"""
import io
import json
import math
import os
import random
import sys
import tempfile

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from oracles import bisect_coth_fixed_point, dense_scan_count  # noqa: E402

from enneper_forge import enneper, fixtures  # noqa: E402
from enneper_forge.cexpr import differentiate, evaluate, parse, to_text  # noqa: E402
from enneper_forge.cli import run  # noqa: E402
from enneper_forge.errors import EvaluationError, ExpressionSyntaxError  # noqa: E402
from enneper_forge.geometry import fd_oracle, frame, frame_arrays, qc_ratio_sup  # noqa: E402
from enneper_forge.hfield import Domain  # noqa: E402
from enneper_forge.mesh import obj_text, sample_grid, tessellate  # noqa: E402
from enneper_forge.rotational import (  # noqa: E402
    CircleProblem,
    RotationalSurface,
    coth_star,
    critical_ratio,
    g,
    make_rotational,
    solve_two_circles,
)
from enneper_forge.surface import eval_point  # noqa: E402
from enneper_forge.weierstrass import decompose  # noqa: E402

RESULTS: list[str] = []
SEED = 20240611


def report(n: int, ok: bool, detail: str):
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    RESULTS.append(line)
    assert ok, line


def _rng(k):
    return np.random.default_rng(SEED + k)


# 1 ---------------------------------------------------------------------------------

def test_criterion_01_coth_fixed_point():
    x = coth_star()
    residual = abs(1 / math.tanh(x) - x)
    ok = 1.1996 <= x <= 1.1998 and residual < 1e-12 and abs(x - bisect_coth_fixed_point()) < 1e-12
    report(1, ok, f"coth fixed point x*={x:.12f} |coth(x*)-x*|={residual:.1e}")


# 2 ---------------------------------------------------------------------------------

def test_criterion_02_critical_constants():
    c1 = critical_ratio(1)
    ok = 0.3309 <= c1 <= 0.3319 and 0.6617 <= 2 * c1 <= 0.6637
    report(2, ok, f"critical ratio c1(1)={c1:.6f} 2*c1={2 * c1:.6f}")


# 3 ---------------------------------------------------------------------------------

def test_criterion_03_trichotomy():
    c1 = critical_ratio(1)
    counts, worst = [], 0.0
    for l in (0.30, c1, 0.40):
        p = CircleProblem(1, 1, l)
        sol = solve_two_circles(p)
        counts.append(sol.count)
        for root in sol.roots:
            worst = max(worst, abs(g(p, root.c) - p.r))
    rng = _rng(3)
    disagreements = 0
    for _ in range(1000):
        a = rng.uniform(0.1, 10)
        r = rng.uniform(0.5, 2)
        l = rng.uniform(0.01, 1) * r
        p = CircleProblem(a, r, l)
        sol = solve_two_circles(p)
        if sol.count != dense_scan_count(a, r, l):
            disagreements += 1
        for root in sol.roots:
            worst = max(worst, abs(g(p, root.c) - r))
    ok = counts == [2, 1, 0] and worst < 1e-9 and disagreements == 0
    report(3, ok, f"trichotomy counts={counts} max|g(c)-r|={worst:.1e} "
                  f"scan disagreements={disagreements}/1000")


# 4 ---------------------------------------------------------------------------------

def test_criterion_04_catenoid_minimal():
    cat = make_rotational(RotationalSurface(0.5, 0.5, 1))
    zs = cat.domain.random_points(_rng(4), 1000)
    h_cat = float(np.max(np.abs(enneper.hopf(cat).values(zs))))
    conj = enneper.conjugate(cat)
    h_conj = float(np.max(np.abs(enneper.hopf(conj).values(zs))))
    slit = conj.slit and abs(conj.periods.get("height", 0) + 2 * math.pi) < 1e-9
    ok = h_cat < 1e-12 and h_conj < 1e-12 and slit
    report(4, ok, f"catenoid max|hopf|={h_cat:.1e}, conjugate max|hopf|={h_conj:.1e} "
                  f"(slit annulus, height period {conj.periods.get('height', 0):.6f})")


# 5 ---------------------------------------------------------------------------------

def test_criterion_05_helicoids():
    y1, y2 = fixtures.helicoid_y1(), fixtures.helicoid_y2()
    grid2 = y2.domain.grid(64, 64)
    h2 = float(np.max(np.abs(enneper.hopf(y2).values(grid2))))
    a = frame_arrays(y2, grid2)
    h2_frame = float(np.max(np.abs(a["hopf"])))
    dx = float(np.max(np.abs(a["D_X"] - 1)))
    h1 = abs(enneper.hopf(y1)(0) - 0.25)
    sup1 = qc_ratio_sup(y1, Domain.disk(0, 2).grid(64, 64))
    ok = h2 < 1e-12 and h2_frame < 1e-12 and dx < 1e-9 and h1 < 1e-12 and sup1 < 1
    report(5, ok, f"Y2 max|hopf|={max(h2, h2_frame):.1e} max|D_X-1|={dx:.1e}; "
                  f"Y1 |hopf(0)-0.25|={h1:.1e} sup qc_ratio={sup1:.6f}")


# 6 ---------------------------------------------------------------------------------

def test_criterion_06_roundtrip():
    errors = {}
    for k, name in enumerate(("plane", "catenoid", "helicoid_y1", "helicoid_y2")):
        d = fixtures.all_fixtures()[name]
        back = decompose(enneper.to_weierstrass(d))
        zs = d.domain.random_points(_rng(60 + k), 1000)
        err = 0.0
        for z in zs:
            p0, h0 = eval_point(d, z)
            p1, h1 = eval_point(back, z)
            err = max(err, abs(p0 - p1), abs(h0 - h1))
        errors[name] = err
    ok = max(errors.values()) < 1e-8
    report(6, ok, "roundtrip sup error " + " ".join(f"{k}={v:.1e}" for k, v in errors.items()))


# 7 ---------------------------------------------------------------------------------

def _margin(domain):
    p = domain.params
    if domain.kind == "annulus":
        return 0.05 * p[0]
    if domain.kind == "disk":
        return 0.02 * p[2]
    if domain.kind == "rectangle":
        return 0.02 * min(p[1] - p[0], p[3] - p[2])
    return 0.02


def test_criterion_07_identities():
    cross = frame_err = lap = scaling = 0.0
    fx = fixtures.all_fixtures()
    for k, (name, d) in enumerate(fx.items()):
        zs = d.domain.random_points(_rng(70 + k), 100, _margin(d.domain))
        a = frame_arrays(d, zs)
        lhs = np.sum(a["cross"] ** 2, axis=-1)
        rhs = 4 * (a["phi_norm_sq"] ** 2 - np.abs(a["hopf"]) ** 2)
        cross = max(cross, float(np.max(np.abs(lhs - rhs) / np.maximum(np.abs(lhs), 1e-300))))

        for z in zs:
            f = frame(d, z)
            Xx, Xy, laps = fd_oracle(d, z)
            frame_err = max(frame_err, np.max(np.abs(Xx - f.X_x)), np.max(np.abs(Xy - f.X_y)))
            lap = max(lap, float(np.max(np.abs(laps))))

        s = enneper.scale(d, "exp(z/3)")
        f2 = np.exp(2 * zs / 3)
        want = f2 * enneper.hopf(d).values(zs)
        got = enneper.hopf(s).values(zs)
        scaling = max(scaling, float(np.max(np.abs(got - want) / np.maximum(1.0, np.abs(want)))))
    ok = cross < 1e-8 and frame_err < 1e-6 and lap < 1e-6 and scaling < 1e-10
    report(7, ok, f"identities over 5 fixtures x 100 points: cross-norm rel={cross:.1e} "
                  f"frame vs FD={frame_err:.1e} FD laplacian={lap:.1e} hopf scaling={scaling:.1e}")


# 8 ---------------------------------------------------------------------------------

def test_criterion_08_rotation_equivariance():
    worst = 0.0
    surfaces = [RotationalSurface(0.5, 0.5, 1), RotationalSurface(1, 2, 1),
                RotationalSurface(2 + 1j, 0.3 - 0.4j, 0.7)]
    for k, s in enumerate(surfaces):
        d = make_rotational(s)
        for z in d.domain.random_points(_rng(80 + k), 10):
            p0, _ = eval_point(d, z)
            for theta in np.linspace(0, 2 * np.pi, 16, endpoint=False):
                w = complex(math.cos(theta), math.sin(theta))
                p1, _ = eval_point(d, w * z)
                worst = max(worst, abs(p1 - w * p0))
    report(8, worst < 1e-12, f"rotation equivariance max error={worst:.1e} (16 angles)")


# 9 ---------------------------------------------------------------------------------

def test_criterion_09_mesh():
    with tempfile.TemporaryDirectory() as tmp:
        cfg = os.path.join(tmp, "catenoid.json")
        with open(cfg, "w") as fh:
            json.dump(fixtures.CATENOID, fh)
        outs = [os.path.join(tmp, f"run{k}.obj") for k in range(2)]
        codes = [run(["build", "--config", cfg, "--out", o], io.StringIO()) for o in outs]
        with open(outs[0], "rb") as a, open(outs[1], "rb") as b:
            identical = a.read() == b.read()
        degenerate = os.path.join(tmp, "degenerate.json")
        with open(degenerate, "w") as fh:
            json.dump(dict(fixtures.PLANE, P="z"), fh)
        bad_code = run(["validate", "--config", degenerate], io.StringIO())
    cat = fixtures.catenoid()
    mesh = tessellate(cat, sample_grid(cat.domain, 64, 64))
    identical = identical and obj_text(mesh) == obj_text(tessellate(cat, sample_grid(cat.domain, 64, 64)))
    radius = np.hypot(mesh.vertices[:, 0], mesh.vertices[:, 1])
    rr = np.hypot(mesh.uvs[:, 0], mesh.uvs[:, 1])
    law = float(np.max(np.abs(radius - np.cosh(np.log(rr)))))
    ok = codes == [0, 0] and identical and law < 1e-9 and bad_code == 1
    report(9, ok, f"mesh byte-identical={identical} radius law error={law:.1e} "
                  f"degenerate exit code={bad_code}")


# 10 --------------------------------------------------------------------------------

def _random_expression(r: random.Random, depth=0) -> str:
    """Grammar-valid text built directly from the grammar, independent of
    the pretty-printer."""
    if depth > 2 or r.random() < 0.3:
        return r.choice(["z", "i", "2", "0.5", "3.25", "1e-1", "7"])
    kind = r.randrange(7)
    a = _random_expression(r, depth + 1)
    if kind == 0:
        return f"{a} + {_random_expression(r, depth + 1)}"
    if kind == 1:
        return f"{a}-{_random_expression(r, depth + 1)}"
    if kind == 2:
        return f"({a})*({_random_expression(r, depth + 1)})"
    if kind == 3:
        return f"({a}) / (z + {r.randint(2, 5)})"
    if kind == 4:
        return f"({a})^{r.choice([-2, -1, 2, 3])}"
    if kind == 5:
        return f"{r.choice(['exp', 'sin', 'cos', 'sinh', 'cosh'])}({a})"
    return f"-({a})"


MALFORMED = [
    ("z^^2", 2), ("", 0), ("z +", 3), ("(z", 2), ("z)", 1), ("foo(z)", 0), ("z^1.5", 2),
    ("z^(2)", 2), ("2 $ z", 2), ("exp z", 4), ("exp()", 4), ("z**2", 2), ("* z", 0),
    ("z z", 2), ("sin(z", 5), ("1..2", 2), ("log(z))", 6), ("z^", 2), ("3 + ", 4), ("z / / z", 4),
]


def _ev(e, z):
    try:
        v = evaluate(e, z)
    except (EvaluationError, OverflowError):
        return None
    return v if np.isfinite(v) and abs(v) < 1e8 else None


def test_criterion_10_parser():
    r = random.Random(SEED)
    exprs = [_random_expression(r) for _ in range(50)]
    roundtrip = 0
    for text in exprs:
        e = parse(text)
        printed = to_text(e)
        if parse(printed) == e and to_text(parse(printed)) == printed:
            roundtrip += 1

    positioned = 0
    for text, offset in MALFORMED:
        try:
            parse(text)
        except ExpressionSyntaxError as exc:
            if exc.offset == offset and f"offset {offset}" in str(exc):
                positioned += 1

    pool = exprs + [_random_expression(r) for _ in range(200)]
    pairs, worst, h = 0, 0.0, 1e-4
    while pairs < 100:
        e = parse(pool[pairs % len(pool)] if pairs < len(pool) else _random_expression(r))
        z = complex(r.uniform(-1.5, 1.5), r.uniform(-1.5, 1.5))
        d = _ev(differentiate(e), z)
        vals = [_ev(e, z + s) for s in (h, -h, h / 2, -h / 2)]
        if d is None or None in vals:
            pool.append(pool.pop(pairs % len(pool)))
            continue
        c1 = (vals[0] - vals[1]) / (2 * h)
        c2 = (vals[2] - vals[3]) / h
        fd = (4 * c2 - c1) / 3
        worst = max(worst, abs(fd - d) / max(1.0, abs(d)))
        pairs += 1
    ok = roundtrip == 50 and positioned == 20 and worst < 1e-6
    report(10, ok, f"parser roundtrip {roundtrip}/50, positioned errors {positioned}/20, "
                   f"derivative vs FD max rel error={worst:.1e} on {pairs} pairs")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
