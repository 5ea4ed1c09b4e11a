"""Command-line front end.  Machine output goes to stdout as key=value
lines; diagnostics go to stderr."""
from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import enneper, fixtures, weierstrass
from .cexpr import differentiate, parse, to_text
from .config import SurfaceConfig, config_of
from .errors import (
    ConfigError,
    DegenerateAt,
    EnneperError,
    ExpressionSyntaxError,
    MeshError,
    NotHolomorphic,
    PeriodObstruction,
)
from .geometry import DEGENERACY_RTOL, validate
from .mesh import tessellate, write_obj
from .rotational import (
    TANGENCY_RTOL,
    CircleProblem,
    RotationalSurface,
    make_rotational,
    solve_two_circles,
)
from .surface import eval_point

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _emit(out, **pairs):
    # values carry no whitespace so lines split cleanly on spaces
    for key, value in pairs.items():
        out.write(f"{key}={_value(value).replace(' ', '')}\n")


def _value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, complex):
        sign = "+" if v.imag >= 0 else "-"
        return f"{v.real!r}{sign}{abs(v.imag)!r}j"
    return str(v)


def _load(args) -> SurfaceConfig:
    if not args.config:
        raise _UsageError("--config is required")
    cfg = SurfaceConfig.load(args.config)
    return cfg


def _grid_size(args, cfg: SurfaceConfig):
    return args.nu or cfg.nu, args.nv or cfg.nv


def _rtol(args, default):
    return default if args.tol is None else args.tol


def _write_mesh(mesh, path, out):
    n = write_obj(mesh, path)
    _emit(out, vertices=len(mesh.vertices), faces=len(mesh.faces),
          skipped_cells=mesh.skipped_cells, bytes=n, path=path)


# -- commands -----------------------------------------------------------------

def cmd_parse_check(args, out):
    if args.expr:
        texts = [("expr", args.expr)]
    else:
        cfg = _load(args)
        texts = [("L", cfg.L), ("P", cfg.P), ("h_holo", cfg.h_holo)]
    for key, text in texts:
        e = parse(text)
        _emit(out, **{key: to_text(e), f"d{key}": to_text(differentiate(e))})
    return EXIT_OK


def cmd_build(args, out):
    cfg = _load(args)
    if not args.out:
        raise _UsageError("build needs --out")
    nu, nv = _grid_size(args, cfg)
    d = cfg.data()
    rtol = _rtol(args, DEGENERACY_RTOL)
    imm = enneper.build(d.L, d.P, d.h, d.domain, max(nu, nv), d.base_point, rtol)
    mesh = tessellate(imm, d.domain.grid(nu, nv), rtol=rtol)
    _write_mesh(mesh, args.out, out)
    return EXIT_OK


def cmd_validate(args, out):
    cfg = _load(args)
    nu, nv = _grid_size(args, cfg)
    d = cfg.data()
    residual = enneper.holomorphy_check(d)
    report = validate(d, nu, nv, residual, _rtol(args, DEGENERACY_RTOL))
    _emit(out, passed=report.passed, samples=report.z.size,
          degenerate=int(report.degenerate.sum()),
          min_margin=report.min_margin, sup_qc_ratio=report.sup_qc_ratio,
          sup_dilatation=report.sup_dilatation,
          holomorphy_residual=residual,
          planar_condition_fails=report.planar_condition_fails)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(report.to_tsv())
    if not report.passed:
        bad = report.first_degenerate()
        if bad is not None:
            print(f"degenerate at z={bad[0]} (margin {bad[1]:.3e})", file=sys.stderr)
        else:
            print(f"holomorphy residual {residual:.3e} too large", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_hopf(args, out):
    cfg = _load(args)
    nu, nv = _grid_size(args, cfg)
    d = cfg.data()
    hf = enneper.hopf(d)
    with np.errstate(all="ignore"):
        vals = np.abs(hf.values(d.domain.grid(nu, nv)))
    _emit(out, hopf=hf.text, max_abs=float(np.nanmax(vals)))
    return EXIT_OK


def cmd_qc(args, out):
    cfg = _load(args)
    nu, nv = _grid_size(args, cfg)
    report = validate(cfg.data(), nu, nv)
    limit = 1.0 - (args.tol or 0.0)
    verdict = report.sup_qc_ratio < limit
    _emit(out, sup_qc_ratio=report.sup_qc_ratio, sup_dilatation=report.sup_dilatation,
          quasiconformal=verdict)
    if not verdict:
        print(f"sup |hopf|/||Phi||^2 = {report.sup_qc_ratio:.6g} is not below {limit}",
              file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _max_error(a, b, zs):
    err = 0.0
    for z in zs:
        pa, ha = eval_point(a, z)
        pb, hb = eval_point(b, z)
        err = max(err, abs(pa - pb), abs(ha - hb))
    return err


def cmd_decompose(args, out):
    cfg = _load(args)
    d = cfg.data()
    w = enneper.to_weierstrass(d)
    back = weierstrass.decompose(w)
    zs = d.domain.random_points(np.random.default_rng(0), 64, 1e-3)
    _emit(out, phi1=w.phi1.text, phi2=w.phi2.text, phi3=w.phi3.text,
          L=back.L.text, P=back.P.text, h_holo=back.h.holo.text,
          log_coeff=back.h.log_coeff, max_error=_max_error(d, back, zs))
    return EXIT_OK


def cmd_conjugate(args, out):
    cfg = _load(args)
    nu, nv = _grid_size(args, cfg)
    d = enneper.conjugate(cfg.data())
    with np.errstate(all="ignore"):
        hmax = float(np.nanmax(np.abs(enneper.hopf(d).values(d.domain.grid(nu, nv)))))
    closed = all(t is not None for t in (d.L.text, d.P.text, d.h.holo.text))
    pairs = {"closed_form": closed}
    if closed:
        pairs.update(L=d.L.text, P=d.P.text, h_holo=d.h.holo.text)
    pairs.update(log_coeff=d.h.log_coeff, slit=d.slit, hopf_max_abs=hmax)
    for name, value in d.periods.items():
        pairs[f"period_{name}"] = value
    _emit(out, **pairs)
    if args.out:
        if args.out.endswith(".obj"):
            _write_mesh(tessellate(d, d.domain.grid(nu, nv)), args.out, out)
        else:
            doc = config_of(d, nu, nv).to_dict()
            with open(args.out, "w", encoding="utf-8") as fh:
                json.dump(doc, fh, indent=2)
                fh.write("\n")
    return EXIT_OK


def _half_separation(args) -> float:
    if args.half_separation is not None:
        return args.half_separation
    if args.separation is not None:
        return args.separation / 2
    raise _UsageError("one of --half-separation or --separation is required")


def cmd_rot_solve(args, out):
    if args.a is None or args.radius is None:
        raise _UsageError("rotational solve needs --a and --radius")
    problem = CircleProblem(args.a, args.radius, _half_separation(args))
    sol = solve_two_circles(problem, _rtol(args, TANGENCY_RTOL))
    out.write(f"count={sol.count}\n")
    for root in sol.roots:
        out.write(f"c={root.c!r} residual={root.residual!r}\n")
    return EXIT_OK


def cmd_rot_mesh(args, out):
    if None in (args.a, args.b, args.c):
        raise _UsageError("rotational mesh needs --a, --b and --c")
    if not args.out:
        raise _UsageError("rotational mesh needs --out")
    d = make_rotational(RotationalSurface(args.a, args.b, args.c))
    nu, nv = args.nu or 64, args.nv or 64
    mesh = tessellate(d, d.domain.grid(nu, nv), rtol=_rtol(args, DEGENERACY_RTOL))
    _write_mesh(mesh, args.out, out)
    return EXIT_OK


def cmd_examples(args, out):
    target = args.out or "."
    os.makedirs(target, exist_ok=True)
    status = EXIT_OK
    for name, doc in fixtures.configs().items():
        path = os.path.join(target, f"{name}.json")
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
        d = SurfaceConfig.from_dict(doc).data()
        report = validate(d, holomorphy_residual=enneper.holomorphy_check(d))
        out.write(f"example={name} path={path} passed={_value(report.passed)}\n")
        if not report.passed:
            status = EXIT_FAIL
    return status


# -- argument parsing ---------------------------------------------------------

def _common(p, config=True):
    if config:
        p.add_argument("--config", metavar="PATH")
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--nu", type=int)
    p.add_argument("--nv", type=int)
    p.add_argument("--tol", type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="enneper-forge", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("parse-check", help="parse expressions and print their normal form")
    p.add_argument("expr", nargs="?")
    _common(p)
    p.set_defaults(func=cmd_parse_check)

    for name, func, text in (
        ("build", cmd_build, "validate a config and write an OBJ mesh"),
        ("validate", cmd_validate, "immersion check on the sample grid"),
        ("hopf", cmd_hopf, "Hopf differential of the data"),
        ("qc", cmd_qc, "quasiconformality verdict"),
        ("decompose", cmd_decompose, "Weierstrass triple and back"),
        ("conjugate", cmd_conjugate, "conjugate immersion (scale by i)"),
    ):
        p = sub.add_parser(name, help=text)
        _common(p)
        p.set_defaults(func=func)

    rot = sub.add_parser("rotational", help="rotational surfaces")
    rsub = rot.add_subparsers(dest="rot_command", required=True, parser_class=_Parser)
    p = rsub.add_parser("solve", help="count surfaces through two coaxial circles")
    p.add_argument("--a", type=float)
    p.add_argument("--radius", type=float)
    sep = p.add_mutually_exclusive_group()
    sep.add_argument("--half-separation", type=float)
    sep.add_argument("--separation", type=float)
    p.add_argument("--tol", type=float)
    p.set_defaults(func=cmd_rot_solve)
    p = rsub.add_parser("mesh", help="OBJ mesh of a rotational surface")
    for flag in ("--a", "--b", "--c"):
        p.add_argument(flag, type=float)
    _common(p, config=False)
    p.set_defaults(func=cmd_rot_mesh)

    p = sub.add_parser("examples", help="write the reference configs and validate them")
    _common(p, config=False)
    p.set_defaults(func=cmd_examples)
    return parser


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConfigError, ExpressionSyntaxError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DegenerateAt, NotHolomorphic, PeriodObstruction, MeshError) as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except EnneperError as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


def main():
    sys.exit(run())
