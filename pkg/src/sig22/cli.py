"""Command-line front end: ``sig22 catalog|verify|fixed-point|metric|act|classify-so12``."""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .catalog import DOMAINS, FAMILIES, PARAMS, SpaceSpec, grid
from .geometry import extrinsic, fixed, models, so12
from .groups import AFFINE_GROUPS, AffineElement, in_group, transvection_group
from .numeric import Tolerance, diag, eye, mat, max_abs, parse_scalar, render_scalar, vec
from .verify import HERMITIAN, PARA, SampleSizes, dumps, grid_payload, verify_grid, verify_space

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

FLAG_FOR = {"eps1": "eps1", "eps2": "eps2", "lam": "lambda", "nu": "nu", "kappa": "kappa", "eps": "eps", "c": "c"}


class UsageError(Exception):
    pass


# -- parsing -------------------------------------------------------------------

def parse_vector(text: str, length: int | None = None) -> np.ndarray:
    try:
        values = [parse_scalar(t) for t in text.split(",")]
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"cannot parse vector {text!r}: {e}") from None
    if length is not None and len(values) != length:
        raise UsageError(f"expected {length} components, got {len(values)} in {text!r}")
    return vec(values)


def parse_matrix(text: str, n: int) -> np.ndarray:
    """``identity``, ``diag:a,b,...`` or n² comma-separated entries (rows may be split by ``;``)."""
    text = text.strip()
    if text == "identity":
        return eye(n)
    if text.startswith("diag:"):
        return diag(list(parse_vector(text[5:], n)))
    entries = parse_vector(text.replace(";", ","), n * n)
    return mat([list(entries[i * n:(i + 1) * n]) for i in range(n)])


def _sign_arg(text: str) -> int:
    value = parse_scalar(text)
    if value not in (1, -1):
        raise argparse.ArgumentTypeError(f"expected 1 or -1, got {text}")
    return int(value)


def _scalar_arg(text: str):
    try:
        return parse_scalar(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text}") from None


def spec_from_args(args) -> SpaceSpec:
    family = args.space
    values = {}
    for name in PARAMS[family]:
        value = getattr(args, name)
        if value is None:
            raise UsageError(f"{family} needs --{FLAG_FOR[name]}")
        values[name] = value
    for name in FLAG_FOR:
        if name not in PARAMS[family] and getattr(args, name) is not None:
            raise UsageError(f"{family} takes no --{FLAG_FOR[name]}")
    try:
        return SpaceSpec(family, **values)
    except ValueError as e:
        raise UsageError(str(e).replace("lam ", "lambda ")) from None


def _add_space_flags(p: argparse.ArgumentParser, required: bool = True, families=FAMILIES):
    p.add_argument("--space", choices=families, required=required)
    p.add_argument("--eps1", type=_sign_arg)
    p.add_argument("--eps2", type=_sign_arg)
    p.add_argument("--lambda", dest="lam", type=_scalar_arg)
    p.add_argument("--nu", type=_scalar_arg)
    p.add_argument("--kappa", type=_sign_arg)
    p.add_argument("--eps", type=_sign_arg)
    p.add_argument("--c", type=_scalar_arg)


def _add_json_flag(p: argparse.ArgumentParser):
    p.add_argument("--json", nargs="?", const="-", metavar="PATH",
                   help="write JSON to PATH, or to stdout when PATH is omitted or '-'")


def _emit_json(payload, path: str):
    text = dumps(payload)
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _render_vec(v) -> list:
    return [render_scalar(x) for x in v]


def _render_mat(m) -> list:
    return [_render_vec(row) for row in m]


def _residual(x):
    """"exact" for an exact zero, else a float."""
    m = max_abs(x) if not isinstance(x, float) else x
    if m == 0 and not isinstance(m, float):
        return "exact"
    return float(m)


def _render_residual(r) -> str:
    return r if isinstance(r, str) else format(r, ".17g")


# -- commands ------------------------------------------------------------------

def catalog_rows() -> list:
    rows = []
    for f in FAMILIES:
        rows.append({
            "family": f,
            "params": list(PARAMS[f]),
            "domain": DOMAINS[f],
            "hermitian_J": f in HERMITIAN,
            "para_J": f in PARA,
            "embeddings": list(extrinsic.EMBEDDINGS.get(f, ())),
            "coordinate_chart": f in models.CHART_FAMILIES,
            "fixed_point_solver": f in ("Z", "Zprime"),
        })
    return rows


def cmd_catalog(args) -> int:
    rows = catalog_rows()
    if args.json is not None:
        _emit_json(rows, args.json)
        return EXIT_PASS
    for r in rows:
        marks = [name for name in ("hermitian_J", "para_J", "coordinate_chart", "fixed_point_solver") if r[name]]
        if r["embeddings"]:
            marks.append("embeddings=" + "/".join(r["embeddings"]))
        params = "(" + ", ".join(FLAG_FOR[n] for n in r["params"]) + ")"
        print(f"{r['family']:<7} {params:<22} {r['domain']:<32} {' '.join(marks)}")
    return EXIT_PASS


def _tolerance(args) -> Tolerance:
    tol = args.tol if args.tol is not None else float(os.environ.get("SIG22_TOL") or 1e-10)
    if not tol > 0:
        raise UsageError("--tol must be positive")
    return Tolerance(tol, tol)


def cmd_verify(args) -> int:
    tol = _tolerance(args)
    sizes = SampleSizes.quick() if args.quick else SampleSizes()
    if args.grid is not None:
        if args.space is not None:
            raise UsageError("--grid and --space are exclusive")
        if args.grid not in ("default", "full"):
            raise UsageError("--grid takes 'default' or 'full'")
        reports = verify_grid(grid(full=args.grid == "full"), args.seed, tol, sizes, workers=args.workers)
    elif args.space is not None:
        reports = [verify_space(spec_from_args(args), args.seed, tol, sizes)]
    else:
        raise UsageError("give --space or --grid")
    if args.json is not None:
        payload = reports[0].to_dict() if args.grid is None else grid_payload(reports)
        _emit_json(payload, args.json)
    if args.json != "-":
        for rep in reports:
            print(rep.to_text() if args.grid is None else f"{rep.space.label}: {rep.status.upper()}")
            if args.grid is not None and not rep.passed:
                for c in rep.checks:
                    if not c.passed and not c.skipped:
                        print(f"  {c.name}  {c.status}  {_render_residual(c.max_residual)}")
    return EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL


def _default_group(spec: SpaceSpec, A) -> str:
    eps = extrinsic.model_eps(spec)
    for g in (("SO(3)", "O(3)") if eps == 1 else ("SO0(1,2)", "O+(1,2)", "O(1,2)")):
        if in_group(A, g):
            return g
    raise UsageError(f"A is not in {'O(3)' if eps == 1 else 'O(1,2)'}")


def _affine_from_args(spec: SpaceSpec, args) -> AffineElement:
    A = parse_matrix(args.A, 3)
    b = parse_vector(args.b, 3)
    group = args.group or _default_group(spec, A)
    if AFFINE_GROUPS[group][0] != extrinsic.model_eps(spec):
        raise UsageError(f"{group} does not act on {spec.label}")
    if spec.family == "Z" and spec.eps == -1 and not AFFINE_GROUPS[group][2]:
        raise UsageError("Z(-1,c) admits only the orthochronous group O+(1,2)")
    try:
        return AffineElement(b, A, group)
    except ValueError as e:
        raise UsageError(str(e)) from None


def cmd_fixed_point(args) -> int:
    spec = spec_from_args(args)
    iso = _affine_from_args(spec, args)
    point = fixed.fixed_point(spec, iso)
    if point is None:
        payload = {"space": spec.label, "fixed_point": None}
        if args.json is not None:
            _emit_json(payload, args.json)
        else:
            print(f"{spec.label}: no fixed point found")
        return EXIT_FAIL
    exact = all(isinstance(x, Fraction) for x in point)
    if exact:
        E = extrinsic.extrinsic_space(spec)
        image = extrinsic.affine_action(extrinsic.model_eps(spec), iso, point)
        model_res, action_res = _residual(E.residual(point)), _residual(image - point)
    else:
        model_res, action_res = fixed.model_residual(spec, point), fixed.fixed_point_residual(spec, iso, point)
    payload = {"space": spec.label, "fixed_point": _render_vec(point),
               "model_residual": model_res, "action_residual": action_res}
    if args.json is not None:
        _emit_json(payload, args.json)
    else:
        print(f"point    ({', '.join(payload['fixed_point'])})")
        print(f"on M     {_render_residual(model_res)}")
        print(f"residual {_render_residual(action_res)}")
    return EXIT_PASS


def cmd_metric(args) -> int:
    spec = spec_from_args(args)
    if spec.family not in models.CHART_FAMILIES:
        raise UsageError(f"{spec.label} has no coordinate chart; use the embedded model")
    point = parse_vector(args.point, 4)
    model = models.model_metric(spec)
    g = model(point)
    payload = {"space": spec.label, "coordinates": list(model.coordinates), "point": _render_vec(point),
               "metric": _render_mat(g)}
    if args.group_metric:
        payload["group_metric_residual"] = _residual(models.group_metric(spec, point) - g)
    if args.json is not None:
        _emit_json(payload, args.json)
        return EXIT_PASS
    cells = payload["metric"]
    width = max(len(c) for row in cells for c in row)
    print(f"{spec.label} at ({', '.join(payload['point'])}) in ({', '.join(model.coordinates)})")
    for row in cells:
        print("  " + "  ".join(c.rjust(width) for c in row))
    if args.group_metric:
        print(f"group metric residual {_render_residual(payload['group_metric_residual'])}")
    return EXIT_PASS


def _chart_isometry(spec: SpaceSpec, args) -> models.ChartIsometry:
    G = transvection_group(spec)
    g = G.element.from_coords(parse_vector(args.g, G.dim)) if args.g else G.identity()
    f = spec.family
    if args.o11 is not None:
        return models.x1_o11(spec, parse_matrix(args.o11, 2), theta=args.theta, g=g)
    if args.S is not None:
        if f != "N":
            raise UsageError("--S applies to N only")
        return models.n_linear(spec, parse_matrix(args.S, 2), g=g)
    if args.delta is not None:
        d = [int(x) for x in parse_vector(args.delta)]
        if any(x not in (1, -1) for x in d):
            raise UsageError("--delta entries must be 1 or -1")
        if f == "X1" and len(d) == 3:
            return models.x1_discrete(spec, *d, g=g)
        if f in ("X2", "Y") and len(d) == 2:
            return models.sign_discrete(spec, *d, g=g)
        raise UsageError("--delta takes three signs for X1 and two for X2 and Y")
    return models.ChartIsometry.translation(spec, g)


def cmd_act(args) -> int:
    spec = spec_from_args(args)
    if spec.family in models.CHART_FAMILIES:
        point = parse_vector(args.point, 4)
        try:
            iso = _chart_isometry(spec, args)
        except ValueError as e:
            raise UsageError(str(e)) from None
        image = iso(point)
        res = _residual(models.pullback_residuals(spec, iso, [point])[0])
    else:
        point = parse_vector(args.point, 6)
        E = extrinsic.extrinsic_space(spec)
        if max_abs(E.residual(point)) > 1e-10:
            raise UsageError(f"point is not on {spec.label}")
        iso = _affine_from_args(spec, args)
        image = extrinsic.affine_action(extrinsic.model_eps(spec), iso, point)
        check = extrinsic.embedded_pullback_check(spec, iso, [point])
        res = check.max_residual
    payload = {"space": spec.label, "point": _render_vec(point), "image": _render_vec(image),
               "pullback_residual": res}
    if args.json is not None:
        _emit_json(payload, args.json)
    else:
        print(f"image    ({', '.join(payload['image'])})")
        print(f"pullback {_render_residual(res)}")
    return EXIT_PASS


def cmd_classify(args) -> int:
    A = parse_matrix(args.A, 3)
    try:
        frame = so12.detect_frame(A) if args.frame == "auto" else args.frame
        kind = so12.classify_so12(A, frame, parabolic_tol=args.parabolic_tol)
    except ValueError as e:
        raise UsageError(str(e)) from None
    payload = {"class": str(kind), "frame": frame, "trace": render_scalar(sum(A[i, i] for i in range(3)))}
    if kind is not so12.SO12Class.IDENTITY:
        _, causal = so12.fixed_vector(A, frame)
        payload["fixed_vector"] = causal
    if args.json is not None:
        _emit_json(payload, args.json)
    else:
        print(payload["class"])
    return EXIT_PASS


# -- entry point ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sig22", description="Signature (2,2) symmetric spaces: catalog and checks.")
    parser.add_argument("--version", action="version", version=f"sig22 {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list the families")
    p.add_argument("action", choices=["list"])
    _add_json_flag(p)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("verify", help="run the verification suite for one space or a grid")
    _add_space_flags(p, required=False)
    p.add_argument("--grid", nargs="?", const="default", metavar="default|full")
    p.add_argument("--tol", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--quick", action="store_true", help="small sample counts")
    p.add_argument("--workers", type=int, default=1)
    _add_json_flag(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fixed-point", help="fixed point of (b, A) on Z or Z'")
    _add_space_flags(p, families=("Z", "Zprime"))
    p.add_argument("--b", required=True)
    p.add_argument("--A", required=True)
    p.add_argument("--group", choices=sorted(AFFINE_GROUPS))
    _add_json_flag(p)
    p.set_defaults(func=cmd_fixed_point)

    p = sub.add_parser("metric", help="closed-form metric at a chart point")
    _add_space_flags(p)
    p.add_argument("--point", required=True)
    p.add_argument("--group-metric", action="store_true", help="also compare with the left-translated origin gram")
    _add_json_flag(p)
    p.set_defaults(func=cmd_metric)

    p = sub.add_parser("act", help="apply an isometry to a point")
    _add_space_flags(p)
    p.add_argument("--point", required=True)
    p.add_argument("--g", help="transvection group coordinates")
    p.add_argument("--delta", help="discrete signs: three for X1, two for X2 and Y")
    p.add_argument("--o11", help="2x2 element of O(1,1) for X1(e,-e,1)")
    p.add_argument("--theta", action="store_true", help="compose the O(1,1) element with the symmetry")
    p.add_argument("--S", help="2x2 element of SL+-(2) for N")
    p.add_argument("--b", default="0,0,0")
    p.add_argument("--A", default="identity")
    p.add_argument("--group", choices=sorted(AFFINE_GROUPS))
    _add_json_flag(p)
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("classify-so12", help="elliptic, parabolic or hyperbolic")
    p.add_argument("--A", required=True)
    p.add_argument("--frame", choices=["auto", *so12.FRAMES], default="auto")
    p.add_argument("--parabolic-tol", type=float, default=so12.PARABOLIC_TOL)
    _add_json_flag(p)
    p.set_defaults(func=cmd_classify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        parser.error(str(e))


if __name__ == "__main__":
    sys.exit(main())
