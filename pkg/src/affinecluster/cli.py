"""Command-line interface.

Exit status: 0 when everything requested succeeded or every check passed,
1 when a check failed (a JSON failure report is printed), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import annulus
from .continuant import (
    build_continuant_frieze,
    desnanot_check,
    glue_check,
    recurrence_vs_determinant,
)
from .enumerate import (
    EnumerationError,
    bfs_explore,
    cross_check,
    non_frieze,
    predicted_variables,
)
from .frieze import FriezeTable, render_frieze, render_sequence
from .laurent import LaurentPoly
from .periodic import (
    J,
    JPRIME,
    JTILDE,
    ASystem,
    InvariantError,
    PeriodicFamily,
    jprime_cross_identity_check,
    linear_relation_check,
    periodic_linear_check,
    psi_transport_check,
    structure_check,
    trace_check,
    verify_period,
)
from .quiver import (
    QuiverError,
    QuiverSpec,
    a_tilde_matrix,
    bipartite_classes,
    build_quiver,
    period1_check,
)
from .report import CheckReport

N_MIN, N_MAX = -5, 10
CHECKS = ("period", "structure", "trace", "linear", "periodic-linear", "psi",
          "jprime-cross", "determinant", "desnanot", "glue", "surface")


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _poly(v: LaurentPoly, units: bool):
    return v.eval_units() if units else str(v)


def _spec(args) -> QuiverSpec:
    if args.family == "a":
        if args.q is None or args.p is None:
            raise UsageError("--family a needs --q and --p")
        return QuiverSpec.a_tilde(args.q, args.p)
    if args.N is None:
        raise UsageError("--family d needs --N")
    return QuiverSpec.d_tilde(args.N)


def _family(args, kind=None) -> PeriodicFamily:
    kind = kind or getattr(args, "kind", None)
    if args.family == "d":
        if args.N is None:
            raise UsageError("--family d needs --N")
        if kind not in (None, JPRIME):
            raise UsageError("affine D only has the Jprime family")
        return PeriodicFamily.d_type(args.N)
    if args.q is None or args.p is None:
        raise UsageError("--family a needs --q and --p")
    kind = kind or J
    if kind == JPRIME:
        raise UsageError("Jprime belongs to --family d")
    return PeriodicFamily.a_type(kind, args.q, args.p)


def _window(args):
    if args.n_max < args.n_min:
        raise UsageError("--n-max must not be below --n-min")
    return args.n_min, args.n_max


# -- subcommands ----------------------------------------------------------------

def cmd_build(args, out):
    seed = build_quiver(_spec(args))
    B = seed.matrix
    classes = bipartite_classes(B)
    doc = {
        "matrix": B.to_json_obj(),
        "arrows": [[B.labels[i], B.labels[j], m] for i, j, m in B.arrows()],
        "period1": period1_check(B),
        "bipartite": None if classes is None else {
            "sinks": [B.labels[i] for i in classes[0]],
            "sources": [B.labels[i] for i in classes[1]],
        },
    }
    out.write(_dump(doc))
    return 0


def _frieze_text(args):
    spec = _spec(args)
    window = _window(args)
    if args.sequence:
        if spec.family != "A":
            raise UsageError("--sequence is only defined for --family a")
        system = ASystem.build(spec.q, spec.p)
        if args.format == "json":
            n_min, n_max = window
            return _dump({"x": {str(n): _poly(system.seq(n), args.units)
                                for n in range(n_min, n_max + 1)}})
        return render_sequence(system.seq, window[0], window[1], args.format, args.units)
    T = FriezeTable(build_quiver(spec).matrix)
    return render_frieze(T, window, args.format, args.units)


def cmd_frieze(args, out):
    out.write(_frieze_text(args))
    return 0


def cmd_periodic(args, out):
    F = _family(args)
    n_min, n_max = _window(args)
    rep = verify_period(F, n_min, n_max)
    doc = {
        "kind": F.kind,
        "period": F.period,
        "values": {str(n): _poly(F(n), args.units) for n in range(n_min, n_max + 1)},
        "period_check": rep.to_dict(),
    }
    out.write(_dump(doc))
    return 0 if rep.passed else 1


def _continuant_text(args):
    CF = build_continuant_frieze(_family(args), margin=args.margin)
    return CF.render(fmt=args.format, units=args.units)


def cmd_continuant(args, out):
    out.write(_continuant_text(args))
    return 0


def _run_check(args) -> CheckReport:
    name = args.check
    if name == "surface":
        return _surface_check(args)
    if name == "glue":
        if args.family == "d":
            return glue_check(JPRIME, _window(args), N=args.N)
        return glue_check(args.kind or J, _window(args), q=args.q, p=args.p)
    F = _family(args)
    n_min, n_max = _window(args)
    ns = range(n_min, n_max + 1)
    if name == "period":
        return verify_period(F, n_min, n_max)
    if name == "structure":
        return structure_check(F, range(0, args.m_max + 1), ns)
    if name == "trace":
        rep = trace_check(F)
        if args.units and "K" in rep.info:
            rep.info["K"] = rep.info["K"].eval_units()
        return rep
    if name == "linear":
        return linear_relation_check(F, ns)
    if name == "periodic-linear":
        return periodic_linear_check(F, ns)
    if name == "psi":
        if F.kind == JPRIME:
            raise UsageError("psi transport is an affine A check")
        return psi_transport_check(F.seq, ns)
    if name == "jprime-cross":
        if F.kind != JPRIME:
            raise UsageError("jprime-cross needs --family d")
        return jprime_cross_identity_check(F, ns)
    if name == "determinant":
        return recurrence_vs_determinant(F, F.step, range(0, min(args.m_max, 6) + 1), ns)
    if name == "desnanot":
        return desnanot_check(build_continuant_frieze(F, margin=args.margin))
    raise UsageError(f"unknown check {name!r}")


def _surface_check(args) -> CheckReport:
    if args.q is None or args.p is None:
        raise UsageError("the surface check needs --q and --p")
    T = annulus.initial_triangulation(args.q, args.p)
    rep = CheckReport("surface-quiver")
    B = annulus.quiver_from_triangulation(T)
    rep.record(B == a_tilde_matrix(args.q, args.p), None,
               json.dumps(B.to_json_obj()["b"]), json.dumps(a_tilde_matrix(args.q, args.p).b))
    return rep


def cmd_check(args, out):
    rep = _run_check(args)
    out.write(_dump(rep.to_dict()))
    return 0 if rep.passed else 1


def _load_triangulation(args):
    if args.input:
        with open(args.input) as fh:
            return annulus.Triangulation.from_json_obj(json.load(fh))
    if args.q is None or args.p is None:
        raise UsageError("surface needs --q and --p or --input")
    return annulus.initial_triangulation(args.q, args.p)


def _parse_sequence(text):
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"bad flip sequence {text!r}") from None


def cmd_surface(args, out):
    action = args.action
    if action == "classify":
        if args.N is not None:
            if not args.arc_args:
                raise UsageError("classify --N needs --arc KIND ARGS...")
            kind, *rest = args.arc_args
            try:
                family, name = annulus.classify_d_arc(args.N, kind, *map(int, rest))
            except (TypeError, ValueError) as exc:
                raise UsageError(str(exc)) from None
            doc = {"family": family, "variable": name,
                   "counts": annulus.d_arc_counts(args.N, args.winding)}
            out.write(_dump(doc))
            return 0
        T = _load_triangulation(args)
        doc = {"arcs": [{"arc": a.to_json_obj(), "variable": str(annulus.arc_variable(a, T.q, T.p))}
                        for a in T.arcs]}
        out.write(_dump(doc))
        return 0
    T = _load_triangulation(args)
    seq = _parse_sequence(args.flips)
    for k in seq:
        if not 0 <= k < T.N:
            raise UsageError(f"arc index {k} out of range 0..{T.N - 1}")
        T, _ = annulus.flip(T, k)
    if action in ("init", "flip"):
        doc = T.to_json_obj()
        doc["flips"] = seq
        out.write(_dump(doc))
    elif action == "quiver":
        out.write(_dump(annulus.quiver_from_triangulation(T).to_json_obj()))
    return 0


def cmd_enumerate(args, out):
    spec = _spec(args)
    seed = build_quiver(spec)
    result = bfs_explore(seed, args.depth, workers=args.workers)
    doc = {"depth": args.depth, "seeds": result.seeds, "variables": len(result.variables)}
    code = 0
    if args.compare:
        w = args.window if args.window is not None else args.depth + 2
        kw = dict(q=spec.q, p=spec.p) if spec.family == "A" else dict(N=spec.N)
        pred = predicted_variables(spec.family, window=(-w, w), **kw)
        try:
            rep = cross_check(result, pred)
        except EnumerationError as exc:
            rep = exc.details
        doc["compare"] = rep.to_dict()
        doc["non_frieze"] = [str(v) for v in non_frieze(result, pred)]
        code = 0 if rep.passed else 1
    out.write(_dump(doc))
    return code


def cmd_render(args, out):
    if args.what == "frieze":
        args.sequence = False
        text = _frieze_text(args)
    elif args.what == "sequence":
        args.sequence = True
        text = _frieze_text(args)
    else:
        text = _continuant_text(args)
    out.write(text)
    return 0


# -- parser ---------------------------------------------------------------------

def _add_family(p, kind=False):
    p.add_argument("--family", choices=("a", "d"), default="a",
                   help="affine A_{q,p} or affine D_N (default: a)")
    p.add_argument("--q", type=int, help="bottom parameter of affine A")
    p.add_argument("--p", type=int, help="top parameter of affine A")
    p.add_argument("--N", type=int, help="rank parameter of affine D")
    if kind:
        p.add_argument("--kind", choices=(J, JTILDE, JPRIME),
                       help="periodic family (default: J for a, Jprime for d)")


def _add_window(p):
    p.add_argument("--n-min", type=int, default=N_MIN, help=f"first index (default {N_MIN})")
    p.add_argument("--n-max", type=int, default=N_MAX, help=f"last index (default {N_MAX})")


def _add_render(p):
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--units", action="store_true",
                   help="set every initial variable to 1 and print integers")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="affinecluster",
        description="Exact cluster variables of affine A and D cluster algebras.")
    parser.add_argument("--output", help="write to this file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="initial exchange matrix")
    _add_family(p)

    p = sub.add_parser("frieze", help="frieze pattern X^i_n over a window")
    _add_family(p)
    _add_window(p)
    _add_render(p)
    p.add_argument("--sequence", action="store_true",
                   help="lay out the affine A sequence x_n on the repetition quiver")

    p = sub.add_parser("periodic", help="values of J, Jtilde or Jprime with a period check")
    _add_family(p, kind=True)
    _add_window(p)
    p.add_argument("--units", action="store_true")

    p = sub.add_parser("continuant", help="continuant frieze of a periodic family")
    _add_family(p, kind=True)
    _add_render(p)
    p.add_argument("--margin", type=int, default=2, help="extra columns on each side")

    p = sub.add_parser("check", help="run one symbolic identity check")
    p.add_argument("check", choices=CHECKS)
    _add_family(p, kind=True)
    _add_window(p)
    p.add_argument("--units", action="store_true", help="report invariants at units")
    p.add_argument("--m-max", type=int, default=6, help="largest product length")
    p.add_argument("--margin", type=int, default=2)

    p = sub.add_parser("surface", help="annulus triangulations and affine D arc labels")
    p.add_argument("action", choices=("init", "flip", "quiver", "classify"))
    p.add_argument("--q", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--N", type=int, help="classify an affine D arc instead")
    p.add_argument("--input", help="triangulation JSON file")
    p.add_argument("--flips", help="comma-separated arc indices to flip in order")
    p.add_argument("--arc", dest="arc_args", nargs="+",
                   help="affine D arc: KIND ARGS (separating i j m | boundary i l | "
                        "punctured i m | exceptional k)")
    p.add_argument("--winding", type=int, default=2, help="winding window for counts")

    p = sub.add_parser("enumerate", help="breadth-first mutation oracle")
    _add_family(p)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--window", type=int, help="frieze window |n| <= W (default depth+2)")
    p.add_argument("--compare", action="store_true", help="compare with the predicted set")
    p.add_argument("--workers", type=int,
                   help="worker processes (default: $AFFINECLUSTER_WORKERS or 1)")

    p = sub.add_parser("render", help="write a frieze, sequence or continuant table")
    p.add_argument("what", choices=("frieze", "sequence", "continuant"))
    _add_family(p, kind=True)
    _add_window(p)
    _add_render(p)
    p.add_argument("--margin", type=int, default=2)
    return parser


HANDLERS = {
    "build": cmd_build, "frieze": cmd_frieze, "periodic": cmd_periodic,
    "continuant": cmd_continuant, "check": cmd_check, "surface": cmd_surface,
    "enumerate": cmd_enumerate, "render": cmd_render,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = open(args.output, "w") if args.output else sys.stdout
    try:
        return HANDLERS[args.command](args, out)
    except (UsageError, QuiverError, annulus.TriangulationError) as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    except InvariantError as exc:
        print(_dump({"passed": False, "failures": [{"n": None, "lhs": str(exc), "rhs": None}]}),
              file=out, end="")
        return 1
    finally:
        if out is not sys.stdout:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
