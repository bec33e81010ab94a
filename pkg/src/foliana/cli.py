"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 analysis error, 3 ambiguous
classification (the partial document is still printed).
"""
import argparse
from fractions import Fraction
import json
import math
import sys

from .blowup import blowup_once, generalized_curve_verdict, seidenberg_resolve
from .config import Config
from .curvature import fiber_intersection_count, total_curvature
from .errors import FolianaError, PolySyntaxError
from .foliation import INFINITELY_MANY, Line, ProjectivePoint, VectorField, invariant_lines, singularities
from .localsing import classify, cs_sum_on_line
from .scalars import GaussRat
from .verdict import ClosedFormOneForm, ReportConfig, full_report, render_text, verify_closed_form

EXIT_OK, EXIT_USAGE, EXIT_ANALYSIS, EXIT_AMBIGUOUS = 0, 1, 2, 3


class UsageError(Exception):
    kind = "usage_error"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# input parsing
# ---------------------------------------------------------------------------
def _number(text):
    try:
        return GaussRat(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a real number: {text!r}") from None


def _projective_scalar(text):
    from .cpoly import parse_poly
    try:
        p = parse_poly(text)
    except PolySyntaxError as exc:
        raise UsageError(f"bad coordinate {text!r}: {exc}") from None
    if p.degree > 0:
        raise UsageError(f"coordinate {text!r} must be a constant")
    return p.coeff(0, 0)


def parse_point(text):
    """``"re,im"`` style affine input or ``"[X:Y:Z]"`` homogeneous input."""
    text = text.strip()
    if text.startswith("[") and text.endswith("]"):
        parts = text[1:-1].split(":")
        if len(parts) != 3:
            raise UsageError(f"homogeneous point needs three entries: {text!r}")
        Xh, Yh, Zh = (_projective_scalar(p) for p in parts)
        if not (Xh or Yh or Zh):
            raise UsageError("[0:0:0] is not a point")
        if Zh:
            return ProjectivePoint.affine(Xh / Zh, Yh / Zh)
        if Xh:
            return ProjectivePoint("U1", (Zh / Xh, Yh / Xh))
        return ProjectivePoint("U2", (Zh / Yh, Xh / Yh))
    parts = text.split(",")
    if len(parts) == 2:
        return ProjectivePoint.affine(_number(parts[0]), _number(parts[1]))
    if len(parts) == 4:
        vals = [_number(p) for p in parts]
        I = GaussRat(0, 1)
        return ProjectivePoint.affine(vals[0] + I * vals[1], vals[2] + I * vals[3])
    raise UsageError(f"point must be 're,im' (real x,y), 're,im,re,im' (complex x,y) or '[X:Y:Z]': {text!r}")


def _affine_pair(pt):
    if pt.chart != "affine":
        raise UsageError("an affine point is required here")
    return pt.coords


def load_field(args):
    if args.field and args.file:
        raise UsageError("give either --field or --file, not both")
    if args.file:
        try:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
    elif args.field:
        text = args.field
    else:
        raise UsageError("a vector field is required (--field or --file)")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"field is not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or "P" not in doc or "Q" not in doc:
        raise UsageError('field must be a JSON object {"P": "...", "Q": "..."}')
    try:
        return VectorField.from_json(doc)
    except PolySyntaxError as exc:
        raise UsageError(f"cannot parse field: {exc}") from None


def _strip(text):
    if text is None or text == "auto":
        return "auto"
    if text == "none":
        return None
    try:
        h = float(text)
    except ValueError:
        raise UsageError(f"--strip must be auto, none or a positive height: {text!r}") from None
    if not h > 0:
        raise UsageError("--strip height must be positive")
    return h


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------
def cmd_singularities(args, cfg):
    vf = load_field(args)
    return singularities(vf, cfg.root_tol).to_json(), False


def cmd_invariant_lines(args, cfg):
    vf = load_field(args)
    lines = invariant_lines(vf, cfg.root_tol)
    if lines is INFINITELY_MANY:
        return {"infinitely_many": True, "invariant_lines": []}, False
    return {"infinitely_many": False, "invariant_lines": [l.to_json() for l in lines]}, False


def cmd_classify(args, cfg):
    vf = load_field(args)
    sc = classify(vf, parse_point(args.at), cfg.jet_cap, cfg.window)
    return {"classification": sc.to_json()}, sc.ambiguous


def cmd_cs_sum(args, cfg):
    vf = load_field(args)
    try:
        line = Line.from_spec(args.line)
    except (ValueError, FolianaError) as exc:
        raise UsageError(f"bad line spec {args.line!r}: {exc}") from None
    rep = cs_sum_on_line(vf, line, jet_cap=cfg.jet_cap, window=cfg.window, root_tol=cfg.root_tol)
    doc = {"index_report": rep.to_json()}
    if rep.errors:
        doc["errors"] = list(rep.errors)
    return doc, rep.ambiguous


def cmd_blowup(args, cfg):
    vf = load_field(args)
    return {"blowup": blowup_once(vf, parse_point(args.at)).to_json()}, False


def cmd_resolve(args, cfg):
    vf = load_field(args)
    tree = seidenberg_resolve(vf, parse_point(args.at), cfg.depth_cap, cfg.jet_cap, cfg.window)
    return {"tree": tree.to_json(), "generalized_curve": generalized_curve_verdict(tree)}, tree.ambiguous


def _curvature(args, cfg):
    vf = load_field(args)
    p0 = _affine_pair(parse_point(args.through))
    est = total_curvature(vf, p0, R=cfg.R, tol=cfg.quad_tol, strip=_strip(args.strip), threads=cfg.threads,
                          dump=args.dump_density)
    doc = est.to_json()
    return doc, False


def cmd_curvature(args, cfg):
    return _curvature(args, cfg)


def cmd_nu(args, cfg):
    return _curvature(args, cfg)


def cmd_fiber_count(args, cfg):
    res = fiber_intersection_count(args.integral, args.alpha, args.level, R=args.contour_R)
    return res.to_json(), False


def cmd_verify_form(args, cfg):
    vf = load_field(args)
    try:
        doc = json.loads(args.form)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--form is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise UsageError("--form must be a JSON object")
    try:
        form = ClosedFormOneForm.from_json(doc)
    except PolySyntaxError as exc:
        raise UsageError(f"cannot parse 1-form: {exc}") from None
    return verify_closed_form(vf, form).to_json(), False


def cmd_report(args, cfg):
    vf = load_field(args)
    through = _affine_pair(parse_point(args.through)) if args.through else None
    rc = ReportConfig(jet_cap=cfg.jet_cap, window=cfg.window, depth_cap=cfg.depth_cap, curvature_through=through,
                      R=cfg.R, quad_tol=cfg.quad_tol, root_tol=cfg.root_tol, threads=cfg.threads)
    doc = full_report(vf, rc)
    return doc, doc["ambiguous"]


def cmd_schema(args, cfg):
    from .schemas import SCHEMAS
    if args.name not in SCHEMAS:
        raise UsageError(f"no schema named {args.name!r}; choose from {', '.join(sorted(SCHEMAS))}")
    return {"schema": SCHEMAS[args.name]}, False


COMMANDS = {
    "singularities": cmd_singularities,
    "invariant-lines": cmd_invariant_lines,
    "classify": cmd_classify,
    "cs-sum": cmd_cs_sum,
    "blowup": cmd_blowup,
    "resolve": cmd_resolve,
    "curvature": cmd_curvature,
    "nu": cmd_nu,
    "fiber-count": cmd_fiber_count,
    "verify-form": cmd_verify_form,
    "report": cmd_report,
    "schema": cmd_schema,
}


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--field", help='vector field as JSON, e.g. \'{"P":"x+y","Q":"y"}\'')
    common.add_argument("--file", help="path to a JSON file holding the field")
    common.add_argument("--format", choices=("json", "text"), default=None)
    common.add_argument("--threads", type=int, default=None)
    common.add_argument("--quad-tol", type=float, default=None)
    common.add_argument("--root-tol", type=float, default=None)
    common.add_argument("--window", type=float, default=None, help="classification window")
    common.add_argument("--jet-cap", type=int, default=None)
    common.add_argument("--depth-cap", type=int, default=None)

    parser = _Parser(prog="foliana", description="Analyze polynomial vector fields on C^2 and their foliations.")
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True
    sub.add_parser("singularities", parents=[common], help="singular points on CP^2")
    sub.add_parser("invariant-lines", parents=[common], help="invariant affine lines")
    p = sub.add_parser("classify", parents=[common], help="classify a singular point")
    p.add_argument("--at", required=True)
    p = sub.add_parser("cs-sum", parents=[common], help="sum of Camacho-Sad indices on an invariant line")
    p.add_argument("--line", required=True, help="'inf', 'x=c' or 'y=m*x+b'")
    p = sub.add_parser("blowup", parents=[common], help="blow up once at a singular point")
    p.add_argument("--at", required=True)
    p = sub.add_parser("resolve", parents=[common], help="full resolution tree and generalized-curve test")
    p.add_argument("--at", required=True)
    for name, helptext in (("curvature", "truncated total curvature of an orbit"),
                           ("nu", "spherical-image area and degree of an orbit")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--through", required=True)
        p.add_argument("--R", type=float, default=None)
        p.add_argument("--strip", default="auto", help="auto, none or a strip height")
        p.add_argument("--dump-density", default=None, metavar="PATH")
    p = sub.add_parser("fiber-count", parents=[common], help="zeros of h(t, alpha t) - level")
    p.add_argument("--integral", required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--level", required=True)
    p.add_argument("--contour-R", type=float, default=10.0)
    p = sub.add_parser("verify-form", parents=[common], help="check a closed rational 1-form")
    p.add_argument("--form", required=True)
    p = sub.add_parser("report", parents=[common], help="full verdict report")
    p.add_argument("--through", default=None)
    p.add_argument("--R", type=float, default=None)
    p = sub.add_parser("schema", parents=[common], help="print the JSON schema of a command's output")
    p.add_argument("name")
    return parser


def _clean(obj):
    """Replace non-finite floats by null so the output is strict JSON."""
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def emit(doc, fmt, stream):
    doc = _clean(doc)
    if fmt == "text":
        stream.write(render_text(doc))
    else:
        stream.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")


def _requested_format(argv, environ):
    """Best-effort output format for documents emitted before argument parsing succeeds."""
    import os
    env = os.environ if environ is None else environ
    fmt = (env.get("FOLIANA_FORMAT") or "json").strip().lower()
    for i, arg in enumerate(argv):
        if arg == "--format" and i + 1 < len(argv):
            fmt = argv[i + 1]
        elif arg.startswith("--format="):
            fmt = arg.split("=", 1)[1]
    return fmt if fmt in ("json", "text") else "json"


def run(argv, stdout=None, stderr=None, environ=None):
    """Run one command; returns (exit code, emitted document)."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    command = argv[0] if argv and not argv[0].startswith("-") else None
    fmt = _requested_format(argv, environ)
    try:
        try:
            args = build_parser().parse_args(argv)
        except SystemExit as exc:  # --help
            return (int(exc.code or 0), None)
        command = args.command
        try:
            cfg = Config.from_env(environ, quad_tol=args.quad_tol, root_tol=args.root_tol, window=args.window,
                                  jet_cap=args.jet_cap, depth_cap=args.depth_cap, threads=args.threads,
                                  format=args.format, R=getattr(args, "R", None))
        except FolianaError as exc:
            raise UsageError(str(exc)) from None
        fmt = cfg.format
        doc, ambiguous = COMMANDS[command](args, cfg)
        errors = doc.pop("errors", [])
        code = EXIT_OK
        if errors:
            code = EXIT_ANALYSIS
            for e in errors:
                stderr.write(f"foliana: {e.get('kind', 'error')}: {e.get('message', '')}\n")
        if ambiguous:
            code = EXIT_AMBIGUOUS
    except UsageError as exc:
        doc, errors, code = {}, [{"kind": "usage_error", "message": str(exc)}], EXIT_USAGE
        stderr.write(f"foliana: {exc}\n")
    except FolianaError as exc:
        doc, errors, code = {}, [{"kind": exc.kind, "message": str(exc)}], EXIT_ANALYSIS
        stderr.write(f"foliana: {exc}\n")
    doc["command"] = command or ""
    doc["errors"] = errors
    emit(doc, fmt, stdout)
    return code, doc


def main(argv=None):
    code, _ = run(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
