"""Theorem-hypothesis checks and report assembly.

Every check returns an :class:`Applicability` whose ``holds`` is True,
False or ``"ambiguous"``.  Conclusions are conditional statements; no check
ever claims that a particular orbit is or is not algebraic.
"""
from dataclasses import dataclass, field

from .blowup import DEFAULT_DEPTH_CAP, NO, UNKNOWN, generalized_curve_verdict, seidenberg_resolve
from .cpoly import CPoly2, parse_poly
from .errors import DegreeCapError, FolianaError
from .foliation import INFINITELY_MANY, Line, invariant_lines, linf_invariant, singularities
from .localsing import DEFAULT_JET_CAP, DEFAULT_WINDOW, IRREDUCIBLE_KINDS, classify, cs_sum_on_line
from .scalars import GaussRat, exact_string, json_complex

AMBIGUOUS = "ambiguous"

FTC_IMPLIES_ALGEBRAIC = "FTC_IMPLIES_ALGEBRAIC"
FTC_IMPLIES_IN_ALGEBRAIC_CURVE = "FTC_IMPLIES_IN_ALGEBRAIC_CURVE"
CLOSED_RATIONAL_FORM_CLASSIFICATION = "CLOSED_RATIONAL_FORM_CLASSIFICATION"

CONCLUSIONS = {
    "thm1": (FTC_IMPLIES_ALGEBRAIC,
             "every orbit with finite total curvature is algebraic"),
    "thm52": (FTC_IMPLIES_IN_ALGEBRAIC_CURVE,
              "every orbit with finite total curvature is contained in an algebraic curve"),
    "thm2": (CLOSED_RATIONAL_FORM_CLASSIFICATION,
             "if some orbit is non-algebraic with finite total curvature, then the foliation is given by a "
             "closed rational 1-form, either logarithmic or a rational pull-back of the Poincare-Dulac model "
             "(n x + c y^n, y), and then every orbit has finite total curvature"),
}


def _or3(a, b):
    if a is True or b is True:
        return True
    if a is False and b is False:
        return False
    return AMBIGUOUS


def _all3(values):
    values = list(values)
    if any(v is False for v in values):
        return False
    if all(v is True for v in values):
        return True
    return AMBIGUOUS


@dataclass
class Applicability:
    theorem: str
    holds: object
    reasons: list = field(default_factory=list)
    conclusion: str = None
    tag: str = None
    scope: str = None

    def to_json(self):
        return {
            "theorem": self.theorem,
            "scope": self.scope,
            "holds": self.holds,
            "reasons": list(self.reasons),
            "conclusion": self.conclusion,
            "tag": self.tag,
        }


def _finish(theorem, holds, reasons, scope=None, key=None):
    tag, text = CONCLUSIONS[key or theorem]
    app = Applicability(theorem, holds, reasons, scope=scope)
    if holds is True:
        app.tag, app.conclusion = tag, text
    return app


class Analysis:
    """Singular set, classifications and invariant lines computed once and shared."""

    def __init__(self, vf, jet_cap=DEFAULT_JET_CAP, window=DEFAULT_WINDOW, depth_cap=DEFAULT_DEPTH_CAP,
                 root_tol=1e-9):
        self.vf = vf
        self.root_tol = root_tol
        self.jet_cap = jet_cap
        self.window = window
        self.depth_cap = depth_cap
        self.errors = []
        self.sings = singularities(vf, root_tol)
        self.classes = []
        for sp in self.sings:
            try:
                self.classes.append(classify(vf, sp.point, jet_cap, window))
            except FolianaError as exc:
                self.classes.append(None)
                self.errors.append({"kind": exc.kind, "message": f"{sp.point.label()}: {exc}"})
        self.lines = invariant_lines(vf, root_tol)
        self._trees = {}

    def tree(self, k):
        if k not in self._trees:
            sp = self.sings.points[k]
            try:
                self._trees[k] = seidenberg_resolve(self.vf, sp.point, self.depth_cap, self.jet_cap, self.window)
            except FolianaError as exc:
                self._trees[k] = None
                self.errors.append({"kind": exc.kind, "message": f"resolution at {sp.point.label()}: {exc}"})
        return self._trees[k]

    def indexed(self, scope="full-projective"):
        for k, (sp, sc) in enumerate(zip(self.sings.points, self.classes)):
            if scope == "affine-only" and sp.point.at_infinity:
                continue
            yield k, sp, sc


def _analysis(vf, analysis, **kw):
    return analysis if analysis is not None else Analysis(vf, **kw)


def check_theorem1(vf, analysis=None, **kw):
    """Irreducible singularities everywhere (clause A) or no invariant lines (clause B)."""
    an = _analysis(vf, analysis, **kw)
    reasons = []
    verdicts = []
    for _, sp, sc in an.indexed():
        if sc is None:
            verdicts.append(AMBIGUOUS)
            reasons.append({"clause": "A", "point": sp.point.label(), "kind": None, "ok": AMBIGUOUS,
                            "finding": "classification failed"})
            continue
        ok = sc.kind in IRREDUCIBLE_KINDS
        alts = [ok] + [k in IRREDUCIBLE_KINDS for k in sc.alternatives]
        val = ok if all(a == ok for a in alts) else AMBIGUOUS
        verdicts.append(val)
        if val is not True:
            reasons.append({"clause": "A", "point": sp.point.label(), "kind": sc.kind, "ok": val,
                            "finding": f"{sc.kind} is not irreducible" if val is False
                            else f"{sc.kind} classification is ambiguous"})
    clause_a = _all3(verdicts)
    if clause_a is True:
        reasons.append({"clause": "A", "ok": True, "finding": "every singularity is irreducible"})
    if an.lines is INFINITELY_MANY:
        clause_b = False
        reasons.append({"clause": "B", "ok": False, "finding": "infinitely many invariant lines"})
    elif an.lines:
        clause_b = False
        for line in an.lines:
            reasons.append({"clause": "B", "ok": False, "line": line.label(), "finding": "invariant line exists"})
    else:
        clause_b = True
        reasons.append({"clause": "B", "ok": True, "finding": "no invariant lines"})
    app = _finish("thm1", _or3(clause_a, clause_b), reasons)
    app.clauses = {"A": clause_a, "B": clause_b}
    return app


def check_theorem52(vf, depth_cap=DEFAULT_DEPTH_CAP, analysis=None, **kw):
    """Every singularity non-dicritical and a generalized curve."""
    an = _analysis(vf, analysis, depth_cap=depth_cap, **kw)
    reasons = []
    verdicts = []
    for k, sp, sc in an.indexed():
        tree = an.tree(k)
        if tree is None:
            verdicts.append(AMBIGUOUS)
            reasons.append({"point": sp.point.label(), "ok": AMBIGUOUS, "finding": "resolution failed"})
            continue
        gc = generalized_curve_verdict(tree)
        dicritical = tree.dicritical
        if dicritical:
            val = False
            finding = "dicritical"
        elif gc == NO:
            val = False
            finding = "saddle-node in the resolution: not a generalized curve"
        elif gc == UNKNOWN:
            val = AMBIGUOUS
            finding = "resolution incomplete or ambiguous"
        else:
            val = True
            finding = "non-dicritical generalized curve"
        verdicts.append(val)
        reasons.append({"point": sp.point.label(), "kind": None if sc is None else sc.kind, "ok": val,
                        "generalized_curve": gc, "dicritical": dicritical, "blowups": tree.blowups,
                        "finding": finding})
    return _finish("thm52", _all3(verdicts), reasons)


def check_theorem2(vf, scope="full-projective", analysis=None, **kw):
    """Every singularity in scope lies in the Poincare domain and is non-dicritical."""
    if scope not in ("affine-only", "full-projective"):
        raise FolianaError(f"unknown scope {scope!r}")
    an = _analysis(vf, analysis, **kw)
    reasons = []
    verdicts = []
    for _, sp, sc in an.indexed(scope):
        if sc is None:
            verdicts.append(AMBIGUOUS)
            reasons.append({"point": sp.point.label(), "ok": AMBIGUOUS, "finding": "classification failed"})
            continue
        pd, dic = sc.poincare_domain, sc.dicritical
        if pd is False or dic is True:
            val = False
        elif pd is True and dic is False:
            val = AMBIGUOUS if sc.kind_ambiguous else True
        else:
            val = AMBIGUOUS
        parts = []
        parts.append("Poincare domain" if pd is True else "not in the Poincare domain" if pd is False
                     else "Poincare domain undecided")
        parts.append("dicritical" if dic is True else "non-dicritical" if dic is False else "dicriticality unknown")
        verdicts.append(val)
        reasons.append({"point": sp.point.label(), "kind": sc.kind, "ok": val, "poincare_domain": pd,
                        "dicritical": dic, "finding": ", ".join(parts)})
    return _finish("thm2", _all3(verdicts), reasons, scope=scope)


# ---------------------------------------------------------------------------
# closed rational 1-forms
# ---------------------------------------------------------------------------
@dataclass
class ClosedFormOneForm:
    """sum_j lam_j df_j/f_j + d(g / prod_j f_j^(n_j - 1))."""

    lambdas: list
    fs: list
    g: CPoly2
    ns: list

    def __post_init__(self):
        if not (len(self.lambdas) == len(self.fs) == len(self.ns)):
            raise FolianaError("lambda, f and n lists must have equal length")
        if any(int(n) != n or n < 1 for n in self.ns):
            raise FolianaError("every n_j must be a positive integer")
        self.ns = [int(n) for n in self.ns]
        self.lambdas = [_scalar(v) for v in self.lambdas]
        self.fs = [_poly(f) for f in self.fs]
        self.g = _poly(self.g)
        if any(f.is_zero() for f in self.fs):
            raise FolianaError("every f_j must be nonzero")

    @classmethod
    def from_json(cls, doc):
        try:
            lam = doc.get("lambda", doc.get("lambdas"))
            return cls(list(lam), list(doc["f"]), doc.get("g", "0"), list(doc.get("n", [1] * len(doc["f"]))))
        except (KeyError, TypeError) as exc:
            raise FolianaError(f"malformed 1-form document: {exc}") from None

    def scaled(self, c):
        c = _scalar(c)
        return ClosedFormOneForm([c * v for v in self.lambdas], list(self.fs), self.g * CPoly2.const(c), list(self.ns))

    def to_json(self):
        return {
            "lambda": [exact_string(v) or json_complex(v) for v in self.lambdas],
            "f": [f.to_str() for f in self.fs],
            "g": self.g.to_str(),
            "n": list(self.ns),
        }

    def pattern(self):
        if self.g.is_zero():
            return "logarithmic"
        if any(n >= 2 for n in self.ns):
            return "poincare_dulac_pullback"
        if self.g.degree == 0:
            return "logarithmic"
        return "mixed"


def _scalar(v):
    if isinstance(v, str):
        p = parse_poly(v)
        if p.degree > 0:
            raise FolianaError(f"residue {v!r} must be a constant")
        return p.coeff(0, 0)
    if isinstance(v, int):
        return GaussRat(v)
    return v


def _poly(p):
    if isinstance(p, CPoly2):
        return p
    if isinstance(p, (int, float, complex, GaussRat)):
        return CPoly2.const(_scalar(p))
    return parse_poly(str(p))


def _product(polys):
    acc = CPoly2.const(1)
    for p in polys:
        acc = acc * p
    return acc


def clear_denominators(form, degree_cap=60):
    """Polynomial 1-form A dx + B dy equal to Omega times prod_j f_j^n_j."""
    total = sum(f.degree * n for f, n in zip(form.fs, form.ns)) + max(form.g.degree, 0)
    if total > degree_cap:
        raise DegreeCapError(f"cleared 1-form would have degree {total} > {degree_cap}")
    G = _product(f ** (n - 1) for f, n in zip(form.fs, form.ns))
    A = CPoly2()
    B = CPoly2()
    for j, (lam, f, n) in enumerate(zip(form.lambdas, form.fs, form.ns)):
        others = _product(h for k, h in enumerate(form.fs) if k != j)
        coef = others * (G * CPoly2.const(lam) - form.g * CPoly2.const(n - 1))
        A = A + coef * f.diff("x")
        B = B + coef * f.diff("y")
    full = _product(form.fs)
    A = A + full * form.g.diff("x")
    B = B + full * form.g.diff("y")
    return A, B


@dataclass
class FormCheck:
    defines_foliation: bool
    residual: CPoly2
    A: CPoly2
    B: CPoly2
    pattern: str
    nonzero_residues: list
    higher_orders: list
    form: ClosedFormOneForm

    def to_json(self):
        return {
            "defines_foliation": self.defines_foliation,
            "residual": self.residual.to_str(),
            "cleared_form": {"A": self.A.to_str(), "B": self.B.to_str()},
            "residue_report": {
                "pattern": self.pattern,
                "nonzero_residues": self.nonzero_residues,
                "higher_order_factors": self.higher_orders,
                "closedness": "holds by construction of the shape; not tested",
                "irreducibility": "asserted by the user, not verified",
            },
            "form": self.form.to_json(),
        }


def verify_closed_form(vf, form, degree_cap=60, rel=1e-10):
    """Check that Omega annihilates the field: A P + B Q == 0 after clearing denominators."""
    A, B = clear_denominators(form, degree_cap)
    ref = max(A.max_coeff(), B.max_coeff())
    if (A.chop(ref=ref) if not A.is_exact else A).is_zero() and (B.chop(ref=ref) if not B.is_exact else B).is_zero():
        raise FolianaError("the 1-form vanishes identically after clearing denominators")
    residual = A * vf.P + B * vf.Q
    if residual.is_exact:
        ok = residual.is_zero()
    else:
        scale = max(ref * max(vf.P.max_coeff(), vf.Q.max_coeff()), 1e-300)
        ok = residual.max_coeff() <= rel * scale
        if ok:
            residual = CPoly2()
    nonzero = [f.to_str() for f, lam in zip(form.fs, form.lambdas) if complex(lam) != 0]
    higher = [{"f": f.to_str(), "n": n} for f, n in zip(form.fs, form.ns) if n >= 2]
    return FormCheck(ok, residual, A, B, form.pattern(), nonzero, higher, form)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------
@dataclass
class ReportConfig:
    jet_cap: int = DEFAULT_JET_CAP
    window: float = DEFAULT_WINDOW
    depth_cap: int = DEFAULT_DEPTH_CAP
    curvature_through: tuple = None
    R: float = 30.0
    quad_tol: float = 1e-4
    root_tol: float = 1e-9
    threads: int = 1
    index_sums: bool = True


def full_report(vf, config=None):
    """Run every analysis and return a JSON-ready document with stable key order."""
    config = config or ReportConfig()
    an = Analysis(vf, config.jet_cap, config.window, config.depth_cap, config.root_tol)
    table = []
    for k, sp, sc in an.indexed():
        row = sp.to_json()
        row["classification"] = None if sc is None else sc.to_json()
        tree = an.tree(k)
        row["generalized_curve"] = None if tree is None else generalized_curve_verdict(tree)
        row["blowups"] = None if tree is None else tree.blowups
        table.append(row)
    if an.lines is INFINITELY_MANY:
        lines_doc = "infinitely_many"
    else:
        lines_doc = [line.to_json() for line in an.lines]
    theorems = {
        "thm1": check_theorem1(vf, analysis=an).to_json(),
        "thm52": check_theorem52(vf, analysis=an).to_json(),
        "thm2_affine": check_theorem2(vf, "affine-only", analysis=an).to_json(),
        "thm2_projective": check_theorem2(vf, "full-projective", analysis=an).to_json(),
    }
    doc = {
        "field": vf.to_json(),
        "degree": vf.degree,
        "linf_invariant": an.sings.linf_invariant,
        "singularities": table,
        "tangency_points": [t.to_json() for t in an.sings.tangencies],
        "invariant_lines": lines_doc,
        "theorems": theorems,
    }
    if config.index_sums:
        doc["index_sums"] = _index_sums(vf, an, config)
    if config.curvature_through is not None:
        from .curvature import total_curvature
        try:
            est = total_curvature(vf, config.curvature_through, R=config.R, tol=config.quad_tol,
                                  threads=config.threads)
            doc["curvature"] = est.to_json()
            an.errors.extend(est.errors)
        except FolianaError as exc:
            doc["curvature"] = None
            an.errors.append({"kind": exc.kind, "message": f"curvature: {exc}"})
    doc["errors"] = list(an.errors)
    doc["ambiguous"] = any(v.get("holds") == AMBIGUOUS for v in theorems.values()) or any(
        sc is not None and sc.kind_ambiguous for sc in an.classes)
    return doc


def _index_sums(vf, an, config):
    lines = []
    if linf_invariant(vf):
        lines.append(Line.infinity())
    if an.lines is not INFINITELY_MANY:
        lines.extend(an.lines)
    out = []
    for line in lines:
        try:
            out.append(cs_sum_on_line(vf, line, jet_cap=config.jet_cap, window=config.window,
                                      root_tol=config.root_tol).to_json())
        except FolianaError as exc:
            out.append({"line": line.to_json(), "errors": [{"kind": exc.kind, "message": str(exc)}]})
    return out


def render_text(doc):
    """Human-readable rendering listing exactly the values of the JSON document."""
    lines = []
    _render(doc, "", lines)
    return "\n".join(lines) + "\n"


def _render(node, path, out):
    if isinstance(node, dict):
        if not node:
            out.append(f"{path}: {{}}")
        for key in sorted(node):
            _render(node[key], f"{path}.{key}" if path else str(key), out)
    elif isinstance(node, list):
        if not node:
            out.append(f"{path}: []")
        for i, item in enumerate(node):
            _render(item, f"{path}[{i}]", out)
    else:
        out.append(f"{path}: {_text_scalar(node)}")


def _text_scalar(v):
    if v is None:
        return "null"
    if v is True:
        return "true"
    if v is False:
        return "false"
    if isinstance(v, float):
        return float.__repr__(float(v))
    return str(v)
