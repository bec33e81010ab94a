"""Quadratic blow-ups and the resolution tree of a singular point."""
from dataclasses import dataclass, field

from .cpoly import CPoly2, ONE, X, Y, ZERO, univariate_roots
from .errors import FolianaError, NotSingularError
from .foliation import ProjectivePoint, VectorField, common_roots
from .localsing import (
    DEFAULT_JET_CAP,
    DEFAULT_WINDOW,
    IRREDUCIBLE_KINDS,
    SADDLE_NODE,
    classify_local,
    local_field,
)
from .scalars import GaussRat, json_complex

DEFAULT_DEPTH_CAP = 12

YES = "YES"
NO = "NO"
UNKNOWN = "UNKNOWN"


def _point(p):
    return p if isinstance(p, ProjectivePoint) else ProjectivePoint.affine(*p)


@dataclass
class BlowupCharts:
    """Result of one blow-up at the origin of a local field.

    chart1 uses coordinates (x, t) with y = x t; chart2 uses (s, y) with
    x = s y.  Divisor points are points of the chart fields on {x = 0}
    (chart1) or {y = 0} (chart2), given in that chart's coordinates.
    """

    chart1: VectorField
    chart2: VectorField
    nu: int
    dicritical: bool
    tangent_cone: CPoly2
    divisor_singularities: list = field(default_factory=list)
    tangency_points: list = field(default_factory=list)

    def to_json(self):
        return {
            "nu": self.nu,
            "dicritical": self.dicritical,
            "tangent_cone": self.tangent_cone.to_str(),
            "chart1": self.chart1.to_json(("x", "t")),
            "chart2": self.chart2.to_json(("s", "y")),
            "divisor_singularities": [_div_json(c, pt) for c, pt in self.divisor_singularities],
            "tangency_points": [_div_json(c, pt) for c, pt in self.tangency_points],
        }


def _div_json(chart, pt):
    return {"chart": chart, "coords": json_complex(pt[0]) + json_complex(pt[1])}


def _order(F):
    return min(d for d in (F.P.low_degree(), F.Q.low_degree()) if d >= 0)


def blowup_local(F):
    """Blow up the origin of a local field (constant terms already zero)."""
    if F.P.coeff(0, 0) or F.Q.coeff(0, 0):
        raise NotSingularError("blow-up center is not a singular point")
    nu = _order(F)
    A, B = F.P, F.Q
    A_nu, B_nu = A.homogeneous_part(nu), B.homogeneous_part(nu)
    cone = X * B_nu - Y * A_nu
    ref = max(A.max_coeff(), B.max_coeff())
    cone = cone.chop(ref=ref)
    dicritical = cone.is_zero()
    T = CPoly2.y()
    # chart1: y = x t
    A1 = A.compose(X, X * T).divide_by_power("x", nu)
    B1 = B.compose(X, X * T).divide_by_power("x", nu)
    S = CPoly2.x()
    # chart2: x = s y, slots (s, y)
    A2 = A.compose(S * Y, Y).divide_by_power("y", nu)
    B2 = B.compose(S * Y, Y).divide_by_power("y", nu)
    if not dicritical:
        c1 = VectorField((X * A1).chop(ref=ref), (B1 - T * A1).chop(ref=ref), validate=False)
        c2 = VectorField((A2 - S * B2).chop(ref=ref), (Y * B2).chop(ref=ref), validate=False)
    else:
        rest1 = _drop_divisible(B1 - T * A1, "x", ref)
        rest2 = _drop_divisible(A2 - S * B2, "y", ref)
        c1 = VectorField(A1.chop(ref=ref), rest1, validate=False)
        c2 = VectorField(rest2, B2.chop(ref=ref), validate=False)
    out = BlowupCharts(c1, c2, nu, dicritical, cone)
    if not dicritical:
        t_poly = cone.slice("x", ONE)  # cone(1, t)
        if t_poly.degree >= 1:
            for r, _ in univariate_roots(t_poly):
                out.divisor_singularities.append(("chart1", (ZERO, r)))
        if t_poly.degree < nu + 1:
            out.divisor_singularities.append(("chart2", (ZERO, ZERO)))
    else:
        sing, tang = _dicritical_divisor_points(c1, c2)
        out.divisor_singularities = sing
        out.tangency_points = tang
    return out


def _drop_divisible(p, var, ref):
    """Divide by the divisor coordinate after removing float residue on the divisor."""
    idx = 0 if var == "x" else 1
    terms = {}
    for e, c in p.terms.items():
        if e[idx] == 0:
            if isinstance(c, GaussRat) or abs(complex(c)) > 1e-10 * max(ref, 1e-300):
                raise FolianaError("dicritical chart component is not divisible by the divisor")
            continue
        terms[e] = c
    return CPoly2(terms).divide_by_power(var, 1).chop(ref=ref)


def _dicritical_divisor_points(c1, c2):
    """True singular points and tangency points on a non-invariant divisor."""
    g1 = c1.P.slice("x", ZERO)
    g2 = c1.Q.slice("x", ZERO)
    common = common_roots(g1, g2)
    sing = [("chart1", (ZERO, r)) for r in common]
    tang = []
    if g1.degree >= 1:
        for r, _ in univariate_roots(g1, tol=1e-7):
            if not any(abs(complex(r) - complex(c)) < 1e-9 for c in common):
                tang.append(("chart1", (ZERO, r)))
    # the direction [0:1] is only visible in chart2, at (s, y) = (0, 0)
    a0, b0 = c2.P.coeff(0, 0), c2.Q.coeff(0, 0)
    ref = max(c2.P.max_coeff(), c2.Q.max_coeff(), 1e-300)
    if _vanish(a0, ref) and _vanish(b0, ref):
        sing.append(("chart2", (ZERO, ZERO)))
    elif _vanish(b0, ref):
        tang.append(("chart2", (ZERO, ZERO)))
    return sing, tang


def _vanish(c, ref):
    return (not c) if isinstance(c, GaussRat) else abs(complex(c)) <= 1e-12 * ref


def blowup_once(vf, p):
    """Blow up ``vf`` at the singular point ``p`` (affine or chart point)."""
    return blowup_local(local_field(vf, _point(p)))


@dataclass
class BlowupNode:
    field: VectorField
    point: tuple
    depth: int
    classification: object
    charts: BlowupCharts = None
    children: list = field(default_factory=list)
    capped: bool = False
    chart: str = None

    @property
    def is_leaf(self):
        return self.charts is None

    def to_json(self):
        doc = {
            "depth": self.depth,
            "chart": self.chart,
            "point": json_complex(self.point[0]) + json_complex(self.point[1]),
            "field": self.field.to_json(),
            "classification": self.classification.to_json(),
            "capped": self.capped,
        }
        if self.charts is not None:
            doc["blowup"] = self.charts.to_json()
            doc["children"] = [c.to_json() for c in self.children]
        return doc


@dataclass
class BlowupTree:
    root: BlowupNode
    depth: int
    complete: bool
    dicritical: bool
    ambiguous: bool
    depth_cap: int

    def leaves(self):
        out = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.is_leaf:
                out.append(node)
            else:
                stack.extend(reversed(node.children))
        return out

    @property
    def blowups(self):
        count = 0
        stack = [self.root]
        while stack:
            node = stack.pop()
            if not node.is_leaf:
                count += 1
                stack.extend(node.children)
        return count

    def to_json(self):
        return {
            "depth": self.depth,
            "blowups": self.blowups,
            "complete": self.complete,
            "dicritical": self.dicritical,
            "ambiguous": self.ambiguous,
            "depth_cap": self.depth_cap,
            "leaves": [leaf.classification.to_json() for leaf in self.leaves()],
            "root": self.root.to_json(),
        }


def seidenberg_resolve(vf, p, depth_cap=DEFAULT_DEPTH_CAP, jet_cap=DEFAULT_JET_CAP, window=DEFAULT_WINDOW):
    """Blow up repeatedly until every point on the divisors is irreducible or the cap is hit."""
    if depth_cap < 1:
        raise FolianaError("depth_cap must be at least 1")
    F = local_field(vf, _point(p))
    root = _resolve_local(F, (ZERO, ZERO), 0, depth_cap, jet_cap, window, None)
    stats = {"depth": 0, "complete": True, "dicritical": False, "ambiguous": False}
    _collect(root, stats)
    return BlowupTree(root, stats["depth"], stats["complete"], stats["dicritical"], stats["ambiguous"], depth_cap)


def _resolve_local(F, point, depth, depth_cap, jet_cap, window, chart):
    cls = classify_local(F, jet_cap, window)
    node = BlowupNode(F, point, depth, cls, chart=chart)
    if cls.kind in IRREDUCIBLE_KINDS:
        return node
    if depth >= depth_cap:
        node.capped = True
        return node
    charts = blowup_local(F)
    node.charts = charts
    for chart_name, pt in sorted(charts.divisor_singularities, key=_div_key):
        G = charts.chart1 if chart_name == "chart1" else charts.chart2
        child_local = local_field(G, ProjectivePoint.affine(*pt))
        node.children.append(_resolve_local(child_local, pt, depth + 1, depth_cap, jet_cap, window, chart_name))
    return node


def _div_key(item):
    chart, (a, b) = item
    a, b = complex(a), complex(b)
    return (chart, round(a.real, 9), round(a.imag, 9), round(b.real, 9), round(b.imag, 9))


def _collect(node, stats):
    cls = node.classification
    stats["ambiguous"] = stats["ambiguous"] or cls.kind_ambiguous
    if node.charts is not None:
        stats["depth"] = max(stats["depth"], node.depth + 1)
        stats["dicritical"] = stats["dicritical"] or node.charts.dicritical
        for child in node.children:
            _collect(child, stats)
    else:
        if node.capped or cls.kind not in IRREDUCIBLE_KINDS:
            stats["complete"] = False
        if cls.dicritical:
            stats["dicritical"] = True


def is_generalized_curve(vf, p, depth_cap=DEFAULT_DEPTH_CAP, jet_cap=DEFAULT_JET_CAP, window=DEFAULT_WINDOW):
    """YES / NO / UNKNOWN according to whether a saddle-node shows up in the resolution."""
    return generalized_curve_verdict(seidenberg_resolve(vf, p, depth_cap, jet_cap, window))


def generalized_curve_verdict(tree):
    leaves = tree.leaves()
    if any(l.classification.kind == SADDLE_NODE and not l.classification.kind_ambiguous for l in leaves):
        return NO
    if not tree.complete or tree.ambiguous:
        return UNKNOWN
    return YES
