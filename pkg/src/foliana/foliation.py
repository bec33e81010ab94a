"""Global structure of the foliation induced on the projective plane.

A polynomial field X = P d/dx + Q d/dy on C^2 extends to a singular
foliation of CP^2.  This module computes its singular set (affine points and
points on the line at infinity), the chart fields near infinity, invariant
affine lines and the tangent direction map.
"""
from dataclasses import dataclass, field
from fractions import Fraction
import json

from .cpoly import (
    CPoly2,
    ONE,
    X,
    Y,
    ZERO,
    common_zeros,
    dehomogenize,
    have_common_factor,
    homogenize,
    parse_poly,
    poly1_gcd,
    univariate_roots,
)
from .errors import CommonComponentError, FolianaError, SingularPointError
from .scalars import GaussRat, exact_string, is_exact, json_complex, snap

CHARTS = ("affine", "U1", "U2")


class VectorField:
    """The field P d/dx + Q d/dy; also stands for the 1-form P dy - Q dx."""

    __slots__ = ("P", "Q")

    def __init__(self, P, Q, validate=True):
        if isinstance(P, str):
            P = parse_poly(P)
        if isinstance(Q, str):
            Q = parse_poly(Q)
        if P.is_zero() and Q.is_zero():
            raise FolianaError("vector field is identically zero")
        if validate and have_common_factor(P, Q):
            raise CommonComponentError("P and Q share a nonconstant factor; singular set is not isolated")
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "Q", Q)

    def __setattr__(self, name, value):
        raise AttributeError("VectorField is immutable")

    @classmethod
    def from_json(cls, doc):
        if isinstance(doc, str):
            doc = json.loads(doc)
        if not isinstance(doc, dict) or "P" not in doc or "Q" not in doc:
            raise FolianaError('field JSON must be an object with "P" and "Q"')
        return cls(str(doc["P"]), str(doc["Q"]))

    def to_json(self, names=("x", "y")):
        return {"P": self.P.to_str(names), "Q": self.Q.to_str(names)}

    @property
    def degree(self):
        return max(self.P.degree, self.Q.degree)

    @property
    def is_exact(self):
        return self.P.is_exact and self.Q.is_exact

    def __call__(self, x, y):
        return self.P(x, y), self.Q(x, y)

    def scaled(self, c):
        return VectorField(self.P * CPoly2.const(c), self.Q * CPoly2.const(c), validate=False)

    def __eq__(self, other):
        return isinstance(other, VectorField) and self.P == other.P and self.Q == other.Q

    def __hash__(self):
        return hash((self.P, self.Q))

    def __repr__(self):
        return f"VectorField(P={self.P.to_str()!r}, Q={self.Q.to_str()!r})"


# ---------------------------------------------------------------------------
# points and lines
# ---------------------------------------------------------------------------
def _normalize_homogeneous(h):
    X_, Y_, Z_ = h
    for pivot in (Z_, X_, Y_):
        if _nz(pivot):
            return tuple(c / pivot for c in (X_, Y_, Z_))
    raise FolianaError("all homogeneous coordinates vanish")


def _nz(c, tol=0.0):
    if isinstance(c, GaussRat):
        return bool(c)
    return abs(complex(c)) > tol


def _as_scalar(c):
    if isinstance(c, (int, Fraction)):
        return GaussRat(c)
    if isinstance(c, GaussRat):
        return c
    return complex(c)


@dataclass(frozen=True)
class ProjectivePoint:
    """Point of CP^2 in one of three charts.

    ``affine`` coordinates are (x, y); ``U1`` coordinates are (u, v) with
    u = 1/x, v = y/x; ``U2`` coordinates are (u', w) with u' = 1/y, w = x/y.
    Points on the line at infinity have first chart coordinate 0.
    """

    chart: str
    coords: tuple

    def __post_init__(self):
        if self.chart not in CHARTS:
            raise ValueError(f"unknown chart {self.chart!r}")
        a, b = self.coords
        object.__setattr__(self, "coords", (_as_scalar(a), _as_scalar(b)))

    @classmethod
    def affine(cls, x, y):
        return cls("affine", (x, y))

    @property
    def at_infinity(self):
        return self.chart != "affine" and not _nz(self.coords[0])

    @property
    def is_exact(self):
        return all(isinstance(c, GaussRat) for c in self.coords)

    def homogeneous(self):
        a, b = self.coords
        if self.chart == "affine":
            return (a, b, ONE)
        if self.chart == "U1":
            return (ONE, b, a)
        return (b, ONE, a)

    def normalized(self):
        return _normalize_homogeneous(self.homogeneous())

    def canonical(self):
        """Same point expressed in the first chart (affine, U1, U2) where it is visible."""
        Xh, Yh, Zh = self.homogeneous()
        if _nz(Zh):
            return ProjectivePoint("affine", (Xh / Zh, Yh / Zh))
        if _nz(Xh):
            return ProjectivePoint("U1", (Zh / Xh, Yh / Xh))
        return ProjectivePoint("U2", (Zh / Yh, Xh / Yh))

    def in_chart(self, chart):
        Xh, Yh, Zh = self.homogeneous()
        pivot = {"affine": Zh, "U1": Xh, "U2": Yh}[chart]
        if not _nz(pivot):
            raise FolianaError(f"point is not visible in chart {chart}")
        if chart == "affine":
            return ProjectivePoint("affine", (Xh / pivot, Yh / pivot))
        if chart == "U1":
            return ProjectivePoint("U1", (Zh / pivot, Yh / pivot))
        return ProjectivePoint("U2", (Zh / pivot, Xh / pivot))

    def same_as(self, other, tol=1e-9):
        a = self.canonical()
        b = other.canonical()
        if a.chart != b.chart:
            return False
        if a.is_exact and b.is_exact:
            return a.coords == b.coords
        return all(
            abs(complex(p) - complex(q)) <= tol * max(1.0, abs(complex(p)))
            for p, q in zip(a.coords, b.coords)
        )

    def label(self):
        """Homogeneous label such as ``[1:0:0]`` or an affine pair."""
        if self.chart == "affine":
            return "(" + ",".join(_fmt(c) for c in self.coords) + ")"
        return "[" + ":".join(_fmt(c) for c in self.normalized_for_label()) + "]"

    def normalized_for_label(self):
        Xh, Yh, Zh = self.homogeneous()
        pivot = Xh if _nz(Xh) else Yh
        return (Xh / pivot, Yh / pivot, Zh / pivot)

    def to_json(self):
        a, b = self.coords
        doc = {
            "chart": self.chart,
            "coords": json_complex(a) + json_complex(b),
            "label": self.label(),
        }
        if self.is_exact:
            doc["exact"] = [exact_string(a), exact_string(b)]
        return doc

    def sort_key(self):
        order = CHARTS.index(self.chart)
        a, b = (complex(c) for c in self.coords)
        return (order, round(a.real, 9), round(a.imag, 9), round(b.real, 9), round(b.imag, 9))


def _fmt(c):
    s = exact_string(c)
    if s is not None:
        return s
    z = complex(c)
    if z.imag == 0:
        return f"{z.real:.12g}"
    return f"{z.real:.12g}{z.imag:+.12g}i"


@dataclass(frozen=True)
class Line:
    """A projective line: ``y = m x + b``, ``x = a`` or the line at infinity."""

    kind: str
    m: object = None
    b: object = None
    a: object = None

    @classmethod
    def slope(cls, m, b):
        return cls("slope", m=_as_scalar(m), b=_as_scalar(b))

    @classmethod
    def vertical(cls, a):
        return cls("vertical", a=_as_scalar(a))

    @classmethod
    def infinity(cls):
        return cls("infinity")

    @classmethod
    def from_spec(cls, text):
        """Parse ``inf``, ``x=c`` or ``y=<linear expression in x>``."""
        t = text.strip()
        if t.lower() in ("inf", "infinity", "linf"):
            return cls.infinity()
        if "=" not in t:
            raise FolianaError(f"line spec {text!r} must be 'inf', 'x=c' or 'y=mx+b'")
        lhs, rhs = (s.strip() for s in t.split("=", 1))
        expr = parse_poly(rhs)
        if expr.deg_in("y") > 0 or expr.degree > 1:
            raise FolianaError(f"right-hand side of {text!r} must be linear in x")
        if lhs == "x":
            if expr.degree > 0:
                raise FolianaError(f"vertical line {text!r} must have a constant right-hand side")
            return cls.vertical(expr.coeff(0, 0))
        if lhs == "y":
            return cls.slope(expr.coeff(1, 0), expr.coeff(0, 0))
        raise FolianaError(f"line spec {text!r} must start with 'x=' or 'y='")

    def contains(self, pt, tol=1e-9):
        """Whether a projective point lies on the closure of the line."""
        Xh, Yh, Zh = pt.homogeneous()
        if self.kind == "infinity":
            val, ref = Zh, 1.0
        elif self.kind == "vertical":
            val = Xh - self.a * Zh
            ref = max(1.0, abs(complex(self.a)))
        else:
            val = Yh - self.m * Xh - self.b * Zh
            ref = max(1.0, abs(complex(self.m)), abs(complex(self.b)))
        if isinstance(val, GaussRat):
            return not val
        scale = max(abs(complex(Xh)), abs(complex(Yh)), abs(complex(Zh)))
        return abs(complex(val)) <= tol * ref * scale

    def direction_at(self, pt):
        """Tangent direction of the line at ``pt``, in the chart of ``pt``."""
        if self.kind == "infinity":
            if pt.chart == "affine":
                raise FolianaError("affine point is not on the line at infinity")
            return (ZERO, ONE)
        if pt.chart == "affine":
            return (ZERO, ONE) if self.kind == "vertical" else (ONE, self.m)
        if pt.chart == "U1":
            if self.kind == "vertical":
                raise FolianaError("vertical line does not meet U1 at infinity")
            # v = m + b u along y = m x + b
            return (ONE, self.b)
        if self.kind == "vertical":
            # w = a u' along x = a
            return (ONE, self.a)
        raise FolianaError("a slope line does not pass through [0:1:0]")

    def points_at_infinity(self):
        if self.kind == "slope":
            return [ProjectivePoint("U1", (ZERO, self.m))]
        if self.kind == "vertical":
            return [ProjectivePoint("U2", (ZERO, ZERO))]
        return []

    def label(self):
        if self.kind == "infinity":
            return "inf"
        if self.kind == "vertical":
            return f"x = {_fmt(self.a)}"
        return "y = " + CPoly2({(1, 0): self.m, (0, 0): self.b}).to_str()

    def to_json(self):
        doc = {"kind": self.kind, "label": self.label()}
        if self.kind == "slope":
            doc["m"] = json_complex(self.m)
            doc["b"] = json_complex(self.b)
        elif self.kind == "vertical":
            doc["a"] = json_complex(self.a)
        return doc

    def sort_key(self):
        order = {"vertical": 0, "slope": 1, "infinity": 2}[self.kind]
        vals = [complex(v) for v in (self.a, self.m, self.b) if v is not None]
        return (order,) + tuple(round(x, 9) for v in vals for x in (v.real, v.imag))


class InfinitelyMany:
    """Marker returned when invariant lines form a continuous family."""

    def __repr__(self):
        return "InfinitelyMany"

    def __eq__(self, other):
        return isinstance(other, InfinitelyMany)

    def __hash__(self):
        return hash("InfinitelyMany")


INFINITELY_MANY = InfinitelyMany()


@dataclass(frozen=True)
class SingularPoint:
    point: ProjectivePoint
    multiplicity: int = 1

    def to_json(self):
        doc = self.point.to_json()
        doc["multiplicity"] = self.multiplicity
        return doc


@dataclass(frozen=True)
class TangencyPoint:
    """Point of a non-invariant line at infinity where the foliation is tangent to it."""

    point: ProjectivePoint
    note: str = "tangency point, not a singularity; flagged for manual review"

    def to_json(self):
        doc = self.point.to_json()
        doc["note"] = self.note
        return doc


@dataclass
class SingularSet:
    affine: list = field(default_factory=list)
    infinity: list = field(default_factory=list)
    tangencies: list = field(default_factory=list)
    linf_invariant: bool = True

    @property
    def points(self):
        return self.affine + self.infinity

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def to_json(self):
        return {
            "linf_invariant": self.linf_invariant,
            "singularities": [s.to_json() for s in self.points],
            "tangency_points": [t.to_json() for t in self.tangencies],
        }


# ---------------------------------------------------------------------------
# infinity
# ---------------------------------------------------------------------------
def tangency_at_infinity(vf):
    """x*Q_d - y*P_d for d = max(deg P, deg Q)."""
    d = vf.degree
    return X * vf.Q.homogeneous_part(d) - Y * vf.P.homogeneous_part(d)


def linf_invariant(vf):
    T = tangency_at_infinity(vf)
    return not T.chop(ref=max(vf.P.max_coeff(), vf.Q.max_coeff())).is_zero()


def _chart_parts(vf, chart):
    d = vf.degree
    Ph = dehomogenize(homogenize(vf.P, d), chart)
    Qh = dehomogenize(homogenize(vf.Q, d), chart)
    return Ph, Qh


def chart_transform(vf, chart):
    """Polynomial field defining the same foliation in chart U1 or U2.

    U1 has slots (u, v), U2 has slots (u', w); the first slot is the
    coordinate whose zero set is the line at infinity.  The field is divided
    by the largest power of that coordinate dividing both components.
    """
    if chart == "affine":
        return vf
    Ph, Qh = _chart_parts(vf, chart)
    U = CPoly2.x()
    s = CPoly2.y()
    if chart == "U1":
        A = -(U * Ph)
        B = Qh - s * Ph
    elif chart == "U2":
        A = -(U * Qh)
        B = Ph - s * Qh
    else:
        raise ValueError(f"unknown chart {chart!r}")
    ref = max(vf.P.max_coeff(), vf.Q.max_coeff())
    A = A.chop(ref=ref)
    B = B.chop(ref=ref)
    k = min(A.power_dividing("x"), B.power_dividing("x"))
    if k:
        A = A.divide_by_power("x", k)
        B = B.divide_by_power("x", k)
    return VectorField(A, B, validate=False)


def field_in_chart(vf, chart):
    return vf if chart == "affine" else chart_transform(vf, chart)


def singularities(vf, tol=1e-9):
    """Singular set of the projective foliation, deduplicated across charts."""
    out = SingularSet()
    out.affine = [SingularPoint(ProjectivePoint.affine(*pt), m) for pt, m in _affine_zeros(vf, tol)]
    T = tangency_at_infinity(vf)
    ref = max(vf.P.max_coeff(), vf.Q.max_coeff())
    T = T.chop(ref=ref)
    if not T.is_zero():
        out.linf_invariant = True
        out.infinity = _infinity_from_tangency(T, vf.degree)
    else:
        out.linf_invariant = False
        sing, tang = _infinity_noninvariant(vf, tol)
        out.infinity = sing
        out.tangencies = tang
    out.affine.sort(key=lambda s: s.point.sort_key())
    out.infinity = _dedupe_points(out.infinity)
    out.infinity.sort(key=lambda s: s.point.sort_key())
    return out


def _affine_zeros(vf, tol):
    P, Q = vf.P, vf.Q
    if P.is_zero():
        P, Q = Q, P
    if Q.is_zero():
        # the other component is a nonzero constant (validated fields only)
        if P.degree == 0:
            return []
        raise CommonComponentError("one component vanishes identically")
    if P.degree == 0 or Q.degree == 0:
        return []
    return common_zeros(P, Q, tol=tol)


def _infinity_from_tangency(T, d):
    t1 = T.slice("x", ONE)  # T(1, v)
    out = []
    if t1.degree >= 1:
        for v, m in univariate_roots(t1):
            out.append(SingularPoint(ProjectivePoint("U1", (ZERO, v)), m))
    k = (d + 1) - t1.degree
    if k > 0:
        out.append(SingularPoint(ProjectivePoint("U2", (ZERO, ZERO)), k))
    return out


def _infinity_noninvariant(vf, tol):
    """Singular and tangency points on a non-invariant line at infinity."""
    sing, tang = [], []
    for chart in ("U1", "U2"):
        F = chart_transform(vf, chart)
        g1 = F.P.slice("x", ZERO)
        g2 = F.Q.slice("x", ZERO)
        for r in common_roots(g1, g2):
            if chart == "U2" and _nz(r, 1e-12):
                continue
            sing.append(SingularPoint(ProjectivePoint(chart, (ZERO, r)), 1))
        if g1.degree >= 1:
            for r, _ in univariate_roots(g1):
                if chart == "U2" and _nz(r, 1e-12):
                    continue
                if abs(complex(g2(r))) > tol * max(1.0, max((abs(complex(c)) for c in g2.coeffs), default=1.0)):
                    tang.append(TangencyPoint(ProjectivePoint(chart, (ZERO, r))))
        elif g1.is_zero():
            raise CommonComponentError("chart field vanishes along the line at infinity")
    sing = _with_intersection_multiplicity(vf, sing)
    return sing, sorted(_dedupe_tangencies(tang), key=lambda t: t.point.sort_key())


def _with_intersection_multiplicity(vf, pts):
    out = []
    for sp in pts:
        F = chart_transform(vf, sp.point.chart)
        m = 1
        try:
            for (a, b), mult in common_zeros(F.P, F.Q):
                if ProjectivePoint(sp.point.chart, (a, b)).same_as(sp.point):
                    m = mult
                    break
        except FolianaError:
            pass
        out.append(SingularPoint(sp.point, m))
    return out


def common_roots(g1, g2):
    """Distinct common roots of two univariate polynomials."""
    if g1.is_zero() and g2.is_zero():
        raise CommonComponentError("chart field vanishes along the line at infinity")
    if g1.is_zero():
        g1, g2 = g2, g1
    if g2.is_zero():
        return [r for r, _ in univariate_roots(g1)] if g1.degree >= 1 else []
    if g1.degree < 1 or g2.degree < 1:
        return []
    if g1.is_exact and g2.is_exact:
        g = poly1_gcd(g1, g2)
        return [r for r, _ in univariate_roots(g)] if g.degree >= 1 else []
    base, other = (g1, g2) if g1.degree <= g2.degree else (g2, g1)
    scale = max(abs(complex(c)) for c in other.coeffs)
    return [r for r, _ in univariate_roots(base, tol=1e-7)
            if abs(complex(other(r))) <= 1e-8 * scale * max(1.0, abs(complex(r))) ** other.degree]


def _dedupe_points(points):
    out = []
    for sp in points:
        canon = SingularPoint(sp.point.canonical(), sp.multiplicity)
        if not any(canon.point.same_as(o.point) for o in out):
            out.append(canon)
    return out


def _dedupe_tangencies(points):
    out = []
    for tp in points:
        canon = TangencyPoint(tp.point.canonical(), tp.note)
        if not any(canon.point.same_as(o.point) for o in out):
            out.append(canon)
    return out


# ---------------------------------------------------------------------------
# invariant lines
# ---------------------------------------------------------------------------
def _line_coefficient_system(vf):
    """Coefficients c_k(m, b) of x^k in Q(x, m x + b) - m P(x, m x + b).

    Returned as CPoly2 in slots (m, b).
    """
    from math import comb

    acc = {}

    def add(k, e, c):
        poly = acc.setdefault(k, {})
        poly[e] = poly[e] + c if e in poly else c

    for (i, j), q in vf.Q.terms.items():
        for l in range(j + 1):
            add(i + l, (l, j - l), q * comb(j, l))
    for (i, j), p in vf.P.terms.items():
        for l in range(j + 1):
            add(i + l, (l + 1, j - l), -p * comb(j, l))
    return [CPoly2(acc[k]) for k in sorted(acc)]


# Fixed generic combination weights; rational so exact inputs stay exact.
_WEIGHTS_A = [Fraction(3, 7), Fraction(-5, 3), Fraction(2, 9), Fraction(7, 5), Fraction(-11, 13),
              Fraction(4, 3), Fraction(-1, 6), Fraction(9, 11), Fraction(13, 4), Fraction(-8, 15)]
_WEIGHTS_B = [Fraction(-2, 5), Fraction(1, 4), Fraction(6, 7), Fraction(-3, 11), Fraction(5, 2),
              Fraction(-7, 9), Fraction(10, 3), Fraction(1, 13), Fraction(-4, 7), Fraction(12, 5)]


def _combine(polys, weights):
    acc = CPoly2()
    for k, p in enumerate(polys):
        w = weights[k % len(weights)] * (1 + k // len(weights))
        acc = acc + p * CPoly2.const(GaussRat(w))
    return acc


def invariant_lines(vf, tol=1e-9):
    """Invariant affine lines, or INFINITELY_MANY for a continuous family."""
    slopes = _slope_lines(vf, tol)
    verticals = _vertical_lines(vf, tol)
    if slopes is INFINITELY_MANY or verticals is INFINITELY_MANY:
        return INFINITELY_MANY
    lines = slopes + verticals
    return sorted(lines, key=Line.sort_key)


def _slope_lines(vf, tol):
    ref = max(vf.P.max_coeff(), vf.Q.max_coeff())
    system = [c.chop(ref=ref) for c in _line_coefficient_system(vf)]
    system = [c for c in system if not c.is_zero()]
    if not system:
        return INFINITELY_MANY
    if any(c.degree == 0 for c in system):
        return []
    if len(system) == 1:
        return INFINITELY_MANY
    F1 = _combine(system, _WEIGHTS_A)
    F2 = _combine(system, _WEIGHTS_B)
    if have_common_factor(F1, F2):
        return INFINITELY_MANY
    out = []
    for (m, b), _ in common_zeros(F1, F2, tol=tol):
        m, b = _snap_pair(system, m, b)
        if _system_vanishes(system, m, b, tol):
            line = Line.slope(m, b)
            if not any(_same_line(line, o) for o in out):
                out.append(line)
    return out


def _snap_pair(system, m, b):
    if is_exact(m) and is_exact(b):
        return m, b
    sm, sb = snap(m), snap(b)
    if sm is not None and sb is not None and all(c.is_exact for c in system):
        if all(not c(sm, sb) for c in system):
            return sm, sb
    return m, b


def _system_vanishes(system, m, b, tol):
    for c in system:
        val = c(m, b)
        if isinstance(val, GaussRat):
            if val:
                return False
            continue
        scale = sum(abs(complex(v)) * abs(complex(m)) ** i * abs(complex(b)) ** j
                    for (i, j), v in c.terms.items())
        if abs(complex(val)) > max(tol, 1e-8) * max(scale, 1e-300):
            return False
    return True


def _same_line(a, b, tol=1e-9):
    if a.kind != b.kind:
        return False
    pairs = [(a.a, b.a)] if a.kind == "vertical" else [(a.m, b.m), (a.b, b.b)]
    return all(abs(complex(p) - complex(q)) <= tol * max(1.0, abs(complex(p))) for p, q in pairs)


def _vertical_lines(vf, tol):
    ref = max(vf.P.max_coeff(), vf.Q.max_coeff())
    P = vf.P.chop(ref=ref)
    if P.is_zero():
        return INFINITELY_MANY
    cols = [c for c in P.as_univariate("y") if not c.is_zero()]
    if any(c.degree == 0 for c in cols):
        return []
    if all(c.is_exact for c in cols):
        g = cols[0]
        for c in cols[1:]:
            g = poly1_gcd(g, c)
        if g.degree < 1:
            return []
        return [Line.vertical(r) for r, _ in univariate_roots(g)]
    base = min(cols, key=lambda c: c.degree)
    out = []
    for r, _ in univariate_roots(base, tol=1e-7):
        ok = all(
            abs(complex(c(r))) <= 1e-8 * max(abs(complex(v)) for v in c.coeffs) * max(1.0, abs(complex(r))) ** c.degree
            for c in cols
        )
        if ok:
            out.append(Line.vertical(r))
    return out


def line_invariant(vf, line, rel=1e-12):
    """Exact identity test of invariance for an affine line."""
    if line.kind == "infinity":
        raise FolianaError("use linf_invariant for the line at infinity")
    ref = max(vf.P.max_coeff(), vf.Q.max_coeff())
    if line.kind == "vertical":
        restricted = vf.P.slice("x", line.a)
        return _poly1_negligible(restricted, ref, rel)
    sub_y = CPoly2({(1, 0): line.m, (0, 0): line.b})
    expr = vf.Q.compose(X, sub_y) - CPoly2.const(line.m) * vf.P.compose(X, sub_y)
    scale = ref * max(1.0, abs(complex(line.m)), abs(complex(line.b))) ** (vf.degree + 1)
    return expr.is_exact and expr.is_zero() or (not expr.is_exact and expr.max_coeff() <= rel * scale)


def _poly1_negligible(p, ref, rel):
    if p.is_zero():
        return True
    if p.is_exact:
        return False
    return max(abs(complex(c)) for c in p.coeffs) <= rel * ref


# ---------------------------------------------------------------------------
# tangent direction map
# ---------------------------------------------------------------------------
def gauss_direction(vf, p, tol=1e-12):
    """Tangent direction [P(p) : Q(p)] scaled so the larger coordinate is 1."""
    a, b = vf(*p)
    ma, mb = abs(complex(a)), abs(complex(b))
    scale = max(vf.P.max_coeff(), vf.Q.max_coeff(), 1e-300)
    if (isinstance(a, GaussRat) and isinstance(b, GaussRat) and not a and not b) or max(ma, mb) <= tol * scale:
        raise SingularPointError(f"vector field vanishes at {p}")
    if ma >= mb:
        return (ONE if isinstance(a, GaussRat) else 1.0 + 0j, b / a)
    return (a / b, ONE if isinstance(b, GaussRat) else 1.0 + 0j)
