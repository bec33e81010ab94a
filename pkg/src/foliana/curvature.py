"""Curvature of orbits and area of their tangent-direction image.

An orbit is parametrized by complex time, psi' = X(psi).  With velocity
(a, b) = X(psi) and its derivative along the flow (a', b'),

    E = |a|^2 + |b|^2,    W = a b' - a' b,

the metric on the orbit is E |dz|^2 and, per unit of du dv,

    K dA = -2 |W|^2 / E^2,     (Fubini-Study pull-back of [a : b]) = |W|^2 / E^2.

So total curvature is C = -2 A_cp1, where A_cp1 is the spherical-image
area normalized so that CP^1 has area pi, and nu = A_cp1 / pi.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
import math

import numpy as np
from scipy.integrate import solve_ivp

from .cpoly import CPoly2
from .errors import ContourError, FlowError, FolianaError, SingularPointError
from .quadrature import KRONROD_WEIGHTS, integrate_box
from .scalars import GaussRat

DEFAULT_QUAD_TOL = 1e-4
DEFAULT_ODE_RTOL = 1e-11
DEFAULT_R = 30.0


# ---------------------------------------------------------------------------
# pointwise densities
# ---------------------------------------------------------------------------
class FieldJet:
    """Vectorized evaluation of (a, b, a', b') for a polynomial field."""

    def __init__(self, vf):
        self.vf = vf
        self.P = vf.P.numeric()
        self.Q = vf.Q.numeric()
        self.Px = vf.P.diff("x").numeric()
        self.Py = vf.P.diff("y").numeric()
        self.Qx = vf.Q.diff("x").numeric()
        self.Qy = vf.Q.diff("y").numeric()

    def __call__(self, x, y):
        a = self.P(x, y)
        b = self.Q(x, y)
        da = self.Px(x, y) * a + self.Py(x, y) * b
        db = self.Qx(x, y) * a + self.Qy(x, y) * b
        return a, b, da, db


def _densities(a, b, da, db):
    """Return (curvature density, Fubini-Study density) from velocity data."""
    s = np.maximum(np.abs(a), np.abs(b))
    with np.errstate(divide="ignore", invalid="ignore"):
        a_, b_, da_, db_ = a / s, b / s, da / s, db / s
        W = a_ * db_ - da_ * b_
        E = np.abs(a_) ** 2 + np.abs(b_) ** 2
        fs = np.abs(W) ** 2 / E ** 2
    fs = np.where(s > 0, fs, np.nan)
    return -2.0 * fs, fs


def fs_density(vf, p):
    a, b, da, db = (complex(v[0]) for v in FieldJet(vf)(np.array([complex(p[0])]), np.array([complex(p[1])])))
    if a == 0 and b == 0:
        raise SingularPointError(f"field vanishes at {p}")
    return float(_densities(np.array([a]), np.array([b]), np.array([da]), np.array([db]))[1][0])


def curvature_density(vf, p):
    """-2|W|^2/E^2 at a regular point; exact when the field and point are exact."""
    x, y = p
    if isinstance(x, (int, Fraction, GaussRat)) and isinstance(y, (int, Fraction, GaussRat)) and vf.is_exact:
        x, y = GaussRat(x) if not isinstance(x, GaussRat) else x, GaussRat(y) if not isinstance(y, GaussRat) else y
        a, b = vf.P(x, y), vf.Q(x, y)
        if not a and not b:
            raise SingularPointError(f"field vanishes at {p}")
        da = vf.P.diff("x")(x, y) * a + vf.P.diff("y")(x, y) * b
        db = vf.Q.diff("x")(x, y) * a + vf.Q.diff("y")(x, y) * b
        W = a * db - da * b
        E = a.abs2() + b.abs2()
        return -2 * W.abs2() / (E * E)
    return -2.0 * fs_density(vf, p)


# ---------------------------------------------------------------------------
# flow sampler
# ---------------------------------------------------------------------------
@dataclass
class OrbitSample:
    z: complex
    psi: tuple
    velocity: tuple
    acceleration: tuple
    E: float
    W: complex

    def to_json(self):
        def c(v):
            return [v.real, v.imag]
        return {
            "z": c(self.z),
            "psi": [c(v) for v in self.psi],
            "velocity": [c(v) for v in self.velocity],
            "acceleration": [c(v) for v in self.acceleration],
            "E": self.E,
            "W": c(self.W),
        }


class FlowSampler:
    """Sample psi(u + i v) for the orbit through ``p0`` with psi(0) = p0.

    psi(u) comes from one horizontal solve with dense output; psi(u + i v)
    from vertical solves d psi/dv = i X(psi), vectorized over all requested
    columns.  Points that cannot be reached (escape, step underflow) are NaN.
    """

    def __init__(self, vf, p0, rtol=DEFAULT_ODE_RTOL, threads=1):
        self.vf = vf
        self.p0 = np.array([complex(p0[0]), complex(p0[1])])
        self.rtol = rtol
        self.threads = max(1, int(threads))
        self._P = vf.P.numeric()
        self._Q = vf.Q.numeric()
        self._h = {}
        self._stopped = set()
        self.failures = []
        a, b = self._P(self.p0[0], self.p0[1]), self._Q(self.p0[0], self.p0[1])
        if a == 0 and b == 0:
            raise SingularPointError("flow started at a singular point")

    def _rhs(self, factor):
        P, Q = self._P, self._Q

        def f(t, Y):
            k = Y.shape[0] // 2
            x, y = Y[:k], Y[k:]
            return factor * np.concatenate([P(x, y), Q(x, y)])

        return f

    def _atol(self, Y0):
        k = Y0.size // 2
        mag = np.maximum(np.abs(Y0[:k]), np.abs(Y0[k:]))
        mag = np.where(mag > 0, mag, 1.0)
        return np.concatenate([mag, mag]) * self.rtol * 1e-3

    def _horizontal(self, sign, reach):
        cached = self._h.get(sign)
        if cached is not None and (cached[1] >= reach or sign in self._stopped):
            return cached
        span = max(reach, cached[1] * 2 if cached else reach)
        sol = solve_ivp(self._rhs(sign * 1.0), (0.0, span), self.p0, method="DOP853",
                        rtol=self.rtol, atol=self._atol(self.p0), dense_output=True)
        reached = sol.t[-1] if sol.status == 0 else (sol.t[-1] if sol.t.size else 0.0)
        if sol.status != 0:
            self._stopped.add(sign)
            self.failures.append(f"horizontal flow stopped at u={sign * reached:.6g}: {sol.message}")
        entry = (sol.sol, span if sol.status == 0 else reached)
        self._h[sign] = entry
        return entry

    def at_real(self, U):
        """psi(u) for real times; NaN beyond the reachable range."""
        U = np.asarray(U, dtype=float)
        out = np.full((2, U.size), np.nan + 0j)
        out[:, U == 0] = self.p0[:, None]
        for sign in (1, -1):
            mask = (np.sign(U) == sign)
            if not mask.any():
                continue
            reach = float(np.max(np.abs(U[mask])))
            solfun, reached = self._horizontal(sign, reach)
            ok = mask & (np.abs(U) <= reached)
            if ok.any():
                out[:, ok] = solfun(np.abs(U[ok]))
        return out

    def sample(self, U, V):
        """psi at the complex times U + i V (flat arrays); returns (x, y) arrays."""
        # overflow near an escape is expected; the solver reports it as a failure
        with np.errstate(all="ignore"):
            return self._sample(U, V)

    def _sample(self, U, V):
        U = np.asarray(U, dtype=float)
        V = np.asarray(V, dtype=float)
        x = np.full(U.size, np.nan + 0j)
        y = np.full(U.size, np.nan + 0j)
        cols, inv = np.unique(U, return_inverse=True)
        start = self.at_real(cols)
        zero = V == 0
        x[zero] = start[0, inv[zero]]
        y[zero] = start[1, inv[zero]]
        for sign in (1, -1):
            mask = np.sign(V) == sign
            if not mask.any():
                continue
            self._vertical(sign, cols, start, inv, U, V, mask, x, y)
        return x, y

    def _vertical(self, sign, cols, start, inv, U, V, mask, x, y):
        used = np.unique(inv[mask])
        good_cols = used[np.all(np.isfinite(start[:, used]), axis=0)]
        if good_cols.size == 0:
            return
        Y0 = np.concatenate([start[0, good_cols], start[1, good_cols]])
        vmax = float(np.max(np.abs(V[mask])))
        sol = solve_ivp(self._rhs(sign * 1j), (0.0, vmax), Y0, method="DOP853",
                        rtol=self.rtol, atol=self._atol(Y0), dense_output=True)
        if sol.status == 0:
            self._fill_from(sol.sol, vmax, good_cols, inv, V, mask, x, y)
            return
        # fall back to independent column solves so one bad column does not sink the rest
        self.failures.append(f"vectorized vertical flow failed ({sol.message}); solving columns separately")

        def solve_column(k):
            y0 = start[:, k]
            s = solve_ivp(self._rhs(sign * 1j), (0.0, vmax), y0, method="DOP853",
                          rtol=self.rtol, atol=self._atol(y0), dense_output=True)
            reached = vmax if s.status == 0 else (s.t[-1] if s.t.size else 0.0)
            return k, s.sol, reached

        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            results = list(pool.map(solve_column, good_cols))
        for k, solfun, reached in results:
            sel = mask & (inv == k) & (np.abs(V) <= reached)
            if sel.any() and solfun is not None:
                vals = solfun(np.abs(V[sel]))
                x[sel] = vals[0]
                y[sel] = vals[1]

    def _fill_from(self, solfun, vmax, good_cols, inv, V, mask, x, y):
        pos = {int(k): i for i, k in enumerate(good_cols)}
        n = good_cols.size
        idx = np.nonzero(mask)[0]
        idx = idx[np.isin(inv[idx], good_cols)]
        tv = np.abs(V[idx])
        order = np.argsort(tv, kind="stable")
        idx, tv = idx[order], tv[order]
        uniq, first = np.unique(tv, return_index=True)
        bounds = list(first) + [idx.size]
        chunk = max(1, 4_000_000 // max(1, 2 * n))
        for c0 in range(0, uniq.size, chunk):
            c1 = min(uniq.size, c0 + chunk)
            vals = solfun(uniq[c0:c1])  # (2n, chunk)
            for j in range(c0, c1):
                sel = idx[bounds[j]:bounds[j + 1]]
                rows = np.array([pos[int(k)] for k in inv[sel]])
                x[sel] = vals[rows, j - c0]
                y[sel] = vals[rows + n, j - c0]


def orbit_flow(vf, p0, grid, ode_tol=DEFAULT_ODE_RTOL):
    """Sample the orbit through ``p0`` at the complex times in ``grid``."""
    z = np.asarray(grid, dtype=complex).ravel()
    sampler = FlowSampler(vf, p0, rtol=ode_tol)
    x, y = sampler.sample(z.real, z.imag)
    jet = FieldJet(vf)
    a, b, da, db = jet(x, y)
    out = []
    for k in range(z.size):
        if not (np.isfinite(x[k]) and np.isfinite(y[k])):
            raise FlowError(f"flow did not reach z={z[k]}; " + "; ".join(sampler.failures))
        W = a[k] * db[k] - da[k] * b[k]
        E = abs(a[k]) ** 2 + abs(b[k]) ** 2
        out.append(OrbitSample(complex(z[k]), (complex(x[k]), complex(y[k])), (complex(a[k]), complex(b[k])),
                               (complex(da[k]), complex(db[k])), float(E), complex(W)))
    return out


# ---------------------------------------------------------------------------
# solvable families
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class SolvableOrbit:
    """Orbit with a closed-form parametrization.

    ``Linear(lam, y0)``: field (x, lam y), psi(z) = (e^z, y0 e^{lam z}).
    ``PoincareDulac(n, c, y0)``: field (n x + c y^n, y),
    psi(z) = (c y0^n z e^{n z}, y0 e^z).
    """

    family: str
    params: tuple

    @classmethod
    def linear(cls, lam, y0=1):
        return cls("Linear", (complex(lam), complex(y0)))

    @classmethod
    def poincare_dulac(cls, n, c=1, y0=1):
        return cls("PoincareDulac", (int(n), complex(c), complex(y0)))

    def field(self):
        from .foliation import VectorField
        if self.family == "Linear":
            lam = self.params[0]
            return VectorField(CPoly2.x(), CPoly2({(0, 1): _exactish(lam)}), validate=False)
        n, c, _ = self.params
        return VectorField(CPoly2({(1, 0): n, (0, n): _exactish(c)}), CPoly2.y(), validate=False)

    def psi(self, z):
        z = np.asarray(z, dtype=complex)
        if self.family == "Linear":
            lam, y0 = self.params
            return np.exp(z), y0 * np.exp(lam * z)
        n, c, y0 = self.params
        return c * y0 ** n * z * np.exp(n * z), y0 * np.exp(z)

    def derivatives(self, z):
        """(psi', psi'') as four arrays a, b, a', b'."""
        z = np.asarray(z, dtype=complex)
        if self.family == "Linear":
            lam, y0 = self.params
            e1 = np.exp(z)
            e2 = y0 * np.exp(lam * z)
            return e1, lam * e2, e1, lam * lam * e2
        n, c, y0 = self.params
        en = c * y0 ** n * np.exp(n * z)
        ey = y0 * np.exp(z)
        return en * (1 + n * z), ey, en * (2 * n + n * n * z), ey

    def strip_height(self):
        """Height of the fundamental strip, or None when psi is injective on the plane."""
        if self.family == "Linear":
            return _rational_period(self.params[0])
        return None


def _exactish(c):
    c = complex(c)
    if c.imag == 0 and float(c.real).is_integer():
        return int(c.real)
    return c


def _rational_period(lam, max_den=1000):
    lam = complex(lam)
    if abs(lam.imag) > 1e-12:
        return None
    fr = Fraction(lam.real).limit_denominator(max_den)
    if abs(float(fr) - lam.real) > 1e-12:
        return None
    return 2 * math.pi * fr.denominator


@dataclass
class CurvatureEstimate:
    C: float
    A_cp1: float
    nu: float
    R: float
    error_bound: float
    samples: int
    box: tuple
    quadrature_error: float = 0.0
    ode_error: float = 0.0
    coverage: float = 1.0
    converged: bool = True
    warnings: list = field(default_factory=list)
    errors: list = field(default_factory=list)

    @property
    def A_phi(self):
        """Area of the spherical image with the doubled normalization, so C = -A_phi."""
        return 2.0 * self.A_cp1

    def to_json(self):
        return {
            "C": self.C,
            "A_cp1": self.A_cp1,
            "A_phi": self.A_phi,
            "nu": self.nu,
            "R": self.R,
            "box": list(self.box),
            "error_bound": self.error_bound,
            "quadrature_error": self.quadrature_error,
            "ode_error": self.ode_error,
            "coverage": self.coverage,
            "converged": self.converged,
            "samples": self.samples,
            "warnings": list(self.warnings),
            "errors": list(self.errors),
        }


def _estimate(area_result, R, box, ode_error=0.0, warnings=(), errors=()):
    A = area_result.value
    qerr = area_result.error
    est = CurvatureEstimate(
        C=-2.0 * A if A else 0.0,
        A_cp1=A,
        nu=A / math.pi,
        R=R,
        error_bound=2.0 * (qerr + ode_error),
        samples=area_result.evaluations,
        box=box,
        quadrature_error=2.0 * qerr,
        ode_error=2.0 * ode_error,
        coverage=area_result.coverage,
        converged=area_result.converged,
        warnings=list(warnings),
        errors=list(errors),
    )
    if not area_result.converged:
        est.errors.append({"kind": "quadrature_nonconvergence",
                           "message": f"error {qerr:.3g} above target after {len(area_result.panels)} panels"})
    if area_result.coverage < 1.0:
        est.errors.append({"kind": "flow_error",
                           "message": f"flow covered {area_result.coverage:.1%} of the time box; partial estimate"})
    return est


def _box(R, strip):
    if strip is None:
        return (-R, R, -R, R)
    return (-R, R, 0.0, float(strip))


def total_curvature_closed_form(orbit, R=DEFAULT_R, tol=DEFAULT_QUAD_TOL, use_strip=True):
    """Truncated total curvature of a solvable orbit over its fundamental domain in the box."""
    strip = orbit.strip_height() if use_strip else None
    if strip is not None and strip > 2 * R:
        strip = None
    box = _box(R, strip)

    def fs(U, V):
        z = U + 1j * V
        a, b, da, db = orbit.derivatives(z)
        return _densities(a, b, da, db)[1]

    res = integrate_box(fs, box, tol / 2)
    warnings = []
    if strip is not None:
        warnings.append(f"periodic parametrization: integrated over fundamental strip 0 <= v < {strip:.12g}")
    elif orbit.strip_height() is not None:
        warnings.append("periodic parametrization integrated over the full box: spherical image counted with multiplicity")
    return _estimate(res, R, box, warnings=warnings)


def detect_strip(vf):
    """Fundamental strip height for diagonal linear fields (a x, b y) with real rational b/a."""
    P, Q = vf.P, vf.Q
    if set(P.terms) != {(1, 0)} or set(Q.terms) != {(0, 1)}:
        return None
    a = complex(P.coeff(1, 0))
    b = complex(Q.coeff(0, 1))
    if abs(a.imag) > 1e-15 * abs(a) or a.real == 0:
        return None
    period = _rational_period(b / a)
    if period is None:
        return None
    return period / abs(a.real)


def total_curvature(vf, p0, R=DEFAULT_R, tol=DEFAULT_QUAD_TOL, strip="auto", ode_rtol=DEFAULT_ODE_RTOL,
                    threads=1, dump=None):
    """Truncated total curvature of the orbit through ``p0`` over the time box [-R, R]^2.

    ``strip`` may be "auto" (fundamental strip for rational diagonal linear
    fields), None (full box) or a height h (box [-R, R] x [0, h]).
    """
    warnings = []
    if strip == "auto":
        strip = detect_strip(vf)
        if strip is not None:
            if strip > 2 * R:
                strip = None
            else:
                warnings.append(f"periodic parametrization: integrated over fundamental strip 0 <= v < {strip:.12g}")
        else:
            warnings.append("orbit injectivity on the time box is not verified; the spherical image may be counted with multiplicity")
    elif strip is not None:
        strip = float(strip)
        warnings.append(f"integrated over user strip 0 <= v < {strip:.12g}")
    else:
        if detect_strip(vf) is not None:
            warnings.append("periodic parametrization integrated over the full box: spherical image counted with multiplicity")
        else:
            warnings.append("orbit injectivity on the time box is not verified; the spherical image may be counted with multiplicity")
    box = _box(R, strip)
    sampler = FlowSampler(vf, p0, rtol=ode_rtol, threads=threads)
    jet = FieldJet(vf)

    def fs(U, V):
        x, y = sampler.sample(U, V)
        return _densities(*jet(x, y))[1]

    res = integrate_box(fs, box, tol / 2, keep_samples=dump is not None)
    ode_err = _ode_error(vf, p0, res, ode_rtol, threads)
    errors = []
    warnings.extend(dict.fromkeys(sampler.failures))
    est = _estimate(res, R, box, ode_error=ode_err, warnings=warnings, errors=errors)
    if dump is not None:
        _dump_density(dump, res.samples)
    return est


def _ode_error(vf, p0, res, rtol, threads):
    """Rerun the flow at a looser tolerance on the final panels' nodes and compare."""
    loose = FlowSampler(vf, p0, rtol=min(1e-6, rtol * 1e3), threads=threads)
    jet = FieldJet(vf)
    wk = np.outer(KRONROD_WEIGHTS, KRONROD_WEIGHTS).ravel()
    grids = [p.nodes() for p in res.panels]
    if not grids:
        return 0.0
    U = np.concatenate([g[0].ravel() for g in grids])
    V = np.concatenate([g[1].ravel() for g in grids])
    x, y = loose.sample(U, V)
    vals = _densities(*jet(x, y))[1]
    vals = np.where(np.isfinite(vals), vals, 0.0)
    total = 0.0
    for k, p in enumerate(res.panels):
        jac = 0.25 * p.area
        total += jac * float(np.dot(wk, vals[wk.size * k: wk.size * (k + 1)]))
    # the loose run's error dominates the difference; scale it to the tight tolerance
    return abs(total - res.value) * (rtol / min(1e-6, rtol * 1e3))


def _dump_density(path, samples):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("u,v,density\n")
        for U, V, FS in samples:
            for u, v, f in zip(U, V, FS):
                fh.write(f"{u:.17g},{v:.17g},{-2.0 * f:.17g}\n")


def spherical_image_area(vf, p0, R=DEFAULT_R, tol=DEFAULT_QUAD_TOL, strip="auto", **kw):
    """(A_cp1, nu) from the same integral as :func:`total_curvature`."""
    est = total_curvature(vf, p0, R, tol, strip=strip, **kw)
    return est.A_cp1, est.nu, est


# ---------------------------------------------------------------------------
# pencil fibers
# ---------------------------------------------------------------------------
def _parse_integral(text):
    import sympy
    from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

    x, y = sympy.symbols("x y")
    local = {"x": x, "y": y, "exp": sympy.exp, "log": sympy.log, "sqrt": sympy.sqrt,
             "sin": sympy.sin, "cos": sympy.cos, "pi": sympy.pi, "e": sympy.E, "E": sympy.E,
             "i": sympy.I, "I": sympy.I}
    glob = {name: getattr(sympy, name) for name in ("Integer", "Float", "Rational", "Symbol", "Function")}
    glob["__builtins__"] = {}
    try:
        expr = parse_expr(text, local_dict=local, global_dict=glob,
                          transformations=standard_transformations + (convert_xor,))
    except Exception as exc:  # sympy raises a zoo of exception types here
        raise FolianaError(f"cannot parse first integral {text!r}: {exc}") from None
    from sympy.core.function import AppliedUndef
    unknown = sorted({str(f.func) for f in expr.atoms(AppliedUndef)})
    if unknown:
        raise FolianaError(f"first integral uses unknown functions: {unknown}")
    extra = expr.free_symbols - {x, y}
    if extra:
        raise FolianaError(f"first integral uses unknown names: {sorted(map(str, extra))}")
    return expr, x, y


def parse_complex(text):
    """Parse a scalar like ``2``, ``1.5-2i`` or ``exp(-1)`` into a complex number."""
    if isinstance(text, (int, float, complex)):
        return complex(text)
    import sympy
    expr, _, _ = _parse_integral(str(text))
    if expr.free_symbols:
        raise FolianaError(f"scalar {text!r} must not contain variables")
    return complex(sympy.N(expr, 20))


@dataclass
class FiberCount:
    count: int
    raw: complex
    outer: complex
    inner: complex
    R: float
    r_inner: float
    min_modulus: float
    nodes: int

    def to_json(self):
        return {
            "count": self.count,
            "raw": [self.raw.real, self.raw.imag],
            "outer_winding": [self.outer.real, self.outer.imag],
            "inner_winding": [self.inner.real, self.inner.imag],
            "R": self.R,
            "r_inner": self.r_inner,
            "min_modulus": self.min_modulus,
            "nodes": self.nodes,
        }


def _winding(g, dg, rho, max_nodes=1 << 16):
    """(1/2 pi i) * contour integral of g'/g over |t| = rho by refined trapezoid sums."""
    n = 64
    prev = None
    minmod = math.inf
    while n <= max_nodes:
        th = 2 * np.pi * np.arange(n) / n
        t = rho * np.exp(1j * th)
        gv = g(t)
        if not np.all(np.isfinite(gv)):
            raise ContourError(f"first integral is not finite on |t| = {rho:g}")
        minmod = float(np.min(np.abs(gv)))
        with np.errstate(divide="ignore", invalid="ignore"):
            val = complex(np.mean(dg(t) / gv * t))
        if prev is not None and abs(val - prev) < 1e-9 * max(1.0, abs(val)):
            return val, minmod, n
        prev = val
        n *= 2
    raise ContourError(f"contour integral on |t| = {rho:g} did not settle (last value {prev})")


def fiber_intersection_count(h, alpha, level, R=10.0, r_inner=1e-3):
    """Zeros of t -> h(t, alpha t) - level in the annulus r_inner < |t| < R.

    Counted with the argument principle on both boundary circles; the
    inner circle removes whatever sits at the puncture t = 0.
    """
    import sympy

    expr, x, y = _parse_integral(h) if isinstance(h, str) else h
    alpha = parse_complex(alpha)
    level = parse_complex(level)
    t = sympy.symbols("t")
    g_expr = expr.subs({x: t, y: alpha * t}) - level
    g_num = sympy.lambdify(t, g_expr, modules="numpy")
    dg_num = sympy.lambdify(t, sympy.diff(g_expr, t), modules="numpy")

    def g(tt):
        return np.broadcast_to(np.asarray(g_num(tt), dtype=complex), tt.shape)

    def dg(tt):
        return np.broadcast_to(np.asarray(dg_num(tt), dtype=complex), tt.shape)

    outer, m_out, n_out = _winding(g, dg, R)
    inner, m_in, n_in = _winding(g, dg, r_inner)
    scale = max(1.0, float(np.max(np.abs(g(R * np.exp(2j * np.pi * np.arange(256) / 256))))))
    minmod = min(m_out, m_in)
    if minmod < 1e-10 * scale:
        raise ContourError(f"a zero lies too close to the contour (min |g| = {minmod:.3g})")
    raw = outer - inner
    count = round(raw.real)
    if abs(raw - count) >= 0.05:
        raise ContourError(f"winding number is not close to an integer (raw value {raw.real:.6g}{raw.imag:+.6g}i)")
    return FiberCount(int(count), raw, outer, inner, float(R), float(r_inner), minmod, max(n_out, n_in))
