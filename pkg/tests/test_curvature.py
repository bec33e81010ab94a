import cmath
import csv
import math
from fractions import Fraction

import numpy as np
import pytest
import sympy

from foliana import (
    SolvableOrbit,
    VectorField,
    curvature_density,
    fiber_intersection_count,
    fs_density,
    orbit_flow,
    spherical_image_area,
    total_curvature,
    total_curvature_closed_form,
)
from foliana.curvature import detect_strip, parse_complex
from foliana.errors import ContourError, FlowError, FolianaError, SingularPointError

TWO_PI = 2 * math.pi
PD = VectorField("x+y", "y")


class TestDensity:
    def test_poincare_dulac_point(self):
        assert curvature_density(PD, (0, 1)) == Fraction(-1, 2)

    def test_radial_is_flat(self):
        assert curvature_density(VectorField("x", "y"), (3, -2)) == 0

    def test_linear_two(self):
        assert curvature_density(VectorField("x", "2*y"), (1, 1)) == Fraction(-8, 25)

    def test_float_point_matches_exact(self):
        assert curvature_density(VectorField("x", "2*y"), (1.0, 1.0)) == pytest.approx(-8 / 25, rel=1e-14)

    def test_fs_is_minus_half(self):
        assert fs_density(PD, (0.0, 1.0)) == pytest.approx(0.25, rel=1e-14)

    def test_singular_point_rejected(self):
        with pytest.raises(SingularPointError):
            curvature_density(PD, (0, 0))
        with pytest.raises(SingularPointError):
            fs_density(PD, (0.0, 0.0))

    def test_closed_form_along_pd_orbit(self):
        # density along psi(z) = (z e^z, e^z) is -2 / (|1+z|^2 + 1)^2
        orbit = SolvableOrbit.poincare_dulac(1)
        for z in (0.3 - 0.7j, -1.2 + 2j, 0.0, 2.5 + 0.1j):
            x, y = orbit.psi(z)
            expected = -2 / (abs(1 + z) ** 2 + 1) ** 2
            assert curvature_density(PD, (complex(x), complex(y))) == pytest.approx(expected, rel=1e-12)


def _laplacian_density(orbit_expr):
    """Per-du-dv curvature density -2 d^2 log E / dz dzbar = -(1/2) Laplacian(log E)."""
    u, v = sympy.symbols("u v", real=True)
    z = u + sympy.I * v
    a, b = (sympy.diff(c, sympy.Symbol("z")).subs(sympy.Symbol("z"), z) for c in orbit_expr)
    E = sympy.expand_complex(a * sympy.conjugate(a) + b * sympy.conjugate(b))
    logE = sympy.log(E)
    lap = sympy.diff(logE, u, 2) + sympy.diff(logE, v, 2)
    return sympy.lambdify((u, v), -lap / 2, "math")


class TestDualRouteOracle:
    """log-Laplacian of the metric (sympy) against the Wronskian form (package)."""

    zs = sympy.Symbol("z")
    CASES = [
        (SolvableOrbit.linear(2), (sympy.exp(zs), sympy.exp(2 * zs))),
        (SolvableOrbit.linear(1j), (sympy.exp(zs), sympy.exp(sympy.I * zs))),
        (SolvableOrbit.linear(Fraction(1, 3)), (sympy.exp(zs), sympy.exp(zs / 3))),
        (SolvableOrbit.poincare_dulac(1), (zs * sympy.exp(zs), sympy.exp(zs))),
        (SolvableOrbit.poincare_dulac(2, 3, 1), (3 * zs * sympy.exp(2 * zs), sympy.exp(zs))),
    ]

    @pytest.mark.parametrize("orbit,expr", CASES, ids=lambda c: getattr(c, "family", ""))
    def test_agree(self, orbit, expr):
        oracle = _laplacian_density(expr)
        vf = orbit.field()
        rng = np.random.default_rng(3)
        for u, v in rng.uniform(-1.5, 1.5, size=(8, 2)):
            z = complex(u, v)
            x, y = orbit.psi(z)
            via_field = float(curvature_density(vf, (complex(x), complex(y))))
            assert via_field == pytest.approx(oracle(u, v), rel=1e-9, abs=1e-14)


class TestSolvableOrbit:
    @pytest.mark.parametrize("orbit", [
        SolvableOrbit.linear(2), SolvableOrbit.linear(1j, 2), SolvableOrbit.linear(2 + 1j, 0.5),
        SolvableOrbit.poincare_dulac(1), SolvableOrbit.poincare_dulac(3, 2, 1.5),
    ], ids=lambda o: f"{o.family}{o.params}")
    def test_psi_solves_field(self, orbit):
        vf = orbit.field()
        P, Q = vf.P.numeric(), vf.Q.numeric()
        rng = np.random.default_rng(0)
        z = rng.uniform(-1, 1, 20) + 1j * rng.uniform(-1, 1, 20)
        x, y = orbit.psi(z)
        a, b, _, _ = orbit.derivatives(z)
        for got, want in ((a, P(x, y)), (b, Q(x, y))):
            assert np.all(np.abs(got - want) <= 1e-10 * np.maximum(1, np.abs(want)))

    def test_strip_heights(self):
        assert SolvableOrbit.linear(2).strip_height() == pytest.approx(TWO_PI)
        assert SolvableOrbit.linear(Fraction(2, 3)).strip_height() == pytest.approx(3 * TWO_PI)
        assert SolvableOrbit.linear(1j).strip_height() is None
        assert SolvableOrbit.poincare_dulac(1).strip_height() is None

    def test_detect_strip(self):
        assert detect_strip(VectorField("x", "2*y")) == pytest.approx(TWO_PI)
        assert detect_strip(VectorField("2*x", "3*y")) == pytest.approx(TWO_PI)
        assert detect_strip(VectorField("x", "(0+1i)*y")) is None
        assert detect_strip(PD) is None


class TestOrbitFlow:
    def test_exponential(self):
        (s,) = orbit_flow(VectorField("x", "y"), (1, 0), [1.0])
        assert abs(s.psi[0] - math.e) < 1e-9 and abs(s.psi[1]) < 1e-9

    def test_poincare_dulac_parametrization(self):
        grid = [complex(u, v) for u in np.linspace(-2, 2, 5) for v in np.linspace(-2, 2, 5) if abs(complex(u, v)) <= 3]
        for s in orbit_flow(PD, (0, 1), grid):
            z = s.z
            assert abs(s.psi[0] - z * cmath.exp(z)) < 1e-8
            assert abs(s.psi[1] - cmath.exp(z)) < 1e-8

    def test_imaginary_linear(self):
        (s,) = orbit_flow(VectorField("x", "(0+1i)*y"), (1, 1), [math.pi])
        assert abs(s.psi[0] - math.exp(math.pi)) < 1e-8 * math.exp(math.pi)
        assert abs(s.psi[1] + 1) < 1e-8

    def test_sample_relations(self):
        for s in orbit_flow(PD, (0, 1), [0.5 + 0.5j, -1 + 2j]):
            x, y = s.psi
            a, b = s.velocity
            assert abs(a - (x + y)) < 1e-9 * max(1, abs(a))
            assert abs(b - y) < 1e-9 * max(1, abs(b))
            assert s.E == pytest.approx(abs(a) ** 2 + abs(b) ** 2)
            assert abs(s.W - (a * s.acceleration[1] - s.acceleration[0] * b)) < 1e-9 * max(1, abs(s.W))

    def test_escape_raises(self):
        with pytest.raises(FlowError):
            orbit_flow(VectorField("x^2", "1"), (1, 0), [2.0])

    def test_singular_start(self):
        with pytest.raises(SingularPointError):
            orbit_flow(PD, (0, 0), [1.0])


class TestTotalCurvature:
    def test_poincare_dulac(self):
        est = total_curvature(PD, (0, 1), R=30, tol=1e-4)
        assert abs(est.C / (-TWO_PI) - 1) < 0.01
        assert est.converged and est.coverage == 1.0

    def test_closed_form_poincare_dulac(self):
        est = total_curvature_closed_form(SolvableOrbit.poincare_dulac(1), R=30)
        assert abs(est.C / (-TWO_PI) - 1) < 0.005

    def test_radial_is_zero(self):
        est = total_curvature(VectorField("x", "y"), (1, 1), R=10)
        assert est.C == 0.0 and est.nu == 0.0
        assert math.copysign(1, est.C) == 1

    def test_linear_two_strip(self):
        est = total_curvature(VectorField("x", "2*y"), (1, 1), R=30)
        assert abs(est.C / (-TWO_PI) - 1) < 0.02
        assert est.box == (-30, 30, 0.0, pytest.approx(TWO_PI))
        assert any("fundamental strip" in w for w in est.warnings)

    def test_linear_two_closed_form_strip(self):
        est = total_curvature_closed_form(SolvableOrbit.linear(2), R=30)
        assert abs(est.C / (-TWO_PI) - 1) < 0.02

    @pytest.mark.parametrize("vf,p0,orbit,R", [
        (PD, (0, 1), SolvableOrbit.poincare_dulac(1), 30),
        (VectorField("x", "2*y"), (1, 1), SolvableOrbit.linear(2), 30),
        (VectorField("x", "(0+1i)*y"), (1, 1), SolvableOrbit.linear(1j), 5),
    ], ids=["pd", "lin2", "lin_i"])
    def test_flow_matches_closed_form(self, vf, p0, orbit, R):
        flow = total_curvature(vf, p0, R=R)
        closed = total_curvature_closed_form(orbit, R=R)
        assert flow.box == pytest.approx(closed.box)
        assert abs(flow.C - closed.C) <= 3 * (flow.error_bound + closed.error_bound)

    def test_imaginary_linear_diverges(self):
        values = [total_curvature_closed_form(SolvableOrbit.linear(1j), R=R).C for R in (5, 10, 20, 40)]
        assert all(b < a for a, b in zip(values, values[1:]))
        assert abs(values[-1]) > 3 * abs(values[0])
        for a, b in zip(values, values[1:]):
            assert abs(b / a) > 1.5

    def test_monotone_in_R(self):
        values = [total_curvature(PD, (0, 1), R=R).C for R in (2, 5, 10, 20)]
        assert all(b <= a for a, b in zip(values, values[1:]))

    def test_identity_of_outputs(self):
        est = total_curvature(PD, (0, 1), R=10)
        assert est.C == -2 * est.A_cp1
        assert est.A_phi == 2 * est.A_cp1
        assert est.nu == est.A_cp1 / math.pi
        assert est.error_bound >= est.quadrature_error >= 0

    def test_spherical_image_area(self):
        A, nu, est = spherical_image_area(PD, (0, 1), R=30)
        assert 0.98 <= nu <= 1.02
        assert A == est.A_cp1
        _, nu_lin, _ = spherical_image_area(VectorField("x", "2*y"), (1, 1), R=30)
        assert 0.98 <= nu_lin <= 1.02
        _, nu_rad, _ = spherical_image_area(VectorField("x", "y"), (1, 1), R=5)
        assert nu_rad == 0

    def test_scaling_law_area(self):
        # the orbit of 2X at time z is the orbit of X at time 2z
        scaled = total_curvature(VectorField("2*x+2*y", "2*y"), (0, 1), R=5, strip=None)
        base = total_curvature(PD, (0, 1), R=10, strip=None)
        assert abs(scaled.A_cp1 - base.A_cp1) <= 3 * (scaled.error_bound + base.error_bound) + 1e-6

    def test_injectivity_warning(self):
        est = total_curvature(PD, (0, 1), R=3)
        assert any("injectivity" in w for w in est.warnings)

    def test_full_box_on_periodic_field_warns(self):
        est = total_curvature(VectorField("x", "2*y"), (1, 1), R=4, strip=None)
        assert any("multiplicity" in w for w in est.warnings)

    def test_partial_estimate_on_escape(self):
        est = total_curvature(VectorField("x^2", "1"), (1, 0), R=3, tol=1e-3)
        assert est.coverage < 1.0
        assert any(e["kind"] == "flow_error" for e in est.errors)
        assert any("stopped" in w for w in est.warnings)

    def test_json(self):
        doc = total_curvature(PD, (0, 1), R=3).to_json()
        for key in ("C", "A_cp1", "nu", "R", "error_bound", "samples", "warnings"):
            assert key in doc
        assert doc["A_phi"] == 2 * doc["A_cp1"]

    def test_density_dump(self, tmp_path):
        path = tmp_path / "density.csv"
        total_curvature(PD, (0, 1), R=2, dump=str(path))
        with open(path) as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["u", "v", "density"]
        assert len(rows) > 100
        vals = np.array([[float(c) for c in r] for r in rows[1:]])
        assert np.all(vals[:, 2] <= 0)
        assert np.all(np.abs(vals[:, :2]) <= 2)
        # spot check density against the pointwise formula
        u, v, d = vals[len(vals) // 2]
        z = complex(u, v)
        assert d == pytest.approx(-2 / (abs(1 + z) ** 2 + 1) ** 2, rel=1e-8)


class TestFiberCount:
    def test_poincare_dulac_single_point(self):
        fc = fiber_intersection_count("y*exp(-x/y)", 1, "exp(-1)", R=10)
        assert fc.count == 1
        assert abs(fc.raw - 1) < 0.05

    def test_linear_two(self):
        assert fiber_intersection_count("y/x^2", 1, 1, R=10).count == 1

    def test_same_pencil_has_no_roots(self):
        assert fiber_intersection_count("y/x", 1, 2, R=10).count == 0

    def test_several_roots(self):
        # h = y - x^3 on y = x: t - t^3 = 0 has roots 0, 1, -1; the puncture removes t = 0
        assert fiber_intersection_count("y - x^3", 1, 0, R=10).count == 2

    def test_zero_on_contour(self):
        with pytest.raises(ContourError):
            fiber_intersection_count("y/x^2", 1, "1/10", R=10)

    def test_bad_expression(self):
        with pytest.raises(FolianaError):
            fiber_intersection_count("y*foo(x)", 1, 1)
        with pytest.raises(FolianaError):
            fiber_intersection_count("__import__('os')", 1, 1)

    def test_parse_complex(self):
        assert parse_complex("2") == 2
        assert parse_complex("1.5-2*i") == complex(1.5, -2)
        assert parse_complex("exp(-1)") == pytest.approx(math.exp(-1))
        with pytest.raises(FolianaError):
            parse_complex("x+1")

    def test_consistency_with_curvature(self):
        est = total_curvature(PD, (0, 1), R=30)
        nu_star = fiber_intersection_count("y*exp(-x/y)", 1, "exp(-1)").count
        assert abs(est.C + TWO_PI * nu_star) < 0.05 * TWO_PI
        est = total_curvature(VectorField("x", "2*y"), (1, 1), R=30)
        nu_star = fiber_intersection_count("y/x^2", 1, 1).count
        assert abs(est.C + TWO_PI * nu_star) < 0.05 * TWO_PI
