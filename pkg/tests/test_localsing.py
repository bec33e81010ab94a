import random

import pytest
import sympy

from foliana import CPoly2, Line, ProjectivePoint, VectorField
from foliana.errors import ClassificationError, FolianaError, NotSingularError
from foliana.foliation import singularities
from foliana.localsing import (
    DEGENERATE,
    LINEARIZABLE,
    NONDEGENERATE,
    RESONANT_NODE,
    SADDLE_NODE,
    classify,
    cs_index,
    cs_sum_on_line,
    linear_part,
    local_field,
    poincare_dulac_reduce,
)
from foliana.scalars import GaussRat

from conftest import random_fields

ws, zs = sympy.symbols("w z")
I = GaussRat(0, 1)
ORIGIN = ProjectivePoint.affine(0, 0)


def coef(c):
    if isinstance(c, GaussRat):
        return sympy.Rational(c.re.numerator, c.re.denominator) + sympy.I * sympy.Rational(
            c.im.numerator, c.im.denominator)
    return sympy.nsimplify(complex(c))


def sym(p, a=ws, b=zs):
    return sum(coef(c) * a ** i * b ** j for (i, j), c in p.terms.items())


def diag(lam):
    return VectorField(CPoly2.x(), CPoly2({(0, 1): lam}))


class TestLinearPart:
    def test_jordan(self):
        lp = linear_part(VectorField("x+y", "y"), ORIGIN)
        assert lp.J == ((1, 1), (0, 1))
        assert tuple(lp.eigenvalues) == (1, 1)

    def test_diag_i(self):
        lp = linear_part(VectorField("x", "(0+1i)*y"), ORIGIN)
        assert lp.J == ((1, 0), (0, I))
        assert tuple(lp.eigenvalues) == (1, I)

    def test_infinity_ratio(self):
        lp = linear_part(VectorField("x", "2*y"), ProjectivePoint("U1", (0, 0)))
        lam, mu = lp.eigenvalues
        assert mu / lam == -1

    def test_regular_point_rejected(self):
        with pytest.raises(NotSingularError):
            linear_part(VectorField("x", "y"), ProjectivePoint.affine(1, 1))

    def test_characteristic_polynomial(self):
        for vf in random_fields(31, 2, 30):
            for sp in singularities(vf):
                lp = linear_part(vf, sp.point)
                tr, det = complex(lp.trace), complex(lp.det)
                for ev in lp.eigenvalues:
                    ev = complex(ev)
                    assert abs(ev * ev - tr * ev + det) <= 1e-10 * max(1.0, abs(tr) ** 2, abs(det))
                assert abs(complex(lp.eigenvalues[0])) >= abs(complex(lp.eigenvalues[1])) - 1e-12


class TestClassify:
    def test_resonant_node(self):
        sc = classify(VectorField("x+y", "y"), ORIGIN)
        assert (sc.kind, sc.n, sc.c, sc.poincare_domain, sc.dicritical) == (RESONANT_NODE, 1, 1, True, False)

    def test_nondegenerate(self):
        sc = classify(VectorField("x", "(0+1i)*y"), ORIGIN)
        assert sc.kind == NONDEGENERATE and sc.ratio == I and sc.poincare_domain is True

    def test_saddle_node(self):
        sc = classify(VectorField("x^2", "y*(1+3*x)"), ORIGIN)
        assert (sc.kind, sc.m, sc.lambda_formal) == (SADDLE_NODE, 1, 3)

    def test_saddle_node_higher_order(self):
        # x^3 d/dx + y(1 + 5 x^2) d/dy has m = 2 and formal residue 5.
        sc = classify(VectorField("x^3", "y*(1+5*x^2)"), ORIGIN)
        assert (sc.kind, sc.m, sc.lambda_formal) == (SADDLE_NODE, 2, 5)

    def test_saddle_node_at_infinity(self):
        sc = classify(VectorField("x+y", "y"), ProjectivePoint("U1", (0, 0)))
        assert (sc.kind, sc.m, sc.lambda_formal) == (SADDLE_NODE, 1, 1)

    def test_degenerate(self):
        sc = classify(VectorField("y", "x^2"), ORIGIN)
        assert sc.kind == DEGENERATE

    def test_radial_is_linearizable_dicritical(self):
        sc = classify(VectorField("x", "y"), ORIGIN)
        assert sc.kind == LINEARIZABLE and sc.dicritical is True

    def test_non_integer_rational(self):
        sc = classify(diag(GaussRat(3) / 2), ORIGIN)
        assert sc.kind == LINEARIZABLE and sc.dicritical is True and sc.formal

    def test_saddle_not_poincare(self):
        sc = classify(VectorField("y", "x"), ORIGIN)
        assert sc.kind == NONDEGENERATE and sc.poincare_domain is False

    def test_float_window_ambiguity(self):
        sc = classify(VectorField(CPoly2.x(), CPoly2({(0, 1): 0.5 + 1e-11})), ORIGIN)
        assert sc.ambiguous and NONDEGENERATE in sc.alternatives

    def test_float_near_negative_axis(self):
        sc = classify(VectorField(CPoly2.x(), CPoly2({(0, 1): complex(-0.7, 1e-12)})), ORIGIN)
        assert sc.ambiguous and sc.poincare_domain is None

    def test_resonance_beyond_jet_cap(self):
        sc = classify(diag(GaussRat(1) / 12), ORIGIN, jet_cap=10)
        assert sc.kind == RESONANT_NODE and sc.c is None and sc.dicritical is None
        assert sc.ambiguous and sc.alternatives == [LINEARIZABLE]

    def test_linearizable_resonant_zero_c(self):
        sc = classify(VectorField("2*x + x*y", "y"), ORIGIN)
        assert sc.kind == LINEARIZABLE and sc.n == 2 and sc.c == 0 and sc.dicritical

    def test_jet_cap_validation(self):
        with pytest.raises(FolianaError):
            classify(VectorField("x", "y"), ORIGIN, jet_cap=1)

    def test_chart_independence(self):
        # [1:1:0] is visible in both U1 and U2.
        # T_inf = x (y^2 - x^2) vanishes at [1:1:0]
        vf = VectorField("x^2 + 3*y", "y^2 + x*y - x^2 + 2")
        p1 = ProjectivePoint("U1", (0, 1))
        p2 = ProjectivePoint("U2", (0, 1))
        assert p1.same_as(p2)
        c1, c2 = classify(vf, p1), classify(vf, p2)
        assert c1.kind == c2.kind
        r1, r2 = complex(c1.ratio), complex(c2.ratio)
        assert abs(r1 - r2) < 1e-12 or abs(r1 * r2 - 1) < 1e-12

    def test_scale_invariance(self):
        rng = random.Random(2)
        for vf in random_fields(12, 2, 15):
            c = GaussRat(rng.randint(1, 5), rng.randint(-3, 3))
            for sp in singularities(vf):
                a, b = classify(vf, sp.point), classify(vf.scaled(c), sp.point)
                assert a.kind == b.kind
                if a.ratio is not None:
                    assert abs(complex(a.ratio) - complex(b.ratio)) < 1e-12


class TestPoincareDulac:
    def _oracle(self, F, red):
        """DPhi(w) G(w) == scale * F(Phi(w)) up to degree n, by truncated sympy polynomial arithmetic."""
        n = red.n

        def trunc(poly):
            return sympy.Poly.from_dict({m: c for m, c in poly.as_dict().items() if sum(m) <= n}, ws, zs,
                                        domain=poly.domain)

        def P_(p):
            return sympy.Poly(sym(p), ws, zs, domain="QQ_I") if not p.is_zero() else sympy.Poly(0, ws, zs,
                                                                                                     domain="QQ_I")

        Phi = [trunc(P_(p)) for p in red.transform]
        G = [P_(p) for p in red.normal_jet]
        scale = coef(red.time_scale)
        one = sympy.Poly(1, ws, zs, domain="QQ_I")
        pow0, pow1 = [one], [one]
        for _ in range(n):
            pow0.append(trunc(pow0[-1] * Phi[0]))
            pow1.append(trunc(pow1[-1] * Phi[1]))
        for k, comp in enumerate((F.P, F.Q)):
            rhs = sympy.Poly(0, ws, zs, domain="QQ_I")
            for (i, j), c in comp.truncate(n).terms.items():
                rhs = rhs + trunc(pow0[i] * pow1[j]) * coef(c)
            lhs = trunc(Phi[k].diff(ws) * G[0] + Phi[k].diff(zs) * G[1])
            diff = trunc(lhs - rhs * scale)
            for m, value in diff.as_dict().items():
                assert abs(complex(value)) < 1e-9, (k, m, value)

    def test_pd_field(self):
        vf = VectorField("x+y", "y")
        red = poincare_dulac_reduce(vf, ORIGIN, 1)
        assert red.c == 1
        assert [p.to_str() for p in red.transform] == ["x", "y"]
        self._oracle(local_field(vf, ORIGIN), red)

    def test_already_normal(self):
        vf = VectorField("2*x + y^2", "y")
        red = poincare_dulac_reduce(vf, ORIGIN, 2)
        assert red.c == 1
        self._oracle(local_field(vf, ORIGIN), red)

    def test_kills_xy_term(self):
        vf = VectorField("2*x + y^2 + x*y", "y")
        red = poincare_dulac_reduce(vf, ORIGIN, 2)
        assert red.c == 1
        assert any(p.degree >= 2 for p in red.transform)
        assert red.normal_jet[0].terms == {(1, 0): 2, (0, 2): 1}
        assert red.normal_jet[1].terms == {(0, 1): 1}
        self._oracle(local_field(vf, ORIGIN), red)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_random_jets(self, n):
        rng = random.Random(n)
        for _ in range(3):
            P = CPoly2({(1, 0): n, **{(i, k - i): GaussRat(rng.randint(-3, 3), rng.randint(-1, 1))
                                     for k in range(2, n + 1) for i in range(k + 1)}})
            Q = CPoly2({(0, 1): 1, **{(i, k - i): GaussRat(rng.randint(-3, 3), 0)
                                     for k in range(2, n + 1) for i in range(k + 1)}})
            vf = VectorField(P, Q, validate=False)
            red = poincare_dulac_reduce(vf, ORIGIN, n)
            self._oracle(local_field(vf, ORIGIN), red)
            resonant = {(1, 0), (0, n)}
            assert set(red.normal_jet[0].terms) <= resonant
            assert set(red.normal_jet[1].terms) == {(0, 1)}

    def test_ratio_mismatch(self):
        with pytest.raises(ClassificationError):
            poincare_dulac_reduce(VectorField("3*x", "y"), ORIGIN, 2)


class TestCSIndex:
    def test_diag_i(self):
        vf = VectorField("x", "(0+1i)*y")
        assert cs_index(vf, ORIGIN, (1, 0)) == I
        assert cs_index(vf, ORIGIN, (0, 1)) == -I

    def test_saddle_node(self):
        vf = VectorField("x^2", "y*(1+3*x)")
        assert cs_index(vf, ORIGIN, (0, 1)) == 0
        assert cs_index(vf, ORIGIN, (1, 0)) == 3

    def test_non_invariant_direction(self):
        with pytest.raises(ClassificationError):
            cs_index(VectorField("x", "2*y"), ORIGIN, (1, 1))

    def test_reciprocity_random(self):
        for vf in random_fields(41, 2, 30, gaussian=True):
            for sp in singularities(vf):
                sc = classify(vf, sp.point)
                if sc.kind != NONDEGENERATE:
                    continue
                lp = linear_part(vf, sp.point)
                from foliana.localsing import eigvec
                d1 = eigvec(lp.J, lp.eigenvalues[0])
                d2 = eigvec(lp.J, lp.eigenvalues[1])
                prod = complex(cs_index(vf, sp.point, d1)) * complex(cs_index(vf, sp.point, d2))
                assert abs(prod - 1) < 1e-9


class TestIndexSums:
    def test_linf_diag_i(self):
        rep = cs_sum_on_line(VectorField("x", "(0+1i)*y"), Line.infinity())
        vals = sorted((e.point.label(), e.cs) for e in rep.entries)
        assert vals == sorted([("[1:0:0]", 1 / (1 - I)), ("[0:1:0]", I / (I - 1))])
        assert rep.total == 1 and rep.passed

    def test_y_axis_line(self):
        rep = cs_sum_on_line(VectorField("x", "(0+1i)*y"), Line.slope(0, 0))
        assert len(rep.entries) == 2 and rep.total == 1

    def test_pd_line_uses_central_index(self):
        rep = cs_sum_on_line(VectorField("x+y", "y"), Line.slope(0, 0))
        kinds = sorted(e.kind for e in rep.entries)
        assert kinds == [RESONANT_NODE, SADDLE_NODE]
        assert rep.total == 1

    @pytest.mark.parametrize("P,Q,line", [("x+y", "y", "inf"), ("x", "2*y", "x=0"), ("y", "-x", "inf"),
                                          ("x", "2*y", "inf")])
    def test_more_sums(self, P, Q, line):
        assert cs_sum_on_line(VectorField(P, Q), Line.from_spec(line)).total == 1

    def test_non_invariant_line(self):
        with pytest.raises(FolianaError):
            cs_sum_on_line(VectorField("x+y", "y"), Line.vertical(0))

    def test_random_invariant_lines(self):
        from foliana.foliation import INFINITELY_MANY, invariant_lines

        checked = 0
        for vf in random_fields(77, 2, 80):
            lines = invariant_lines(vf)
            if lines is INFINITELY_MANY:
                continue
            for line in lines:
                rep = cs_sum_on_line(vf, line)
                if rep.errors or rep.ambiguous:
                    continue
                checked += 1
                assert rep.passed, (vf, line.label(), rep.total)
        assert checked >= 5
