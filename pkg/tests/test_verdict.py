import json
import math

import pytest
from hypothesis import given, settings, strategies as st

from foliana import ClosedFormOneForm, VectorField, check_theorem1, check_theorem2, check_theorem52, full_report
from foliana.errors import DegreeCapError, FolianaError
from foliana.scalars import GaussRat
from foliana.verdict import (
    AMBIGUOUS,
    CLOSED_RATIONAL_FORM_CLASSIFICATION,
    FTC_IMPLIES_ALGEBRAIC,
    FTC_IMPLIES_IN_ALGEBRAIC_CURVE,
    Analysis,
    ReportConfig,
    _all3,
    _or3,
    clear_denominators,
    render_text,
    verify_closed_form,
)

PD = VectorField("x+y", "y")
IRR = VectorField("x", "(0+1i)*y")
RADIAL = VectorField("x", "y")


class TestThreeValued:
    def test_or(self):
        assert _or3(True, AMBIGUOUS) is True
        assert _or3(False, False) is False
        assert _or3(False, AMBIGUOUS) == AMBIGUOUS

    def test_all(self):
        assert _all3([]) is True
        assert _all3([True, AMBIGUOUS]) == AMBIGUOUS
        assert _all3([AMBIGUOUS, False]) is False


class TestTheorem1:
    def test_poincare_dulac_fails_both_clauses(self):
        app = check_theorem1(PD)
        assert app.holds is False
        assert app.clauses == {"A": False, "B": False}
        a = [r for r in app.reasons if r["clause"] == "A" and r["ok"] is False]
        b = [r for r in app.reasons if r["clause"] == "B" and r["ok"] is False]
        assert [r["kind"] for r in a] == ["ResonantNode"]
        assert a[0]["point"] == "(0,0)"
        assert [r["line"] for r in b] == ["y = 0"]
        assert app.conclusion is None and app.tag is None

    def test_irrational_node_holds_by_clause_a(self):
        app = check_theorem1(IRR)
        assert app.holds is True
        assert app.clauses["A"] is True and app.clauses["B"] is False
        assert app.tag == FTC_IMPLIES_ALGEBRAIC
        assert "algebraic" in app.conclusion

    def test_radial(self):
        app = check_theorem1(RADIAL)
        assert app.holds is False
        assert any(r.get("finding") == "infinitely many invariant lines" for r in app.reasons)

    def test_no_invariant_lines_gives_clause_b(self):
        # a field without invariant lines: Jouanolou-type degree-2 example
        vf = VectorField("y^2 - x^3", "1 - x*y^2")
        an = Analysis(vf)
        if an.lines:
            pytest.skip("field has an invariant line")
        app = check_theorem1(vf, analysis=an)
        assert app.clauses["B"] is True
        assert app.holds is True


class TestTheorem52:
    def test_poincare_dulac(self):
        app = check_theorem52(PD)
        assert app.holds is False
        assert any(r["generalized_curve"] == "NO" for r in app.reasons)

    def test_irrational(self):
        app = check_theorem52(IRR)
        assert app.holds is True
        assert app.tag == FTC_IMPLIES_IN_ALGEBRAIC_CURVE

    def test_radial_is_dicritical(self):
        app = check_theorem52(RADIAL)
        assert app.holds is False
        assert app.reasons[0]["dicritical"] is True

    def test_depth_cap_gives_ambiguous(self):
        # the cusp needs more than one blow-up
        app = check_theorem52(VectorField("2*y", "3*x^2"), depth_cap=1)
        assert app.holds in (AMBIGUOUS, False)
        assert any(r["generalized_curve"] == "UNKNOWN" for r in app.reasons)


class TestTheorem2:
    def test_poincare_dulac_scopes(self):
        aff = check_theorem2(PD, "affine-only")
        proj = check_theorem2(PD, "full-projective")
        assert aff.holds is True and aff.scope == "affine-only"
        assert aff.tag == CLOSED_RATIONAL_FORM_CLASSIFICATION
        assert proj.holds is False
        bad = [r for r in proj.reasons if r["ok"] is False]
        assert [r["kind"] for r in bad] == ["SaddleNode"]
        assert bad[0]["poincare_domain"] is False

    def test_irrational_both_scopes(self):
        assert check_theorem2(IRR, "affine-only").holds is True
        assert check_theorem2(IRR, "full-projective").holds is True

    def test_radial(self):
        assert check_theorem2(RADIAL, "affine-only").holds is False

    def test_unknown_scope(self):
        with pytest.raises(FolianaError):
            check_theorem2(PD, "somewhere")

    @pytest.mark.parametrize("P,Q", [("x+y", "y"), ("x", "(0+1i)*y"), ("x", "y"), ("x^2 + y", "x*y - y"),
                                     ("x + y^2", "2*y")])
    def test_scopes_reported_independently(self, P, Q):
        vf = VectorField(P, Q)
        an = Analysis(vf)
        alone = check_theorem2(vf, "affine-only", analysis=an).to_json()
        full_report_doc = full_report(vf)
        assert full_report_doc["theorems"]["thm2_affine"] == json.loads(json.dumps(alone))
        # adding the projective scope never changes the affine finding
        proj = check_theorem2(vf, "full-projective", analysis=an)
        assert check_theorem2(vf, "affine-only", analysis=an).holds == alone["holds"]
        if alone["holds"] is False:
            assert proj.holds is False


class TestClosedForm:
    def test_poincare_dulac_form(self):
        form = ClosedFormOneForm([1], ["y"], "-x", [2])
        check = verify_closed_form(PD, form)
        assert check.defines_foliation
        assert check.residual.is_zero()
        assert check.pattern == "poincare_dulac_pullback"

    @pytest.mark.parametrize("lam", ["2", "(0+1i)", "1/3", "(2+1i)"])
    def test_logarithmic_form(self, lam):
        vf = VectorField("x", f"{lam}*y")
        form = ClosedFormOneForm([lam, -1], ["x", "y"], 0, [1, 1])
        check = verify_closed_form(vf, form)
        assert check.defines_foliation
        assert check.pattern == "logarithmic"

    def test_mismatched_residues_rejected(self):
        vf = VectorField("x", "2*y")
        check = verify_closed_form(vf, ClosedFormOneForm([1, -1], ["x", "y"], 0, [1, 1]))
        assert not check.defines_foliation
        # cleared form: y dx - x dy; contraction y*x - x*2y = -x y
        assert check.residual.to_str() == "-x*y"

    def test_perturbed_residue(self):
        vf = VectorField("x", "2*y")
        check = verify_closed_form(vf, ClosedFormOneForm(["2+1/1000", -1], ["x", "y"], 0, [1, 1]))
        assert not check.defines_foliation
        assert not check.residual.is_zero()

    def test_clearing_matches_hand_computation(self):
        # dy/y + d(-x/y) times y^2: y dy - y dx + x dy = -y dx + (x + y) dy
        A, B = clear_denominators(ClosedFormOneForm([1], ["y"], "-x", [2]))
        assert A.to_str() == "-y"
        assert B.to_str() == "x + y"

    def test_float_coefficients(self):
        vf = VectorField("x", "2*y")
        form = ClosedFormOneForm([complex(2.0), -1.0], ["x", "y"], 0, [1, 1])
        assert verify_closed_form(vf, form).defines_foliation

    def test_vanishing_form(self):
        with pytest.raises(FolianaError):
            verify_closed_form(PD, ClosedFormOneForm([0], ["y"], 0, [1]))

    def test_degree_cap(self):
        with pytest.raises(DegreeCapError):
            clear_denominators(ClosedFormOneForm([1], ["x^10"], "x", [9]), degree_cap=60)

    def test_bad_shapes(self):
        with pytest.raises(FolianaError):
            ClosedFormOneForm([1, 2], ["x"], 0, [1])
        with pytest.raises(FolianaError):
            ClosedFormOneForm([1], ["x"], 0, [0])
        with pytest.raises(FolianaError):
            ClosedFormOneForm([1], ["0"], 0, [1])
        with pytest.raises(FolianaError):
            ClosedFormOneForm.from_json({"lambda": [1]})

    def test_from_json(self):
        form = ClosedFormOneForm.from_json({"lambda": ["1"], "f": ["y"], "g": "-x", "n": [2]})
        assert verify_closed_form(PD, form).defines_foliation
        assert form.to_json() == {"lambda": ["1"], "f": ["y"], "g": "-x", "n": [2]}

    def test_patterns(self):
        assert ClosedFormOneForm([1], ["x"], 3, [1]).pattern() == "logarithmic"
        assert ClosedFormOneForm([1], ["x"], "y", [1]).pattern() == "mixed"

    @settings(max_examples=60, deadline=None)
    @given(st.integers(-5, 5), st.integers(-5, 5), st.integers(1, 4), st.sampled_from(["pd", "lin", "bad"]))
    def test_scale_consistency(self, re, im, den, which):
        c = GaussRat(re, im) / den
        if c == 0:
            c = GaussRat(1)
        if which == "pd":
            vf, form = PD, ClosedFormOneForm([1], ["y"], "-x", [2])
        elif which == "lin":
            vf, form = VectorField("x", "3*y"), ClosedFormOneForm([3, -1], ["x", "y"], 0, [1, 1])
        else:
            vf, form = VectorField("x", "3*y"), ClosedFormOneForm([1, -1], ["x", "y"], "x", [1, 1])
        base = verify_closed_form(vf, form).defines_foliation
        assert verify_closed_form(vf, form.scaled(c)).defines_foliation == base


class TestReport:
    def test_poincare_dulac_report(self):
        doc = full_report(PD, ReportConfig(curvature_through=(0, 1), R=30))
        kinds = sorted(r["classification"]["kind"] for r in doc["singularities"])
        assert kinds == ["ResonantNode", "SaddleNode"]
        assert [l["label"] for l in doc["invariant_lines"]] == ["y = 0"]
        th = doc["theorems"]
        assert th["thm1"]["holds"] is False
        assert th["thm52"]["holds"] is False
        assert th["thm2_affine"]["holds"] is True
        assert th["thm2_projective"]["holds"] is False
        assert abs(doc["curvature"]["C"] / (-2 * math.pi) - 1) < 0.01
        assert doc["errors"] == []

    def test_irrational_report(self):
        doc = full_report(IRR)
        assert doc["theorems"]["thm1"]["holds"] is True
        assert doc["theorems"]["thm1"]["tag"] == FTC_IMPLIES_ALGEBRAIC
        assert "curvature" not in doc

    def test_radial_report(self):
        doc = full_report(RADIAL, ReportConfig(curvature_through=(1, 1), R=5))
        assert doc["invariant_lines"] == "infinitely_many"
        assert all(v["holds"] is False for v in doc["theorems"].values())
        assert doc["curvature"]["C"] == 0

    def test_index_sums_in_report(self):
        doc = full_report(IRR)
        linf = [s for s in doc["index_sums"] if s["line"]["kind"] == "infinity"]
        assert linf and linf[0]["pass"] is True

    def test_cross_references(self):
        doc = full_report(VectorField("x^2 + y", "x*y - y"))
        labels = {r["label"] for r in doc["singularities"]}
        for thm in doc["theorems"].values():
            for reason in thm["reasons"]:
                if "point" in reason:
                    assert reason["point"] in labels

    def test_deterministic(self):
        vf = VectorField("x^2 - y + 1", "x*y + 2*x")
        a = json.dumps(full_report(vf), sort_keys=True)
        b = json.dumps(full_report(vf), sort_keys=True)
        assert a == b

    def test_curvature_failure_is_recorded(self):
        doc = full_report(PD, ReportConfig(curvature_through=(0, 0)))
        assert doc["curvature"] is None
        assert any("curvature" in e["message"] for e in doc["errors"])

    def test_render_text_lists_every_value(self):
        doc = json.loads(json.dumps(full_report(PD)))
        text = render_text(doc)
        assert "theorems.thm1.holds: false" in text
        assert "theorems.thm2_affine.holds: true" in text
        leaves = []

        def walk(node):
            if isinstance(node, dict):
                if not node:
                    leaves.append(1)
                for v in node.values():
                    walk(v)
            elif isinstance(node, list):
                if not node:
                    leaves.append(1)
                for v in node:
                    walk(v)
            else:
                leaves.append(1)

        walk(doc)
        assert len(text.strip().splitlines()) == len(leaves)
