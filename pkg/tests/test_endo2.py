"""Plane polynomial maps: composition, extension, critical data, invariance."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from commend.endo2 import (PlaneEndo, check_critical_chain, commutes, compose,
                           critical_divisor, critical_orbit_finite,
                           extends_to_p2, image_curve, invariant_lines,
                           is_invariant_curve, is_totally_invariant, iterate,
                           mult_on_curve, ramified_square_invariance,
                           restrict_infinity)
from commend.errors import DegreeLimitExceeded, NotExtendable
from commend.mpoly import MPoly
from commend.parse import parse_map_pair, parse_poly


def endo(text):
    return PlaneEndo(*parse_map_pair(text))


DESC2 = endo("(z1^2 - 2*z2, z2^2)")
DESC3 = endo("(z1^3 - 3*z1*z2, z2^3)")
POW2 = endo("(z1^2, z2^2)")
PHI = parse_poly("z1^2 - 4*z2")

small = st.integers(min_value=-3, max_value=3)


class TestComposition:
    def test_compose_degrees(self):
        assert compose(DESC2, DESC3).degree == 6
        assert compose(DESC2, DESC3) == compose(DESC3, DESC2)

    def test_commutes_oracle(self):
        assert commutes(DESC2, DESC3)
        assert commutes(POW2, endo("(z1^3, z2^3)"))
        assert not commutes(DESC2, endo("(z1^3, z2^3)"))

    def test_iterate(self):
        f2 = iterate(DESC2, 2)
        assert f2 == compose(DESC2, DESC2)
        assert iterate(DESC2, 1) == DESC2
        assert iterate(DESC2, 0) == PlaneEndo.identity()

    def test_iterate_degree_cap(self):
        with pytest.raises(DegreeLimitExceeded):
            iterate(DESC2, 12, degree_cap=100)

    @given(small, small, small, small)
    @settings(max_examples=25, deadline=None)
    def test_compose_associative(self, a, b, c, d):
        z1, z2 = MPoly.var("z1"), MPoly.var("z2")
        f = PlaneEndo(z1**2 + z2.scale(a), z2**2 + z1.scale(b))
        g = PlaneEndo(z1 + MPoly.constant(c), z2 + MPoly.constant(d))
        assert compose(compose(f, g), f) == compose(f, compose(g, f))


class TestExtension:
    def test_extends_oracle(self):
        assert extends_to_p2(DESC2)
        assert extends_to_p2(DESC3)
        assert extends_to_p2(endo("(z1^2 - z2^2, z1*z2)"))
        # top forms share the root [0:1]
        assert not extends_to_p2(endo("(z1^2, z1*z2)"))

    def test_restrict_infinity(self):
        r = restrict_infinity(DESC2)
        s, t = MPoly.var("s"), MPoly.var("t")
        assert r.formS == s**2 and r.formT == t**2

    def test_restrict_requires_extension(self):
        with pytest.raises(NotExtendable):
            restrict_infinity(endo("(z1^2, z1*z2)"))


class TestCriticalData:
    def test_critical_divisor(self):
        div = critical_divisor(DESC2)
        z1, z2 = MPoly.var("z1"), MPoly.var("z2")
        assert dict(div.parts) == {z1: 1, z2: 1}
        assert div.total_degree() == DESC2.degree * 2 - 2

    def test_degree_formula_examples(self):
        for f in (DESC2, DESC3, POW2, endo("(z1^2 - z2^2, z1*z2)")):
            assert critical_divisor(f).total_degree() == 2 * f.degree - 2

    def test_mult_on_curve(self):
        assert mult_on_curve(DESC2, PHI) == 1
        assert mult_on_curve(POW2, MPoly.var("z1")) == 2

    def test_chain_identity(self):
        assert check_critical_chain(DESC2, DESC3)
        assert check_critical_chain(POW2, endo("(z1^3, z2^3)"))


class TestInvariance:
    def test_invariant_curve(self):
        assert is_invariant_curve(DESC2, PHI)
        assert is_invariant_curve(DESC3, PHI)
        assert not is_invariant_curve(DESC2, parse_poly("z1 - z2"))

    def test_total_invariance(self):
        z1 = MPoly.var("z1")
        assert is_totally_invariant(POW2, z1)
        assert not is_totally_invariant(DESC2, PHI)

    def test_ramified_square_invariance(self):
        w2 = ramified_square_invariance(DESC2, PHI)
        w3 = ramified_square_invariance(DESC3, PHI)
        pulled2 = PHI.substitute({"z1": DESC2.comp1, "z2": DESC2.comp2})
        assert pulled2 == PHI * w2 * w2
        pulled3 = PHI.substitute({"z1": DESC3.comp1, "z2": DESC3.comp2})
        assert pulled3 == PHI * w3 * w3

    def test_image_curve_preserves_invariant(self):
        assert image_curve(DESC2, PHI).monic() == PHI.monic()

    def test_image_curve_generic(self):
        f = endo("(z1^2, z2^2 + z1)")
        assert image_curve(f, MPoly.var("z1")).monic() == MPoly.var("z1")
        # the line z2 = 0 maps onto the parabola z1 = z2^2
        assert image_curve(f, MPoly.var("z2")).monic() == parse_poly(
            "z2^2 - z1")

    def test_critical_orbit_finite(self):
        report = critical_orbit_finite(DESC2, DESC3)
        assert report.resolved
        for entry in report.per_component.values():
            assert entry["witness"] is not None

    def test_invariant_lines(self):
        rep = invariant_lines(endo("(z1^2 + 1, z2^2 + 1)"))
        lines = [line for line, _tot in rep.affine_lines]
        # only the diagonal survives over the rationals
        assert lines == [MPoly.var("z2") - MPoly.var("z1")]
        assert rep.includes_infinity

    def test_invariant_lines_powers(self):
        rep = invariant_lines(POW2)
        found = {str(line): tot for line, tot in rep.affine_lines}
        assert found.get("z1") is True and found.get("z2") is True
