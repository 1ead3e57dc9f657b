from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from polyfun.poly import FracPoly, Poly, middle_expansion_check, parse_poly, poly_arith
from polyfun.ring import make_cyclic_ring, make_matrix_ring, make_triangular_ring

from conftest import table_ring
from strategies import elements, polys

RINGS = {
    "z8": make_cyclic_ring(8),
    "m2z4": make_matrix_ring(2, 4),
    "t2z4": make_triangular_ring(2, 4),
    "t3z3": make_triangular_ring(3, 3),
    "quat3": table_ring("quat3"),
    "f2s3": table_ring("f2s3"),
}

ring_names = st.sampled_from(sorted(RINGS))


def naive_eval(f, s, side):
    """Evaluate term by term with repeated multiplication."""
    R = f.ring
    total = R.zero
    for k, c in enumerate(f.coefficients()):
        p = R.one
        for _ in range(k):
            p = p * s
        total = total + (c * p if side == "right" else p * c)
    return total


class TestArithmetic:
    def test_commutative_ring_examples(self):
        R = make_cyclic_ring(4)
        f = Poly(R, [(1,), (1,)])  # 1 + x
        assert (f * f) == Poly(R, [(1,), (2,), (1,)])
        assert Poly(R, [(2,)]) * Poly(R, [(2,)]) == Poly.zero(R)
        assert (f - f).degree is None
        assert poly_arith("add", f, f) == Poly(R, [(2,), (2,)])

    def test_x_does_not_commute_past_nothing(self, m2z2):
        e12, e21 = m2z2.parse_element("e12"), m2z2.parse_element("e21")
        f, g = Poly.const(e12), Poly.const(e21)
        assert f * g == Poly.const(m2z2.parse_element("e11"))
        assert g * f == Poly.const(m2z2.parse_element("e22"))
        # x is central in R[x]
        x = Poly.x(m2z2)
        assert x * f == f * x

    def test_trailing_zeros_stripped(self, m2z2):
        f = Poly(m2z2, [(1, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0)])
        assert f.degree == 0

    def test_mixed_rings_rejected(self, m2z2, t2z2):
        with pytest.raises(ValueError):
            Poly.x(m2z2) + Poly.x(t2z2)

    @settings(max_examples=100, deadline=None)
    @given(ring_names, st.data())
    def test_ring_axioms(self, name, data):
        R = RINGS[name]
        f, g, h = (data.draw(polys(R, 3)) for _ in range(3))
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert (f + g) * h == f * h + g * h


class TestEvaluation:
    def test_left_right_differ(self, m2z2):
        e11, e12 = m2z2.parse_element("e11"), m2z2.parse_element("e12")
        f = Poly.monomial(e12, 1)
        assert f.eval_right(e11) == e12 * e11
        assert f.eval_right(e11).is_zero()
        assert f.eval_left(e11) == e12

    def test_spot_value(self, m2z2):
        e11, e12 = m2z2.parse_element("e11"), m2z2.parse_element("e12")
        f = Poly.linear(e11)  # x - e11
        assert f.eval_right(e11).is_zero()
        assert (f * e12).eval_right(e11) == e12 * e11 - e11 * e12

    @settings(max_examples=150, deadline=None)
    @given(ring_names, st.data())
    def test_matches_naive(self, name, data):
        R = RINGS[name]
        f, s = data.draw(polys(R)), data.draw(elements(R))
        assert f.eval_right(s) == naive_eval(f, s, "right")
        assert f.eval_left(s) == naive_eval(f, s, "left")

    @settings(max_examples=100, deadline=None)
    @given(st.data())
    def test_commutative_sides_agree(self, data):
        R = table_ring("dual4")
        f, s = data.draw(polys(R)), data.draw(elements(R))
        assert f.eval_right(s) == f.eval_left(s)

    @settings(max_examples=100, deadline=None)
    @given(ring_names, st.data())
    def test_opposite_swaps_sides(self, name, data):
        R = RINGS[name]
        Rop = R.opposite()
        f, s = data.draw(polys(R)), data.draw(elements(R))
        assert f.opposite(Rop).eval_right(Rop.element(s.coords)).coords == f.eval_left(s).coords


class TestDivision:
    @settings(max_examples=200, deadline=None)
    @given(st.data())
    def test_reconstruct_t2z4(self, data):
        R = RINGS["t2z4"]
        f, s = data.draw(polys(R, 5)), data.draw(elements(R))
        q, rem = f.divrem_linear_right(s)
        assert q * Poly.linear(s) + Poly.const(rem) == f
        assert rem == f.eval_right(s)
        q, rem = f.divrem_linear_left(s)
        assert Poly.linear(s) * q + Poly.const(rem) == f
        assert rem == f.eval_left(s)

    @settings(max_examples=200, deadline=None)
    @given(ring_names, st.data())
    def test_middle_expansion(self, name, data):
        R = RINGS[name]
        assert middle_expansion_check(data.draw(polys(R)), data.draw(polys(R)), data.draw(elements(R)))

    def test_evaluation_not_multiplicative(self, m2z2):
        e11, e12 = m2z2.parse_element("e11"), m2z2.parse_element("e12")
        f, g = Poly.x(m2z2), Poly.const(e12)
        assert (f * g).eval_right(e11).is_zero()
        assert f.eval_right(e11) * g.eval_right(e11) == e12


class TestTextForms:
    def test_render(self, m2z2):
        assert Poly.zero(m2z2).render() == "0"
        f = Poly.linear(m2z2.parse_element("e11"))
        assert f.render() == "[1,0,0,0] + [1,0,0,1]*x"

    @settings(max_examples=100, deadline=None)
    @given(ring_names, st.data())
    def test_round_trip(self, name, data):
        R = RINGS[name]
        f = data.draw(polys(R))
        assert parse_poly(R, f.render()) == f

    def test_parse_errors(self, m2z2):
        with pytest.raises(ValueError):
            parse_poly(m2z2, "[1,0] + x")


class TestFracPoly:
    def test_reduction(self):
        F = FracPoly(([[2, 0], [0, 4]], [[6, 0], [0, 0]]), 4)
        assert F.denominator == 2
        assert F.numerator[0] == ((1, 0), (0, 2))
        assert FracPoly(([[0, 0], [0, 0]],), 5).numerator == ()
        neg = FracPoly(([[1, 0], [0, 1]],), -3)
        assert neg.denominator == 3 and neg.numerator[0] == ((-1, 0), (0, -1))

    def test_evaluation(self):
        # F = (x - e11)/2, G = e12 ; (F G)(e11) = (e12 e11 - e11 e12)/2
        F = FracPoly(([[-1, 0], [0, 0]], [[1, 0], [0, 1]]), 2)
        G = FracPoly.integral(([[0, 1], [0, 0]],))
        s = ((1, 0), (0, 0))
        assert F.is_integral_at(s) and G.is_integral_at(s)
        FG = F * G
        assert FG.evaluate(s) == ((0, Fraction(-1, 2)), (0, 0))
        assert not FG.is_integral_at(s)
        assert (G * F).evaluate(s, "left") == ((0, Fraction(1, 2)), (0, 0))

    def test_render_and_json(self):
        F = FracPoly(([[1, 0], [0, 1]],), 3)
        assert F.to_json() == {"denominator": 3, "numerator": [[[1, 0], [0, 1]]]}
        assert FracPoly((), 1).render() == "0"
