import math
import random
from fractions import Fraction

import numpy as np
import pytest

from chebydev.polycore import (
    DimensionMismatchError, FieldMismatchError, Poly, PolyError, insert_zero,
    laplacian, max_coefficient_difference, poly_equal, poly_from_json_dict,
    poly_to_json_dict, restrict_affine_last, restrict_zero,
)
from chebydev.constructions import build_t3, build_td, build_u3
from chebydev.symfun import chebyshev_t, chebyshev_t_shifted, elementary_symmetric


def third():
    return Fraction(1, 3)


class TestEval:
    def test_e1_at_point(self):
        e1 = elementary_symmetric(1, 3)
        assert e1.eval((1, 2, 3)) == 6

    def test_r3_values(self):
        r3 = build_t3(3)
        assert r3.eval((0, 0, 0)) == 1
        assert r3.eval((Fraction(1, 2), Fraction(1, 2), 0)) == -1

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            elementary_symmetric(1, 3).eval((1, 2))

    def test_field_mismatch_on_eval(self):
        with pytest.raises(FieldMismatchError):
            elementary_symmetric(1, 3).eval((0.5, 0.5, 0.0))

    def test_eval_grid_matches_pointwise(self):
        p = build_t3(3).to_float64()
        rng = np.random.default_rng(1)
        X = rng.random((50, 3))
        vals = p.eval_grid(X)
        for i in range(0, 50, 7):
            assert vals[i] == pytest.approx(p.eval(X[i]), abs=1e-13)


class TestArithmetic:
    def test_binomial_square(self):
        x1 = Poly.variable(2, 0)
        x2 = Poly.variable(2, 1)
        sq = (x1 + x2) ** 2
        assert sq == x1 * x1 + 2 * x1 * x2 + x2 * x2

    def test_r3_from_e_basis_matches_expanded_monomials(self):
        # same polynomial assembled two ways: e_k combination vs raw monomials
        r3 = build_t3(3)
        x = [Poly.variable(3, i) for i in range(3)]
        s = x[0] + x[1] + x[2]
        expanded = (72 * x[0] * x[1] * x[2] - 4 * s + 4 * s * s
                    - 8 * (x[0] * x[1] + x[1] * x[2] + x[0] * x[2]) + 1)
        assert poly_equal(r3, expanded, 0)

    def test_cancellation_empty_terms(self):
        p = build_t3(3)
        z = p - p
        assert z.is_zero() and z.terms == {}
        assert z.degree() == -math.inf

    def test_mixed_field_rejected(self):
        p = elementary_symmetric(2, 3)
        with pytest.raises(FieldMismatchError):
            _ = p + p.to_float64()
        with pytest.raises(FieldMismatchError):
            _ = p * 0.5

    def test_ring_axioms_fuzzed(self):
        # associativity and distributivity over >= 1000 random small cases
        rng = random.Random(12345)

        def rand_poly():
            terms = {}
            for _ in range(rng.randint(0, 4)):
                exp = tuple(rng.randint(0, 2) for _ in range(3))
                terms[exp] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            return Poly(3, terms)

        for _ in range(1000):
            a, b, c = rand_poly(), rand_poly(), rand_poly()
            assert (a + b) + c == a + (b + c)
            assert a * (b + c) == a * b + a * c
        # multiplication commutes and respects evaluation on a spot check
        a, b = rand_poly(), rand_poly()
        assert a * b == b * a


class TestCalculus:
    def test_partial_of_product(self):
        p = Poly.monomial((1, 1, 1))
        assert p.partial(0) == Poly.monomial((0, 1, 1))

    def test_r3_interior_critical_point(self):
        # solving the symmetric system 72 x_j x_k + 8 x_i = 4 by hand gives the
        # exact interior critical orbit (1/9, 1/9, 7/18); the center of the
        # sum = 1 face is a critical point only of the face restriction
        r3 = build_t3(3)
        pt = (Fraction(1, 9), Fraction(1, 9), Fraction(7, 18))
        for i in range(3):
            assert r3.partial(i).eval(pt) == 0
        assert r3.partial(0).eval((third(), third(), third())) == Fraction(20, 3)

    def test_partial_of_constant(self):
        assert Poly.constant(3, 5).partial(1).is_zero()

    def test_partial_index_out_of_range(self):
        with pytest.raises(DimensionMismatchError):
            build_t3(3).partial(3)

    @pytest.mark.parametrize("d", range(3, 9))
    def test_laplacian_of_td_is_constant(self, d):
        # the family has constant Laplacian 8 d (-1)^(d-1); in particular the
        # sign alternates, which is what the boundary-maximum argument needs
        lap = laplacian(build_td(d).polynomial)
        assert lap == Poly.constant(d, 8 * d * (-1) ** (d - 1))

    def test_laplacian_of_square(self):
        assert laplacian(Poly.monomial((2,))) == Poly.constant(1, 2)

    def test_partial_matches_finite_differences(self):
        rng = random.Random(7)
        for _ in range(20):
            terms = {tuple(rng.randint(0, 3) for _ in range(3)):
                     rng.uniform(-2, 2) for _ in range(5)}
            p = Poly(3, terms, "float64")
            x = np.array([rng.uniform(0.2, 0.8) for _ in range(3)])
            h = 1e-5
            for i in range(3):
                step = np.zeros(3)
                step[i] = h
                fd = (p.eval(x + step) - p.eval(x - step)) / (2 * h)
                exact = p.partial(i).eval(x)
                assert fd == pytest.approx(exact, rel=1e-6, abs=1e-7)


class TestRestriction:
    @pytest.mark.parametrize("d", range(4, 9))
    def test_zero_face_gives_negated_lower_family(self, d):
        td = build_td(d).polynomial
        lower = build_td(d - 1).polynomial
        assert restrict_zero(td, d - 1) == -lower

    def test_r3_zero_face_closed_form(self):
        got = restrict_zero(build_t3(3), 2)
        x = Poly.variable(2, 0)
        y = Poly.variable(2, 1)
        want = (1 - 2 * x) ** 2 + (1 - 2 * y) ** 2 - 1
        assert got == want

    def test_affine_face_and_edge_of_u3(self):
        u3 = restrict_affine_last(build_t3(3))
        assert u3 == build_u3()
        edge = restrict_zero(u3, 1)
        x = Poly.variable(1, 0)
        assert edge == 8 * x ** 2 - 8 * x + 1
        # the edge value is the degree-2 Chebyshev polynomial in 2x - 1
        assert edge == chebyshev_t_shifted(2)

    def test_restriction_commutes_with_evaluation(self):
        rng = random.Random(3)
        for _ in range(50):
            terms = {tuple(rng.randint(0, 2) for _ in range(3)):
                     Fraction(rng.randint(-3, 3)) for _ in range(4)}
            p = Poly(3, terms)
            i = rng.randrange(3)
            y = (Fraction(rng.randint(-2, 2), 3), Fraction(rng.randint(-2, 2), 3))
            assert restrict_zero(p, i).eval(y) == p.eval(insert_zero(y, i))


class TestEquality:
    def test_exponent_key_canonical(self):
        assert Poly(2, {(1, 1): 1}) == Poly(2, {(1, 1): Fraction(2, 2)})

    def test_shifted_chebyshev_expansion(self):
        t2 = chebyshev_t(2)
        x = Poly.variable(1, 0)
        assert poly_equal(t2.compose([2 * x - 1]), 8 * x ** 2 - 8 * x + 1, 0)

    def test_float_tolerance(self):
        a = Poly(1, {(1,): 1.0}, "float64")
        b = Poly(1, {(1,): 1.0 + 5e-10}, "float64")
        assert poly_equal(a, b, 1e-9)
        assert not poly_equal(a, b, 1e-11)
        assert max_coefficient_difference(a, b) == pytest.approx(5e-10)


class TestJson:
    def test_round_trip_rational(self):
        p = build_td(4).polynomial
        blob = poly_to_json_dict(p)
        assert blob["field"] == "rational"
        assert poly_from_json_dict(blob) == p
        # graded-lex order of terms: degrees ascending, lex within a degree
        degs = [sum(t["exp"]) for t in blob["terms"]]
        assert degs == sorted(degs)

    def test_round_trip_float(self):
        p = build_t3(3).to_float64()
        assert poly_from_json_dict(poly_to_json_dict(p)) == p

    def test_zero_polynomial(self):
        z = Poly.zero(3)
        assert poly_from_json_dict(poly_to_json_dict(z)) == z

    def test_float_to_rational_not_provided(self):
        assert not hasattr(Poly, "to_rational")
