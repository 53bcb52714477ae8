import math
from fractions import Fraction
from math import comb

import numpy as np
import pytest

from chebydev.bestapprox import (ApproxProblem, ball_mixed_monomial_check,
                                 discrete_minimax, invariant_basis,
                                 remez_exchange, verify_correspondence)
from chebydev.constructions import build_td, compute_rd, derive_r5_constants
from chebydev.domains import ball, simplex, sphere
from chebydev.polycore import Poly, PolyError
from chebydev.signatures import (Certificate, build_l_functional,
                                 certify_lower_bound)


@pytest.fixture(scope="module")
def consts():
    return derive_r5_constants()


class TestBases:
    def test_symmetric_count(self):
        assert len(invariant_basis(4, 3, "symmetric")) == 11

    def test_full_count(self):
        assert len(invariant_basis(2, 3, "full")) == comb(5, 2)

    def test_even_degree5_equals_degree4(self):
        five = invariant_basis(5, 3, "even")
        four = invariant_basis(4, 3, "even")
        assert len(five) == len(four) == 10

    def test_sphere_reduction_drops_dependent_functions(self):
        full = invariant_basis(2, 3, "full", for_sphere=True)
        # no monomial with last exponent >= 2 survives
        assert all(max(exp for exp, _ in b.sorted_terms())[-1] <= 1 for b in full)
        assert len(full) == 9
        sym = invariant_basis(2, 3, "symmetric", for_sphere=True)
        # 1, e_1, e_2 survive; the power sum m_2 is constant on the sphere
        assert len(sym) == 3


class TestDiscreteMinimax:
    def test_univariate_square(self):
        prob = ApproxProblem(Poly.monomial((2,)), 1, ball(1), "full", grid=50)
        res = discrete_minimax(prob)
        assert res.deviation == pytest.approx(0.5, abs=1e-10)
        # best approximant is the constant 1/2
        assert res.coefficients[0] == pytest.approx(0.5, abs=1e-9)
        assert abs(res.coefficients[1]) < 1e-9
        assert res.equioscillation_ok

    def test_simplex_grid32_bracket(self):
        prob = ApproxProblem(Poly.monomial((1, 1, 1)), 2, simplex(3),
                             "symmetric", grid=32)
        res = discrete_minimax(prob)
        assert 1 / 72 - 5e-4 <= res.deviation <= 1 / 72 + 1e-10

    def test_sphere_zero_approximant(self):
        prob = ApproxProblem(Poly.monomial((1, 1, 1)), 2, sphere(3),
                             "symmetric", grid=40)
        res = remez_exchange(prob, seed=0)
        assert res.deviation == pytest.approx(3 ** -1.5, abs=1e-9)
        assert np.max(np.abs(res.coefficients)) < 1e-6

    def test_equioscillation_support_size(self):
        prob = ApproxProblem(Poly.monomial((1, 1, 1)), 2, simplex(3),
                             "symmetric", grid=24)
        res = discrete_minimax(prob)
        assert res.equioscillation_count >= len(res.basis_polys) + 1

    def test_rank_deficient_grid_reports_offender(self):
        # four grid points cannot carry ten independent quadratics
        prob = ApproxProblem(Poly.monomial((1, 1, 1)), 2, simplex(3),
                             "full", grid=1)
        with pytest.raises(PolyError, match="rank-deficient"):
            discrete_minimax(prob)

    def test_full_and_symmetric_agree_for_symmetric_target(self):
        full = discrete_minimax(ApproxProblem(
            Poly.monomial((1, 1, 1)), 2, simplex(3), "full", grid=16))
        sym = discrete_minimax(ApproxProblem(
            Poly.monomial((1, 1, 1)), 2, simplex(3), "symmetric", grid=16))
        assert abs(full.deviation - sym.deviation) < 1e-8


class TestRemezExchange:
    def test_simplex_product_converges(self):
        res = remez_exchange(ApproxProblem(
            Poly.monomial((1, 1, 1)), 2, simplex(3), "symmetric", grid=16), seed=0)
        assert res.deviation_lower == pytest.approx(1 / 72, rel=1e-12)
        assert res.deviation_upper - res.deviation_lower < 1e-8

    def test_degree5_product_squared(self, consts):
        res = remez_exchange(ApproxProblem(
            Poly.monomial((2, 2, 2)), 5, simplex(3), "symmetric", grid=16), seed=0)
        expected = 1.0 / consts.leading
        assert res.deviation_lower == pytest.approx(expected, rel=1e-8)

    def test_degree4_is_strictly_harder(self, consts):
        # dropping the degree-5 approximants roughly triples the deviation:
        # the best degree-5 tail of the extremal family is genuinely degree 5
        res = remez_exchange(ApproxProblem(
            Poly.monomial((2, 2, 2)), 4, simplex(3), "symmetric", grid=16), seed=0)
        assert res.deviation_lower > 2.0 / consts.leading

    def test_univariate_quartic(self):
        res = remez_exchange(ApproxProblem(
            Poly.monomial((4,)), 3, ball(1), "full", grid=50), seed=0)
        assert res.deviation_lower == pytest.approx(0.125, abs=1e-10)

    def test_gap_log_lower_bounds_monotone(self):
        res = remez_exchange(ApproxProblem(
            Poly.monomial((1, 1, 1)), 2, simplex(3), "symmetric", grid=8), seed=0)
        lowers = [entry[0] for entry in res.gap_log]
        assert all(b >= a - 1e-12 for a, b in zip(lowers, lowers[1:]))
        assert all(entry[1] >= entry[0] - 1e-12 for entry in res.gap_log)


class TestCorrespondence:
    def test_two_variable_pair(self):
        rep = verify_correspondence((1, 1), 2, grid=16, seed=0)
        # the squared target on the disc has total degree 4; both routes see
        # the same value, the classical 2^(1-4)
        assert rep["difference"] < 1e-6
        assert rep["simplex_deviation"] == pytest.approx(2.0 ** -3, abs=1e-6)

    def test_three_variable_adjudication(self):
        rep = verify_correspondence((1, 1, 1), 3, grid=24, seed=0)
        assert rep["difference"] < 1e-3
        assert rep["ball_value_supported"] == "1/72"
        assert rep["ball_deviation"] == pytest.approx(1 / 72, abs=1e-4)

    def test_invalid_alpha(self):
        with pytest.raises(PolyError):
            verify_correspondence((0, 0, 0), 3)


class TestBallMixedMonomials:
    @pytest.mark.parametrize("k,n", [(1, 2), (1, 3), (2, 3)])
    def test_values(self, k, n):
        rep = ball_mixed_monomial_check(k, n, grid=16, seed=0)
        assert rep["abs_error"] < 1e-4
        assert rep["expected"] == 2.0 ** (1 - n)

    def test_preconditions(self):
        with pytest.raises(PolyError):
            ball_mixed_monomial_check(2, 2)
        with pytest.raises(PolyError):
            ball_mixed_monomial_check(1, 5)


class TestLowerBoundConsistency:
    @pytest.mark.parametrize("d,grid", [(3, 16), (4, 10)])
    def test_certified_level_below_oracle_deviation(self, d, grid):
        fam = build_td(d)
        target = Poly.monomial((1,) * d)
        level = Fraction(1, fam.r_value)
        cert = Certificate(
            target=target, candidate=target - level * fam.polynomial,
            level=level, degree=d - 1, support=build_l_functional(d),
            domain=simplex(d))
        res = certify_lower_bound(cert, tol=0)
        assert res.certified
        oracle = remez_exchange(ApproxProblem(
            target, d - 1, simplex(d), "symmetric", grid=grid), seed=0)
        assert float(res.asserted_bound) <= oracle.deviation_lower + 1e-8
        assert oracle.deviation_lower == pytest.approx(1 / compute_rd(d), rel=1e-6)


class TestLiftedCorrespondenceHeavy:
    def test_degree12_ball_route_approaches_simplex_value(self, consts):
        # the squaring substitution makes the even-basis ball problem for
        # (xyz)^4 isomorphic to the simplex problem for (xyz)^2, whose value
        # is verified to 1e-8 elsewhere; at desk-scale effort the ball route
        # lands within grid accuracy of that value
        from chebydev.bestapprox import remez_exchange
        expected = 1.0 / consts.leading
        res = remez_exchange(ApproxProblem(
            Poly.monomial((4, 4, 4)), 11, ball(3), "even", grid=6),
            max_iter=3, seed=0)
        assert abs(res.deviation_lower - expected) / expected < 5e-3
        assert res.deviation_lower <= res.deviation_upper + 1e-15
