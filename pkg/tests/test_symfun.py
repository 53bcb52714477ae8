import math
import random
from fractions import Fraction
from math import comb

import numpy as np
import pytest

from chebydev.polycore import Poly
from chebydev.symfun import (chebyshev_t, elementary_symmetric, monomial_symmetric,
                             partitions_upto, power_sum, symmetrize)
from chebydev.constructions import build_td


class TestElementarySymmetric:
    def test_e1_and_top(self):
        assert elementary_symmetric(1, 3) == (
            Poly.variable(3, 0) + Poly.variable(3, 1) + Poly.variable(3, 2))
        assert elementary_symmetric(4, 4) == Poly.monomial((1, 1, 1, 1))

    def test_e2_at_binary_point(self):
        assert elementary_symmetric(2, 4).eval((1, 1, 0, 0)) == 1

    @pytest.mark.parametrize("d,j,k", [(5, 3, 2), (6, 4, 3), (7, 5, 1), (8, 6, 6)])
    def test_value_at_uniform_support_counts_subsets(self, d, j, k):
        # e_k at (1/j, ..., 1/j, 0, ...): each k-subset of the j nonzero
        # coordinates contributes j^-k
        pt = tuple([Fraction(1, j)] * j + [Fraction(0)] * (d - j))
        assert elementary_symmetric(k, d).eval(pt) == Fraction(comb(j, k), j ** k)

    def test_k_out_of_range(self):
        with pytest.raises(Exception):
            elementary_symmetric(4, 3)


class TestPowerSum:
    def test_m1_equals_e1(self):
        assert power_sum(1, 5) == elementary_symmetric(1, 5)

    @pytest.mark.parametrize("d,j,k", [(4, 2, 3), (5, 5, 2), (6, 3, 4)])
    def test_value_at_uniform_support(self, d, j, k):
        pt = tuple([Fraction(1, j)] * j + [Fraction(0)] * (d - j))
        assert power_sum(k, d).eval(pt) == Fraction(1, j ** (k - 1))

    def test_m2_two_vars(self):
        assert power_sum(2, 2) == Poly(2, {(2, 0): 1, (0, 2): 1})

    def test_m0_is_dimension(self):
        assert power_sum(0, 7) == Poly.constant(7, 7)

    @pytest.mark.parametrize("d", range(2, 9))
    def test_newton_identity_e2(self, d):
        m1, m2 = power_sum(1, d), power_sum(2, d)
        lhs = 2 * elementary_symmetric(2, d)
        assert lhs == m1 * m1 - m2


class TestChebyshev:
    def test_t2_t3(self):
        t = Poly.variable(1, 0)
        assert chebyshev_t(2) == 2 * t ** 2 - 1
        assert chebyshev_t(3) == 4 * t ** 3 - 3 * t

    def test_t4_at_minus_one(self):
        t4 = chebyshev_t(4)
        assert t4.eval((-1,)) == 1

    @pytest.mark.parametrize("n", [1, 2, 5, 9])
    def test_leading_coefficient(self, n):
        assert chebyshev_t(n).coefficient((n,)) == 2 ** (n - 1)

    def test_bounded_and_cosine_identity(self):
        t7 = chebyshev_t(7).to_float64()
        xs = np.linspace(-1, 1, 10_000)
        vals = t7.eval_grid(xs[:, None])
        assert np.max(np.abs(vals)) <= 1 + 1e-12
        thetas = np.linspace(0, math.pi, 257)
        for th in thetas[::16]:
            assert t7.eval((math.cos(th),)) == pytest.approx(math.cos(7 * th), abs=1e-12)


class TestSymmetrize:
    def test_square_spreads_to_power_sum(self):
        got = symmetrize(Poly.monomial((2, 0, 0)))
        assert got == Fraction(1, 3) * power_sum(2, 3)

    def test_pair_spreads_to_e2(self):
        got = symmetrize(Poly.monomial((1, 1, 0)))
        assert got == Fraction(1, 3) * elementary_symmetric(2, 3)

    @pytest.mark.parametrize("d", [3, 4, 5])
    def test_family_is_fixed(self, d):
        td = build_td(d).polynomial
        assert symmetrize(td) == td

    def test_idempotent_on_random_polys(self):
        rng = random.Random(99)
        for _ in range(25):
            terms = {tuple(rng.randint(0, 2) for _ in range(4)):
                     Fraction(rng.randint(-3, 3)) for _ in range(5)}
            p = Poly(4, terms)
            s = symmetrize(p)
            assert symmetrize(s) == s


class TestPartitions:
    def test_counts(self):
        # partitions of 0..4 into at most 3 parts: 1 + 1 + 2 + 3 + 4
        assert len(partitions_upto(4, 3)) == 11
        assert partitions_upto(0, 3) == [()]

    def test_monomial_symmetric_orbit(self):
        m = monomial_symmetric((2, 1), 3)
        assert len(m.terms) == 6 and all(c == 1 for c in m.terms.values())
