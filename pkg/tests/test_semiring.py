import itertools

import numpy as np
import pytest

from fftmorph.semiring import (NEG_INF, degree, maxplus_sum_of_products,
                               monomial, poly_add, poly_mul)


def trim(p):
    nz = np.flatnonzero(p)
    return p[: int(nz[-1]) + 1] if nz.size else p[:1] * 0


def poly_eq(p, q):
    return np.array_equal(trim(np.asarray(p)), trim(np.asarray(q)))


def mp_add(a, b):
    return NEG_INF if NEG_INF in (a, b) else a + b


class TestDegree:
    def test_zero_polynomial(self):
        assert degree(np.array([0, 0, 0])) == NEG_INF

    def test_constant_one(self):
        assert degree(np.array([1])) == 0

    def test_highest_nonzero(self):
        assert degree(np.array([0, 0, 5, 1])) == 3

    def test_trailing_zeros_ignored(self):
        assert degree(np.array([0, 2, 0, 0, 0])) == 1


class TestMonomial:
    def test_neg_inf(self):
        assert poly_eq(monomial(NEG_INF), [0])

    def test_zero(self):
        assert poly_eq(monomial(0), [1])

    def test_cube(self):
        assert poly_eq(monomial(3), [0, 0, 0, 1])

    def test_section_property(self):
        for a in [NEG_INF] + list(range(21)):
            assert degree(monomial(a)) == a

    def test_injective(self):
        seen = {tuple(trim(monomial(a))) for a in [NEG_INF] + list(range(16))}
        assert len(seen) == 17

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            monomial(-3)


class TestPolyOps:
    def test_add_coefficientwise(self):
        assert poly_eq(poly_add(np.array([1, 0, 1]), np.array([0, 2])), [1, 2, 1])

    def test_add_identity(self):
        p = np.array([3, 0, 2])
        assert poly_eq(poly_add(p, np.array([0])), p)

    def test_add_like_terms(self):
        assert poly_eq(poly_add(monomial(3), monomial(3)), [0, 0, 0, 2])

    def test_mul_monomials(self):
        assert poly_eq(poly_mul(monomial(3), monomial(2)), monomial(5))

    def test_mul_identity(self):
        p = np.array([2, 0, 7])
        assert poly_eq(poly_mul(p, np.array([1])), p)

    def test_mul_binomial_square(self):
        assert poly_eq(poly_mul(np.array([1, 1]), np.array([1, 1])), [1, 2, 1])

    def test_rejects_negative_coeff(self):
        with pytest.raises(ValueError):
            poly_add(np.array([-1]), np.array([1]))


class TestSumOfProducts:
    def test_worked_pair(self):
        assert maxplus_sum_of_products([(3, 2), (1, 0)]) == 5

    def test_worked_triple(self):
        assert maxplus_sum_of_products([(3, 0), (7, 2), (6, 1)]) == 9

    def test_neg_inf_absorbs(self):
        assert maxplus_sum_of_products([(NEG_INF, 4), (NEG_INF, NEG_INF)]) == NEG_INF

    def test_single_pair(self):
        assert maxplus_sum_of_products([(4, 1)]) == 5
        assert maxplus_sum_of_products([(NEG_INF, 3)]) == NEG_INF

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            maxplus_sum_of_products([])

    def test_small_exhaustive(self):
        values = [NEG_INF, 0, 1, 2, 3]
        for n in (1, 2):
            for pairs in itertools.product(
                    itertools.product(values, repeat=2), repeat=n):
                expected = max(mp_add(a, b) for a, b in pairs)
                assert maxplus_sum_of_products(list(pairs)) == expected


def random_poly(rng):
    return rng.integers(0, 5, size=int(rng.integers(1, 7)))


class TestHomomorphism:
    def test_degree_laws_randomized(self):
        rng = np.random.default_rng(7)
        for _ in range(500):
            p, q = random_poly(rng), random_poly(rng)
            assert degree(poly_mul(p, q)) == mp_add(degree(p), degree(q))
            assert degree(poly_add(p, q)) == max(degree(p), degree(q))


class TestSemiringLaws:
    def test_laws_randomized(self):
        rng = np.random.default_rng(11)
        zero, one = np.array([0]), np.array([1])
        for _ in range(200):
            p, q, r = (random_poly(rng) for _ in range(3))
            assert poly_eq(poly_add(poly_add(p, q), r), poly_add(p, poly_add(q, r)))
            assert poly_eq(poly_add(p, q), poly_add(q, p))
            assert poly_eq(poly_add(p, zero), p)
            assert poly_eq(poly_mul(poly_mul(p, q), r), poly_mul(p, poly_mul(q, r)))
            assert poly_eq(poly_mul(p, q), poly_mul(q, p))
            assert poly_eq(poly_mul(p, one), p)
            assert poly_eq(poly_mul(p, zero), zero)
            assert poly_eq(poly_mul(p, poly_add(q, r)),
                           poly_add(poly_mul(p, q), poly_mul(p, r)))
