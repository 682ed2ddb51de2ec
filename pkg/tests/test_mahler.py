import math
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import substlyap as sl
from substlyap import IntPolynomial, ZeroPolynomial
from substlyap.mahler import (
    circle_zeros,
    column_difference,
    kronecker_certify,
    mahler_quadrature,
    mahler_roots,
    norm_bounds,
    partition_polynomials,
)

ONE = IntPolynomial([1])
U = IntPolynomial([0, 1])


def scan_column_differences(max_length):
    seen = set()
    for L in range(2, max_length + 1):
        for wa in product("ab", repeat=L):
            for wb in product("ab", repeat=L):
                s = sl.Substitution(("a", "b"), ("".join(wa), "".join(wb)))
                if not sl.is_primitive(s) or sl.classify_columns(s) == sl.DEGENERATE:
                    continue
                diff = column_difference(s)
                if diff.coeffs not in seen:
                    seen.add(diff.coeffs)
                    yield s, diff


class TestPartitionPolynomials:
    def test_thue_morse(self, tm):
        pp = partition_polynomials(sl.column_partition(tm))
        assert pp.coincident_a.is_zero and pp.coincident_b.is_zero
        assert pp.identity == ONE and pp.swap == U
        assert column_difference(tm) == ONE - U  # 1 - u

    def test_period_doubling(self, pd):
        pp = partition_polynomials(sl.column_partition(pd))
        assert pp.coincident_a == ONE and pp.coincident_b.is_zero
        assert pp.identity.is_zero and pp.swap == U
        assert column_difference(pd) == -U  # -u

    def test_length_five_example(self, ex2):
        # id columns {0, 3}, swap columns {1, 2, 4}
        pp = partition_polynomials(sl.column_partition(ex2))
        assert pp.identity == IntPolynomial([1, 0, 0, 1])
        assert pp.swap == IntPolynomial([0, 1, 1, 0, 1])
        assert column_difference(ex2) == IntPolynomial([1, -1, -1, 1, -1])

    def test_supports_are_disjoint_and_complete(self):
        for s, _ in scan_column_differences(4):
            pp = partition_polynomials(sl.column_partition(s))
            total = pp.coincident_a + pp.coincident_b + pp.identity + pp.swap
            assert total == IntPolynomial.geometric(s.length)


class TestMahlerRoots:
    def test_one_minus_u(self):
        res = mahler_roots(ONE - U)
        assert res.value == pytest.approx(0.0, abs=1e-12)
        assert res.is_zero_certified
        assert res.method == "Roots"

    def test_geometric_polynomials(self):
        for L in range(2, 9):
            res = mahler_roots(IntPolynomial.geometric(L))
            assert res.value == pytest.approx(0.0, abs=1e-10)
            assert res.is_zero_certified

    def test_printed_length_five_value(self):
        # the classical value 2 log(1.3562...) ~ 0.60938 belongs to the
        # polynomial u(-1 - u + u^2 - u^3)
        res = mahler_roots(IntPolynomial([0, -1, -1, 1, -1]))
        assert 0.6093 <= res.value <= 0.6095
        assert res.value == pytest.approx(2 * math.log(1.3562), abs=1e-4)
        assert not res.is_zero_certified

    def test_actual_length_five_rule(self, ex2):
        # honest value for abbab/baaba (see also the acceptance notes)
        res = mahler_roots(column_difference(ex2))
        assert res.value == pytest.approx(0.578445, abs=1e-5)

    def test_roots_carry_multiplicity(self):
        f = (ONE - U) * (ONE - U) * (ONE + U)
        res = mahler_roots(f)
        assert len(res.roots) == 3
        ones = sum(1 for z in res.roots if abs(z - 1) < 1e-8)
        assert ones == 2

    def test_constant(self):
        assert mahler_roots(IntPolynomial([7])).value == pytest.approx(math.log(7))

    def test_zero_polynomial(self):
        with pytest.raises(ZeroPolynomial):
            mahler_roots(IntPolynomial.zero())


class TestMahlerQuadrature:
    def test_one_minus_u(self):
        res = mahler_quadrature(ONE - U)
        assert abs(res.value) < 1e-6
        assert res.method == "Quadrature"

    def test_constant_two(self):
        assert mahler_quadrature(IntPolynomial([2])).value == pytest.approx(math.log(2), abs=1e-12)

    def test_agrees_on_printed_polynomial(self):
        f = IntPolynomial([0, -1, -1, 1, -1])
        assert mahler_quadrature(f).value == pytest.approx(mahler_roots(f).value, abs=1e-6)

    def test_agrees_on_scan_differences(self):
        for _, diff in scan_column_differences(4):
            r = mahler_roots(diff).value
            q = mahler_quadrature(diff).value
            assert abs(r - q) < 1e-6, diff.coeffs

    def test_agrees_on_salem_case(self):
        # abbba/baaab: column difference has two irrational-angle circle roots
        s = sl.parse("a->abbba;b->baaab")
        diff = column_difference(s)
        assert circle_zeros(diff)
        assert mahler_quadrature(diff).value == pytest.approx(
            mahler_roots(diff).value, abs=1e-6
        )

    def test_repeated_circle_factor(self):
        f = (ONE - U) * (ONE - U) * (ONE + U + U * U)
        assert abs(mahler_quadrature(f).value) < 1e-6

    def test_node_count_validation(self):
        with pytest.raises(ValueError):
            mahler_quadrature(ONE - U, nodes=1)
        with pytest.raises(ZeroPolynomial):
            mahler_quadrature(IntPolynomial.zero())


class TestKronecker:
    def test_classic_cases(self, ex2):
        assert kronecker_certify(ONE - U)
        assert kronecker_certify(-U)
        assert kronecker_certify(IntPolynomial.monomial(4, -1))
        assert kronecker_certify(IntPolynomial.geometric(6))
        assert not kronecker_certify(IntPolynomial([-1, -1, 1, -1]))
        assert not kronecker_certify(column_difference(ex2))
        assert not kronecker_certify(IntPolynomial([2]))
        assert not kronecker_certify(IntPolynomial([2, -1]))

    def test_repeated_cyclotomic_factors(self):
        f = (ONE - U) * (IntPolynomial([1, 0, 0, -1]))  # (1-u)(1-u^3), repeated (1-u)
        assert kronecker_certify(f)

    def test_salem_not_certified(self):
        assert not kronecker_certify(IntPolynomial([1, -1, -1, -1, 1]))

    def test_certified_implies_tiny_measure(self):
        for _, diff in scan_column_differences(4):
            if kronecker_certify(diff):
                assert mahler_roots(diff).value < 1e-9

    def test_zero_polynomial(self):
        with pytest.raises(ZeroPolynomial):
            kronecker_certify(IntPolynomial.zero())


class TestNormBounds:
    def test_one_minus_u(self):
        l1, l2 = norm_bounds(ONE - U)
        assert l1 == 2.0
        assert l2 == pytest.approx(math.sqrt(2))

    def test_period_doubling(self, pd):
        _, l2 = norm_bounds(column_difference(pd))
        assert l2 == 1.0  # L = 2 with one coincidence

    def test_bijective_rule_parseval(self, tm, ex2):
        for s in (tm, ex2):
            _, l2 = norm_bounds(column_difference(s))
            assert l2 == pytest.approx(math.sqrt(s.length))

    def test_parseval_exact_over_scan(self):
        for s, diff in scan_column_differences(4):
            cp = sl.column_partition(s)
            _, l2 = norm_bounds(diff)
            assert l2 * l2 == pytest.approx(s.length - len(cp.coincidences), abs=1e-12)

    def test_strict_jensen_over_scan(self):
        for _, diff in scan_column_differences(4):
            if diff.is_monomial:
                continue
            l1, _ = norm_bounds(diff)
            assert math.exp(mahler_roots(diff).value) < l1


class TestStructuralProperties:
    def test_monomial_shift_invariance(self):
        for coeffs in ([1, -1], [-1, -1, 1, -1], [2, 0, 3]):
            f = IntPolynomial(coeffs)
            for j in (1, 3):
                assert mahler_roots(f.shift(j)).value == mahler_roots(f).value

    def test_littlewood_oracle_agreement(self):
        rng = np.random.default_rng(20170911)
        for _ in range(25):
            deg = int(rng.integers(1, 13))
            f = IntPolynomial([int(c) for c in rng.choice([-1, 1], size=deg + 1)])
            assert abs(mahler_roots(f).value - mahler_quadrature(f).value) < 1e-6


@settings(deadline=None, max_examples=40)
@given(
    st.lists(st.integers(min_value=-3, max_value=3), min_size=1, max_size=5),
    st.lists(st.integers(min_value=-3, max_value=3), min_size=1, max_size=5),
)
def test_multiplicativity(ca, cb):
    f, g = IntPolynomial(ca), IntPolynomial(cb)
    if f.is_zero or g.is_zero:
        return
    assert mahler_roots(f * g).value == pytest.approx(
        mahler_roots(f).value + mahler_roots(g).value, abs=1e-9
    )
