import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from substlyap import IntPolynomial, ZeroPolynomial

small_polys = st.lists(st.integers(min_value=-5, max_value=5), min_size=1, max_size=8).map(
    IntPolynomial
)


def test_trailing_zeros_trimmed():
    p = IntPolynomial([1, 2, 0, 0])
    assert p.coeffs == (1, 2)
    assert p.degree == 1


def test_zero_polynomial():
    z = IntPolynomial([0, 0])
    assert z.is_zero
    assert z.degree == -1
    assert not z


def test_arithmetic():
    p = IntPolynomial([1, -1])  # 1 - u
    q = IntPolynomial([1, 1])  # 1 + u
    assert (p * q).coeffs == (1, 0, -1)
    assert (p + q).coeffs == (2,)
    assert (p - q).coeffs == (0, -2)
    assert (-p).coeffs == (-1, 1)
    assert (3 * p).coeffs == (3, -3)


def test_geometric_and_support():
    assert IntPolynomial.geometric(4).coeffs == (1, 1, 1, 1)
    assert IntPolynomial.from_support({0, 2}).coeffs == (1, 0, 1)
    assert IntPolynomial.from_support(()).is_zero
    assert IntPolynomial.monomial(3, -1).coeffs == (0, 0, 0, -1)


def test_monomial_split():
    j, f0 = IntPolynomial([0, 0, 2, -1]).monomial_split()
    assert j == 2 and f0.coeffs == (2, -1)
    with pytest.raises(ZeroPolynomial):
        IntPolynomial.zero().monomial_split()


def test_is_monomial():
    assert IntPolynomial([0, 0, 5]).is_monomial
    assert not IntPolynomial([1, 1]).is_monomial
    assert not IntPolynomial.zero().is_monomial


def test_derivative():
    assert IntPolynomial([3, 1, 4, 1]).derivative().coeffs == (1, 8, 3)


def test_exact_division():
    p = IntPolynomial([1, -1]) * IntPolynomial([1, 1, 1])
    assert p.exact_div(IntPolynomial([1, -1])).coeffs == (1, 1, 1)
    assert IntPolynomial([1, 1, 1]).divides(p)
    assert not IntPolynomial([1, 1]).divides(p)
    with pytest.raises(ValueError):
        p.exact_div(IntPolynomial([1, 1]))


def test_gcd():
    a = IntPolynomial([1, -1]) * IntPolynomial([1, 1])  # u^2 - 1 times -1
    b = IntPolynomial([1, -1]) * IntPolynomial([1, 0, 1])
    g = a.gcd(b)
    assert g.coeffs in ((-1, 1), (1, -1))
    assert g.leading > 0


def test_squarefree_decomposition():
    f = IntPolynomial([1, -1]) * IntPolynomial([1, -1]) * IntPolynomial([1, 1, 1]) * 6
    unit, factors = f.squarefree_decomposition()
    assert unit == 6
    rebuilt = IntPolynomial([unit])
    for h, mult in factors:
        for _ in range(mult):
            rebuilt = rebuilt * h
    assert rebuilt.coeffs == f.coeffs or (-rebuilt).coeffs == f.coeffs
    mult_of = {h.coeffs: e for h, e in factors}
    assert mult_of[(-1, 1)] == 2 or mult_of.get((1, -1)) == 2


def test_evaluation_matches_numpy():
    p = IntPolynomial([2, 0, -3, 1])
    z = 0.7 + 0.2j
    assert p(z) == pytest.approx(np.polyval([1, -3, 0, 2], z))
    ks = np.linspace(0, 1, 7)
    vals = p.on_circle(ks)
    assert vals.shape == (7,)
    assert vals[0] == pytest.approx(p(1.0))


def test_immutability_and_hash():
    p = IntPolynomial([1, 2])
    with pytest.raises(AttributeError):
        p.coeffs = (3,)
    assert hash(p) == hash(IntPolynomial([1, 2, 0]))
    assert p == IntPolynomial([1, 2])
    assert IntPolynomial([5]) == 5


@settings(deadline=None, max_examples=60)
@given(small_polys, small_polys)
def test_product_degree_and_commutativity(p, q):
    assert p * q == q * p
    if not p.is_zero and not q.is_zero:
        assert (p * q).degree == p.degree + q.degree


@settings(deadline=None, max_examples=60)
@given(small_polys, small_polys)
def test_gcd_divides_both(p, q):
    if p.is_zero or q.is_zero:
        return
    g = p.gcd(q)
    assert g.divides(p) and g.divides(q)
