from hypothesis import given, strategies as st

from twcount.polynomial import IntPolynomial, format_polynomial

coeff_lists = st.lists(st.integers(-50, 50), max_size=6)


def test_trailing_zeros_stripped():
    assert IntPolynomial([1, 2, 0, 0]).coeffs == (1, 2)
    assert IntPolynomial([0, 0]).degree == -1
    assert IntPolynomial([0]) == IntPolynomial()


def test_arithmetic():
    p = IntPolynomial([-1, 1])  # x - 1
    assert p * p == IntPolynomial([1, -2, 1])
    assert p + 1 == IntPolynomial.monomial(1)
    assert 3 - p == IntPolynomial([4, -1])
    assert p.shift(2) == IntPolynomial([0, 0, -1, 1])
    assert IntPolynomial([5, 3, 2]).derivative() == IntPolynomial([3, 4])


def test_from_roots_and_eval():
    p = IntPolynomial.from_roots([2, -1, -1])
    assert p == IntPolynomial([-2, -3, 0, 1])
    assert p(2) == 0 and p(-1) == 0 and p(0) == -2


def test_format():
    assert format_polynomial((-2, -3, 0, 1)) == "x^3 - 3x - 2"
    assert format_polynomial((-1, 0, 0, 1)) == "x^3 - 1"
    assert format_polynomial(()) == "0"


@given(coeff_lists, coeff_lists, st.integers(-5, 5))
def test_ring_homomorphism_under_evaluation(a, b, x):
    p, q = IntPolynomial(a), IntPolynomial(b)
    assert (p * q)(x) == p(x) * q(x)
    assert (p + q)(x) == p(x) + q(x)
    assert (p - q)(x) == p(x) - q(x)
