from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from intgeo.scalars import (InexactDivision, LambdaScalar, Scalar,
                            UnsupportedInverse, alpha, binomial, omega)

fractions = st.fractions(min_value=-1000, max_value=1000, max_denominator=100)
scalars = st.dictionaries(st.integers(-4, 4), fractions, max_size=4).map(Scalar)


def test_omega_examples():
    assert omega(0) == Scalar.one()
    assert omega(2) == Scalar.pi_power(1)
    assert omega(3) == Scalar.pi_power(1, Fraction(4, 3))
    assert omega(1) == Scalar.from_rational(2)
    assert omega(4) == Scalar.pi_power(2, Fraction(1, 2))


def test_alpha_examples():
    assert alpha(1) == Scalar.pi_power(1, 2)
    assert alpha(0) == Scalar.from_rational(2)
    assert alpha(3) == Scalar.pi_power(2, 2)


def test_omega_lands_in_integer_pi_powers():
    for k in range(30):
        s = omega(k)
        assert list(s.terms) == [k // 2]


def test_arithmetic_examples():
    pi = Scalar.pi_power(1)
    assert pi * pi.inverse() == Scalar.one()
    x = Scalar({0: Fraction(1, 2), 1: Fraction(1)})
    y = Scalar({0: Fraction(1, 2), 1: Fraction(-1)})
    assert x + y == Scalar.one()
    assert omega(2) * omega(2) == Scalar.pi_power(2) == omega(4) * 2


def test_product_identity_to_50():
    import math
    for n in range(51):
        assert omega(n) * omega(n + 1) == Scalar.pi_power(
            n, Fraction(2 ** (n + 1), math.factorial(n + 1)))


def test_ratio_identity_to_50():
    for n in range(2, 51):
        assert omega(n).exact_div(omega(n - 2)) == Scalar.pi_power(1, Fraction(2, n))


def test_inverse_errors():
    with pytest.raises(ZeroDivisionError):
        Scalar.zero().inverse()
    with pytest.raises(UnsupportedInverse):
        (Scalar.one() + Scalar.pi_power(1)).inverse()


def test_exact_division():
    a = Scalar({0: Fraction(1), 1: Fraction(2), 2: Fraction(1)})
    b = Scalar({0: Fraction(1), 1: Fraction(1)})
    assert a.exact_div(b) == b
    with pytest.raises(InexactDivision):
        (Scalar.one() + Scalar.pi_power(2)).exact_div(b)


@given(scalars, scalars, scalars)
@settings(max_examples=60, deadline=None)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@given(st.dictionaries(st.integers(-4, 4), st.fractions(min_value=-100, max_value=100, max_denominator=50), max_size=5))
@settings(max_examples=60, deadline=None)
def test_canonical_idempotence(terms):
    once = Scalar(terms)
    twice = Scalar(once.terms)
    assert once == twice
    assert all(c != 0 for c in once.terms.values())


@given(scalars)
@settings(max_examples=60, deadline=None)
def test_serialization_round_trip(s):
    assert Scalar.from_json(s.to_json()) == s


def test_serialization_schema():
    doc = Scalar.pi_power(-1, 2).to_json()
    assert doc == {"terms": [{"pi_pow": -1, "num": "2", "den": "1"}]}


def test_binomial_convention():
    assert binomial(5, 2) == 10
    assert binomial(5, -1) == 0
    assert binomial(2, 5) == 0
    assert binomial(-1, 0) == 0


def test_lambda_scalar_arithmetic():
    lam = LambdaScalar.lam_power(1)
    a = LambdaScalar.one() + lam * 3
    b = a * a
    assert b == LambdaScalar({0: Fraction(1), 1: Fraction(6), 2: Fraction(9)})
    assert b.substitute(Fraction(1, 3)) == Scalar.from_rational(4)
    assert b.exact_div(a) == a
    with pytest.raises(InexactDivision):
        (LambdaScalar.one() + lam).exact_div(lam)
