from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from intgeo.linalg import (SingularMatrixError, identity, invert_exact,
                           kernel_basis, mat_mul, rref)
from intgeo.scalars import Scalar

F0, F1 = Fraction(0), Fraction(1)


def test_identity_inverse():
    eye = identity(3, F1, F0)
    assert invert_exact(eye, F1, F0) == eye


def test_scalar_one_by_one():
    m = [[Scalar.pi_power(-1, 2)]]
    inv = invert_exact(m, Scalar.one(), Scalar.zero())
    assert inv == [[Scalar.pi_power(1, Fraction(1, 2))]]


def test_singular_raises():
    with pytest.raises(SingularMatrixError):
        invert_exact([[F1, F1], [F1, F1]], F1, F0)


@given(st.lists(st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=4),
                         min_size=4, max_size=4), min_size=4, max_size=4))
@settings(max_examples=40, deadline=None)
def test_random_inverse(rows):
    try:
        inv = invert_exact(rows, F1, F0)
    except SingularMatrixError:
        return
    assert mat_mul(rows, inv, F0) == identity(4, F1, F0)
    assert mat_mul(inv, rows, F0) == identity(4, F1, F0)


def test_scalar_entry_inverse():
    m = [[Scalar.pi_power(1), Scalar.one()],
         [Scalar.zero(), Scalar.pi_power(-1, 3)]]
    inv = invert_exact(m, Scalar.one(), Scalar.zero())
    prod = mat_mul(m, inv, Scalar.zero())
    assert prod == identity(2, Scalar.one(), Scalar.zero())


def test_rref_and_kernel():
    rows = [[F1, Fraction(2), Fraction(3)],
            [Fraction(2), Fraction(4), Fraction(6)]]
    reduced, pivots = rref(rows, 3)
    assert pivots == [0]
    assert reduced == [[F1, Fraction(2), Fraction(3)]]
    kern = kernel_basis(rows, 3)
    assert len(kern) == 2
    for v in kern:
        assert all(sum(r[i] * v[i] for i in range(3)) == 0 for r in rows)


def test_lambda_polynomial_inverse():
    from intgeo.scalars import LambdaScalar
    lam = LambdaScalar.lam_power(1)
    one = LambdaScalar.one()
    zero = LambdaScalar.zero()
    m = [[one, lam], [zero, one]]
    inv = invert_exact(m, one, zero)
    assert inv == [[one, zero - lam], [zero, one]]
    # the product of two triangular unimodular matrices stays invertible
    # over the polynomial ring (unit determinant)
    twist = [[one, lam * lam], [lam, one + lam * lam * lam]]
    inv2 = invert_exact(twist, one, zero)
    assert mat_mul(twist, inv2, zero) == identity(2, one, zero)
