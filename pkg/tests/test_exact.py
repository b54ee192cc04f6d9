from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from quandlebench.exact import (ONE, PHI, PHI_INV, SQRT5, ZERO, ZETA, Eisenstein, ExactMatrix, QSqrt5,
                                vector)

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=40)
qs = st.builds(QSqrt5, fractions, fractions)
eis = st.builds(Eisenstein, st.integers(-40, 40), st.integers(-40, 40))


def oracle(x: QSqrt5):
    return sympy.Rational(x.a.numerator, x.a.denominator) + sympy.Rational(x.b.numerator, x.b.denominator) * sympy.sqrt(5)


# pinned examples

def test_golden_ratio_identities():
    assert PHI * PHI == PHI + 1
    assert PHI.inverse() == PHI - 1 == PHI_INV


def test_sign_is_exact():
    assert QSqrt5(1, -1).sign() == -1
    assert QSqrt5(-2, 1).sign() == 1      # sqrt5 > 2
    assert QSqrt5(Fraction(9, 4), -1).sign() == 1  # 9/4 > sqrt5 since 81/16 > 5
    assert ZERO.sign() == 0


def test_sqrt_exact_or_refused():
    assert (PHI * PHI).sqrt() == PHI
    assert QSqrt5(5).sqrt() == SQRT5
    with pytest.raises(ValueError):
        QSqrt5(2).sqrt()
    with pytest.raises(ValueError):
        QSqrt5(-1).sqrt()


def test_eisenstein_examples():
    assert ZETA * ZETA == ZETA - 1
    assert ZETA ** 6 == Eisenstein(1, 0)
    u = 1 - ZETA
    assert u * u.conjugate() == Eisenstein(1, 0)
    assert u.norm() == 1


def test_matrix_examples():
    assert ExactMatrix.identity(3) @ ExactMatrix.identity(3) == ExactMatrix.identity(3)
    assert ExactMatrix.identity(4).is_special_orthogonal()
    swap = ExactMatrix.permutation([0, 2, 1, 3])
    assert swap.is_orthogonal() and not swap.is_special_orthogonal()
    assert swap.determinant() == -1
    cyc = ExactMatrix.permutation([1, 2, 0])
    assert cyc.is_special_orthogonal()
    assert cyc.order() == 3
    assert cyc.apply(vector([1, 2, 3])) in (vector([2, 3, 1]), vector([3, 1, 2]))


def test_json_round_trip():
    x = QSqrt5(Fraction(-3, 7), Fraction(5, 2))
    assert QSqrt5.from_json(x.to_json()) == x


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


# field axioms against sympy

@settings(max_examples=1000)
@given(qs, qs, qs)
def test_field_axioms(x, y, z):
    assert x + y == y + x and x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + ZERO == x and x * ONE == x
    assert x - x == ZERO
    if x != ZERO:
        assert x * x.inverse() == ONE


@settings(max_examples=300)
@given(qs, qs)
def test_agrees_with_sympy(x, y):
    assert sympy.simplify(oracle(x * y) - oracle(x) * oracle(y)) == 0
    assert sympy.simplify(oracle(x + y) - oracle(x) - oracle(y)) == 0
    d = oracle(x) - oracle(y)
    expected = 0 if d == 0 else (1 if d.is_positive else -1)
    assert (x - y).sign() == expected
    assert (x < y) == (expected < 0)


@settings(max_examples=1000)
@given(eis, eis, eis)
def test_eisenstein_ring_axioms(x, y, z):
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x * y).norm() == x.norm() * y.norm()
    # multiplication by zeta is a bijection of the lattice
    assert ZETA * (ZETA.conjugate() * x) == x


@settings(max_examples=200)
@given(eis)
def test_eisenstein_matches_complex(x):
    zeta = complex(0.5, 3 ** 0.5 / 2)
    val = lambda e: e.a + e.b * zeta
    assert abs(val(ZETA * x) - zeta * val(x)) < 1e-9
    assert abs(abs(val(x)) ** 2 - x.norm()) < 1e-6
