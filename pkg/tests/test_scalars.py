from fractions import Fraction

import pytest
from hypothesis import given

from fischerlab.scalars import I, ONE, ZERO, ComplexRational

from conftest import coeffs


def test_basic_arithmetic():
    a = ComplexRational(1, 2)
    b = ComplexRational(Fraction(1, 2), -1)
    assert a + b == ComplexRational(Fraction(3, 2), 1)
    assert a * b == ComplexRational(Fraction(5, 2), 0)
    assert I * I == -ONE
    assert (a / a) == ONE


def test_real_values_hash_like_fractions():
    assert hash(ComplexRational(Fraction(3, 4))) == hash(Fraction(3, 4))
    assert ComplexRational(2) == 2


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


@given(coeffs, coeffs, coeffs)
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert (a * a.conjugate()).is_real()
    assert a.abs2() == (a * a.conjugate()).re
    if b:
        assert (a / b) * b == a
