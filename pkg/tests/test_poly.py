from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fischerlab import GradedSeries, Polynomial, homogeneous_expansion
from fischerlab.poly import (
    NEG_INF_DEGREE,
    DimensionError,
    apply_operator,
    conjugate_coefficients,
    falling_factorial,
    graded_product_slice,
    homogeneous_dimension,
    mi_factorial,
    monomials_of_degree,
)
from fischerlab.scalars import I

from conftest import polynomials


def test_monomial_enumeration_is_grlex_and_complete():
    assert monomials_of_degree(2, 2) == ((2, 0), (1, 1), (0, 2))
    for d in range(1, 4):
        for m in range(6):
            assert len(monomials_of_degree(d, m)) == homogeneous_dimension(d, m)


def test_factorials():
    assert mi_factorial((3, 2)) == 12
    assert falling_factorial(5, 2) == 20
    assert falling_factorial(2, 3) == 0


def test_zero_degree_sentinel():
    zero = Polynomial.zero(2)
    assert zero.degree is NEG_INF_DEGREE
    assert NEG_INF_DEGREE < 0
    with pytest.raises(TypeError):
        NEG_INF_DEGREE + 1


def test_dimension_mismatch(z):
    with pytest.raises(DimensionError):
        z("z1", 1) + z("z1", 2)
    with pytest.raises(DimensionError):
        Polynomial(2, {(1,): 1})


def test_principal_and_homogeneous_parts(z):
    P = z("z1^3 + z1*z2 + z1")
    assert P.degree == 3 and P.low_degree() == 1
    assert P.principal_part() == z("z1^3")
    assert P.homogeneous_part(2) == z("z1*z2")
    assert not P.is_homogeneous() and z("z1*z2 - z2^2").is_homogeneous(2)


def test_apply_operator_examples(z):
    # D1^2 (z1^3 z2) = 6 z1 z2 ; (i D2) z2^2 = 2i z2
    assert apply_operator(z("z1^2"), z("z1^3*z2")) == z("6*z1*z2")
    assert apply_operator(z("i*z2"), z("z2^2")) == z("2 i*z2")
    assert apply_operator(z("z1^4"), z("z1^3")).is_zero()


def test_evaluate(z):
    assert z("z1^2 + i*z2").evaluate([2, 3]) == 4 + 3 * I


def test_graded_series_rejects_wrong_degree(z):
    with pytest.raises(ValueError):
        GradedSeries(2, (z("1"), z("z1^2")))


def test_graded_product_slice(z):
    P = z("z1^2 + 1")
    phi = homogeneous_expansion(z("z1 + z2^3"), 3)
    assert graded_product_slice(P, phi, 3) == z("z1^3 + z2^3")


@given(polynomials(), polynomials(), polynomials())
def test_ring_laws(f, g, h):
    if not (f.dim == g.dim == h.dim):
        return
    assert (f + g) * h == f * h + g * h
    assert f * g == g * f
    assert (f - f).is_zero()


@given(st.integers(1, 3).flatmap(lambda d: st.tuples(polynomials(dim=d), polynomials(dim=d), polynomials(dim=d))))
@settings(max_examples=60)
def test_operator_calculus_is_a_ring_action(fgh):
    Q1, Q2, f = fgh
    # (Q1 Q2)(D) = Q1(D) Q2(D)
    assert apply_operator(Q1 * Q2, f) == apply_operator(Q1, apply_operator(Q2, f))
    assert conjugate_coefficients(conjugate_coefficients(f)) == f


@given(polynomials())
def test_homogeneous_expansion_round_trip(f):
    s = homogeneous_expansion(f)
    assert s.to_polynomial() == f
    for m, sl in enumerate(s.slices):
        assert sl.is_homogeneous(m)


def test_power_and_scale(z):
    assert z("z1 + z2") ** 2 == z("z1^2 + 2*z1*z2 + z2^2")
    assert z("z1").scale(Fraction(1, 2)) == z("1/2*z1")
