import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fischerlab import (
    FischerFault,
    Polynomial,
    analyze_structure,
    decompose,
    decompose_series,
    homogeneous_expansion,
    injectivity_check,
    uniqueness_order_bound,
)
from fischerlab.fischer import build_graded_matrix, decompose_homogeneous, diagonal_block, fischer_operator
from fischerlab.poly import apply_operator, conjugate_coefficients
from fischerlab.sampling import random_nonhomogeneous, random_polynomial
from fischerlab.scalars import ComplexRational as C


def test_hand_anchors(z):
    d = decompose(z("z1^2", 1), z("z1^2 + 1", 1))
    assert (d.q, d.r) == (z("1", 1), z("-1", 1))
    d = decompose(z("z1^4", 1), z("z1^2 + 1", 1))
    assert (d.q, d.r) == (z("z1^2 - 1", 1), z("1", 1))
    d = decompose_homogeneous(z("z1^2"), z("z1^2 + z2^2"))
    assert (d.q, d.r) == (z("1/2"), z("1/2*z1^2 - 1/2*z2^2"))


def test_global_method_agrees(z):
    for f in ("z1^4", "z1^5 + 3*z1", "i*z1^3 - 2"):
        a = decompose(z(f, 1), z("z1^2 + 1", 1))
        b = decompose(z(f, 1), z("z1^2 + 1", 1), method="global")
        assert (a.q, a.r) == (b.q, b.r)


def test_low_degree_input_is_its_own_remainder(z):
    d = decompose(z("z1 + 3"), z("z1^2 + z2"))
    assert d.q.is_zero() and d.r == z("z1 + 3")


def test_structure(z):
    st_ = analyze_structure(z("z1^3 + z1*z2 + z1"))
    assert (st_.k, st_.beta1, st_.beta2) == (3, 1, 2)
    assert st_.gaps == {1, 2} and (st_.beta_lower, st_.beta_upper) == (1, 2)
    assert analyze_structure(z("z1*z2")).is_homogeneous
    with pytest.raises(ValueError):
        analyze_structure(z("5"))


def test_diagonal_blocks_one_variable(z):
    P = z("z1^2 + 1", 1)
    assert [diagonal_block(P.principal_part(), m)[0][0] for m in range(3)] == [2, 6, 12]


def test_graded_matrix_reproduces_operator():
    rng = random.Random(11)
    for _ in range(10):
        d = rng.randint(1, 2)
        P = random_nonhomogeneous(rng, d, rng.randint(1, 3))
        q = random_polynomial(rng, d, 3)
        G = build_graded_matrix(P, 3)
        Fq = fischer_operator(P, conjugate_coefficients(P.principal_part()), q)
        for m in range(4):
            assert G.output_slice(q, m) == Fq.homogeneous_part(m)


@given(st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_round_trip_recovers_q_and_r(seed):
    rng = random.Random(seed)
    d = rng.randint(1, 3)
    P = random_nonhomogeneous(rng, d, rng.randint(1, 3))
    g = random_polynomial(rng, d, 2)
    h = decompose(random_polynomial(rng, d, 4), P).r
    dec = decompose(P * g + h, P)
    assert dec.q == g and dec.r == h


@given(st.integers(0, 10**6))
@settings(max_examples=30, deadline=None)
def test_remainder_is_in_kernel(seed):
    rng = random.Random(seed)
    d = rng.randint(1, 3)
    P = random_nonhomogeneous(rng, d, rng.randint(1, 3)) if rng.random() < 0.5 else \
        random_polynomial(rng, d, 3).principal_part()
    if P.is_zero() or P.degree == 0:
        return
    f = random_polynomial(rng, d, 5, n_terms=6)
    dec = decompose(f, P)
    assert apply_operator(conjugate_coefficients(P.principal_part()), dec.r).is_zero()
    assert P * dec.q + dec.r == f


def test_injectivity_full_rank(z):
    rep = injectivity_check(z("z1^2 - z2^2 + z1 + 1"), 6)
    assert rep.full_rank and rep.sizes[6] == 7


def test_decompose_series_final_degrees(z):
    f = homogeneous_expansion(z("z1^6 + z2^5 + z1*z2"), 6)
    s = decompose_series(f, z("z1^2 + z2^2"))
    assert list(s.final_degrees) == [0, 1, 2, 3, 4]
    s = decompose_series(f, z("z1^2 + 1"))
    assert list(s.final_degrees) == []
    s = decompose_series(f, z("z1^2 + 1"), exact_beyond_truncation=True)
    assert list(s.final_degrees) == [0, 1, 2, 3, 4]
    assert s.residual_check and s.reconstruction_check


def test_singular_block_is_a_fault(monkeypatch, z):
    from fischerlab import fischer

    def broken(Pk, m):
        n = len(fischer.monomials_of_degree(Pk.dim, m))
        return tuple(tuple(C(0) for _ in range(n)) for _ in range(n))

    monkeypatch.setattr(fischer, "diagonal_block", broken)
    with pytest.raises(FischerFault):
        decompose(z("z1^4", 1), z("z1^2 + 1", 1))


def test_order_bound():
    b = uniqueness_order_bound(2, 0, 0, 0)
    assert b.rho_max == 2 and b.branch == 1
    b = uniqueness_order_bound(3, 0, 1, 2)
    assert b.branch == 2 and b.rho_max == Fraction(6, 2) and b.in_expected_range
    with pytest.raises(ValueError):
        uniqueness_order_bound(3, 2, 1, 0)
    with pytest.raises(ValueError):
        uniqueness_order_bound(1, 0, 0, 0)
