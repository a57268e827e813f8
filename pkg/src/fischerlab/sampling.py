"""Seeded random polynomials for property checks and the ``verify`` command."""

from __future__ import annotations

import random
from fractions import Fraction

from .poly import Polynomial, monomials_of_degree
from .scalars import ComplexRational


def random_coefficient(rng: random.Random, complex_coeffs: bool = True, bound: int = 5) -> ComplexRational:
    re = Fraction(rng.randint(-bound, bound), rng.randint(1, 4))
    im = Fraction(rng.randint(-bound, bound), rng.randint(1, 4)) if complex_coeffs else Fraction(0)
    if not re and not im:
        re = Fraction(1)
    return ComplexRational(re, im)


def random_homogeneous(rng: random.Random, dim: int, m: int, n_terms: int | None = None,
                       complex_coeffs: bool = True) -> Polynomial:
    """Nonzero homogeneous polynomial of degree m."""
    basis = monomials_of_degree(dim, m)
    n_terms = rng.randint(1, min(4, len(basis))) if n_terms is None else min(n_terms, len(basis))
    chosen = rng.sample(basis, n_terms)
    return Polynomial(dim, {a: random_coefficient(rng, complex_coeffs) for a in chosen})


def random_polynomial(rng: random.Random, dim: int, max_degree: int, n_terms: int | None = None,
                      complex_coeffs: bool = True) -> Polynomial:
    """Sparse polynomial of degree <= max_degree (may be zero-free but is not forced nonzero)."""
    n_terms = rng.randint(1, 5) if n_terms is None else n_terms
    terms = {}
    for _ in range(n_terms):
        m = rng.randint(0, max_degree)
        alpha = rng.choice(monomials_of_degree(dim, m))
        terms[alpha] = random_coefficient(rng, complex_coeffs)
    return Polynomial(dim, terms)


def random_nonhomogeneous(rng: random.Random, dim: int, k: int, complex_coeffs: bool = True) -> Polynomial:
    """P = P_k + (one to three lower homogeneous parts), degree exactly k >= 1."""
    P = random_homogeneous(rng, dim, k, complex_coeffs=complex_coeffs)
    lower = rng.sample(range(k), rng.randint(1, min(3, k)))
    for beta in lower:
        P = P + random_homogeneous(rng, dim, beta, n_terms=rng.randint(1, 2), complex_coeffs=complex_coeffs)
    return P
