"""Apolar inner product <P, Q>_a = (Q*(D) P)(0) = sum_alpha alpha! c_alpha conj(d_alpha).

Norms are kept squared so that everything stays in exact rational arithmetic.
Square roots appear only in the certified upper bound (rational interval
endpoints) and in float-reporting helpers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .poly import (
    DimensionError,
    MultiIndex,
    Polynomial,
    apply_operator,
    conjugate_coefficients,
    mi_factorial,
    monomials_of_degree,
    multiply,
)
from .scalars import ZERO, ComplexRational


@dataclass(frozen=True)
class ApolarScale:
    """Diagonal Gram matrix of the degree-m monomial basis: <z^a, z^a>_a = a!."""

    dim: int
    degree: int
    weights: dict[MultiIndex, int]


def apolar_scale(dim: int, m: int) -> ApolarScale:
    return ApolarScale(dim, m, {a: mi_factorial(a) for a in monomials_of_degree(dim, m)})


def apolar_inner(P: Polynomial, Q: Polynomial) -> ComplexRational:
    """Linear in P, conjugate-linear in Q."""
    if P.dim != Q.dim:
        raise DimensionError(f"dimension mismatch: {P.dim} vs {Q.dim}")
    if len(P) > len(Q):
        small, large, flip = Q, P, True
    else:
        small, large, flip = P, Q, False
    total = ZERO
    for alpha, c in small.items():
        d = large.coeff(alpha)
        if d:
            pc, qc = (d, c) if flip else (c, d)
            total = total + pc * qc.conjugate() * mi_factorial(alpha)
    return total


def apolar_inner_via_operator(P: Polynomial, Q: Polynomial) -> ComplexRational:
    """Same value computed literally as (Q*(D) P)(0); used as a cross-check."""
    return apply_operator(conjugate_coefficients(Q), P).constant_term()


def apolar_norm_sq(f: Polynomial) -> Fraction:
    return sum((c.abs2() * mi_factorial(a) for a, c in f.items()), Fraction(0))


def apolar_norm(f: Polynomial) -> float:
    return math.sqrt(apolar_norm_sq(f))


@dataclass(frozen=True)
class AdjointCheck:
    lhs: ComplexRational
    rhs: ComplexRational
    residual: ComplexRational

    @property
    def holds(self) -> bool:
        return not self.residual


def verify_adjoint(f: Polynomial, g: Polynomial, Q: Polynomial) -> AdjointCheck:
    """Check <Q*(D) f, g>_a == <f, Q g>_a exactly."""
    lhs = apolar_inner(apply_operator(conjugate_coefficients(Q), f), g)
    rhs = apolar_inner(f, multiply(Q, g))
    return AdjointCheck(lhs, rhs, lhs - rhs)


def sqrt_upper(x: Fraction, bits: int = 64) -> Fraction:
    """Rational u with u >= sqrt(x), within about 2^-bits relative."""
    if x < 0:
        raise ValueError("sqrt of negative number")
    if x == 0:
        return Fraction(0)
    p, q = x.numerator, x.denominator
    # sqrt(p/q) = sqrt(p*q)/q; scale so the integer root carries `bits` bits
    shift = max(0, bits - (p * q).bit_length() // 2)
    n = p * q << (2 * shift)
    r = math.isqrt(n)
    if r * r != n:
        r += 1
    return Fraction(r, q << shift)


def coefficient_weight_sum_upper(P: Polynomial, bits: int = 64) -> Fraction:
    """Certified rational upper bound on sum_alpha |c_alpha| sqrt(alpha!)."""
    return sum((sqrt_upper(c.abs2() * mi_factorial(a), bits) for a, c in P.items()), Fraction(0))


def coefficient_weight_sum(P: Polynomial) -> float:
    return sum(math.sqrt(c.abs2() * mi_factorial(a)) for a, c in P.items())


def beauzamy_bound(P: Polynomial, f_m: Polynomial) -> Fraction:
    """Squared upper bound ||f_m||_a^2 (1+m)^k (sum |c_alpha| sqrt(alpha!))^2 for ||P f_m||_a^2.

    P and f_m must be homogeneous. The coefficient sum is replaced by a
    rational upper bound, so ``apolar_norm_sq(P*f_m) <= result`` is a
    genuine certificate.
    """
    if P.dim != f_m.dim:
        raise DimensionError("dimension mismatch")
    if not P.is_homogeneous() or not f_m.is_homogeneous():
        raise ValueError("beauzamy_bound needs homogeneous P and f_m")
    if f_m.is_zero() or P.is_zero():
        return Fraction(0)
    k, m = P.degree, f_m.degree
    s = coefficient_weight_sum_upper(P)
    return apolar_norm_sq(f_m) * (1 + m) ** k * s * s


def slice_norm_ratio(f_m: Polynomial, sup_est: float) -> float:
    """||f_m||_a / (sqrt((m+d-1)!) * sup_est).

    ``sup_est`` estimates max |f_m| over the unit sphere of C^d.
    """
    if not sup_est > 0:
        raise ValueError("sup_est must be positive")
    if f_m.is_zero():
        raise ValueError("ratio undefined for the zero polynomial")
    if not f_m.is_homogeneous():
        raise ValueError("f_m must be homogeneous")
    m, d = f_m.degree, f_m.dim
    log_ratio = 0.5 * math.log(apolar_norm_sq(f_m)) - 0.5 * math.lgamma(m + d) - math.log(sup_est)
    return math.exp(log_ratio)
