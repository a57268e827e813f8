"""Exact identity suite behind ``fischerlab verify``."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .apolar import apolar_inner, apolar_norm_sq, beauzamy_bound, verify_adjoint
from .fischer import decompose, decompose_homogeneous
from .poly import Polynomial, mi_factorial, monomials_of_degree, multiply
from .sampling import random_homogeneous, random_nonhomogeneous, random_polynomial
from .textio import parse_expression


@dataclass
class CheckResult:
    name: str
    passed: bool
    cases: int
    detail: str = ""


def check_monomial_apolar(max_degree: int = 4, max_dim: int = 2) -> CheckResult:
    cases, bad = 0, []
    for d in range(1, max_dim + 1):
        monos = [a for m in range(max_degree + 1) for a in monomials_of_degree(d, m)]
        for a in monos:
            for b in monos:
                v = apolar_inner(Polynomial.monomial(a), Polynomial.monomial(b))
                want = mi_factorial(a) if a == b else 0
                cases += 1
                if v != want:
                    bad.append((a, b))
    return CheckResult("monomial_apolar", not bad, cases, f"mismatches: {bad[:3]}" if bad else "")


def check_adjoint(rng: random.Random, n: int = 50) -> CheckResult:
    bad = 0
    for _ in range(n):
        d = rng.randint(1, 3)
        f, g, Q = (random_polynomial(rng, d, 5) for _ in range(3))
        if not verify_adjoint(f, g, Q).holds:
            bad += 1
    return CheckResult("adjoint_identity", bad == 0, n, f"{bad} nonzero residuals" if bad else "")


def check_beauzamy(rng: random.Random, n: int = 50) -> CheckResult:
    bad = 0
    for _ in range(n):
        d = rng.randint(1, 3)
        P = random_homogeneous(rng, d, rng.randint(0, 3))
        f = random_homogeneous(rng, d, rng.randint(0, 4))
        if apolar_norm_sq(multiply(P, f)) > beauzamy_bound(P, f):
            bad += 1
    return CheckResult("beauzamy_bound", bad == 0, n, f"{bad} violations" if bad else "")


def check_round_trips(rng: random.Random, n: int = 20) -> CheckResult:
    bad = 0
    for _ in range(n):
        d = rng.randint(1, 3)
        P = random_nonhomogeneous(rng, d, rng.randint(1, 3))
        g = random_polynomial(rng, d, 2)
        h = decompose(random_polynomial(rng, d, 4), P).r
        dec = decompose(P * g + h, P)
        if not (dec.q == g and dec.r == h and dec.residual_check and dec.reconstruction_check):
            bad += 1
    return CheckResult("decomposition_round_trip", bad == 0, n, f"{bad} mismatches" if bad else "")


def check_anchors() -> CheckResult:
    p = parse_expression
    ok = True
    d1 = decompose(p("z1^2", 1), p("z1^2 + 1", 1))
    ok &= d1.q == p("1", 1) and d1.r == p("-1", 1)
    d2 = decompose(p("z1^4", 1), p("z1^2 + 1", 1))
    ok &= d2.q == p("z1^2 - 1", 1) and d2.r == p("1", 1)
    d3 = decompose_homogeneous(p("z1^2", 2), p("z1^2 + z2^2", 2))
    ok &= d3.q == p("1/2", 2) and d3.r == p("1/2*z1^2 - 1/2*z2^2", 2)
    return CheckResult("hand_anchors", bool(ok), 3)


def run_identity_suite(seed: int = 0) -> list[CheckResult]:
    rng = random.Random(seed)
    return [
        check_monomial_apolar(),
        check_adjoint(rng),
        check_beauzamy(rng),
        check_round_trips(rng),
        check_anchors(),
    ]
