"""Acceptance gate: one test per criterion, each reporting a PASS/FAIL line.

The lines are collected into the terminal summary (section "acceptance
criteria") and also echoed to stdout.
"""

import math
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE_LINES
from fischerlab import (
    GradedSeries,
    Polynomial,
    apolar_inner,
    apolar_norm_sq,
    beauzamy_bound,
    decompose,
    growth_report,
    injectivity_check,
    ks_scan,
    parse_expression,
    uniqueness_order_bound,
    verify_adjoint,
)
from fischerlab.fischer import decompose_homogeneous
from fischerlab.growth import stirling_bounds_exact
from fischerlab.poly import mi_factorial, monomials_of_degree, multiply
from fischerlab.sampling import random_homogeneous, random_nonhomogeneous, random_polynomial
from fischerlab.seqlemma import (
    BOUNDARY,
    INCONCLUSIVE,
    NEGATIVE,
    NONNEG_STRICT,
    LemmaConfig,
    classify_regime,
    limit_probe,
)


@contextmanager
def criterion(n, title, time_limit=None):
    start = time.perf_counter()
    info = {}
    ok = False
    try:
        yield info
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        if ok and time_limit is not None and elapsed >= time_limit:
            ok = False
            info["runtime"] = f"exceeded {time_limit} s"
        detail = ", ".join(f"{k}={v}" for k, v in info.items())
        line = f"[{'PASS' if ok else 'FAIL'}] {n:2d}. {title} ({elapsed:.2f} s{'; ' + detail if detail else ''})"
        ACCEPTANCE_LINES[n] = line
        print(line)
    if not ok:
        pytest.fail(f"criterion {n}: {info.get('runtime')}")


def test_01_monomial_apolar_values():
    with criterion(1, "monomial apolar values, |a|,|b| <= 6, d <= 3", time_limit=5) as info:
        pairs = 0
        for d in (1, 2, 3):
            monos = [a for m in range(7) for a in monomials_of_degree(d, m)]
            polys = [Polynomial.monomial(a) for a in monos]
            for a, pa in zip(monos, polys):
                for b, pb in zip(monos, polys):
                    assert apolar_inner(pa, pb) == (mi_factorial(a) if a == b else 0)
                    pairs += 1
        info["pairs"] = pairs


def test_02_adjoint_identity():
    with criterion(2, "adjoint identity, 500 random triples") as info:
        rng = random.Random(2)
        for _ in range(500):
            d = rng.randint(1, 3)
            f, g, Q = (random_polynomial(rng, d, 5) for _ in range(3))
            assert verify_adjoint(f, g, Q).residual == 0
        info["triples"] = 500


def test_03_decomposition_round_trip():
    with criterion(3, "decomposition round trip, 200 random (P, g, h)", time_limit=60) as info:
        rng = random.Random(3)
        for _ in range(200):
            d = rng.randint(1, 3)
            P = random_nonhomogeneous(rng, d, rng.randint(1, 4))
            g = random_polynomial(rng, d, 2)
            h = decompose(random_polynomial(rng, d, P.degree + 1), P).r
            dec = decompose(P * g + h, P)
            assert dec.q == g and dec.r == h
        info["cases"] = 200


def test_04_injectivity_full_rank():
    with criterion(4, "diagonal blocks full rank, 50 random P, degrees <= 8") as info:
        rng = random.Random(4)
        blocks = 0
        for _ in range(50):
            d = rng.randint(1, 3)
            P = random_nonhomogeneous(rng, d, rng.randint(1, 4))
            rep = injectivity_check(P, 8)
            assert rep.full_rank, rep.violations
            blocks += len(rep.sizes)
        info["blocks"] = blocks


def test_05_hand_anchors():
    with criterion(5, "hand-verified anchors"):
        p = parse_expression
        d = decompose(p("z1^2", 1), p("z1^2 + 1", 1))
        assert (d.q, d.r) == (p("1", 1), p("-1", 1))
        d = decompose(p("z1^4", 1), p("z1^2 + 1", 1))
        assert (d.q, d.r) == (p("z1^2 - 1", 1), p("1", 1))
        d = decompose_homogeneous(p("z1^2", 2), p("z1^2 + z2^2", 2))
        assert (d.q, d.r) == (p("1/2", 2), p("1/2*z1^2 - 1/2*z2^2", 2))


def test_06_ks_closed_form():
    with criterion(6, "KS scan of z1^k, d = 2, m in [0, 8]", time_limit=30) as info:
        for k in (1, 2, 3):
            rep = ks_scan(parse_expression(f"z1^{k}", 2), 0, 8)
            target = math.sqrt(math.factorial(k))
            err = max(abs(u - target) for u in rep.mu)
            assert err <= 1e-8
            assert abs(rep.tau_fit) <= 0.05
            info[f"k{k}_err"] = f"{err:.1e}"


def test_07_beauzamy_bound():
    with criterion(7, "Beauzamy bound on 500 homogeneous pairs") as info:
        rng = random.Random(7)
        for _ in range(500):
            d = rng.randint(1, 3)
            P = random_homogeneous(rng, d, rng.randint(0, 4))
            f = random_homogeneous(rng, d, rng.randint(0, 5))
            assert apolar_norm_sq(multiply(P, f)) <= beauzamy_bound(P, f)
        info["violations"] = 0


def test_08_order_bound_arithmetic():
    with criterion(8, "order bound arithmetic and branch ranges, 10^4 sweep") as info:
        assert uniqueness_order_bound(2, 0, 0, 0).rho_max == 2
        rng = random.Random(8)
        branches = {1: 0, 2: 0}
        for _ in range(10_000):
            k = rng.randint(2, 12)
            beta1 = rng.randint(0, k - 1)
            beta2 = rng.randint(beta1, k - 1)
            tau = Fraction(rng.randint(0, 60 * (k - 1)), 60)
            b = uniqueness_order_bound(k, beta1, beta2, tau)
            if b.branch == 1:
                assert Fraction(2, k) <= b.rho_max <= 2
            else:
                assert 2 < b.rho_max <= 2 * k
            branches[b.branch] += 1
        info["branch1"], info["branch2"] = branches[1], branches[2]


def _exp_series(power, M):
    slices = [Polynomial(1, {(m,): Fraction(1, math.factorial(m // power))}) if m % power == 0
              else Polynomial.zero(1) for m in range(M + 1)]
    return GradedSeries(1, tuple(slices))


def test_09_order_estimator():
    with criterion(9, "order estimates of exp(z1), exp(z1^2), polynomials", time_limit=30) as info:
        rho1 = growth_report(_exp_series(1, 100), 100).rho_est
        rho2 = growth_report(_exp_series(2, 100), 100).rho_est
        info["exp_z1"], info["exp_z1sq"] = f"{rho1:.4f}", f"{rho2:.4f}"
        assert 0.95 <= rho1 <= 1.05
        assert 1.9 <= rho2 <= 2.1
        rng = random.Random(9)
        for _ in range(5):
            d = rng.randint(1, 3)
            f = random_polynomial(rng, d, 6, n_terms=6)
            s = GradedSeries.from_polynomial(f, 20)
            assert growth_report(s, 20, samples=256).rho_est == 0


def test_10_stirling_sandwich():
    with criterion(10, "Stirling bounds bracket m!, m in [1, 20]"):
        for m in range(1, 21):
            lo, hi = stirling_bounds_exact(m, digits=30)
            assert lo <= math.factorial(m) <= hi


def _applying_config(rng):
    E = set(rng.sample(range(1, 6), rng.randint(1, 3)))
    lo, hi = min(E), max(E)
    D = rng.uniform(0, 2)
    if rng.random() < 0.5:
        sigma = rng.uniform(0.2, 10)
        alpha = rng.uniform(0, 0.9) * lo / sigma
    else:
        sigma = rng.choice([1, -1]) * rng.uniform(0.2, 10)
        bound = min(0.0, hi / sigma)
        alpha = bound - rng.uniform(0.1, 1.0) * (abs(bound) + 1)
    return LemmaConfig(E, A=rng.uniform(1, 5), D=D, alpha=alpha, sigma=sigma)


def test_11_lemma_classifier_and_probe():
    with criterion(11, "lemma classifier and limit probe") as info:
        rng = random.Random(11)
        seen = {NONNEG_STRICT: 0, NEGATIVE: 0}
        for _ in range(100):
            cfg = _applying_config(rng)
            regime = classify_regime(cfg).regime
            assert regime in seen
            seen[regime] += 1
            tr = limit_probe(cfg, m=1, j_max=200)
            assert all(s < 0 for s in tr.slopes.values()), (cfg, tr.slopes)
        info.update(seen)
        b0, lo, sigma = 2.0, 2, 8.0
        edge = dict(E={2, 3}, alpha=lo / sigma, sigma=sigma, b0=b0)
        assert classify_regime(LemmaConfig(A=b0 ** lo, **edge)).regime == INCONCLUSIVE
        assert classify_regime(LemmaConfig(A=5.0, **edge)).regime == INCONCLUSIVE
        assert classify_regime(LemmaConfig(A=1.5, **edge)).regime == BOUNDARY
        assert limit_probe(LemmaConfig(A=1.5, **edge)).supports_conclusion
