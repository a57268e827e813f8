"""Order of growth of truncated entire series from their homogeneous slices.

An entire f = sum f_m has order <= rho exactly when, for every eps > 0 and all
large m, max over the unit sphere of |f_m| <= m^(-m/(rho+eps)). So the order is

    limsup  m log m / (-log max|f_m|)

and the estimators below approximate that limsup on a finite tail window.
Sup norms over the sphere are estimated by sampling plus projected gradient
ascent, so they are lower bounds of the true maximum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np
from scipy.stats import norm, qmc

from .apolar import apolar_norm_sq
from .poly import GradedSeries, Polynomial

DEFAULT_SAMPLES = 4096
ASCENT_STEPS = 50
ASCENT_STARTS = 8


class _Evaluator:
    """Vectorised float evaluation of a polynomial and its complex gradient."""

    def __init__(self, f: Polynomial):
        items = list(f.items())
        self.dim = f.dim
        self.exps = np.array([a for a, _ in items], dtype=int).reshape(len(items), f.dim)
        self.coef = np.array([complex(c) for _, c in items], dtype=complex)

    def values(self, Z: np.ndarray) -> np.ndarray:
        # Z: (n, d) complex -> (n,)
        mons = np.prod(Z[:, None, :] ** self.exps[None, :, :], axis=2)
        return mons @ self.coef

    def value_and_grad(self, z: np.ndarray):
        mons = np.prod(z[None, :] ** self.exps, axis=1)
        val = mons @ self.coef
        grad = np.zeros(self.dim, dtype=complex)
        for i in range(self.dim):
            e = self.exps[:, i]
            mask = e > 0
            if not mask.any():
                continue
            lowered = self.exps[mask].copy()
            lowered[:, i] -= 1
            grad[i] = (self.coef[mask] * e[mask]) @ np.prod(z[None, :] ** lowered, axis=1)
        return val, grad


def sphere_samples(d: int, n: int, seed: int = 0) -> np.ndarray:
    """n scrambled-Sobol points on the unit sphere of C^d (= R^(2d))."""
    sob = qmc.Sobol(d=2 * d, scramble=True, seed=seed)
    u = sob.random(n)
    u = np.clip(u, 1e-12, 1 - 1e-12)
    x = norm.ppf(u)
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    return x[:, :d] + 1j * x[:, d:]


def _ascend(ev: _Evaluator, z: np.ndarray, steps: int) -> float:
    val, grad = ev.value_and_grad(z)
    best = abs(val)
    step = 0.25
    for _ in range(steps):
        # ascent direction of |f|^2 in real coordinates is f * conj(grad f)
        g = val * np.conj(grad)
        g = g - np.real(np.vdot(z, g)) * z
        gn = np.linalg.norm(g)
        if gn == 0 or step < 1e-14:
            break
        cand = z + step * g / gn
        cand /= np.linalg.norm(cand)
        cval, cgrad = ev.value_and_grad(cand)
        if abs(cval) > best:
            z, val, grad, best = cand, cval, cgrad, abs(cval)
            step = min(step * 1.5, 1.0)
        else:
            step *= 0.5
    return best


def sup_norm_estimate(f_m: Polynomial, samples: int = DEFAULT_SAMPLES, seed: int = 0,
                      steps: int = ASCENT_STEPS, starts: int = ASCENT_STARTS) -> float:
    """Lower-bound estimate of max |f_m| over the unit sphere of C^d."""
    if not f_m.is_homogeneous():
        raise ValueError("f_m must be homogeneous")
    if f_m.is_zero():
        return 0.0
    if f_m.degree == 0:
        return abs(complex(f_m.constant_term()))
    ev = _Evaluator(f_m)
    Z = sphere_samples(f_m.dim, samples, seed)
    vals = np.abs(ev.values(Z))
    order = np.argsort(vals)[::-1][:starts]
    best = float(vals[order[0]])
    for idx in order:
        best = max(best, _ascend(ev, Z[idx].copy(), steps))
    return best


def order_estimate(norms, M: int | None = None, method: str = "regression") -> float:
    """Estimate the order from per-degree sup norms ``norms[m]``, m = 0..M.

    Both methods look at the tail window m in [M/2, M], skipping zero slices.
    A series whose expansion visibly terminates is a polynomial and gets 0:
    with g the gcd of the nonzero degrees and L the largest one, that means
    L + g <= M, so the next slice the pattern allows is inside the window
    and vanishes.

    ``ratio``: max over the window of m log m / (-log norm_m), with +inf
    for norm_m >= 1. This converges slowly: for exp it is about
    1/(1 - 1/log m), still 1.3 at m = 100.

    ``regression`` (default): least-squares fit of -log norm_m against
    (m log m, m, log m, 1) over the window and returns 1/slope of the m log m
    column. The extra columns absorb the Stirling corrections and constant
    factors, so f and c*f give the same estimate. Falls back to ``ratio``
    when the window has fewer than 6 nonzero slices.
    """
    if method not in ("ratio", "regression"):
        raise ValueError(f"unknown method {method!r}")
    norms = [float(x) for x in norms]
    M = len(norms) - 1 if M is None else M
    if M < 10:
        raise ValueError("truncation M must be at least 10")
    if len(norms) < M + 1:
        raise ValueError(f"need norms for degrees 0..{M}")
    if any(x < 0 for x in norms):
        raise ValueError("norms must be nonnegative")
    nonzero = [m for m in range(M + 1) if norms[m] > 0]
    if not nonzero or nonzero[-1] + (math.gcd(*nonzero) or 1) <= M:
        return 0.0
    if len(nonzero) < 3:
        raise ValueError("need at least 3 nonzero slices to estimate an order")
    window = [(m, norms[m]) for m in range(max(2, math.ceil(M / 2)), M + 1) if norms[m] > 0]
    if method == "regression" and len(window) >= 6:
        ms = np.array([m for m, _ in window], dtype=float)
        y = -np.log([x for _, x in window])
        X = np.column_stack([ms * np.log(ms), ms, np.log(ms), np.ones_like(ms)])
        coef, *_ = np.linalg.lstsq(X, y, rcond=None)
        lead = float(coef[0])
        return math.inf if lead <= 0 else 1.0 / lead
    best = 0.0
    for m, x in window:
        if x >= 1:
            return math.inf
        best = max(best, m * math.log(m) / (-math.log(x)))
    return best


@dataclass
class GrowthReport:
    degrees: list[int]
    sup_norms: list[float]
    apolar_norms: list[float]
    rho_est: float
    method: str
    sup_norm_method: str = "sobol+ascent (lower bound)"
    rho_ratio: float = field(default=math.nan)

    def rows(self):
        return [dict(m=m, sup_norm=s, apolar_norm=a)
                for m, s, a in zip(self.degrees, self.sup_norms, self.apolar_norms)]


def growth_report(f: GradedSeries, M: int | None = None, seed: int = 0,
                  samples: int = DEFAULT_SAMPLES, method: str = "regression") -> GrowthReport:
    M = f.truncation if M is None else M
    sups = [sup_norm_estimate(f[m], samples=samples, seed=seed) for m in range(M + 1)]
    apolar = [math.sqrt(apolar_norm_sq(f[m])) for m in range(M + 1)]
    rho = order_estimate(sups, M, method=method)
    rho_ratio = order_estimate(sups, M, method="ratio")
    return GrowthReport(list(range(M + 1)), sups, apolar, rho, method, rho_ratio=rho_ratio)


def log_cond2_bound(m: int, d: int, rho_plus_eps: float, C_d: float) -> float:
    """Natural log of :func:`cond2_bound`."""
    if m < 1 or d < 1:
        raise ValueError("need m >= 1 and d >= 1")
    if not rho_plus_eps > 0:
        raise ValueError("rho + eps must be positive")
    if not C_d > 0:
        raise ValueError("C_d must be positive")
    return (math.log(2.0) + 0.5 * math.log(math.pi) + math.log(C_d) - m / 2
            + (d / 2) * math.log(m + d - 1) + m * (0.5 - 1.0 / rho_plus_eps) * math.log(m))


def cond2_bound(m: int, d: int, rho_plus_eps: float, C_d: float) -> float:
    """2 sqrt(pi) C_d e^(-m/2) (m+d-1)^(d/2) m^(m (1/2 - 1/(rho+eps))).

    Upper bound for the apolar norm of the degree-m slice of an entire
    function of order <= rho, valid once the slice sup norms obey
    max|f_m| <= m^(-m/(rho+eps)).
    """
    log_b = log_cond2_bound(m, d, rho_plus_eps, C_d)
    try:
        return math.exp(log_b)
    except OverflowError:
        return math.inf


def stirling_lower(m: int) -> float:
    """(2 pi m)^(1/2) (m/e)^m e^(1/(12m+1)), a lower bound for m!."""
    if m < 1:
        raise ValueError("m must be at least 1")
    return math.exp(0.5 * math.log(2 * math.pi * m) + m * (math.log(m) - 1) + 1.0 / (12 * m + 1))


def stirling_upper(m: int) -> float:
    """2 sqrt(pi m) (m/e)^m, an upper bound for m!."""
    if m < 1:
        raise ValueError("m must be at least 1")
    return math.exp(math.log(2.0) + 0.5 * math.log(math.pi * m) + m * (math.log(m) - 1))


def stirling_bounds_exact(m: int, digits: int = 30) -> tuple[Fraction, Fraction]:
    """Both Stirling bounds as rationals, evaluated to ``digits`` significant digits."""
    if m < 1:
        raise ValueError("m must be at least 1")
    with mpmath.workdps(digits + 10):
        mm = mpmath.mpf(m)
        lower = mpmath.sqrt(2 * mpmath.pi * mm) * (mm / mpmath.e) ** mm * mpmath.exp(1 / (12 * mm + 1))
        upper = 2 * mpmath.sqrt(mpmath.pi * mm) * (mm / mpmath.e) ** mm
        lo = Fraction(mpmath.nstr(lower, digits))
        hi = Fraction(mpmath.nstr(upper, digits))
    return lo, hi
