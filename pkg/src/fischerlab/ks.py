"""Khavinson-Shapiro constants: smallest singular values of g -> P_k g in the apolar norm.

For homogeneous P_k of degree k, mu_m is the best constant in
||P_k g_m||_a >= mu_m ||g_m||_a over homogeneous g_m of degree m. It is the
smallest singular value of multiplication by P_k between the apolar
orthonormal bases {z^a / sqrt(a!)} of H_m and H_{m+k}.

The eigenvalue solve is a plain cyclic Jacobi iteration on the real
symmetric embedding [[Re G, -Im G], [Im G, Re G]] of the Hermitian Gram
matrix G = A^H A. Each returned value is cross-checked by recomputing the
Rayleigh quotient of the (rounded) minimizing vector in exact arithmetic.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .apolar import apolar_norm_sq, coefficient_weight_sum
from .poly import Polynomial, mi_factorial, monomials_of_degree, multiply
from .scalars import ComplexRational

JACOBI_TOL = 1e-10
RAYLEIGH_RTOL = 1e-6


class ConvergenceError(RuntimeError):
    pass


def _check_homogeneous(Pk: Polynomial) -> int:
    if Pk.is_zero():
        raise ValueError("P_k must be nonzero")
    if not Pk.is_homogeneous():
        raise ValueError("P_k must be homogeneous")
    return Pk.degree


def multiplication_matrix(Pk: Polynomial, m: int) -> np.ndarray:
    """Complex matrix of g -> P_k g from the orthonormal basis of H_m to that of H_{m+k}.

    Entry (beta, alpha) is coeff_{beta-alpha}(P_k) * sqrt(beta!/alpha!), each
    factor rounded once to double precision.
    """
    k = _check_homogeneous(Pk)
    src = monomials_of_degree(Pk.dim, m)
    dst = monomials_of_degree(Pk.dim, m + k)
    row = {b: i for i, b in enumerate(dst)}
    A = np.zeros((len(dst), len(src)), dtype=complex)
    for j, alpha in enumerate(src):
        a_fact = mi_factorial(alpha)
        for gamma, c in Pk.items():
            beta = tuple(x + y for x, y in zip(alpha, gamma))
            scale = math.sqrt(Fraction(mi_factorial(beta), a_fact))
            A[row[beta], j] += complex(c) * scale
    return A


def jacobi_eigh(S: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = 100):
    """Cyclic Jacobi for a real symmetric matrix. Returns (eigenvalues, eigenvectors as columns)."""
    A = np.array(S, dtype=float)
    n = A.shape[0]
    V = np.eye(n)
    if n == 1:
        return A.diagonal().copy(), V
    scale = max(np.linalg.norm(A), 1e-300)
    for _ in range(max_sweeps):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off <= tol * scale:
            return A.diagonal().copy(), V
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                Ap, Aq = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * Ap - s * Aq
                A[:, q] = s * Ap + c * Aq
                Ap, Aq = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * Ap - s * Aq
                A[q, :] = s * Ap + c * Aq
                Vp, Vq = V[:, p].copy(), V[:, q].copy()
                V[:, p] = c * Vp - s * Vq
                V[:, q] = s * Vp + c * Vq
    raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")


def hermitian_min_eig(G: np.ndarray, tol: float = JACOBI_TOL):
    """Smallest eigenvalue of a Hermitian matrix and a unit eigenvector."""
    n = G.shape[0]
    S = np.block([[G.real, -G.imag], [G.imag, G.real]])
    w, V = jacobi_eigh(S, tol)
    i = int(np.argmin(w))
    v = V[:n, i] + 1j * V[n:, i]
    v = v / np.linalg.norm(v)
    return float(w[i]), v


@dataclass
class SingularValue:
    m: int
    dim: int
    mu: float
    vector: Polynomial = field(repr=False)
    rayleigh: Fraction = field(repr=False)
    certified: bool


def _rationalize(z: complex) -> tuple[Fraction, Fraction]:
    return Fraction(z.real), Fraction(z.imag)


def min_singular_value(Pk: Polynomial, m: int) -> SingularValue:
    """mu_m with its exact Rayleigh-quotient cross-check."""
    _check_homogeneous(Pk)
    A = multiplication_matrix(Pk, m)
    G = A.conj().T @ A
    lam, v = hermitian_min_eig(G)
    mu = math.sqrt(max(lam, 0.0))
    basis = monomials_of_degree(Pk.dim, m)
    # back to monomial coefficients: g = sum v_a z^a / sqrt(a!), then rounded exactly
    terms = {}
    for a, va in zip(basis, v):
        w = va / math.sqrt(mi_factorial(a))
        terms[a] = ComplexRational(*_rationalize(complex(w)))
    g = Polynomial(Pk.dim, terms)
    denom = apolar_norm_sq(g)
    rq = apolar_norm_sq(multiply(Pk, g)) / denom if denom else Fraction(0)
    certified = bool(denom) and abs(float(rq) - lam) <= RAYLEIGH_RTOL * max(lam, 1e-300)
    return SingularValue(m, len(basis), mu, g, rq, certified)


@dataclass
class KSReport:
    degrees: list[int]
    dims: list[int]
    mu: list[float]
    certified: list[bool]
    C_fit: float | None
    tau_fit: float | None
    fit_residuals: list[float]
    C0: float
    tau0: float = 0.0
    fit_window: tuple[int, int] | None = None

    def rows(self):
        return [dict(m=m, dim=d, mu=u, certified=c)
                for m, d, u, c in zip(self.degrees, self.dims, self.mu, self.certified)]

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=["m", "dim", "mu", "certified"], lineterminator="\n")
        w.writeheader()
        for r in self.rows():
            w.writerow(r)
        return buf.getvalue()


def ks_scan(Pk: Polynomial, m_min: int = 2, m_max: int = 10, fit_from: int | None = None) -> KSReport:
    """Compute mu_m for m_min..m_max and fit log mu = log C + (tau/2) log(m+1).

    The fit uses degrees >= ``fit_from`` (default m_min). With fewer than two
    points no fit is made. (C0, 0) with C0 = min mu_m always satisfies the
    bound on the scanned range.
    """
    if m_min > m_max:
        raise ValueError("m_min must not exceed m_max")
    if m_min < 0:
        raise ValueError("degrees are nonnegative")
    svs = [min_singular_value(Pk, m) for m in range(m_min, m_max + 1)]
    degrees = [s.m for s in svs]
    mus = [s.mu for s in svs]
    start = m_min if fit_from is None else fit_from
    window = [(m, u) for m, u in zip(degrees, mus) if m >= start]
    C_fit = tau_fit = None
    residuals: list[float] = []
    fit_window = None
    if len(window) >= 2 and all(u > 0 for _, u in window):
        x = np.log([m + 1.0 for m, _ in window])
        y = np.log([u for _, u in window])
        X = np.column_stack([np.ones_like(x), x])
        coef, *_ = np.linalg.lstsq(X, y, rcond=None)
        C_fit = float(math.exp(coef[0]))
        tau_fit = float(2.0 * coef[1])
        residuals = [float(r) for r in (y - X @ coef)]
        fit_window = (window[0][0], window[-1][0])
    return KSReport(degrees, [s.dim for s in svs], mus, [s.certified for s in svs],
                    C_fit, tau_fit, residuals, min(mus), 0.0, fit_window)


def check_tau_admissible(k: int, tau: float, d: int) -> bool:
    """False when tau > k-1 with d > 1 and k > 1 (the bound cannot hold then)."""
    if d > 1 and k > 1:
        return tau <= k - 1
    return True


def beauzamy_upper_float(Pk: Polynomial, m: int) -> float:
    """(1+m)^(k/2) * sum |c_a| sqrt(a!), an upper bound for every singular value."""
    k = _check_homogeneous(Pk)
    return (1 + m) ** (k / 2) * coefficient_weight_sum(Pk)
