"""Exact Fischer decompositions f = P*q + r with P_k*(D) r = 0.

P_k is the principal (top-degree) part of P and P_k* its conjugate. The
Fischer operator F(q) = P_k*(D)(P q) sends a homogeneous q_n of degree n to

    T_n q_n  (degree n)   +   sum over j in E of  P_k*(D)(P_{k-j} q_n)  (degree n - j)

where E = {j in 1..k : P_{k-j} != 0}. So F never raises degree and, in the
graded basis, is block triangular with diagonal blocks T_n: q -> P_k*(D)(P_k q).
Each T_n is invertible (homogeneous Fischer bijectivity), hence F is injective
on {deg <= N}, and since it preserves that finite-dimensional space it is also
surjective there. Solving F(q) = P_k*(D) f therefore always succeeds, and
r = f - P q lands in the kernel of P_k*(D). A singular T_n would contradict the
theorem and is raised as :class:`FischerFault`, never handled as a normal error.

Solving runs top-down: q_n for n = N, N-1, ..., 0, each step subtracting the
couplings from the already known q_{n+j}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from . import exact_linalg
from .apolar import apolar_inner
from .poly import (
    DimensionError,
    GradedSeries,
    MultiIndex,
    Polynomial,
    add,
    apply_operator,
    conjugate_coefficients,
    homogeneous_dimension,
    homogeneous_expansion,
    monomials_of_degree,
    multiply,
)
from .scalars import ZERO, ComplexRational

Matrix = tuple[tuple[ComplexRational, ...], ...]


class FischerFault(RuntimeError):
    """An internal result contradicts Fischer uniqueness (singular block, failed check)."""


@dataclass(frozen=True)
class PolynomialStructure:
    """Homogeneous shape of P = P_beta1 + ... + P_beta2 + P_k.

    ``gaps`` is E = {j in 1..k : P_{k-j} != 0}; ``beta_lower`` = min E = k - beta2
    and ``beta_upper`` = max E = k - beta1. For homogeneous P the beta fields
    are None and E is empty.
    """

    k: int
    beta1: int | None
    beta2: int | None
    gaps: frozenset[int]
    beta_lower: int | None
    beta_upper: int | None
    is_homogeneous: bool
    parts: dict[int, Polynomial] = field(repr=False, compare=False)

    @property
    def principal(self) -> Polynomial:
        return self.parts[self.k]


def analyze_structure(P: Polynomial) -> PolynomialStructure:
    if P.is_zero():
        raise ValueError("P must be nonzero")
    k = P.degree
    if k == 0:
        raise ValueError("P is constant; there is no decomposition problem for k = 0")
    parts = {}
    for m, s in enumerate(homogeneous_expansion(P).slices):
        if s:
            parts[m] = s
    lower = sorted(m for m in parts if m < k)
    if not lower:
        return PolynomialStructure(k, None, None, frozenset(), None, None, True, parts)
    gaps = frozenset(k - m for m in lower)
    beta1, beta2 = lower[0], lower[-1]
    return PolynomialStructure(k, beta1, beta2, gaps, k - beta2, k - beta1, False, parts)


def fischer_operator(P: Polynomial, Q: Polynomial, phi: Polynomial) -> Polynomial:
    """F_QP(phi) = Q(D)(P phi)."""
    if not (P.dim == Q.dim == phi.dim):
        raise DimensionError("dimension mismatch")
    return apply_operator(Q, multiply(P, phi))


def coordinates(p: Polynomial, basis: tuple[MultiIndex, ...]) -> list[ComplexRational]:
    index = {a: i for i, a in enumerate(basis)}
    out = [ZERO] * len(basis)
    for alpha, c in p.items():
        try:
            out[index[alpha]] = c
        except KeyError:
            raise ValueError(f"term {alpha} outside the given basis") from None
    return out


def from_coordinates(dim: int, basis: tuple[MultiIndex, ...], x) -> Polynomial:
    return Polynomial(dim, {a: c for a, c in zip(basis, x) if c})


def _operator_matrix(op, dim: int, src: int, dst: int) -> Matrix:
    """Matrix of a linear map H_src -> H_dst on the graded-lex monomial bases."""
    src_basis = monomials_of_degree(dim, src)
    dst_basis = monomials_of_degree(dim, dst)
    cols = [coordinates(op(Polynomial.monomial(a)), dst_basis) for a in src_basis]
    return tuple(tuple(cols[j][i] for j in range(len(src_basis))) for i in range(len(dst_basis)))


@lru_cache(maxsize=512)
def diagonal_block(Pk: Polynomial, m: int) -> Matrix:
    """T_m: q_m -> P_k*(D)(P_k q_m) on H_m."""
    Pk_star = conjugate_coefficients(Pk)
    return _operator_matrix(lambda e: apply_operator(Pk_star, multiply(Pk, e)), Pk.dim, m, m)


@lru_cache(maxsize=1024)
def coupling_block(Pk: Polynomial, Pb: Polynomial, j: int, m: int) -> Matrix:
    """H_{m+j} -> H_m: q -> P_k*(D)(P_{k-j} q)."""
    Pk_star = conjugate_coefficients(Pk)
    return _operator_matrix(lambda e: apply_operator(Pk_star, multiply(Pb, e)), Pk.dim, m + j, m)


@dataclass
class GradedFischerMatrix:
    """Block-triangular matrix of the Fischer operator on polynomials of degree <= n_max.

    ``diagonal[m]`` is T_m on H_m; ``coupling[(m, j)]`` maps H_{m+j} into H_m for j in E.
    """

    P: Polynomial
    structure: PolynomialStructure
    n_max: int
    bases: dict[int, tuple[MultiIndex, ...]]
    diagonal: dict[int, Matrix]
    coupling: dict[tuple[int, int], Matrix]

    def output_slice(self, q: Polynomial, m: int) -> Polynomial:
        """Degree-m slice of F(q) assembled from the blocks."""
        slices = homogeneous_expansion(q, self.n_max)
        acc = exact_linalg.matvec(self.diagonal[m], coordinates(slices[m], self.bases[m]))
        for j in sorted(self.structure.gaps):
            if m + j <= self.n_max:
                part = exact_linalg.matvec(self.coupling[(m, j)],
                                           coordinates(slices[m + j], self.bases[m + j]))
                acc = [a + b for a, b in zip(acc, part)]
        return from_coordinates(self.P.dim, self.bases[m], acc)


def build_graded_matrix(P: Polynomial, n_max: int) -> GradedFischerMatrix:
    st = analyze_structure(P)
    Pk = st.principal
    bases = {m: monomials_of_degree(P.dim, m) for m in range(n_max + 1)}
    diagonal = {m: diagonal_block(Pk, m) for m in range(n_max + 1)}
    coupling = {}
    for j in st.gaps:
        Pb = st.parts[st.k - j]
        for m in range(n_max + 1 - j):
            coupling[(m, j)] = coupling_block(Pk, Pb, j, m)
    return GradedFischerMatrix(P, st, n_max, bases, diagonal, coupling)


@dataclass(frozen=True)
class FischerDecomposition:
    q: Polynomial
    r: Polynomial
    residual_check: bool
    reconstruction_check: bool


def _verified(f: Polynomial, P: Polynomial, q: Polynomial, r: Polynomial,
              Pk_star: Polynomial) -> FischerDecomposition:
    # both flags are recomputed from scratch, independent of the solver path
    residual_ok = apply_operator(Pk_star, r).is_zero()
    recon_ok = add(multiply(P, q), r) == f
    if not (residual_ok and recon_ok):
        raise FischerFault(
            f"decomposition failed verification (kernel={residual_ok}, reconstruction={recon_ok})")
    return FischerDecomposition(q, r, residual_ok, recon_ok)


def _solve_block(T: Matrix, rhs: list[ComplexRational], m: int) -> list[ComplexRational]:
    try:
        return exact_linalg.solve(T, rhs)
    except exact_linalg.SingularMatrixError as exc:
        raise FischerFault(f"diagonal block T_{m} is singular: {exc}") from exc


def decompose_homogeneous(f_m: Polynomial, P: Polynomial) -> FischerDecomposition:
    """Fischer decomposition of a homogeneous f_m by a homogeneous P.

    Solves the Hermitian positive definite normal system
    <P q, P e_j>_a = <f_m, P e_j>_a over the monomial basis e_j of H_{m-k},
    i.e. q is chosen so that r = f_m - P q is apolar-orthogonal to P*H_{m-k}.
    """
    if f_m.dim != P.dim:
        raise DimensionError("dimension mismatch")
    if P.is_zero():
        raise ValueError("P must be nonzero")
    if not P.is_homogeneous():
        raise ValueError("P must be homogeneous")
    if not f_m.is_homogeneous():
        raise ValueError("f_m must be homogeneous")
    Pk_star = conjugate_coefficients(P)
    k = P.degree
    zero = Polynomial.zero(P.dim)
    if f_m.is_zero() or f_m.degree < k:
        return _verified(f_m, P, zero, f_m, Pk_star)
    m = f_m.degree
    basis = monomials_of_degree(P.dim, m - k)
    images = [multiply(P, Polynomial.monomial(e)) for e in basis]
    gram = [[apolar_inner(images[i], images[j]) for i in range(len(basis))]
            for j in range(len(basis))]
    rhs = [apolar_inner(f_m, images[j]) for j in range(len(basis))]
    x = _solve_block(gram, rhs, m - k)
    q = from_coordinates(P.dim, basis, x)
    return _verified(f_m, P, q, add(f_m, -multiply(P, q)), Pk_star)


def _solve_graded(g: Polynomial, st: PolynomialStructure, N: int) -> Polynomial:
    """Back-substitution for F(q) = g with deg q <= N, top degree first."""
    Pk = st.principal
    Pk_star = conjugate_coefficients(Pk)
    dim = Pk.dim
    g_slices = homogeneous_expansion(g, N)
    q_slices: dict[int, Polynomial] = {}
    for n in range(N, -1, -1):
        rhs = g_slices[n]
        for j in sorted(st.gaps):
            qj = q_slices.get(n + j)
            if qj:
                rhs = add(rhs, -apply_operator(Pk_star, multiply(st.parts[st.k - j], qj)))
        if rhs.is_zero():
            continue
        basis = monomials_of_degree(dim, n)
        x = _solve_block(diagonal_block(Pk, n), coordinates(rhs, basis), n)
        qn = from_coordinates(dim, basis, x)
        if qn:
            q_slices[n] = qn
    q = Polynomial.zero(dim)
    for qn in q_slices.values():
        q = add(q, qn)
    return q


def _solve_global(g: Polynomial, P: Polynomial, Pk_star: Polynomial, N: int) -> Polynomial:
    """One dense exact solve of F(q) = g over all monomials of degree <= N."""
    basis = tuple(a for n in range(N, -1, -1) for a in monomials_of_degree(P.dim, n))
    cols = [coordinates(fischer_operator(P, Pk_star, Polynomial.monomial(a)), basis) for a in basis]
    A = [[cols[j][i] for j in range(len(basis))] for i in range(len(basis))]
    try:
        x = exact_linalg.solve(A, coordinates(g, basis))
    except exact_linalg.SingularMatrixError as exc:
        raise FischerFault(f"filtered Fischer matrix is singular up to degree {N}") from exc
    return from_coordinates(P.dim, basis, x)


def decompose(f: Polynomial, P: Polynomial, method: str = "graded") -> FischerDecomposition:
    """Exact f = P q + r with P_k*(D) r = 0 and deg q <= deg f - k.

    ``method`` is "graded" (block back-substitution) or "global" (a single
    solve of the full filtered matrix, for cross-checking). Homogeneous P is
    handled slice by slice with :func:`decompose_homogeneous`.
    """
    if f.dim != P.dim:
        raise DimensionError("dimension mismatch")
    st = analyze_structure(P)
    Pk_star = conjugate_coefficients(st.principal)
    zero = Polynomial.zero(P.dim)
    if f.is_zero() or f.degree < st.k:
        # P_k*(D) f has degree <= deg f - k < 0, so it vanishes
        return _verified(f, P, zero, f, Pk_star)
    if st.is_homogeneous and method == "graded":
        q, r = zero, zero
        for f_m in homogeneous_expansion(f).slices:
            if f_m:
                part = decompose_homogeneous(f_m, P)
                q, r = add(q, part.q), add(r, part.r)
        return _verified(f, P, q, r, Pk_star)
    N = f.degree - st.k
    g = apply_operator(Pk_star, f)
    if method == "graded":
        q = _solve_graded(g, st, N)
    elif method == "global":
        q = _solve_global(g, P, Pk_star, N)
    else:
        raise ValueError(f"unknown method {method!r}")
    return _verified(f, P, q, add(f, -multiply(P, q)), Pk_star)


@dataclass
class InjectivityReport:
    n_max: int
    sizes: dict[int, int]
    ranks: dict[int, int]
    violations: dict[int, Polynomial]

    @property
    def full_rank(self) -> bool:
        return not self.violations and all(self.ranks[m] == self.sizes[m] for m in self.sizes)


def injectivity_check(P: Polynomial, n: int) -> InjectivityReport:
    """Exact ranks of T_0..T_n; a rank drop comes with an explicit kernel vector."""
    st = analyze_structure(P)
    Pk = st.principal
    sizes, ranks, violations = {}, {}, {}
    for m in range(n + 1):
        T = diagonal_block(Pk, m)
        sizes[m] = homogeneous_dimension(P.dim, m)
        ranks[m] = exact_linalg.rank(T)
        if ranks[m] < sizes[m]:
            kernel = exact_linalg.nullspace(T)
            violations[m] = from_coordinates(P.dim, monomials_of_degree(P.dim, m), kernel[0])
    return InjectivityReport(n, sizes, ranks, violations)


@dataclass
class SeriesDecomposition:
    q: GradedSeries
    r: GradedSeries
    truncation: int
    final_degrees: range
    residual_check: bool
    reconstruction_check: bool


def decompose_series(f: GradedSeries, P: Polynomial, M: int | None = None,
                     exact_beyond_truncation: bool = False) -> SeriesDecomposition:
    """Decompose the degree-<=M truncation of a graded series.

    ``final_degrees`` lists the q-slices that no extension of f beyond M can
    change. For homogeneous P that is 0..M-k, since q_n depends only on
    f_{n+k}. For non-homogeneous P every q_n is coupled to q_{n+j}, j in E,
    and through them to arbitrarily high slices of f, so no slice is final
    unless the caller asserts f vanishes above M (``exact_beyond_truncation``).
    """
    if f.dim != P.dim:
        raise DimensionError("dimension mismatch")
    st = analyze_structure(P)
    M = f.truncation if M is None else M
    if M < st.k:
        raise ValueError(f"truncation {M} must be at least deg P = {st.k}")
    f_trunc = Polynomial.zero(f.dim)
    for m in range(min(M, f.truncation) + 1):
        f_trunc = add(f_trunc, f[m])
    dec = decompose(f_trunc, P)
    q = homogeneous_expansion(dec.q, M - st.k)
    r = homogeneous_expansion(dec.r, M)
    if st.is_homogeneous or exact_beyond_truncation:
        final = range(0, M - st.k + 1)
    else:
        final = range(0)
    return SeriesDecomposition(q, r, M, final, dec.residual_check, dec.reconstruction_check)


@dataclass(frozen=True)
class OrderBound:
    rho_max: Fraction | float
    branch: int
    in_expected_range: bool
    existence_rho: Fraction | float


def uniqueness_order_bound(k: int, beta1: int, beta2: int, tau) -> OrderBound:
    """Largest admissible order for which F_{P_k* P} is injective.

    Branch 1 (beta2 >= tau): 2(k - beta2)/(k - tau), which lies in [2/k, 2].
    Branch 2 (beta2 < tau):  2(k - beta1)/(k + beta2 - beta1 - tau), in (2, 2k].
    ``existence_rho`` is 2(k - beta2)/(k - tau), the order bound under which
    weak decompositions are known to exist; it coincides with branch 1.
    """
    if not (isinstance(k, int) and isinstance(beta1, int) and isinstance(beta2, int)):
        raise TypeError("k, beta1, beta2 must be integers")
    if k < 2:
        raise ValueError("k must be at least 2")
    if not 0 <= beta1 <= beta2 <= k - 1:
        raise ValueError("need 0 <= beta1 <= beta2 <= k-1")
    if not 0 <= tau <= k - 1:
        raise ValueError("need 0 <= tau <= k-1")
    tau = Fraction(tau) if isinstance(tau, Rational) else float(tau)
    existence = 2 * (k - beta2) / (k - tau)
    if beta2 - tau >= 0:
        rho = existence
        return OrderBound(rho, 1, Fraction(2, k) <= rho <= 2, existence)
    rho = 2 * (k - beta1) / (k + beta2 - beta1 - tau)
    return OrderBound(rho, 2, 2 < rho <= 2 * k, existence)
