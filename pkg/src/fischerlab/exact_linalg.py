"""Exact linear algebra over Q(i).

Rows are scaled to Gaussian integers (pairs of Python ints) and reduced with
fraction-free Bareiss elimination, so every intermediate entry stays integral
and every division is exact. Pivots are chosen by largest squared modulus
within the column; ties go to the lowest row index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .scalars import ZERO, ComplexRational

GInt = tuple[int, int]


class SingularMatrixError(ArithmeticError):
    pass


def _gmul(a: GInt, b: GInt) -> GInt:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gsub(a: GInt, b: GInt) -> GInt:
    return (a[0] - b[0], a[1] - b[1])


def _gdiv_exact(a: GInt, b: GInt) -> GInt:
    n = b[0] * b[0] + b[1] * b[1]
    re = a[0] * b[0] + a[1] * b[1]
    im = a[1] * b[0] - a[0] * b[1]
    qr, rr = divmod(re, n)
    qi, ri = divmod(im, n)
    if rr or ri:
        raise ArithmeticError("inexact Gaussian-integer division in Bareiss step")
    return (qr, qi)


def _norm(a: GInt) -> int:
    return a[0] * a[0] + a[1] * a[1]


def _integral_rows(rows: Sequence[Sequence[ComplexRational]]) -> list[list[GInt]]:
    out = []
    for row in rows:
        den = 1
        for c in row:
            den = math.lcm(den, c.re.denominator, c.im.denominator)
        out.append([(int(c.re * den), int(c.im * den)) for c in row])
    return out


@dataclass
class EchelonForm:
    rows: list[list[GInt]]
    pivot_cols: list[int]
    rank: int


def bareiss_echelon(rows: Sequence[Sequence[ComplexRational]], ncols: int | None = None) -> EchelonForm:
    """Fraction-free row echelon form over Z[i].

    Only the first ``ncols`` columns are eligible as pivots (the remainder are
    carried along, e.g. an augmented right-hand side).
    """
    M = _integral_rows(rows)
    nrows = len(M)
    total_cols = len(M[0]) if M else 0
    ncols = total_cols if ncols is None else ncols
    prev: GInt = (1, 0)
    r = 0
    pivots = []
    for c in range(ncols):
        if r >= nrows:
            break
        best, best_norm = -1, 0
        for i in range(r, nrows):
            n = _norm(M[i][c])
            if n > best_norm:
                best, best_norm = i, n
        if best < 0:
            continue
        if best != r:
            M[r], M[best] = M[best], M[r]
        piv = M[r][c]
        prow = M[r]
        for i in range(r + 1, nrows):
            row = M[i]
            lead = row[c]
            for j in range(c + 1, total_cols):
                row[j] = _gdiv_exact(_gsub(_gmul(piv, row[j]), _gmul(lead, prow[j])), prev)
            row[c] = (0, 0)
        # columns left of c in rows below r are already zero
        prev = piv
        pivots.append(c)
        r += 1
    return EchelonForm(M, pivots, len(pivots))


def rank(rows: Sequence[Sequence[ComplexRational]]) -> int:
    if not rows:
        return 0
    return bareiss_echelon(rows).rank


def solve(A: Sequence[Sequence[ComplexRational]], b: Sequence[ComplexRational]) -> list[ComplexRational]:
    """Exact solution of the square system A x = b; raises SingularMatrixError."""
    n = len(A)
    if n == 0:
        return []
    if any(len(row) != n for row in A) or len(b) != n:
        raise ValueError("solve expects a square system")
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    ech = bareiss_echelon(aug, ncols=n)
    if ech.rank < n:
        raise SingularMatrixError(f"matrix has rank {ech.rank} < {n}")
    U = ech.rows
    x: list[ComplexRational] = [ZERO] * n
    for i in range(n - 1, -1, -1):
        s = ComplexRational(U[i][n][0], U[i][n][1])
        for j in range(i + 1, n):
            u = U[i][j]
            if u != (0, 0):
                s = s - ComplexRational(u[0], u[1]) * x[j]
        x[i] = s / ComplexRational(U[i][i][0], U[i][i][1])
    return x


def nullspace(A: Sequence[Sequence[ComplexRational]], ncols: int | None = None) -> list[list[ComplexRational]]:
    """Basis of {x : A x = 0} via reduced row echelon form in field arithmetic."""
    if not A:
        return [[ComplexRational(int(i == j)) for j in range(ncols or 0)] for i in range(ncols or 0)]
    ncols = len(A[0])
    M = [[ComplexRational.coerce(c) for c in row] for row in A]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = ComplexRational(1) / M[r][c]
        M[r] = [v * inv for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ComplexRational(1)
        for row_idx, pc in enumerate(pivots):
            v[pc] = -M[row_idx][fc]
        basis.append(v)
    return basis


def matvec(A: Sequence[Sequence[ComplexRational]], x: Sequence[ComplexRational]) -> list[ComplexRational]:
    out = []
    for row in A:
        s = ZERO
        for a, b in zip(row, x):
            if a and b:
                s = s + a * b
        out.append(s)
    return out

