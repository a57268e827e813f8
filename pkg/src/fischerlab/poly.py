"""Exact sparse multivariate polynomials over the Gaussian rationals.

A polynomial in ``d`` variables ``z1..zd`` is a map from exponent tuples
(multi-indices) to :class:`ComplexRational` coefficients. Zero coefficients are
never stored, so the zero polynomial has an empty term map.

    z1^2*z2 + (1+2i)  ->  {(2, 1): 1, (0, 0): 1+2i}

All values are immutable; every operation returns a new polynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Mapping

from .scalars import ONE, ZERO, ComplexRational

MultiIndex = tuple[int, ...]


class _NegInfDegree:
    """Degree of the zero polynomial. Orders below every integer; no arithmetic."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("-inf-degree")

    def __repr__(self):
        return "NEG_INF_DEGREE"


NEG_INF_DEGREE = _NegInfDegree()


class DimensionError(ValueError):
    """Operands live in polynomial rings of different dimension."""


# multi-index helpers


def total_degree(alpha: MultiIndex) -> int:
    return sum(alpha)


@lru_cache(maxsize=4096)
def mi_factorial(alpha: MultiIndex) -> int:
    """alpha! = alpha_1! * ... * alpha_d!"""
    out = 1
    for a in alpha:
        out *= math.factorial(a)
    return out


def falling_factorial(n: int, k: int) -> int:
    """n! / (n-k)!; zero when k > n."""
    if k > n:
        return 0
    return math.perm(n, k)


def grlex_key(alpha: MultiIndex):
    """Sort key putting higher total degree first, then lexicographically larger."""
    return (-sum(alpha), tuple(-a for a in alpha))


@lru_cache(maxsize=1024)
def monomials_of_degree(dim: int, m: int) -> tuple[MultiIndex, ...]:
    """All exponent tuples with |alpha| = m, in graded-lex (descending) order.

    There are C(m+d-1, d-1) of them.
    """
    if m < 0:
        return ()
    out = []
    for combo in combinations_with_replacement(range(dim), m):
        alpha = [0] * dim
        for v in combo:
            alpha[v] += 1
        out.append(tuple(alpha))
    out.sort(key=grlex_key)
    return tuple(out)


def homogeneous_dimension(dim: int, m: int) -> int:
    """dim H_m = C(m+d-1, d-1)."""
    if m < 0:
        return 0
    return math.comb(m + dim - 1, dim - 1)


class Polynomial:
    """Immutable sparse polynomial in ``dim`` variables."""

    __slots__ = ("dim", "_terms", "_hash")

    def __init__(self, dim: int, terms: Mapping[MultiIndex, object] | None = None):
        if not isinstance(dim, int) or dim < 1:
            raise ValueError(f"dimension must be a positive integer, got {dim!r}")
        clean: dict[MultiIndex, ComplexRational] = {}
        for alpha, c in (terms or {}).items():
            alpha = tuple(alpha)
            if len(alpha) != dim:
                raise DimensionError(f"multi-index {alpha} has length {len(alpha)}, expected {dim}")
            if any((not isinstance(a, int)) or a < 0 for a in alpha):
                raise ValueError(f"multi-index entries must be nonnegative integers: {alpha}")
            c = ComplexRational.coerce(c)
            if c:
                clean[alpha] = clean.get(alpha, ZERO) + c if alpha in clean else c
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "_terms", {a: c for a, c in clean.items() if c})
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _from_clean(cls, dim: int, terms: dict[MultiIndex, ComplexRational]) -> "Polynomial":
        # trusted constructor: keys validated, no zero coefficients
        p = object.__new__(cls)
        object.__setattr__(p, "dim", dim)
        object.__setattr__(p, "_terms", terms)
        object.__setattr__(p, "_hash", None)
        return p

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # constructors

    @classmethod
    def zero(cls, dim: int) -> "Polynomial":
        return cls(dim)

    @classmethod
    def constant(cls, dim: int, c) -> "Polynomial":
        return cls(dim, {(0,) * dim: c})

    @classmethod
    def variable(cls, dim: int, index: int) -> "Polynomial":
        """The coordinate z_index (1-based, matching z1..zd)."""
        if not 1 <= index <= dim:
            raise ValueError(f"variable z{index} out of range for dim={dim}")
        alpha = [0] * dim
        alpha[index - 1] = 1
        return cls._from_clean(dim, {tuple(alpha): ONE})

    @classmethod
    def monomial(cls, alpha: Iterable[int], c=1) -> "Polynomial":
        alpha = tuple(alpha)
        return cls(len(alpha), {alpha: c})

    # inspection

    @property
    def terms(self) -> Mapping[MultiIndex, ComplexRational]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[MultiIndex, ComplexRational]]:
        return iter(self._terms.items())

    def sorted_items(self) -> list[tuple[MultiIndex, ComplexRational]]:
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]))

    def coeff(self, alpha: MultiIndex) -> ComplexRational:
        return self._terms.get(tuple(alpha), ZERO)

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    @property
    def degree(self):
        """Total degree; NEG_INF_DEGREE for the zero polynomial."""
        if not self._terms:
            return NEG_INF_DEGREE
        return max(sum(a) for a in self._terms)

    def low_degree(self):
        if not self._terms:
            return NEG_INF_DEGREE
        return min(sum(a) for a in self._terms)

    def is_homogeneous(self, m: int | None = None) -> bool:
        """True if every term has the same degree (``m`` when given). Zero is homogeneous of every degree."""
        degs = {sum(a) for a in self._terms}
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return m is None or degs == {m}

    def homogeneous_part(self, m: int) -> "Polynomial":
        return Polynomial._from_clean(
            self.dim, {a: c for a, c in self._terms.items() if sum(a) == m})

    def principal_part(self) -> "Polynomial":
        if not self._terms:
            return self
        return self.homogeneous_part(self.degree)

    def evaluate(self, point) -> ComplexRational:
        """Exact evaluation at a point with Gaussian-rational coordinates."""
        pt = [ComplexRational.coerce(x) for x in point]
        if len(pt) != self.dim:
            raise DimensionError("point has wrong dimension")
        total = ZERO
        for alpha, c in self._terms.items():
            v = c
            for x, a in zip(pt, alpha):
                if a:
                    v = v * x ** a
            total = total + v
        return total

    def constant_term(self) -> ComplexRational:
        return self._terms.get((0,) * self.dim, ZERO)

    # arithmetic (operators delegate to the module functions)

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            try:
                other = Polynomial.constant(self.dim, other)
            except TypeError:
                return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._from_clean(self.dim, {a: -c for a, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            try:
                other = Polynomial.constant(self.dim, other)
            except TypeError:
                return NotImplemented
        return add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return multiply(self, other)
        try:
            s = ComplexRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.scale(s)

    __rmul__ = __mul__

    def __truediv__(self, other):
        s = ComplexRational.coerce(other)
        return self.scale(ComplexRational(1) / s)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = Polynomial.constant(self.dim, 1)
        base = self
        while n:
            if n & 1:
                result = multiply(result, base)
            base = multiply(base, base)
            n >>= 1
        return result

    def scale(self, s) -> "Polynomial":
        s = ComplexRational.coerce(s)
        if not s:
            return Polynomial.zero(self.dim)
        return Polynomial._from_clean(self.dim, {a: c * s for a, c in self._terms.items()})

    def conjugate(self) -> "Polynomial":
        return conjugate_coefficients(self)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.dim == other.dim and self._terms == other._terms
        try:
            c = ComplexRational.coerce(other)
        except TypeError:
            return NotImplemented
        if not c:
            return not self._terms
        return self._terms == {(0,) * self.dim: c}

    def __hash__(self):
        if self._hash is None:
            h = hash((self.dim, tuple(self.sorted_items())))
            object.__setattr__(self, "_hash", h)
        return self._hash

    def __repr__(self):
        from .textio import print_expression
        return f"Polynomial({self.dim}, {print_expression(self)!r})"

    def __str__(self):
        from .textio import print_expression
        return print_expression(self)

    def __reduce__(self):
        return (Polynomial, (self.dim, dict(self._terms)))


def _check_dims(f: Polynomial, g: Polynomial) -> None:
    if f.dim != g.dim:
        raise DimensionError(f"dimension mismatch: {f.dim} vs {g.dim}")


def add(f: Polynomial, g: Polynomial) -> Polynomial:
    _check_dims(f, g)
    out = dict(f._terms)
    for alpha, c in g._terms.items():
        s = out.get(alpha)
        if s is None:
            out[alpha] = c
        else:
            s = s + c
            if s:
                out[alpha] = s
            else:
                del out[alpha]
    return Polynomial._from_clean(f.dim, out)


def subtract(f: Polynomial, g: Polynomial) -> Polynomial:
    return add(f, -g)


def multiply(f: Polynomial, g: Polynomial) -> Polynomial:
    _check_dims(f, g)
    if not f._terms or not g._terms:
        return Polynomial.zero(f.dim)
    out: dict[MultiIndex, ComplexRational] = {}
    for a, ca in f._terms.items():
        for b, cb in g._terms.items():
            key = tuple(x + y for x, y in zip(a, b))
            prod = ca * cb
            prev = out.get(key)
            out[key] = prod if prev is None else prev + prod
    return Polynomial._from_clean(f.dim, {k: v for k, v in out.items() if v})


def conjugate_coefficients(P: Polynomial) -> Polynomial:
    """P*: the same polynomial with every coefficient conjugated."""
    return Polynomial._from_clean(P.dim, {a: c.conjugate() for a, c in P._terms.items()})


def apply_operator(Q: Polynomial, f: Polynomial) -> Polynomial:
    """Q(D)f, where each z_i in Q is replaced by d/dz_i.

    On monomials D^alpha z^beta = beta!/(beta-alpha)! z^(beta-alpha) if beta >= alpha, else 0.
    """
    _check_dims(Q, f)
    out: dict[MultiIndex, ComplexRational] = {}
    for alpha, cq in Q._terms.items():
        for beta, cf in f._terms.items():
            w = 1
            for a, b in zip(alpha, beta):
                if a > b:
                    w = 0
                    break
                if a:
                    w *= falling_factorial(b, a)
            if not w:
                continue
            key = tuple(b - a for a, b in zip(alpha, beta))
            term = cq * cf * w
            prev = out.get(key)
            out[key] = term if prev is None else prev + term
    return Polynomial._from_clean(f.dim, {k: v for k, v in out.items() if v})


@dataclass(frozen=True)
class GradedSeries:
    """Truncated homogeneous expansion f = f_0 + f_1 + ... + f_M.

    ``slices[m]`` is homogeneous of degree m (or zero).
    """

    dim: int
    slices: tuple[Polynomial, ...]

    def __post_init__(self):
        slices = tuple(self.slices)
        object.__setattr__(self, "slices", slices)
        for m, s in enumerate(slices):
            if s.dim != self.dim:
                raise DimensionError(f"slice {m} has dimension {s.dim}, expected {self.dim}")
            if not s.is_homogeneous(m):
                raise ValueError(f"slice {m} is not homogeneous of degree {m}")

    @property
    def truncation(self) -> int:
        return len(self.slices) - 1

    def __getitem__(self, m: int) -> Polynomial:
        if 0 <= m < len(self.slices):
            return self.slices[m]
        return Polynomial.zero(self.dim)

    def to_polynomial(self) -> Polynomial:
        out = Polynomial.zero(self.dim)
        for s in self.slices:
            out = add(out, s)
        return out

    @classmethod
    def from_polynomial(cls, f: Polynomial, truncation: int | None = None) -> "GradedSeries":
        return homogeneous_expansion(f, truncation)

    @classmethod
    def zero(cls, dim: int, truncation: int) -> "GradedSeries":
        return cls(dim, tuple(Polynomial.zero(dim) for _ in range(truncation + 1)))

    def __add__(self, other: "GradedSeries") -> "GradedSeries":
        if self.dim != other.dim:
            raise DimensionError("dimension mismatch")
        n = max(len(self.slices), len(other.slices))
        return GradedSeries(self.dim, tuple(add(self[m], other[m]) for m in range(n)))


def homogeneous_expansion(f: Polynomial, truncation: int | None = None) -> GradedSeries:
    """Split f into its homogeneous slices f_0..f_M.

    ``truncation`` defaults to deg f (0 for the zero polynomial); terms above it are dropped.
    """
    if truncation is None:
        truncation = 0 if f.is_zero() else f.degree
    buckets: list[dict] = [{} for _ in range(truncation + 1)]
    for alpha, c in f.items():
        m = sum(alpha)
        if m <= truncation:
            buckets[m][alpha] = c
    return GradedSeries(f.dim, tuple(Polynomial._from_clean(f.dim, b) for b in buckets))


def graded_product_slice(P: Polynomial, phi: GradedSeries, n: int) -> Polynomial:
    """Degree-n slice of P*phi, i.e. sum over beta of P_beta * phi_(n-beta)."""
    if P.dim != phi.dim:
        raise DimensionError("dimension mismatch")
    if n > phi.truncation + (0 if P.is_zero() else P.degree):
        raise ValueError(f"degree {n} exceeds truncation {phi.truncation} + deg P")
    out = Polynomial.zero(P.dim)
    if P.is_zero():
        return out
    for beta in range(P.low_degree(), P.degree + 1):
        Pb = P.homogeneous_part(beta)
        if Pb and 0 <= n - beta <= phi.truncation:
            out = add(out, multiply(Pb, phi[n - beta]))
    return out
