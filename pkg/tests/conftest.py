from fractions import Fraction

import pytest
from hypothesis import strategies as st

from fischerlab import Polynomial, parse_expression
from fischerlab.poly import monomials_of_degree
from fischerlab.scalars import ComplexRational

small_fracs = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
coeffs = st.builds(ComplexRational, small_fracs, small_fracs)


@st.composite
def polynomials(draw, dim=None, max_degree=4, max_terms=5):
    d = draw(st.integers(1, 3)) if dim is None else dim
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        m = draw(st.integers(0, max_degree))
        alpha = draw(st.sampled_from(monomials_of_degree(d, m)))
        terms[alpha] = draw(coeffs)
    return Polynomial(d, terms)


@st.composite
def homogeneous(draw, dim, m, nonzero=True):
    basis = monomials_of_degree(dim, m)
    chosen = draw(st.lists(st.sampled_from(basis), min_size=1 if nonzero else 0,
                           max_size=min(4, len(basis)), unique=True))
    p = Polynomial(dim, {a: draw(coeffs) for a in chosen})
    if nonzero and p.is_zero():
        p = Polynomial.monomial(chosen[0])
    return p


@pytest.fixture
def z():
    """z(expr, dim=2) shorthand for parse_expression."""
    return lambda text, dim=2: parse_expression(text, dim)


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
