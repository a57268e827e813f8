"""JSON and CSV wire formats.

PolynomialDocument::

    {"dim": 2, "terms": [{"alpha": [1, 1], "re": "1/1", "im": "2/1"}, ...]}

Rationals always travel as reduced "p/q" strings (q > 0), never floats.
A GradedSeries is a JSON array of PolynomialDocuments, index = degree.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path

from .poly import GradedSeries, Polynomial
from .scalars import ComplexRational
from .textio import parse_expression


class DocumentError(ValueError):
    pass


def rational_to_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def str_to_rational(s: str) -> Fraction:
    if not isinstance(s, str):
        raise DocumentError(f"rational must be a string, got {type(s).__name__}")
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"bad rational {s!r}") from exc


def polynomial_to_doc(p: Polynomial) -> dict:
    return {
        "dim": p.dim,
        "terms": [{"alpha": list(a), "re": rational_to_str(c.re), "im": rational_to_str(c.im)}
                  for a, c in p.sorted_items()],
    }


def doc_to_polynomial(doc: dict) -> Polynomial:
    try:
        dim = doc["dim"]
        terms = {}
        for t in doc["terms"]:
            alpha = tuple(t["alpha"])
            c = ComplexRational(str_to_rational(t.get("re", "0/1")), str_to_rational(t.get("im", "0/1")))
            if alpha in terms:
                raise DocumentError(f"duplicate multi-index {list(alpha)}")
            terms[alpha] = c
    except (KeyError, TypeError) as exc:
        raise DocumentError(f"malformed polynomial document: {exc}") from exc
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise DocumentError("dim must be an integer")
    try:
        return Polynomial(dim, terms)
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc


def series_to_doc(s: GradedSeries) -> list[dict]:
    return [polynomial_to_doc(p) for p in s.slices]


def doc_to_series(doc: list) -> GradedSeries:
    if not isinstance(doc, list) or not doc:
        raise DocumentError("a graded series is a nonempty array of polynomial documents")
    slices = [doc_to_polynomial(d) for d in doc]
    dims = {p.dim for p in slices}
    if len(dims) != 1:
        raise DocumentError("all slices must share one dimension")
    try:
        return GradedSeries(dims.pop(), tuple(slices))
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc


def dumps_polynomial(p: Polynomial) -> str:
    return json.dumps(polynomial_to_doc(p))


def loads_polynomial(text: str) -> Polynomial:
    return doc_to_polynomial(json.loads(text))


def polynomial_from_any(value, dim: int | None = None) -> Polynomial:
    """Accept a PolynomialDocument dict or an expression string (needs ``dim``)."""
    if isinstance(value, dict):
        return doc_to_polynomial(value)
    if isinstance(value, str):
        if dim is None:
            raise DocumentError("expression input needs a dimension")
        return parse_expression(value, dim)
    raise DocumentError(f"cannot read a polynomial from {type(value).__name__}")


def load_json(path: str | Path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def load_series(path: str | Path) -> GradedSeries:
    return doc_to_series(load_json(path))


def rows_to_csv(rows: list[dict], fieldnames: list[str] | None = None) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fieldnames or list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()
