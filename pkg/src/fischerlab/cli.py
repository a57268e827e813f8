"""Command-line interface: ``fischerlab <subcommand> ...``.

Exit status: 0 success, 1 a verification flag failed, 2 usage or parse
error, 3 I/O error, 4 internal theorem-violation fault.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import asdict
from fractions import Fraction

from . import __version__
from .documents import (
    DocumentError,
    load_json,
    load_series,
    polynomial_from_any,
    polynomial_to_doc,
    rows_to_csv,
)
from .fischer import FischerFault, analyze_structure, decompose, uniqueness_order_bound
from .growth import growth_report
from .ks import ks_scan
from .poly import add, apply_operator, conjugate_coefficients, multiply
from .seqlemma import (
    LemmaConfig,
    check_hypothesis_i,
    check_hypothesis_ii,
    classify_regime,
    conclusion_consistency,
    limit_probe,
)
from .textio import ParseError, print_expression
from .verify import run_identity_suite

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_IO, EXIT_FAULT = 0, 1, 2, 3, 4
SEED_ENV = "FISCHERLAB_SEED"


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    return int(env) if env else 0


def _jsonable(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _emit(payload: dict, fmt: str, rows: list[dict] | None = None, out=None) -> None:
    out = out or sys.stdout
    if fmt == "csv" and rows is not None:
        out.write(rows_to_csv(rows))
    elif fmt == "text":
        for k, v in payload.items():
            out.write(f"{k}: {_jsonable(v)}\n")
    else:
        out.write(json.dumps(_jsonable(payload), indent=2) + "\n")


def cmd_decompose(args) -> int:
    if args.input:
        doc = load_json(args.input)
        dim = doc.get("dim", args.dim)
        f, P = polynomial_from_any(doc["f"], dim), polynomial_from_any(doc["P"], dim)
    else:
        if args.f is None or args.P is None or args.dim is None:
            raise DocumentError("decompose needs --f, --P and --dim (or --input)")
        f, P = polynomial_from_any(args.f, args.dim), polynomial_from_any(args.P, args.dim)
    dec = decompose(f, P)
    # recompute both flags here, independently of the engine's own checks
    Pk_star = conjugate_coefficients(analyze_structure(P).principal)
    kernel_ok = apply_operator(Pk_star, dec.r).is_zero()
    recon_ok = add(multiply(P, dec.q), dec.r) == f
    ok = kernel_ok and recon_ok and dec.residual_check and dec.reconstruction_check
    _emit({
        "q": print_expression(dec.q),
        "r": print_expression(dec.r),
        "q_doc": polynomial_to_doc(dec.q),
        "r_doc": polynomial_to_doc(dec.r),
        "residual_check": kernel_ok,
        "reconstruction_check": recon_ok,
    }, args.format)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_ks_scan(args) -> int:
    Pk = polynomial_from_any(args.P, args.dim)
    rep = ks_scan(Pk, args.m_min, args.m_max)
    _emit(asdict(rep), args.format, rows=rep.rows())
    return EXIT_OK if all(rep.certified) and all(u > 0 for u in rep.mu) else EXIT_VERIFY


def cmd_order(args) -> int:
    series = load_series(args.input)
    M = args.truncation if args.truncation is not None else series.truncation
    rep = growth_report(series, M, seed=_seed(args), method=args.method)
    _emit(asdict(rep), args.format, rows=rep.rows())
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_identity_suite(_seed(args))
    _emit({"checks": [asdict(r) for r in results], "all_passed": all(r.passed for r in results)},
          args.format, rows=[asdict(r) for r in results])
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


def cmd_lemma_check(args) -> int:
    doc = load_json(args.input)
    a = doc["sequence"]
    cfg = LemmaConfig.from_dict(doc["config"])
    m_max = int(doc.get("m_max", args.m_max if args.m_max is not None else len(a) - 1 - cfg.beta_upper))
    h1 = check_hypothesis_i(a, cfg, m_max)
    h2 = check_hypothesis_ii(a, cfg, m_max)
    regime = classify_regime(cfg)
    payload = {
        "config": cfg.to_dict(),
        "hypothesis_i": {"all_passed": h1.all_passed, "failures": h1.failures, "tightest_A": h1.tightest_A},
        "hypothesis_ii": {"all_passed": h2.all_passed, "failures": h2.failures},
        "regime": asdict(regime),
        "consistency": asdict(conclusion_consistency(a, cfg, m_max)),
    }
    if regime.conclusion_applies:
        probe = limit_probe(cfg, m=1, j_max=args.j_max)
        payload["probe"] = {"slopes": probe.slopes, "tail_max": probe.tail_max,
                            "supports_conclusion": probe.supports_conclusion}
    _emit(payload, args.format)
    return EXIT_VERIFY if payload["consistency"]["status"] == "alert" else EXIT_OK


def _number(text: str):
    try:
        return Fraction(text)
    except ValueError:
        return float(text)


def cmd_bound(args) -> int:
    b = uniqueness_order_bound(args.k, args.beta1, args.beta2, _number(args.tau))
    _emit({"rho_max": b.rho_max, "rho_max_float": float(b.rho_max), "branch": b.branch,
           "in_expected_range": b.in_expected_range, "existence_rho": b.existence_rho}, args.format)
    return EXIT_OK if b.in_expected_range else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fischerlab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("json", "text")):
        p.add_argument("--format", choices=formats, default="json")
        p.add_argument("--seed", type=int, default=None, help=f"default 0, or ${SEED_ENV}")

    p = sub.add_parser("decompose", help="f = P q + r with P_k*(D) r = 0")
    p.add_argument("--f")
    p.add_argument("--P")
    p.add_argument("--dim", type=int)
    p.add_argument("--input", help="JSON file with keys f, P (documents or expressions) and dim")
    common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("ks-scan", help="minimal apolar singular values of g -> P_k g")
    p.add_argument("--P", required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--m-min", type=int, default=2)
    p.add_argument("--m-max", type=int, default=10)
    p.add_argument("--tolerance", type=float, default=1e-10, help="Jacobi off-diagonal tolerance")
    common(p, ("json", "csv", "text"))
    p.set_defaults(func=cmd_ks_scan)

    p = sub.add_parser("order", help="order-of-growth estimate of a truncated series")
    p.add_argument("--input", required=True, help="GradedSeries JSON")
    p.add_argument("--truncation", type=int)
    p.add_argument("--method", choices=("regression", "ratio"), default="regression")
    common(p, ("json", "csv", "text"))
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("verify", help="run the exact identity suite")
    common(p, ("json", "csv", "text"))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lemma-check", help="sequence-lemma hypotheses, regime and limit probe")
    p.add_argument("--input", required=True, help='JSON {"sequence": [...], "config": {...}, "m_max": n}')
    p.add_argument("--m-max", type=int)
    p.add_argument("--j-max", type=int, default=200)
    p.add_argument("--tolerance", type=float, default=1e-12)
    common(p)
    p.set_defaults(func=cmd_lemma_check)

    p = sub.add_parser("bound", help="order bound for uniqueness")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--beta1", type=int, required=True)
    p.add_argument("--beta2", type=int, required=True)
    p.add_argument("--tau", default="0")
    common(p)
    p.set_defaults(func=cmd_bound)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "tolerance", None) is not None:
        _apply_tolerance(args)
    try:
        return args.func(args)
    except FischerFault as exc:
        print(f"fault: {exc}", file=sys.stderr)
        return EXIT_FAULT
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ParseError, DocumentError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _apply_tolerance(args) -> None:
    if args.command == "ks-scan":
        from . import ks
        ks.JACOBI_TOL = args.tolerance
    elif args.command == "lemma-check":
        from . import seqlemma
        seqlemma.LOG_TOL = args.tolerance


if __name__ == "__main__":
    sys.exit(main())
