"""Command-line front end.

Exit codes: 0 success, 1 parse or usage error, 2 vanishing leading minor,
3 factors fail verification, 4 a determinant identity is violated.
stdout carries only JSON documents (or the text rendering with
``--format txt``); diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from itertools import product

from .bruhat import BruhatFactors, bruhat_flip, bruhat_general, check_bruhat
from .complexity import closed_form, recurrence_t
from .domain import OpCounter
from .errors import DimensionMismatch, IndexOutOfRange, ZeroPivotMinor
from .etd import EtdFactors, check_etd, etd
from .io import (
    ParseError,
    document_to_factors,
    dump_document,
    factors_to_document,
    load_document,
    parse_number,
    read_matrix,
)
from .ldu import LduFactors, ldu_full, reconstruct_ldu
from .matrix import Matrix
from .minors import (
    check_base_minor_identity,
    check_sylvester,
    oracle_alphas,
    oracle_l,
    oracle_u,
)

EXIT_OK, EXIT_PARSE, EXIT_PIVOT, EXIT_VERIFY, EXIT_IDENTITY = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


# ---- verification shared by decompose --verify and verify


def check_ldu(a: Matrix, f: LduFactors, denoms=None) -> list[str]:
    if not a.is_square() or f.L.shape != a.shape or f.U.shape != a.shape:
        raise DimensionMismatch(f"LDU factors do not conform to a {a.shape} matrix")
    bad = []
    if not (f.L.is_integral() and f.U.is_integral()):
        bad.append("L, U over R")
    if not (f.L.is_lower() and f.U.is_upper()):
        bad.append("L lower, U upper")
    alphas = list(f.alphas)
    if len(alphas) != a.nrows or f.L.diag() != alphas or f.U.diag() != alphas or 0 in alphas:
        bad.append("diagonals equal the nonzero leading minors")
        return bad
    if denoms is not None and list(denoms) != list(f.denominators):
        bad.append("denominators are products of consecutive minors")
    if reconstruct_ldu(f) != a.to_field():
        bad.append("L D U = A")
    return bad


def _check(a: Matrix, f, denoms=None) -> list[str]:
    if isinstance(f, LduFactors):
        return check_ldu(a, f, denoms)
    if isinstance(f, EtdFactors):
        return check_etd(a, f)
    if isinstance(f, BruhatFactors):
        return check_bruhat(a, f)
    raise TypeError(type(f).__name__)


# ---- decompose


def _count_report(a: Matrix, method: str, counter: OpCounter) -> dict:
    report = {
        "n": a.nrows,
        "method": method,
        "block_products": counter.block_product_count,
        "ring_muls_in_blocks": counter.block_mul_count,
        "base_case_muls": counter.base_case_ops,
        "measured": counter.block_mul_count + counter.base_case_ops,
    }
    n = a.nrows
    if method in ("ldu", "bruhat-flip") and n >= 2 and n & (n - 1) == 0:
        report["expected_t"] = recurrence_t(n)
        report["closed_form"] = str(closed_form(n))
        report["matches"] = report["measured"] == report["expected_t"]
    if method in ("etd", "bruhat"):
        report["recursion_nodes"] = len(counter.trace)
    return report


def _render_txt(doc: dict) -> str:
    out = [f"method: {doc['method']}", f"rank: {doc['rank']}"]
    for key in ("P", "Q"):
        if key in doc:
            out.append(f"{key}: {' '.join(map(str, doc[key]))}")
    for key in ("L", "V", "U"):
        if key in doc:
            rows = doc[key]
            w = max((len(x) for r in rows for x in r), default=1)
            out.append(f"{key}:")
            out.extend("  " + " ".join(x.rjust(w) for x in r) for r in rows)
    for key, vals in doc["D"].items():
        out.append(f"D.{key}: {' '.join(map(str, vals))}")
    if "alphas" in doc:
        out.append(f"alphas: {' '.join(doc['alphas'])}")
    return "\n".join(out)


def cmd_decompose(args) -> int:
    a = read_matrix(args.input)
    counter = OpCounter()
    method = args.method
    if method == "ldu":
        f = ldu_full(a, counter)
    elif method == "bruhat-flip":
        f = bruhat_flip(a, counter)
    elif method == "bruhat":
        f = bruhat_general(a, counter)
    else:
        f = etd(a, counter)
    doc = factors_to_document(f)
    if args.verify:
        bad = _check(a, f)
        if bad:
            _err("verification failed: " + "; ".join(bad))
            return EXIT_VERIFY
    print(_render_txt(doc) if args.format == "txt" else dump_document(doc))
    if args.count_ops:
        print(json.dumps(_count_report(a, method, counter), separators=(",", ":")))
    return EXIT_OK


# ---- verify


def cmd_verify(args) -> int:
    a = read_matrix(args.input)
    doc = load_document(args.factors)
    f = document_to_factors(doc)
    denoms = None
    if isinstance(f, LduFactors):
        denoms = [parse_number(x) for x in doc["D"].get("denoms", [])]
    bad = _check(a, f, denoms)
    if bad:
        _err("invalid factors: " + "; ".join(bad))
        return EXIT_VERIFY
    return EXIT_OK


# ---- oracle


def _oracle_matrix(args) -> Matrix:
    if args.input:
        return read_matrix(args.input)
    rng = random.Random(args.seed)
    n = args.size
    if n < 1:
        raise UsageError("--size must be positive")
    return Matrix([[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)], n)


def _pairs(n: int, k, s):
    if k is not None or s is not None:
        if k is None or s is None:
            raise UsageError("--k and --s go together")
        if not 0 <= k < s <= n:
            raise UsageError(f"need 0 <= k < s <= {n}, got k={k}, s={s}")
        return [(k, s)]
    return [(k, s) for s in range(1, n + 1) for k in range(s)]


def cmd_oracle(args) -> int:
    a = _oracle_matrix(args)
    n = min(a.shape)
    violations: list[dict] = []
    cases = 0
    if args.check == "sylvester":
        if not a.is_square():
            raise UsageError("sylvester check needs a square matrix")
        for k, s in _pairs(n, args.k, args.s):
            cases += 1
            if not check_sylvester(a, k, s):
                violations.append({"k": k, "s": s})
    elif args.check == "base-identity":
        if not a.is_square():
            raise UsageError("base-identity check needs a square matrix")
        pairs = _pairs(n, args.k, args.s)
        idx = [args.i] if args.i is not None else range(1, n + 1)
        jdx = [args.j] if args.j is not None else range(1, n + 1)
        for (k, s), i, j in product(pairs, idx, jdx):
            if not (1 <= i <= n and 1 <= j <= n):
                raise UsageError(f"row/column ({i}, {j}) outside 1..{n}")
            cases += 1
            if not check_base_minor_identity(a, i, j, k, s):
                violations.append({"i": i, "j": j, "k": k, "s": s})
    else:
        f = ldu_full(a)
        expected = {"L": oracle_l(a), "U": oracle_u(a)}
        for name, got in (("L", f.L), ("U", f.U)):
            for r, c in product(range(a.nrows), repeat=2):
                cases += 1
                if got[r, c] != expected[name][r, c]:
                    violations.append({"factor": name, "row": r + 1, "col": c + 1})
        for t, (x, y) in enumerate(zip(f.alphas, oracle_alphas(a)), start=1):
            cases += 1
            if x != y:
                violations.append({"factor": "alpha", "order": t})
    print(json.dumps({"check": args.check, "cases": cases, "violations": violations}, separators=(",", ":")))
    if violations:
        _err(f"{len(violations)} violation(s), first at {violations[0]}")
        return EXIT_IDENTITY
    return EXIT_OK


# ---- entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bruhat", description="Exact LDU, Bruhat and triangular decompositions.")
    sub = parser.add_subparsers(dest="command", required=True)

    dec = sub.add_parser("decompose", help="factor a matrix")
    dec.add_argument("--input", required=True)
    dec.add_argument("--method", choices=("ldu", "bruhat", "bruhat-flip", "etd"), default="etd")
    dec.add_argument("--format", choices=("txt", "json"), default="json")
    dec.add_argument("--verify", action="store_true")
    dec.add_argument("--count-ops", action="store_true")
    dec.set_defaults(func=cmd_decompose)

    ver = sub.add_parser("verify", help="check a factors document against a matrix")
    ver.add_argument("--input", required=True)
    ver.add_argument("--factors", required=True)
    ver.set_defaults(func=cmd_verify)

    ora = sub.add_parser("oracle", help="check determinant identities by brute force")
    ora.add_argument("--input")
    ora.add_argument("--check", choices=("sylvester", "minors", "base-identity"), required=True)
    ora.add_argument("--k", type=int)
    ora.add_argument("--s", type=int)
    ora.add_argument("--i", type=int)
    ora.add_argument("--j", type=int)
    ora.add_argument("--seed", type=int, default=0)
    ora.add_argument("--size", type=int, default=5)
    ora.set_defaults(func=cmd_oracle)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (ParseError, UsageError, DimensionMismatch, IndexOutOfRange) as exc:
        _err(f"error: {exc}")
        return EXIT_PARSE
    except ZeroPivotMinor as exc:
        _err(str(exc))
        return EXIT_PIVOT


if __name__ == "__main__":
    sys.exit(main())
