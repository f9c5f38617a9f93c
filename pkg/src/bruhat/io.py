"""Matrix files and factor documents.

A matrix file is a header line ``R C`` followed by R lines of C integers.
Matrices may also be given as a JSON list of rows.  Factor documents are
JSON objects whose numbers are all decimal strings (``"num/den"`` for
fractions) so that arbitrary precision survives any consumer.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .bruhat import BruhatFactors
from .etd import EtdFactors
from .ldu import LduFactors
from .matrix import Matrix, Permutation

__all__ = [
    "ParseError",
    "parse_matrix",
    "render_matrix",
    "read_matrix",
    "factors_to_document",
    "document_to_factors",
    "dump_document",
    "load_document",
    "parse_number",
]

METHODS = ("ldu", "bruhat", "etd")


class ParseError(ValueError):
    pass


def _int(tok: str) -> int:
    body = tok[1:] if tok.startswith("-") else tok
    if not body.isdigit():
        raise ParseError(f"not an integer: {tok!r}")
    return int(tok)


def parse_matrix(text: str) -> Matrix:
    """Parse the ``R C`` text format, or a JSON list of integer rows."""
    stripped = text.strip()
    if stripped.startswith("["):
        return _parse_json_matrix(stripped)
    lines = [ln.split() for ln in stripped.splitlines() if ln.strip()]
    if not lines or len(lines[0]) != 2:
        raise ParseError("header must be 'R C'")
    nrows, ncols = (_int(t) for t in lines[0])
    if nrows < 0 or ncols < 0:
        raise ParseError("negative dimensions")
    body = lines[1:]
    if ncols == 0 and not body:
        # rows of a zero-width matrix render as blank lines
        body = [[] for _ in range(nrows)]
    if len(body) != nrows:
        raise ParseError(f"expected {nrows} rows, found {len(body)}")
    rows = []
    for i, toks in enumerate(body):
        if len(toks) != ncols:
            raise ParseError(f"row {i + 1} has {len(toks)} entries, expected {ncols}")
        rows.append([_int(t) for t in toks])
    return Matrix(rows, ncols)


def _parse_json_matrix(text: str) -> Matrix:
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON matrix: {exc}") from exc
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError("JSON matrix must be a list of rows")
    ncols = len(rows[0]) if rows else 0
    out = []
    for r in rows:
        if len(r) != ncols:
            raise ParseError("ragged JSON matrix")
        out.append([_json_entry(x) for x in r])
    return Matrix(out, ncols)


def _json_entry(x) -> int:
    if isinstance(x, int) and not isinstance(x, bool):
        return x
    if isinstance(x, str):
        return _int(x.strip())
    raise ParseError(f"not an integer: {x!r}")


def render_matrix(m: Matrix) -> str:
    lines = [f"{m.nrows} {m.ncols}"]
    lines.extend(" ".join(str(x) for x in row) for row in m)
    return "\n".join(lines) + "\n"


def read_matrix(path: str | Path) -> Matrix:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(str(exc)) from exc
    return parse_matrix(text)


def _num(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)


def parse_number(s) -> Fraction | int:
    if not isinstance(s, str):
        raise ParseError(f"numbers must be decimal strings, got {s!r}")
    num, sep, den = s.partition("/")
    if not sep:
        return _int(num.strip())
    d = _int(den.strip())
    if d == 0:
        raise ParseError(f"zero denominator in {s!r}")
    return Fraction(_int(num.strip()), d)


def _mat(m: Matrix) -> list[list[str]]:
    return [[_num(x) for x in row] for row in m]


def _parse_mat(rows) -> Matrix:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError("matrix field must be a list of rows")
    ncols = len(rows[0]) if rows else 0
    if any(len(r) != ncols for r in rows):
        raise ParseError("ragged matrix field")
    return Matrix([[parse_number(x) for x in r] for r in rows], ncols)


def factors_to_document(f) -> dict:
    """JSON-ready dict with a fixed field order per method."""
    if isinstance(f, LduFactors):
        return {
            "method": "ldu",
            "rank": len(f.alphas),
            "L": _mat(f.L),
            "U": _mat(f.U),
            "D": {"denoms": [_num(d) for d in f.denominators]},
            "alphas": [_num(a) for a in f.alphas],
        }
    if isinstance(f, EtdFactors):
        return {
            "method": "etd",
            "rank": f.rank,
            "P": list(f.P.map),
            "Q": list(f.Q.map),
            "L": _mat(f.L),
            "U": _mat(f.U),
            "D": {"denoms": [_num(d) for d in f.D_denoms]},
        }
    if isinstance(f, BruhatFactors):
        return {
            "method": "bruhat",
            "rank": f.rank,
            "V": _mat(f.V),
            "U": _mat(f.U),
            "D": {
                "scales": [_num(x) for x in f.w_scales],
                "perm": [-1 if j is None else j for j in f.w_perm],
            },
        }
    raise TypeError(f"no document form for {type(f).__name__}")


def _field(doc: dict, key: str):
    if key not in doc:
        raise ParseError(f"missing field {key!r}")
    return doc[key]


def _perm(xs) -> Permutation:
    if not isinstance(xs, list) or not all(isinstance(x, int) for x in xs):
        raise ParseError("permutation must be a list of integers")
    try:
        return Permutation(xs)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def document_to_factors(doc: dict):
    if not isinstance(doc, dict):
        raise ParseError("factors document must be a JSON object")
    method = _field(doc, "method")
    rank = _field(doc, "rank")
    if not isinstance(rank, int):
        raise ParseError("rank must be an integer")
    d = _field(doc, "D")
    if not isinstance(d, dict):
        raise ParseError("D must be an object")
    if method == "ldu":
        alphas = tuple(parse_number(a) for a in _field(doc, "alphas"))
        L, U = _parse_mat(_field(doc, "L")), _parse_mat(_field(doc, "U"))
        # M and W are not part of the document
        return LduFactors(L, U, alphas, None, None, 0, L.nrows)
    if method == "etd":
        denoms = tuple(parse_number(x) for x in _field(d, "denoms"))
        return EtdFactors(
            _perm(_field(doc, "P")),
            _parse_mat(_field(doc, "L")),
            denoms,
            _parse_mat(_field(doc, "U")),
            _perm(_field(doc, "Q")),
            rank,
        )
    if method == "bruhat":
        perm = _field(d, "perm")
        if not isinstance(perm, list) or not all(isinstance(j, int) for j in perm):
            raise ParseError("D.perm must be a list of integers")
        scales = tuple(Fraction(parse_number(x)) for x in _field(d, "scales"))
        return BruhatFactors(
            _parse_mat(_field(doc, "V")),
            tuple(None if j < 0 else j for j in perm),
            scales,
            _parse_mat(_field(doc, "U")),
            rank,
        )
    raise ParseError(f"unknown method {method!r}")


def dump_document(doc: dict) -> str:
    return json.dumps(doc, separators=(",", ":"))


def load_document(path: str | Path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(str(exc)) from exc
