"""Exact triangular decomposition ``A = P L D U Q`` of any matrix over a domain.

``P, Q`` are permutations, ``L`` (n x n) and ``U`` (m x m) are nonsingular
triangular over the ring with ``P L P^T`` lower and ``Q^T U Q`` upper
triangular, and ``D = diag(1/d_1, ..., 1/d_r, 0, ...)`` with ``d_i`` in the
ring and ``r = rank(A)``.  ``L`` and ``U`` end in identity blocks of size
``n - r`` and ``m - r``, and triangularity under ``P``/``Q`` survives
replacing those blocks by arbitrary triangular ones.

The recursion splits off a square leading block, decomposes it, and
continues on the blocks left after eliminating with its nondegenerate part:
a single Schur complement when the leading block has full rank, otherwise
the off-diagonal residues ``C1``, ``B1`` and the residual ``D'_4``.  The
intermediate algebra runs over the fraction field.  At the top level the
assembled factors are rescaled column/row-wise so that ``L`` and ``U`` carry
the leading minors of ``P^T A Q^T`` on their diagonals; that representative
is fraction-free, which is asserted entry by entry.

Set ``BRUHAT_DEBUG_ASSERTS=1`` to check the triangularity of every
intermediate conjugation at every recursion level.
"""

from __future__ import annotations

import os
from contextvars import ContextVar
import random
from dataclasses import dataclass
from typing import NamedTuple

from .domain import ZZ, NodeTrace, OpCounter, Ring
from .errors import DimensionMismatch, InexactDivision, NotInRing
from .matrix import Matrix, Permutation, apply_perm, bareiss_rank, inverse_lower, inverse_upper, split

__all__ = ["EtdFactors", "etd", "verify_etd", "check_etd", "etd_to_ldu_grouping", "leading_block_size"]


@dataclass(frozen=True)
class EtdFactors:
    P: Permutation
    L: Matrix
    D_denoms: tuple
    U: Matrix
    Q: Permutation
    rank: int

    @property
    def shape(self) -> tuple[int, int]:
        return (self.L.nrows, self.U.ncols)

    def D(self, ring: Ring = ZZ) -> Matrix:
        n, m = self.shape
        return Matrix.diagonal([ring.frac(ring.one, d) for d in self.D_denoms], n, m)

    def reconstruct(self, ring: Ring = ZZ) -> Matrix:
        lhs = apply_perm(self.P, self.L.to_field(ring), "left")
        rhs = apply_perm(self.Q, self.U.to_field(ring), "right")
        return lhs @ self.D(ring) @ rhs


_TRACE: ContextVar[OpCounter | None] = ContextVar("etd_trace", default=None)


class _Etd(NamedTuple):
    """Field-valued decomposition; ``diag`` holds the nonzero entries of D."""

    P: Permutation
    L: Matrix
    diag: list
    U: Matrix
    Q: Permutation


def _debug() -> bool:
    return os.environ.get("BRUHAT_DEBUG_ASSERTS") == "1"


def leading_block_size(n: int, m: int) -> int:
    return min((n + 1) // 2, n - 1, m - 1)


def _identity(n: int) -> Permutation:
    return Permutation.identity(n)


def _dmat(values: list, n: int, m: int) -> Matrix:
    return Matrix.diagonal(values, n, m)


def _inv_values(values: list) -> list:
    return [1 / v for v in values]


def _zero(n: int, m: int) -> Matrix:
    return Matrix.zeros(n, m)


def _eye(n: int) -> Matrix:
    return Matrix.identity(n)


def _left(p: Permutation, a: Matrix) -> Matrix:
    return apply_perm(p, a, "left")


def _right(a: Matrix, p: Permutation) -> Matrix:
    return apply_perm(p, a, "right")


def _core(a: Matrix, ring: Ring) -> _Etd:
    return _sort_tails(_core_unsorted(a, ring))


def _sort_tails(e: _Etd) -> _Etd:
    """Reorder the identity tails of L and U to follow the original row/column order.

    Conjugating by ``diag(I_r, S)`` leaves ``P L P^T``, ``Q^T U Q`` and the
    product unchanged (D vanishes outside its leading r x r block), and with
    sorted tails any triangular block may replace the identities.
    """
    r = len(e.diag)
    rows = e.P.inverse().map[r:]
    cols = e.Q.map[r:]
    if list(rows) == sorted(rows) and list(cols) == sorted(cols):
        return e
    s_row = Permutation.block_diag(_identity(r), Permutation(sorted(range(len(rows)), key=rows.__getitem__)))
    s_col = Permutation.block_diag(_identity(r), Permutation(sorted(range(len(cols)), key=cols.__getitem__)))
    return _Etd(e.P @ s_row.T, s_row.conjugate(e.L), e.diag, s_col.conjugate(e.U), s_col @ e.Q)


def _core_unsorted(a: Matrix, ring: Ring) -> _Etd:
    n, m = a.shape
    if a.is_zero():
        return _Etd(_identity(n), _eye(n), [], _eye(m), _identity(m))
    if m == 1 and n > 1:
        t = _core(a.T, ring)
        return _Etd(t.Q.T, t.U.T, t.diag, t.L.T, t.P.T)
    if n == 1:
        return _row_case(a)
    if n == 2 and m == 2:
        return _two_by_two(a)
    return _recursive(a, ring)


def _row_case(a: Matrix) -> _Etd:
    """1 x m: move the first nonzero entry to the front, as in the 1 x 2 case."""
    m = a.ncols
    row = a.row(0)
    j = next(i for i, x in enumerate(row) if x != 0)
    q = Permutation([j] + [i for i in range(m) if i != j])
    pivot = row[j]
    u = _eye(m).with_block(0, 0, Matrix([[pivot] + [row[i] for i in q.map[1:]]]))
    return _Etd(_identity(1), Matrix([[pivot]]), [1 / pivot], u, q)


def _two_by_two(a: Matrix) -> _Etd:
    (al, be), (ga, de) = a.row(0), a.row(1)
    delta = al * de - be * ga
    eps = delta if delta != 0 else 1
    swap, ident = Permutation([1, 0]), _identity(2)

    if al != 0:
        diag = [1 / al] + ([1 / (delta * al)] if delta != 0 else [])
        return _Etd(ident, Matrix([[al, 0], [ga, eps]]), diag, Matrix([[al, be], [0, eps]]), ident)
    if be != 0:
        diag = [1 / be] + ([-1 / (delta * be)] if delta != 0 else [])
        return _Etd(ident, Matrix([[be, 0], [de, eps]]), diag, Matrix([[be, 0], [0, eps]]), swap)
    if ga != 0:
        diag = [1 / ga] + ([-1 / (delta * ga)] if delta != 0 else [])
        return _Etd(swap, Matrix([[ga, 0], [0, eps]]), diag, Matrix([[ga, de], [0, eps]]), ident)
    return _Etd(swap, Matrix([[de, 0], [0, 1]]), [1 / de], Matrix([[de, 0], [0, 1]]), swap)


def _recursive(a: Matrix, ring: Ring) -> _Etd:
    n, m = a.shape
    counter = _TRACE.get()
    if counter is not None:
        counter.trace.append(NodeTrace(n, m))
    h = leading_block_size(n, m)
    blk_a, blk_b, blk_c, blk_d = split(a, h, h)
    e1 = _core(blk_a, ring)
    r1 = len(e1.diag)
    if r1 == h:
        return _full_rank_lead(e1, blk_b, blk_c, blk_d, ring)
    return _deficient_lead(e1, r1, h, blk_b, blk_c, blk_d, ring)


def _full_rank_lead(e1: _Etd, b: Matrix, c: Matrix, d: Matrix, ring: Ring) -> _Etd:
    h = e1.L.nrows
    p, q = d.shape
    d1 = _dmat(e1.diag, h, h)
    d1_inv = _dmat(_inv_values(e1.diag), h, h)
    x = _right(c, e1.Q.T) @ inverse_upper(e1.U) @ d1_inv
    y = d1_inv @ inverse_lower(e1.L) @ _left(e1.P.T, b)
    e2 = _core(d - x @ d1 @ y, ring)

    big_p = Permutation.block_diag(e1.P, e2.P)
    big_q = Permutation.block_diag(e1.Q, e2.Q)
    L = Matrix.from_blocks([[e1.L, _zero(h, p)], [_left(e2.P.T, x), e2.L]])
    U = Matrix.from_blocks([[e1.U, _right(y, e2.Q.T)], [_zero(q, h), e2.U]])
    out = _Etd(big_p, L, e1.diag + e2.diag, U, big_q)
    if _debug():
        _assert_chain(L, [big_p], U, [big_q])
    return out


def _deficient_lead(e1: _Etd, r1: int, h: int, b: Matrix, c: Matrix, d: Matrix, ring: Ring) -> _Etd:
    p, q = d.shape
    kk = h - r1
    l0, m0 = e1.L.block(0, r1, 0, r1), e1.L.block(r1, h, 0, r1)
    u0, v0 = e1.U.block(0, r1, 0, r1), e1.U.block(0, r1, r1, h)
    if e1.L.block(r1, h, r1, h) != _eye(kk) or e1.U.block(r1, h, r1, h) != _eye(kk):
        raise AssertionError("leading block decomposition lacks identity trailing blocks")
    dv = e1.diag
    d1_inv = _dmat(_inv_values(dv), r1, r1)

    c_hat = _right(c, e1.Q.T) @ inverse_upper(e1.U)
    b_hat = inverse_lower(e1.L) @ _left(e1.P.T, b)
    c0, c1 = c_hat.block(0, p, 0, r1), c_hat.block(0, p, r1, h)
    b0, b1 = b_hat.block(0, r1, 0, q), b_hat.block(r1, h, 0, q)
    x0 = c0 @ d1_inv
    y0 = d1_inv @ b0
    schur = d - c0 @ d1_inv @ b0

    if c1.is_zero() and b1.is_zero():
        return _split_off_schur(e1, l0, m0, u0, v0, x0, y0, schur, r1, kk, h, ring)

    e2 = _core(c1, ring)
    e3 = _core(b1, ring)
    r2, r3 = len(e2.diag), len(e3.diag)
    l2p, m2 = e2.L.block(0, r2, 0, r2), e2.L.block(r2, p, 0, r2)
    l3p, m3 = e3.L.block(0, r3, 0, r3), e3.L.block(r3, kk, 0, r3)
    u2p, v2 = e2.U.block(0, r2, 0, r2), e2.U.block(0, r2, r2, kk)
    u3p, v3 = e3.U.block(0, r3, 0, r3), e3.U.block(0, r3, r3, q)
    d2_inv = _dmat(_inv_values(e2.diag), r2, r2)
    d3_inv = _dmat(_inv_values(e3.diag), r3, r3)

    dp = inverse_lower(e2.L) @ _right(_left(e2.P.T, schur), e3.Q.T) @ inverse_upper(e3.U)
    dp1, dp3 = dp.block(0, r2, 0, r3), dp.block(0, r2, r3, q)
    dp2, dp4 = dp.block(r2, p, 0, r3), dp.block(r2, p, r3, q)

    pm0 = _left(e3.P.T, m0)
    m1, m4 = pm0.block(0, r3, 0, r1), pm0.block(r3, kk, 0, r1)
    px0 = _left(e2.P.T, x0)
    m5, m6 = px0.block(0, r2, 0, r1), px0.block(r2, p, 0, r1)
    qv0 = _right(v0, e2.Q.T)
    v1, v4 = qv0.block(0, r1, 0, r2), qv0.block(0, r1, r2, kk)
    qy0 = _right(y0, e3.Q.T)
    v5, v6 = qy0.block(0, r1, 0, r3), qy0.block(0, r1, r3, q)

    m7 = dp2 @ d3_inv
    v7 = d2_inv @ dp1 @ u3p
    v8 = d2_inv @ (dp1 @ v3 + dp3)

    e4 = _core(dp4, ring)
    p4t = e4.P.T
    m6, m7, m2 = _left(p4t, m6), _left(p4t, m7), _left(p4t, m2)
    q4t = e4.Q.T
    v6, v8, v3 = _right(v6, q4t), _right(v8, q4t), _right(v3, q4t)

    rs = (r1, r3, kk - r3, r2, p - r2)
    cs = (r1, r2, kk - r2, r3, q - r3)
    z = _zero
    L5 = Matrix.from_blocks([
        [l0, z(r1, r3), z(r1, kk - r3), z(r1, r2), z(r1, p - r2)],
        [m1, l3p, z(r3, kk - r3), z(r3, r2), z(r3, p - r2)],
        [m4, m3, _eye(kk - r3), z(kk - r3, r2), z(kk - r3, p - r2)],
        [m5, z(r2, r3), z(r2, kk - r3), l2p, z(r2, p - r2)],
        [m6, m7, z(p - r2, kk - r3), m2, e4.L],
    ])
    U5 = Matrix.from_blocks([
        [u0, v1, v4, v5, v6],
        [z(r2, r1), u2p, v2, v7, v8],
        [z(kk - r2, r1), z(kk - r2, r2), _eye(kk - r2), z(kk - r2, r3), z(kk - r2, q - r3)],
        [z(r3, r1), z(r3, r2), z(r3, kk - r2), u3p, v3],
        [z(q - r3, r1), z(q - r3, r2), z(q - r3, kk - r2), z(q - r3, r3), e4.U],
    ])

    n_rows, n_cols = h + p, h + q
    pp1 = Permutation.block_diag(e1.P, _identity(p))
    pp2 = Permutation.block_diag(_identity(r1), e3.P, e2.P)
    pp4 = Permutation.block_diag(_identity(n_rows - (p - r2)), e4.P)
    qq1 = Permutation.block_diag(e1.Q, _identity(q))
    qq2 = Permutation.block_diag(_identity(r1), e2.Q, e3.Q)
    qq4 = Permutation.block_diag(_identity(n_cols - (q - r3)), e4.Q)
    row_order = Permutation.block_reorder(rs, (0, 3, 1, 4, 2))
    col_order = Permutation.block_reorder(cs, (0, 1, 3, 4, 2))

    big_p = pp1 @ pp2 @ pp4 @ row_order.T
    big_q = col_order @ qq4 @ qq2 @ qq1
    L = row_order.conjugate(L5)
    U = col_order.conjugate(U5)
    diag = dv + e2.diag + e3.diag + e4.diag
    if _debug():
        _assert_chain(L, [row_order.T, pp4, pp2, pp1], U, [col_order, qq4, qq2, qq1])
    return _Etd(big_p, L, diag, U, big_q)


def _split_off_schur(e1, l0, m0, u0, v0, x0, y0, schur, r1, kk, h, ring) -> _Etd:
    """Both residues vanish: only the Schur complement is left to decompose."""
    p, q = schur.shape
    e2 = _core(schur, ring)
    z = _zero
    L3 = Matrix.from_blocks([
        [l0, z(r1, kk), z(r1, p)],
        [m0, _eye(kk), z(kk, p)],
        [_left(e2.P.T, x0), z(p, kk), e2.L],
    ])
    U3 = Matrix.from_blocks([
        [u0, v0, _right(y0, e2.Q.T)],
        [z(kk, r1), _eye(kk), z(kk, q)],
        [z(q, r1), z(q, kk), e2.U],
    ])
    row_order = Permutation.block_reorder((r1, kk, p), (0, 2, 1))
    col_order = Permutation.block_reorder((r1, kk, q), (0, 2, 1))
    pp1 = Permutation.block_diag(e1.P, _identity(p))
    pp2 = Permutation.block_diag(_identity(h), e2.P)
    qq1 = Permutation.block_diag(e1.Q, _identity(q))
    qq2 = Permutation.block_diag(_identity(h), e2.Q)
    big_p = pp1 @ pp2 @ row_order.T
    big_q = col_order @ qq2 @ qq1
    L = row_order.conjugate(L3)
    U = col_order.conjugate(U3)
    if _debug():
        _assert_chain(L, [row_order.T, pp2, pp1], U, [col_order, qq2, qq1])
    return _Etd(big_p, L, e1.diag + e2.diag, U, big_q)


def _assert_chain(L: Matrix, left: list[Permutation], U: Matrix, right: list[Permutation]) -> None:
    """Every partial conjugation ``p_k .. p_1 L p_1^T .. p_k^T`` stays lower triangular
    (and the transposed chain keeps ``U`` upper triangular)."""
    x = L
    for step, p in enumerate(left):
        x = p.conjugate(x)
        if not x.is_lower():
            raise AssertionError(f"L-chain loses triangularity at step {step + 1}")
    y = U
    for step, p in enumerate(right):
        y = p.T.conjugate(y)
        if not y.is_upper():
            raise AssertionError(f"U-chain loses triangularity at step {step + 1}")


def _normalize(e: _Etd, ring: Ring) -> tuple[Matrix, tuple, Matrix]:
    """Rescale to the representative whose pivots are the leading minors of P^T A Q^T."""
    r = len(e.diag)
    L, U = e.L.tolist(), e.U.tolist()
    prev = ring.frac(ring.one, ring.one)
    denoms = []
    for t in range(r):
        cur = prev * L[t][t] * e.diag[t] * U[t][t]
        lf, uf = cur / L[t][t], cur / U[t][t]
        for i in range(len(L)):
            L[i][t] = L[i][t] * lf
        U[t] = [x * uf for x in U[t]]
        denoms.append(prev * cur)
        prev = cur
    try:
        return (
            Matrix(L).to_ring(ring),
            tuple(ring.to_ring(x) for x in denoms),
            Matrix(U, e.U.ncols).to_ring(ring),
        )
    except InexactDivision as exc:
        raise NotInRing(f"normalized factor left the ring: {exc}") from exc


def etd(a: Matrix, counter: OpCounter | None = None, ring: Ring = ZZ) -> EtdFactors:
    """Exact triangular decomposition of any (possibly rectangular) matrix.

    ``counter``, when given, records one trace node (rows, cols) per recursion level; the
    ETD has no operation-count contract of its own.
    """
    n, m = a.shape
    if n == 0 or m == 0:
        raise DimensionMismatch("empty matrix")
    _TRACE.set(counter)
    try:
        e = _core(a.to_field(ring), ring)
    finally:
        _TRACE.set(None)
    if max(n, m) <= 2 or min(n, m) == 1 or not e.diag:
        try:
            L, U = e.L.to_ring(ring), e.U.to_ring(ring)
            denoms = tuple(ring.to_ring(1 / v) for v in e.diag)
        except InexactDivision as exc:
            raise NotInRing(str(exc)) from exc
    else:
        L, denoms, U = _normalize(e, ring)
    return EtdFactors(e.P, L, denoms, U, e.Q, len(denoms))


def _random_lower(n: int, rng: random.Random, upper: bool = False) -> Matrix:
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(rng.choice([-3, -2, -1, 1, 2, 3]))
            elif (j < i) != upper:
                row.append(rng.randint(-5, 5))
            else:
                row.append(0)
        rows.append(row)
    return Matrix(rows, n)


def check_etd(a: Matrix, f: EtdFactors, ring: Ring = ZZ, seed: int = 0, trials: int = 2) -> list[str]:
    """List of violated invariants (empty when ``f`` is a valid ETD of ``a``)."""
    n, m = a.shape
    if f.P.size != n or f.L.shape != (n, n) or f.U.shape != (m, m) or f.Q.size != m:
        raise DimensionMismatch(f"factors do not conform to a {a.shape} matrix")
    bad = []
    r = f.rank
    if len(f.D_denoms) != r or r > min(n, m):
        bad.append("rank/denominator count")
    if any(d == ring.zero or not ring.is_integral(d) for d in f.D_denoms):
        bad.append("denominators in R\\{0}")
    if not (f.L.is_integral(ring) and f.U.is_integral(ring)):
        bad.append("L, U over R")
    if not (f.L.is_lower() and f.U.is_upper()):
        bad.append("L lower, U upper")
    if any(x == 0 for x in f.L.diag()) or any(x == 0 for x in f.U.diag()):
        bad.append("L, U nonsingular")
    pl = f.P.conjugate(f.L)
    qu = f.Q.T.conjugate(f.U)
    if not pl.is_lower():
        bad.append("P L P^T lower")
    if not qu.is_upper():
        bad.append("Q^T U Q upper")
    if f.reconstruct(ring) != a.to_field(ring):
        bad.append("P L D U Q = A")
    if bareiss_rank(a, ring) != r:
        bad.append("rank(D) = rank(A)")
    if f.L.block(r, n, r, n) != Matrix.identity(n - r) or f.U.block(r, m, r, m) != Matrix.identity(m - r):
        bad.append("identity trailing blocks")
    rng = random.Random(seed)
    for _ in range(trials):
        lo = f.L.with_block(r, r, _random_lower(n - r, rng))
        up = f.U.with_block(r, r, _random_lower(m - r, rng, upper=True))
        if not (f.P.conjugate(lo).is_lower() and f.Q.T.conjugate(up).is_upper()):
            bad.append("triangularity after replacing identity blocks")
            break
    return bad


def verify_etd(a: Matrix, f: EtdFactors, ring: Ring = ZZ, seed: int = 0) -> bool:
    return not check_etd(a, f, ring, seed)


def etd_to_ldu_grouping(f: EtdFactors, ring: Ring = ZZ) -> tuple[Matrix, Matrix, Matrix]:
    """``(P L P^T, P D Q, Q^T U Q)``: lower over R, scaled partial permutation, upper over R."""
    middle = apply_perm(f.Q, apply_perm(f.P, f.D(ring), "left"), "right")
    return f.P.conjugate(f.L), middle, f.Q.T.conjugate(f.U)
