"""Bruhat decompositions ``A = V w U`` with V, U upper triangular over the ring.

Two constructions:

* :func:`bruhat_flip` reverses the rows of ``A``, takes the fraction-free
  LDU of the result and conjugates ``L`` by the reversal.  The nonzero
  entries of ``w`` are then ``1 / (alpha^{i-1} alpha^i)`` with ``alpha^i`` the
  leading minors of the row-reversed matrix.  Needs those minors nonzero.
* :func:`bruhat_general` works for any matrix: decompose ``S A = P L D U Q``
  (``S`` the reversal) and regroup as
  ``A = (S P L P^T S) (S P D Q) (Q^T U Q)``.

``w`` is kept as a partial permutation (for each row, the column of its
nonzero entry or ``None``) plus the nonzero values in row order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .domain import ZZ, OpCounter, Ring
from .errors import DimensionMismatch
from .etd import etd
from .ldu import ldu_full
from .matrix import Matrix, apply_perm, flip

__all__ = ["BruhatFactors", "bruhat_flip", "bruhat_general", "verify_bruhat", "check_bruhat"]


@dataclass(frozen=True)
class BruhatFactors:
    V: Matrix
    w_perm: tuple
    w_scales: tuple
    U: Matrix
    rank: int

    @property
    def w_shape(self) -> tuple[int, int]:
        return (self.V.ncols, self.U.nrows)

    def w(self) -> Matrix:
        """Dense middle factor over the fraction field."""
        n, m = self.w_shape
        rows = [[Fraction(0)] * m for _ in range(n)]
        scales = iter(self.w_scales)
        for i, j in enumerate(self.w_perm):
            if j is not None:
                rows[i][j] = next(scales)
        return Matrix(rows, m)

    def reconstruct(self, ring: Ring = ZZ) -> Matrix:
        return self.V.to_field(ring) @ self.w() @ self.U.to_field(ring)

    @classmethod
    def from_dense(cls, V: Matrix, w: Matrix, U: Matrix) -> BruhatFactors:
        """Pack a dense middle factor; rows with several nonzeros are rejected."""
        if w.shape != (V.ncols, U.nrows):
            raise DimensionMismatch(f"middle factor {w.shape} does not fit V {V.shape} and U {U.shape}")
        perm, scales = [], []
        for row in w:
            nz = [j for j, x in enumerate(row) if x != 0]
            if len(nz) > 1:
                raise ValueError("middle factor has two nonzeros in one row")
            perm.append(nz[0] if nz else None)
            scales.extend(Fraction(row[j]) for j in nz)
        return cls(V, tuple(perm), tuple(scales), U, len(scales))


def bruhat_flip(a: Matrix, counter: OpCounter | None = None, ring: Ring = ZZ) -> BruhatFactors:
    """Bruhat decomposition through the LDU of the row-reversed matrix.

    Raises :class:`ZeroPivotMinor` when a leading minor of ``flip(n) @ a``
    vanishes; :func:`bruhat_general` handles those inputs.
    """
    if not a.is_square() or a.nrows == 0:
        raise DimensionMismatch(f"flip construction needs a non-empty square matrix, got {a.shape}")
    n = a.nrows
    s = flip(n)
    f = ldu_full(apply_perm(s, a, "left"), counter, ring=ring)
    V = s.conjugate(f.L)
    # row i of flip @ D carries the pivot of row n-1-i
    scales = tuple(ring.frac(ring.one, d) for d in reversed(f.denominators))
    return BruhatFactors(V, tuple(s.map), scales, f.U, n)


def bruhat_general(a: Matrix, counter: OpCounter | None = None, ring: Ring = ZZ) -> BruhatFactors:
    """Bruhat decomposition of an arbitrary matrix.

    V is n x n and U is m x m, both with positive diagonals.  Assumes an
    ordered ring (the sign normalization compares with zero).
    """
    n, m = a.shape
    s = flip(n)
    f = etd(apply_perm(s, a, "left"), counter, ring)
    V = s.conjugate(f.P.conjugate(f.L))
    U = f.Q.T.conjugate(f.U)
    # S P D Q: row t of D lands on row (S P)^{-1}(t), column t on column Q(t)
    row_of = (s @ f.P).inverse().map
    col_of = f.Q.map
    perm: list = [None] * n
    vals: dict[int, object] = {}
    for t, d in enumerate(f.D_denoms):
        perm[row_of[t]] = col_of[t]
        vals[row_of[t]] = ring.frac(ring.one, d)
    # positive diagonals: V -> V S_v, U -> S_u U, w -> S_v w S_u with S^2 = I
    sv = [1 if x > 0 else -1 for x in V.diag()]
    su = [1 if x > 0 else -1 for x in U.diag()]
    V = Matrix([[x * sv[j] for j, x in enumerate(row)] for row in V], V.ncols)
    U = Matrix([[x * su[i] for x in row] for i, row in enumerate(U)], U.ncols)
    scales = tuple(vals[i] * sv[i] * su[perm[i]] for i in range(n) if perm[i] is not None)
    return BruhatFactors(V, tuple(perm), scales, U, f.rank)


def check_bruhat(a: Matrix, f: BruhatFactors, ring: Ring = ZZ) -> list[str]:
    """List of violated conditions (empty when ``V w U = a`` is a valid Bruhat form)."""
    n, m = a.shape
    if f.V.nrows != n or f.U.ncols != m or len(f.w_perm) != f.V.ncols:
        raise DimensionMismatch(f"factors do not conform to a {a.shape} matrix")
    bad = []
    if not f.V.is_upper():
        bad.append("V upper triangular")
    if not f.U.is_upper():
        bad.append("U upper triangular")
    if any(x == 0 for x in f.V.diag()[: f.rank]) or any(x == 0 for x in f.U.diag()[: f.rank]):
        bad.append("nonzero leading diagonals")
    cols = [j for j in f.w_perm if j is not None]
    if (
        len(cols) != len(set(cols))
        or any(not 0 <= j < f.U.nrows for j in cols)
        or len(cols) != len(f.w_scales)
        or len(cols) != f.rank
        or any(x == 0 for x in f.w_scales)
    ):
        bad.append("w scaled partial permutation")
        return bad
    if f.reconstruct(ring) != a.to_field(ring):
        bad.append("V w U = A")
    return bad


def verify_bruhat(a: Matrix, f: BruhatFactors, ring: Ring = ZZ) -> bool:
    return not check_bruhat(a, f, ring)
