"""Brute-force minors and the determinant identities built on them.

This module is the ground truth the decompositions are tested against, so
it is deliberately naive: every minor is an independent determinant.

Unlike the rest of the package, minor orders and row/column arguments here
are 1-based, matching the usual notation: ``alpha_minor(a, k, i, j)`` is the
k x k minor on rows ``1..k-1, i`` and columns ``1..k-1, j`` (row ``i`` and
column ``j`` placed last), and ``alpha^0 = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .domain import ZZ, Ring
from .errors import IndexOutOfRange
from .matrix import Matrix, bareiss_det, bareiss_rank

COFACTOR_LIMIT = 6


class MinorSpec(NamedTuple):
    k: int
    i: int
    j: int


@dataclass(frozen=True)
class MinorsMatrix:
    """Matrix of minors ``(alpha^{k+1}_{i,j})`` for ``i, j = k+1..s``."""

    k: int
    s: int
    values: Matrix


def det_cofactor(a: Matrix):
    """Laplace expansion along the first row."""
    n = a.nrows
    if n == 0:
        return 1
    if n == 1:
        return a[0, 0]
    if n == 2:
        return a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
    total = 0
    rest = list(range(1, n))
    for j in range(n):
        if a[0, j] == 0:
            continue
        sub = a.submatrix(rest, [c for c in range(n) if c != j])
        term = a[0, j] * det_cofactor(sub)
        total = total + term if j % 2 == 0 else total - term
    return total


def oracle_det(a: Matrix, ring: Ring = ZZ):
    if a.nrows <= COFACTOR_LIMIT:
        return det_cofactor(a)
    return bareiss_det(a, ring)


def oracle_rank(a: Matrix, ring: Ring = ZZ) -> int:
    return bareiss_rank(a, ring)


def _check_index(a: Matrix, k: int, i: int, j: int) -> None:
    if not (0 <= k <= min(a.nrows, a.ncols)):
        raise IndexOutOfRange(f"minor order {k} for a {a.shape} matrix")
    if not (1 <= i <= a.nrows and 1 <= j <= a.ncols):
        raise IndexOutOfRange(f"row/column ({i}, {j}) outside {a.shape}")


def alpha_minor(a: Matrix, k: int, i: int, j: int, ring: Ring = ZZ):
    """``alpha^k_{i,j}``; a row or column repeated among the first k-1 gives 0."""
    if k == 0:
        return ring.one
    _check_index(a, k, i, j)
    rows = list(range(k - 1)) + [i - 1]
    cols = list(range(k - 1)) + [j - 1]
    return oracle_det(a.submatrix(rows, cols), ring)


def leading_minor(a: Matrix, k: int, ring: Ring = ZZ):
    """``alpha^k``, the k-th leading principal minor."""
    return alpha_minor(a, k, k, k, ring) if k else ring.one


def minors_matrix(a: Matrix, k: int, s: int, ring: Ring = ZZ) -> MinorsMatrix:
    if not (0 <= k < s <= min(a.nrows, a.ncols)):
        raise IndexOutOfRange(f"need 0 <= k < s <= n, got k={k}, s={s}")
    idx = range(k + 1, s + 1)
    values = Matrix([[alpha_minor(a, k + 1, i, j, ring) for j in idx] for i in idx], s - k)
    return MinorsMatrix(k, s, values)


def delta_minor(a: Matrix, k: int, i: int, j: int, ring: Ring = ZZ):
    """Leading k x k determinant after replacing its column ``i`` by column ``j`` of ``a``."""
    if not (1 <= k <= min(a.nrows, a.ncols)):
        raise IndexOutOfRange(f"order {k} for a {a.shape} matrix")
    if not (1 <= i <= k and 1 <= j <= a.ncols):
        raise IndexOutOfRange(f"replacement ({i} <- {j}) invalid for order {k}")
    cols = list(range(k))
    cols[i - 1] = j - 1
    return oracle_det(a.submatrix(range(k), cols), ring)


def delta_block(a: Matrix, k: int, s: int, ring: Ring = ZZ) -> Matrix:
    """``(delta^s_{p,j})`` for ``p = k+1..s`` and ``j = s+1..n``."""
    n = a.ncols
    return Matrix(
        [[delta_minor(a, s, p, j, ring) for j in range(s + 1, n + 1)] for p in range(k + 1, s + 1)],
        n - s,
    )


def check_sylvester(a: Matrix, k: int, s: int, ring: Ring = ZZ) -> bool:
    """``det(minors_matrix(a, k, s)) == alpha^s * (alpha^k)^(s-k-1)``."""
    lhs = oracle_det(minors_matrix(a, k, s, ring).values, ring)
    rhs = leading_minor(a, s, ring) * leading_minor(a, k, ring) ** (s - k - 1)
    return lhs == rhs


def check_base_minor_identity(a: Matrix, i: int, j: int, k: int, s: int, ring: Ring = ZZ) -> bool:
    """Base minor's identity

        alpha^s alpha^{k+1}_{i,j} - alpha^k alpha^{s+1}_{i,j}
            = sum_{p=k+1..s} alpha^{k+1}_{i,p} delta^s_{p,j}.

    ``alpha^{s+1}_{i,j}`` is taken as 0 when ``s = n`` (no such minor).
    """
    n = min(a.nrows, a.ncols)
    if not (0 <= k < s <= n):
        raise IndexOutOfRange(f"need 0 <= k < s <= n, got k={k}, s={s}")
    _check_index(a, 0, i, j)
    higher = alpha_minor(a, s + 1, i, j, ring) if s < n else ring.zero
    lhs = leading_minor(a, s, ring) * alpha_minor(a, k + 1, i, j, ring) - leading_minor(a, k, ring) * higher
    rhs = ring.zero
    for p in range(k + 1, s + 1):
        rhs = rhs + alpha_minor(a, k + 1, i, p, ring) * delta_minor(a, s, p, j, ring)
    return lhs == rhs


def check_adjacent_sylvester(a: Matrix, k: int, i: int, j: int, ring: Ring = ZZ) -> bool:
    """Two-step identity ``a^{k+1}_{ij} a^{k+1} - a^{k+1}_{i,k+1} a^{k+1}_{k+1,j} = a^{k+2}_{ij} a^k``."""
    ak1 = leading_minor(a, k + 1, ring)
    lhs = alpha_minor(a, k + 1, i, j, ring) * ak1 - alpha_minor(a, k + 1, i, k + 1, ring) * alpha_minor(
        a, k + 1, k + 1, j, ring
    )
    return lhs == alpha_minor(a, k + 2, i, j, ring) * leading_minor(a, k, ring)


def oracle_l(a: Matrix, ring: Ring = ZZ) -> Matrix:
    """Lower factor ``(alpha^j_{i,j})`` of the fraction-free LDU."""
    n = a.nrows
    return Matrix([[alpha_minor(a, j, i, j, ring) if i >= j else 0 for j in range(1, n + 1)] for i in range(1, n + 1)], n)


def oracle_u(a: Matrix, ring: Ring = ZZ) -> Matrix:
    """Upper factor ``(alpha^i_{i,j})`` of the fraction-free LDU."""
    n = a.nrows
    return Matrix([[alpha_minor(a, i, i, j, ring) if j >= i else 0 for j in range(1, n + 1)] for i in range(1, n + 1)], n)


def oracle_alphas(a: Matrix, ring: Ring = ZZ) -> list:
    """``[alpha^1, ..., alpha^n]``."""
    return [leading_minor(a, k, ring) for k in range(1, min(a.nrows, a.ncols) + 1)]
