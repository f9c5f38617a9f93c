"""Recursive block LDU decomposition over a commutative domain.

For a matrix of minors ``A = (alpha^{k+1}_{i,j})_{i,j=k+1..n}`` and
``alpha^k`` the recursion returns ``L, U`` over the ring, the leading minors
``alpha^{k+1}..alpha^n`` and the auxiliary factors

    M = alpha^k (L D)^-1,   W = alpha^k (D U)^-1,
    D = alpha^k diag(alpha^{t-1} alpha^t)^-1,  t = k+1..n,

so that ``A = L D U``.  Only inputs whose leading minors are all nonzero are
accepted; anything else raises :class:`ZeroPivotMinor` and should go through
:func:`bruhat.etd.etd` instead.

``D`` is never formed inside the recursion.  The three products that
sandwich it (the Schur update and the off-diagonal blocks of ``M`` and
``W``) go through :func:`weighted_product`, which accumulates
``alpha^s X D Y`` one rank-one term at a time and stays in the ring because
every partial sum scaled by the current leading minor is itself a minor.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .domain import ZZ, NodeTrace, OpCounter, Ring
from .errors import DimensionMismatch, ZeroPivotMinor
from .matrix import Matrix, mat_mul, split as split_blocks
from .minors import MinorsMatrix

__all__ = ["LduFactors", "ldu_rec", "ldu_full", "reconstruct_ldu", "weighted_product", "midpoint_split"]


@dataclass(frozen=True)
class LduFactors:
    L: Matrix
    U: Matrix
    alphas: tuple
    M: Matrix
    W: Matrix
    k: int
    n: int
    alpha_k: object = 1

    @property
    def minor_sequence(self) -> tuple:
        """``(alpha^k, alpha^{k+1}, ..., alpha^n)``."""
        return (self.alpha_k,) + tuple(self.alphas)

    @property
    def denominators(self) -> tuple:
        """``alpha^{t-1} alpha^t`` for each diagonal position."""
        seq = self.minor_sequence
        return tuple(seq[t] * seq[t + 1] for t in range(len(self.alphas)))

    def D(self, ring: Ring = ZZ) -> Matrix:
        return Matrix.diagonal([ring.frac(self.alpha_k, d) for d in self.denominators])


def midpoint_split(m: int) -> int:
    return (m + 1) // 2


def _scale(a: Matrix, c, counter: OpCounter) -> Matrix:
    counter.mul_count += a.nrows * a.ncols
    return a.map(lambda x: c * x)


def _divide(a: Matrix, c, counter: OpCounter, ring: Ring) -> Matrix:
    counter.div_count += a.nrows * a.ncols
    return a.map(lambda x: ring.exact_div(x, c))


def weighted_product(x: Matrix, y: Matrix, minors: list, counter: OpCounter | None = None, ring: Ring = ZZ) -> Matrix:
    """``minors[-1] * X @ D @ Y`` with ``D = diag(minors[0] / (minors[t] minors[t+1]))``.

    ``minors`` is ``[alpha^k, alpha^{k+1}, ..., alpha^s]`` with one more entry
    than the inner dimension.  The running sum obeys

        T_t = (alpha^t T_{t-1} + alpha^k x_t y_t) / alpha^{t-1},

    with every division exact.  Counted as one block product.
    """
    counter = counter if counter is not None else OpCounter()
    p, q, r = x.nrows, x.ncols, y.ncols
    if y.nrows != q or len(minors) != q + 1:
        raise DimensionMismatch("weighted product shapes do not conform")
    ak = minors[0]
    counter.count_product(p * q * r)
    acc = [[ring.zero] * r for _ in range(p)]
    for t in range(q):
        prev, cur = minors[t], minors[t + 1]
        xs = [ak * v for v in x.col(t)]
        yt = y.row(t)
        counter.mul_count += p + 2 * p * r
        counter.div_count += p * r
        for i in range(p):
            xi = xs[i]
            row = acc[i]
            for j in range(r):
                row[j] = ring.exact_div(cur * row[j] + xi * yt[j], prev)
    return Matrix(acc, r)


def ldu_rec(
    a: Matrix | MinorsMatrix,
    alpha_k,
    counter: OpCounter | None = None,
    *,
    k: int | None = None,
    ring: Ring = ZZ,
    split: Callable[[int], int] = midpoint_split,
) -> LduFactors:
    """LDU of a matrix of minors with a nonzero ``alpha_k``.

    ``k`` is only used to number the minors in errors and traces; it is read
    from ``a`` when a :class:`MinorsMatrix` is given.  ``split(m)`` chooses
    the size of the leading block for an ``m x m`` input (``0 < s < m``).
    """
    if isinstance(a, MinorsMatrix):
        k = a.k if k is None else k
        a = a.values
    k = 0 if k is None else k
    if not a.is_square() or a.nrows == 0:
        raise DimensionMismatch(f"LDU needs a non-empty square matrix, got {a.shape}")
    if alpha_k == ring.zero:
        raise ZeroPivotMinor(k)
    counter = counter if counter is not None else OpCounter()
    L, alphas, U, M, W = _ldu(a, alpha_k, k, counter, ring, split)
    return LduFactors(L, U, tuple(alphas), M, W, k, k + a.nrows, alpha_k)


def _ldu(a: Matrix, ak, k: int, counter: OpCounter, ring: Ring, split):
    m = a.nrows
    if m == 1:
        an = a[0, 0]
        if an == ring.zero:
            raise ZeroPivotMinor(k + 1)
        return Matrix([[an]]), [an], Matrix([[an]]), Matrix([[ak]]), Matrix([[ak]])

    if m == 2:
        a1, b = a.row(0)
        g, d = a.row(1)
        if a1 == ring.zero:
            raise ZeroPivotMinor(k + 1)
        # the 1x1-block instance of the general step: seven multiplicative ops
        ut = ring.exact_div(ring.mul(ak, b, counter), ak, counter)
        lt = ring.exact_div(ring.mul(g, ak, counter), ak, counter)
        an = ring.exact_div(ring.mul(a1, d, counter) - ring.mul(lt, ut, counter), ak, counter)
        counter.base_case_ops += 7
        if an == ring.zero:
            raise ZeroPivotMinor(k + 2)
        zero = ring.zero
        return (
            Matrix([[a1, zero], [lt, an]]),
            [a1, an],
            Matrix([[a1, ut], [zero, an]]),
            Matrix([[ak, zero], [-lt, a1]]),
            Matrix([[ak, -ut], [zero, a1]]),
        )

    sl = split(m)
    if not 0 < sl < m:
        raise ValueError(f"split point {sl} outside (0, {m})")
    node = NodeTrace(k, k + m)
    a11, b, c, d = split_blocks(a, sl, sl)

    def product(x, y, tag):
        node.products.append(tag)
        return mat_mul(x, y, counter)

    def weighted(x, y, tag):
        node.products.append(tag)
        return weighted_product(x, y, seq, counter, ring)

    l1, al1, u1, m1, w1 = _ldu(a11, ak, k, counter, ring, split)
    node.recursive_calls += 1
    seq = [ak] + al1
    a_s = al1[-1]

    u_t = _divide(product(m1, b, "M1*B"), ak, counter, ring)
    l_t = _divide(product(c, w1, "C*W1"), ak, counter, ring)
    schur = weighted(l_t, u_t, "Lt*D*Ut")
    a2 = _divide(_scale(d, a_s, counter) - schur, ak, counter, ring)

    l2, al2, u2, m2, w2 = _ldu(a2, a_s, k + sl, counter, ring, split)
    node.recursive_calls += 1

    scale = a_s * ak
    counter.mul_count += 1
    m_low = _divide(weighted(product(m2, l_t, "M2*Lt"), m1, "(M2*Lt)*D*M1"), scale, counter, ring)
    w_up = _divide(weighted(w1, product(u_t, w2, "Ut*W2"), "W1*D*(Ut*W2)"), scale, counter, ring)
    counter.trace.append(node)

    zero_ur = Matrix.zeros(sl, m - sl, ring.zero)
    zero_ll = Matrix.zeros(m - sl, sl, ring.zero)
    L = Matrix.from_blocks([[l1, zero_ur], [l_t, l2]])
    U = Matrix.from_blocks([[u1, u_t], [zero_ll, u2]])
    M = Matrix.from_blocks([[m1, zero_ur], [-m_low, m2]])
    W = Matrix.from_blocks([[w1, -w_up], [zero_ll, w2]])
    return L, al1 + al2, U, M, W


def ldu_full(
    a: Matrix,
    counter: OpCounter | None = None,
    *,
    ring: Ring = ZZ,
    split: Callable[[int], int] = midpoint_split,
) -> LduFactors:
    """``A = L D U`` with ``D = diag(1 / (alpha^{i-1} alpha^i))``.

    ``L = (alpha^j_{i,j})`` and ``U = (alpha^i_{i,j})``; requires every
    leading minor of ``a`` to be nonzero.
    """
    return ldu_rec(a, ring.one, counter, k=0, ring=ring, split=split)


def reconstruct_ldu(f: LduFactors, ring: Ring = ZZ) -> Matrix:
    """``L @ D @ U`` over the fraction field."""
    return f.L.to_field(ring) @ f.D(ring) @ f.U.to_field(ring)
