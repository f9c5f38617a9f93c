"""Dense immutable matrices, permutations and block utilities.

Everything public is 0-based.  The correspondence with the 1-based block
notation used in the literature: the block of rows ``i1+1..i2`` and columns
``j1+1..j2`` is ``a.block(i1, i2, j1, j2)`` here.

Entries are ring elements (``int`` for ZZ) or fraction-field elements;
mixing is fine since Python's numeric tower handles ``int``/``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .domain import ZZ, Frac, OpCounter, Ring
from .errors import DimensionMismatch, IndexOutOfRange

__all__ = [
    "Matrix",
    "Permutation",
    "mat_mul",
    "split",
    "join",
    "flip",
    "apply_perm",
    "bareiss_det",
    "bareiss_rank",
    "inverse_lower",
    "inverse_upper",
]


class Matrix:
    """Rectangular value-semantic matrix.  Zero-sized shapes are allowed."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(r) for r in rows)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        for r in data:
            if len(r) != ncols:
                raise DimensionMismatch("ragged matrix rows")
        self._rows = data
        self.nrows = len(data)
        self.ncols = ncols

    # construction

    @classmethod
    def zeros(cls, nrows: int, ncols: int, zero=0) -> Matrix:
        return cls([[zero] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def diagonal(cls, values: Sequence, nrows: int | None = None, ncols: int | None = None) -> Matrix:
        """Rectangular diagonal matrix with ``values`` leading the diagonal."""
        nrows = len(values) if nrows is None else nrows
        ncols = nrows if ncols is None else ncols
        if len(values) > min(nrows, ncols):
            raise DimensionMismatch("too many diagonal values for the shape")
        rows = [[0] * ncols for _ in range(nrows)]
        for i, v in enumerate(values):
            rows[i][i] = v
        return cls(rows, ncols)

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence[Matrix]]) -> Matrix:
        """Assemble a block matrix; every block row must agree in height."""
        rows: list[tuple] = []
        ncols = None
        for brow in blocks:
            h = brow[0].nrows
            if any(b.nrows != h for b in brow):
                raise DimensionMismatch("block heights differ within a block row")
            width = sum(b.ncols for b in brow)
            if ncols is None:
                ncols = width
            elif width != ncols:
                raise DimensionMismatch("block rows have different widths")
            for i in range(h):
                row: tuple = ()
                for b in brow:
                    row += b._rows[i]
                rows.append(row)
        return cls(rows, ncols or 0)

    # access

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._rows)

    def tolist(self) -> list[list]:
        return [list(r) for r in self._rows]

    def __iter__(self):
        return iter(self._rows)

    def entries(self):
        for r in self._rows:
            yield from r

    def block(self, r0: int, r1: int, c0: int, c1: int) -> Matrix:
        if not (0 <= r0 <= r1 <= self.nrows and 0 <= c0 <= c1 <= self.ncols):
            raise IndexOutOfRange(f"block [{r0}:{r1}, {c0}:{c1}] of {self.shape}")
        return Matrix((r[c0:c1] for r in self._rows[r0:r1]), c1 - c0)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
        return Matrix(([self._rows[i][j] for j in cols] for i in rows), len(cols))

    def with_block(self, r0: int, c0: int, b: Matrix) -> Matrix:
        """Copy with ``b`` written at offset ``(r0, c0)``."""
        if r0 + b.nrows > self.nrows or c0 + b.ncols > self.ncols:
            raise IndexOutOfRange("block does not fit")
        rows = self.tolist()
        for i in range(b.nrows):
            rows[r0 + i][c0:c0 + b.ncols] = b._rows[i]
        return Matrix(rows, self.ncols)

    # arithmetic (uncounted)

    @property
    def T(self) -> Matrix:
        return Matrix(([r[j] for r in self._rows] for j in range(self.ncols)), self.nrows)

    def map(self, f: Callable) -> Matrix:
        return Matrix(([f(x) for x in r] for r in self._rows), self.ncols)

    def scale(self, c) -> Matrix:
        return self.map(lambda x: c * x)

    def __add__(self, other: Matrix) -> Matrix:
        self._same_shape(other)
        return Matrix(([x + y for x, y in zip(r, s)] for r, s in zip(self._rows, other._rows)), self.ncols)

    def __sub__(self, other: Matrix) -> Matrix:
        self._same_shape(other)
        return Matrix(([x - y for x, y in zip(r, s)] for r, s in zip(self._rows, other._rows)), self.ncols)

    def __neg__(self) -> Matrix:
        return self.map(lambda x: -x)

    def __matmul__(self, other: Matrix) -> Matrix:
        return mat_mul(self, other)

    def _same_shape(self, other: Matrix) -> None:
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} vs {other.shape}")

    # predicates

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, self._rows))

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries())

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_lower(self) -> bool:
        return all(self._rows[i][j] == 0 for i in range(self.nrows) for j in range(i + 1, self.ncols))

    def is_upper(self) -> bool:
        return all(self._rows[i][j] == 0 for i in range(self.nrows) for j in range(min(i, self.ncols)))

    def diag(self) -> list:
        return [self._rows[i][i] for i in range(min(self.nrows, self.ncols))]

    # ring/field embedding

    def to_field(self, ring: Ring = ZZ) -> Matrix:
        return self.map(lambda x: x if _is_field_elem(x) else ring.frac(x, ring.one))

    def is_integral(self, ring: Ring = ZZ) -> bool:
        return all(ring.is_integral(x) for x in self.entries())

    def to_ring(self, ring: Ring = ZZ) -> Matrix:
        """Project back to the ring; raises ``InexactDivision`` on a proper fraction."""
        return self.map(ring.to_ring)

    def __repr__(self):
        return f"Matrix({self.tolist()!r})"

    def __str__(self):
        cells = [[str(x) for x in r] for r in self._rows]
        w = max((len(c) for r in cells for c in r), default=1)
        return "\n".join(" ".join(c.rjust(w) for c in r) for r in cells)


def _is_field_elem(x) -> bool:
    return isinstance(x, (Fraction, Frac))


def mat_mul(a: Matrix, b: Matrix, counter: OpCounter | None = None) -> Matrix:
    """Classical product; counts one block product and ``rows*inner*cols`` muls."""
    if a.ncols != b.nrows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    if counter is not None:
        counter.count_product(a.nrows * a.ncols * b.ncols)
    bt = list(zip(*b._rows)) if b.nrows else [()] * b.ncols
    out = []
    for r in a._rows:
        out.append([sum(x * y for x, y in zip(r, c)) if r else 0 for c in bt])
    return Matrix(out, b.ncols)


def split(a: Matrix, row_cut: int, col_cut: int) -> tuple[Matrix, Matrix, Matrix, Matrix]:
    """Four blocks ``(A, B, C, D)`` of ``[[A, B], [C, D]]`` with ``A`` of size ``row_cut x col_cut``."""
    if not (0 < row_cut < a.nrows and 0 < col_cut < a.ncols):
        raise IndexOutOfRange(f"cut ({row_cut}, {col_cut}) outside {a.shape}")
    return (
        a.block(0, row_cut, 0, col_cut),
        a.block(0, row_cut, col_cut, a.ncols),
        a.block(row_cut, a.nrows, 0, col_cut),
        a.block(row_cut, a.nrows, col_cut, a.ncols),
    )


def join(a: Matrix, b: Matrix, c: Matrix, d: Matrix) -> Matrix:
    return Matrix.from_blocks([[a, b], [c, d]])


class Permutation:
    """Permutation of ``0..size-1`` stored as an index map.

    The matrix is ``P[i][map[i]] = 1``, so ``P @ A`` takes row ``map[i]``
    of ``A`` to row ``i``, and ``P @ Q`` has map ``i -> Q.map[P.map[i]]``.
    """

    __slots__ = ("map",)

    def __init__(self, mapping: Iterable[int]):
        m = tuple(mapping)
        if sorted(m) != list(range(len(m))):
            raise ValueError(f"not a permutation: {m}")
        self.map = m

    @property
    def size(self) -> int:
        return len(self.map)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(range(n))

    @classmethod
    def block_diag(cls, *perms: Permutation) -> Permutation:
        out: list[int] = []
        for p in perms:
            off = len(out)
            out.extend(off + x for x in p.map)
        return cls(out)

    @classmethod
    def block_reorder(cls, sizes: Sequence[int], order: Sequence[int]) -> Permutation:
        """``R`` such that ``R @ A`` lists the row blocks of ``A`` in ``order``."""
        starts = [sum(sizes[:i]) for i in range(len(sizes))]
        out: list[int] = []
        for b in order:
            out.extend(range(starts[b], starts[b] + sizes[b]))
        return cls(out)

    @property
    def T(self) -> Permutation:
        return self.inverse()

    def inverse(self) -> Permutation:
        inv = [0] * self.size
        for i, x in enumerate(self.map):
            inv[x] = i
        return Permutation(inv)

    def __matmul__(self, other: Permutation) -> Permutation:
        if self.size != other.size:
            raise DimensionMismatch("permutation sizes differ")
        return Permutation(other.map[x] for x in self.map)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.map))

    def to_matrix(self) -> Matrix:
        n = self.size
        return Matrix(([1 if j == self.map[i] else 0 for j in range(n)] for i in range(n)), n)

    def conjugate(self, a: Matrix) -> Matrix:
        """``P @ a @ P.T`` without multiplications."""
        m = self.map
        return Matrix(([a[m[i], m[j]] for j in range(a.ncols)] for i in range(a.nrows)), a.ncols)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.map == other.map

    def __hash__(self):
        return hash(self.map)

    def __repr__(self):
        return f"Permutation({list(self.map)})"


def flip(n: int) -> Permutation:
    """The anti-diagonal permutation ``i -> n-1-i``."""
    if n < 1:
        raise ValueError("flip needs n >= 1")
    return Permutation(range(n - 1, -1, -1))


def apply_perm(p: Permutation, a: Matrix, side: str = "left") -> Matrix:
    """``p @ a`` (side='left') or ``a @ p`` (side='right'), without multiplications."""
    if side == "left":
        if p.size != a.nrows:
            raise DimensionMismatch(f"permutation of size {p.size} on {a.nrows} rows")
        return Matrix((a.row(x) for x in p.map), a.ncols)
    if side == "right":
        if p.size != a.ncols:
            raise DimensionMismatch(f"permutation of size {p.size} on {a.ncols} columns")
        inv = p.inverse().map
        return Matrix(([r[inv[j]] for j in range(a.ncols)] for r in a), a.ncols)
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def _bareiss_echelon(a: Matrix, ring: Ring):
    """Fraction-free elimination with row swaps.  Returns (rank, sign, last pivot)."""
    m = a.tolist()
    nr, nc = a.nrows, a.ncols
    prev = ring.one
    sign = 1
    r = 0
    for c in range(nc):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if m[i][c] != ring.zero), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
            sign = -sign
        for i in range(r + 1, nr):
            for j in range(c + 1, nc):
                m[i][j] = ring.exact_div(m[r][c] * m[i][j] - m[i][c] * m[r][j], prev)
            m[i][c] = ring.zero
        prev = m[r][c]
        r += 1
    return r, sign, prev


def bareiss_det(a: Matrix, ring: Ring = ZZ):
    """Exact determinant by single-step fraction-free elimination."""
    if not a.is_square():
        raise DimensionMismatch("determinant of a non-square matrix")
    if a.nrows == 0:
        return ring.one
    rank, sign, last = _bareiss_echelon(a, ring)
    if rank < a.nrows:
        return ring.zero
    return last if sign > 0 else -last


def bareiss_rank(a: Matrix, ring: Ring = ZZ) -> int:
    return _bareiss_echelon(a, ring)[0]


def inverse_lower(a: Matrix) -> Matrix:
    """Inverse of a nonsingular lower-triangular matrix over a field."""
    n = a.nrows
    inv = [[0] * n for _ in range(n)]
    for j in range(n):
        for i in range(j, n):
            s = (1 if i == j else 0) - sum(a[i, t] * inv[t][j] for t in range(j, i))
            d = a[i, i]
            inv[i][j] = s / d if _is_field_elem(s) or _is_field_elem(d) else Fraction(s, d)
    return Matrix(inv, n)


def inverse_upper(a: Matrix) -> Matrix:
    """Inverse of a nonsingular upper-triangular matrix over a field."""
    return inverse_lower(a.T).T
