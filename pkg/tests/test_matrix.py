import random

import pytest

from bruhat.domain import OpCounter
from bruhat.errors import DimensionMismatch, IndexOutOfRange
from bruhat.matrix import (
    Matrix,
    Permutation,
    apply_perm,
    bareiss_det,
    bareiss_rank,
    flip,
    inverse_lower,
    inverse_upper,
    join,
    mat_mul,
    split,
)
from bruhat.minors import det_cofactor
from helpers import EXAMPLE_4X4, rand_low_rank, rand_matrix


def test_mat_mul_examples():
    m = Matrix([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    assert mat_mul(Matrix.identity(3), m) == m
    assert Matrix([[1, 2], [3, 4]]) @ Matrix([[0, 1], [1, 0]]) == Matrix([[2, 1], [4, 3]])
    c = OpCounter()
    mat_mul(Matrix([[1, 2], [3, 4]]), Matrix([[5, 6], [7, 8]]), c)
    assert c.mul_count == 8


def test_mat_mul_shape_mismatch():
    with pytest.raises(DimensionMismatch):
        Matrix([[1, 2]]) @ Matrix([[1, 2]])


def test_associativity():
    rng = random.Random(11)
    for _ in range(50):
        p, q, r, s = (rng.randint(1, 5) for _ in range(4))
        a, b, c = rand_matrix(rng, p, q), rand_matrix(rng, q, r), rand_matrix(rng, r, s)
        assert (a @ b) @ c == a @ (b @ c)


def test_split_and_join():
    i4 = Matrix.identity(4)
    a, b, c, d = split(i4, 2, 2)
    assert a == Matrix.identity(2) and d == Matrix.identity(2)
    assert b.is_zero() and c.is_zero()
    assert split(EXAMPLE_4X4, 2, 2)[0] == Matrix([[1, -4], [4, 5]])
    rng = random.Random(2)
    for _ in range(30):
        m = rand_matrix(rng, rng.randint(2, 6), rng.randint(2, 6))
        r, c = rng.randint(1, m.nrows - 1), rng.randint(1, m.ncols - 1)
        assert join(*split(m, r, c)) == m
    with pytest.raises(IndexOutOfRange):
        split(i4, 5, 1)


def test_flip():
    assert flip(1).is_identity()
    assert flip(2) == Permutation([1, 0])
    for n in range(1, 7):
        assert (flip(n) @ flip(n)).is_identity()
    rows = apply_perm(flip(4), EXAMPLE_4X4, "left")
    assert [rows.row(i) for i in range(4)] == [EXAMPLE_4X4.row(i) for i in (3, 2, 1, 0)]


def test_apply_perm_matches_dense_product():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(1, 6)
        p = Permutation(rng.sample(range(n), n))
        a = rand_matrix(rng, n, rng.randint(1, 4))
        assert apply_perm(p, a, "left") == p.to_matrix() @ a
        b = rand_matrix(rng, rng.randint(1, 4), n)
        assert apply_perm(p, b, "right") == b @ p.to_matrix()
        assert apply_perm(p.inverse(), apply_perm(p, a, "left"), "left") == a
        assert apply_perm(Permutation.identity(n), a, "left") == a
        sq = rand_matrix(rng, n)
        assert p.conjugate(sq) == p.to_matrix() @ sq @ p.to_matrix().T


def test_permutation_composition_matches_matrices():
    rng = random.Random(8)
    for _ in range(30):
        n = rng.randint(1, 6)
        p = Permutation(rng.sample(range(n), n))
        q = Permutation(rng.sample(range(n), n))
        assert (p @ q).to_matrix() == p.to_matrix() @ q.to_matrix()
        assert p.T.to_matrix() == p.to_matrix().T


def test_block_reorder():
    r = Permutation.block_reorder((1, 2, 1), (2, 0, 1))
    m = Matrix([[0], [1], [2], [3]])
    assert apply_perm(r, m, "left") == Matrix([[3], [0], [1], [2]])


def test_bareiss_examples():
    assert bareiss_det(Matrix([[1, -4], [4, 5]])) == 21
    for n in range(1, 6):
        assert bareiss_det(Matrix.identity(n)) == 1
    assert bareiss_det(EXAMPLE_4X4) == det_cofactor(EXAMPLE_4X4)


def test_bareiss_against_cofactor():
    rng = random.Random(3)
    for _ in range(250):
        n = rng.randint(1, 5)
        a = rand_matrix(rng, n)
        assert bareiss_det(a) == det_cofactor(a)


def test_bareiss_rank():
    rng = random.Random(4)
    for _ in range(60):
        n, m = rng.randint(1, 7), rng.randint(1, 7)
        r = rng.randint(0, min(n, m))
        a = rand_low_rank(rng, n, m, r)
        assert bareiss_rank(a) <= r
        assert bareiss_rank(a) == bareiss_rank(a.T)
    assert bareiss_rank(Matrix.zeros(3, 2)) == 0


def test_triangular_inverses_are_exact():
    lo = Matrix([[2, 0, 0], [1, 3, 0], [4, 5, 6]])
    up = lo.T
    assert (lo.to_field() @ inverse_lower(lo)) == Matrix.identity(3).to_field()
    assert (inverse_upper(up) @ up.to_field()) == Matrix.identity(3).to_field()


def test_field_projection():
    m = Matrix([[1, 2], [3, 4]])
    assert m.to_field().is_integral()
    assert m.to_field().to_ring() == m
    assert not Matrix([[1, 2]]).to_field().scale(Matrix([[1]]).to_field()[0, 0] / 2).is_integral()


def test_empty_shapes():
    z = Matrix.zeros(0, 3)
    assert z.shape == (0, 3)
    assert z.T.shape == (3, 0)
    assert (Matrix.zeros(2, 0) @ z) == Matrix.zeros(2, 3)
