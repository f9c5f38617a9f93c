import random
from fractions import Fraction

import pytest

from bruhat.errors import DimensionMismatch
from bruhat.etd import EtdFactors, check_etd, etd, etd_to_ldu_grouping, leading_block_size, verify_etd
from bruhat.matrix import Matrix, Permutation, apply_perm, bareiss_rank
from helpers import EXAMPLE_4X4, rand_low_rank, rand_matrix, rand_sparse

SWAP = Permutation([1, 0])
ID2 = Permutation.identity(2)


def test_generic_two_by_two():
    f = etd(Matrix([[2, 1], [4, 3]]))
    assert (f.P, f.Q) == (ID2, ID2)
    assert f.L == Matrix([[2, 0], [4, 2]])
    assert f.D_denoms == (2, 4)
    assert f.U == Matrix([[2, 1], [0, 2]])


def test_only_corner_nonzero():
    f = etd(Matrix([[0, 0], [0, 5]]))
    assert (f.P, f.Q) == (SWAP, SWAP)
    assert f.L == Matrix([[5, 0], [0, 1]])
    assert f.D_denoms == (5,)
    assert f.D() == Matrix([[Fraction(1, 5), 0], [0, 0]])
    assert f.U == Matrix([[5, 0], [0, 1]])


def test_first_entry_zero_row():
    f = etd(Matrix([[0, 7]]))
    assert f.L == Matrix([[7]])
    assert f.D_denoms == (7,)
    assert f.U == Matrix([[7, 0], [0, 1]])
    assert f.Q == SWAP


def test_two_by_two_zero_patterns():
    cases = {
        "alpha": Matrix([[3, 1], [6, 2]]),
        "beta": Matrix([[0, 2], [3, 4]]),
        "beta singular": Matrix([[0, 2], [0, 4]]),
        "gamma": Matrix([[0, 0], [3, 4]]),
        "delta": Matrix([[0, 0], [0, -2]]),
    }
    for name, a in cases.items():
        f = etd(a)
        assert check_etd(a, f) == [], name
    f = etd(cases["beta"])
    assert f.Q == SWAP and f.P == ID2
    assert f.L == Matrix([[2, 0], [4, -6]])
    f = etd(cases["gamma"])
    assert f.P == SWAP and f.Q == ID2


def test_thin_shapes():
    for a in (Matrix([[0, 0, 4, 1]]), Matrix([[0], [0], [-3], [2]]), Matrix([[5, 0, 0]])):
        f = etd(a)
        assert f.rank == 1
        assert verify_etd(a, f)


def test_zero_matrices():
    for n, m in ((1, 1), (2, 3), (4, 2), (5, 5)):
        a = Matrix.zeros(n, m)
        f = etd(a)
        assert f.rank == 0
        assert f.L == Matrix.identity(n) and f.U == Matrix.identity(m)
        assert f.P.is_identity() and f.Q.is_identity()
        assert verify_etd(a, f)


def test_empty_matrix_rejected():
    with pytest.raises(DimensionMismatch):
        etd(Matrix.zeros(0, 3))


def test_example_matrix():
    f = etd(EXAMPLE_4X4)
    assert f.rank == 4
    assert f.reconstruct() == EXAMPLE_4X4.to_field()
    assert verify_etd(EXAMPLE_4X4, f)


def test_leading_block_size():
    assert leading_block_size(4, 4) == 2
    assert leading_block_size(3, 2) == 1
    assert leading_block_size(12, 8) == 6
    for n in range(2, 13):
        for m in range(2, 13):
            h = leading_block_size(n, m)
            assert 1 <= h < n and h < m


def test_totality_sweep():
    rng = random.Random(200)
    for t in range(240):
        n, m = rng.randint(1, 9), rng.randint(1, 9)
        kind = t % 3
        if kind == 0:
            a = rand_matrix(rng, n, m)
        elif kind == 1:
            a = rand_low_rank(rng, n, m, rng.randint(0, min(n, m)))
        else:
            a = rand_sparse(rng, n, m)
        f = etd(a)
        assert check_etd(a, f, seed=t) == [], a
        assert f.rank == bareiss_rank(a)


def test_debug_chain_assertions(monkeypatch):
    monkeypatch.setenv("BRUHAT_DEBUG_ASSERTS", "1")
    rng = random.Random(201)
    for _ in range(60):
        n, m = rng.randint(2, 9), rng.randint(2, 9)
        a = rand_sparse(rng, n, m, 0.25) if rng.random() < 0.5 else rand_low_rank(rng, n, m, rng.randint(0, 3))
        assert verify_etd(a, etd(a))


def test_full_rank_lead_concatenates_denominators():
    a = Matrix([[2, 1, 0], [1, 3, 1], [0, 1, 4]])
    top = etd(a.block(0, 1, 0, 1))
    f = etd(a)
    assert f.rank == 3
    assert f.D_denoms[0] == top.D_denoms[0]


def test_verify_rejects_non_triangular_identity_block():
    a = Matrix([[1, 2, 3], [2, 4, 6], [1, 1, 1]])
    f = etd(a)
    assert f.rank == 2
    broken = f.L.with_block(0, 2, Matrix([[1]]))
    bad = EtdFactors(f.P, broken, f.D_denoms, f.U, f.Q, f.rank)
    assert not verify_etd(a, bad)


def test_verify_rejects_tampered_denominator():
    a = rand_matrix(random.Random(3), 4, 3)
    f = etd(a)
    bad = EtdFactors(f.P, f.L, (f.D_denoms[0] + 1,) + f.D_denoms[1:], f.U, f.Q, f.rank)
    assert not verify_etd(a, bad)


def test_verify_shape_mismatch():
    f = etd(Matrix([[1, 2], [3, 4]]))
    with pytest.raises(DimensionMismatch):
        verify_etd(Matrix([[1, 2, 3]]), f)


def test_grouping():
    for n in range(1, 5):
        f = etd(Matrix.identity(n))
        lo, mid, up = etd_to_ldu_grouping(f)
        assert lo == up == Matrix.identity(n)
        assert mid == Matrix.identity(n).to_field()
    f = etd(Matrix([[0, 2], [3, 4]]))
    lo, mid, up = etd_to_ldu_grouping(f)
    profile = Matrix.diagonal([1, 1], 2, 2)
    pattern = apply_perm(f.Q, apply_perm(f.P, profile, "left"), "right")
    assert [[x != 0 for x in r] for r in mid] == [[x != 0 for x in r] for r in pattern]
    rng = random.Random(202)
    for _ in range(100):
        n, m = rng.randint(1, 7), rng.randint(1, 7)
        a = rand_low_rank(rng, n, m, rng.randint(0, min(n, m)))
        lo, mid, up = etd_to_ldu_grouping(etd(a))
        assert lo.is_lower() and up.is_upper()
        assert lo.is_integral() and up.is_integral()
        assert sum(1 for r in mid for x in r if x != 0) == bareiss_rank(a)
        assert lo.to_field() @ mid @ up.to_field() == a.to_field()
