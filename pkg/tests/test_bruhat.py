import random
from fractions import Fraction

import pytest

from bruhat.bruhat import BruhatFactors, bruhat_flip, bruhat_general, check_bruhat, verify_bruhat
from bruhat.errors import DimensionMismatch, ZeroPivotMinor
from bruhat.matrix import Matrix, apply_perm, bareiss_rank, flip
from bruhat.minors import oracle_alphas
from helpers import (
    EXAMPLE_4X4,
    REFERENCE_U,
    REFERENCE_V,
    REFERENCE_W_PERM,
    REFERENCE_W_SCALES_TEXT,
    is_generic,
    rand_low_rank,
    rand_matrix,
)


def test_flip_two_by_two():
    a = Matrix([[0, 1], [2, 3]])
    f = bruhat_flip(a)
    assert f.V == Matrix([[2, 0], [0, 2]])
    assert f.w() == Matrix([[0, Fraction(1, 4)], [Fraction(1, 2), 0]])
    assert f.U == Matrix([[2, 3], [0, 2]])
    assert verify_bruhat(a, f)


def test_flip_fails_on_example():
    with pytest.raises(ZeroPivotMinor) as exc:
        bruhat_flip(EXAMPLE_4X4)
    assert exc.value.index == 3


def test_flip_of_upper_triangular():
    rng = random.Random(1)
    for n in range(1, 6):
        g = Matrix([[rng.randint(1, 5) if j == i else (rng.randint(-3, 3) if j > i else 0) for j in range(n)] for i in range(n)], n)
        a = apply_perm(flip(n), g, "left")
        f = bruhat_flip(a)
        assert verify_bruhat(a, f)
        assert f.w_perm == tuple(range(n - 1, -1, -1))


def test_flip_scales_are_inverse_minor_products():
    rng = random.Random(2)
    done = 0
    while done < 40:
        n = rng.randint(1, 6)
        a = rand_matrix(rng, n)
        b = apply_perm(flip(n), a, "left")
        if not is_generic(b):
            continue
        f = bruhat_flip(a)
        al = [1] + oracle_alphas(b)
        expected = [Fraction(1, al[i - 1] * al[i]) for i in range(1, n + 1)]
        assert list(f.w_scales) == expected[::-1]
        assert verify_bruhat(a, f)
        done += 1


def test_general_on_example():
    f = bruhat_general(EXAMPLE_4X4)
    assert f.rank == 4
    assert f.V.is_upper() and f.U.is_upper()
    assert f.reconstruct() == EXAMPLE_4X4.to_field()
    # same placement of the middle factor's nonzeros as the reference factors
    assert f.w_perm == REFERENCE_W_PERM


def test_reference_factors_reconstruct_sign_variant():
    """The hand-entered reference factors multiply out to the example with its
    (1,2) entry +4 instead of -4; see the acceptance suite for the faithful check."""
    scales = tuple(Fraction(s) for s in REFERENCE_W_SCALES_TEXT)
    f = BruhatFactors(REFERENCE_V, REFERENCE_W_PERM, scales, REFERENCE_U, 4)
    variant = EXAMPLE_4X4.with_block(0, 1, Matrix([[4]]))
    assert f.reconstruct() == variant.to_field()
    assert check_bruhat(EXAMPLE_4X4, f) == ["V w U = A"]


def test_general_trivial_cases():
    for n, m in ((1, 1), (2, 3), (3, 2)):
        z = Matrix.zeros(n, m)
        f = bruhat_general(z)
        assert f.rank == 0 and f.w_scales == ()
        assert verify_bruhat(z, f)
    for n in range(1, 5):
        f = bruhat_general(Matrix.identity(n))
        assert f.V == f.U == Matrix.identity(n)
        assert f.w() == Matrix.identity(n).to_field()


def test_general_sweep():
    rng = random.Random(3)
    for _ in range(200):
        n, m = rng.randint(1, 8), rng.randint(1, 8)
        a = rand_low_rank(rng, n, m, rng.randint(0, min(n, m)))
        f = bruhat_general(a)
        assert verify_bruhat(a, f)
        assert f.rank == bareiss_rank(a)


def test_flip_and_general_agree_on_product():
    rng = random.Random(4)
    for _ in range(30):
        n = rng.randint(2, 5)
        a = rand_matrix(rng, n)
        if not is_generic(apply_perm(flip(n), a, "left")):
            continue
        assert bruhat_flip(a).reconstruct() == bruhat_general(a).reconstruct() == a.to_field()


def test_tampered_scale_rejected():
    a = Matrix([[0, 1], [2, 3]])
    f = bruhat_flip(a)
    bad = BruhatFactors(f.V, f.w_perm, (f.w_scales[0] * 2,) + f.w_scales[1:], f.U, f.rank)
    assert not verify_bruhat(a, bad)


def test_malformed_middle_factor_rejected():
    a = Matrix([[1, 0], [0, 1]])
    f = BruhatFactors(Matrix.identity(2), (0, 0), (Fraction(1), Fraction(1)), Matrix.identity(2), 2)
    assert check_bruhat(a, f) == ["w scaled partial permutation"]


def test_from_dense_round_trip():
    f = bruhat_general(EXAMPLE_4X4)
    g = BruhatFactors.from_dense(f.V, f.w(), f.U)
    assert (g.w_perm, g.w_scales, g.rank) == (f.w_perm, f.w_scales, f.rank)
    with pytest.raises(ValueError):
        BruhatFactors.from_dense(f.V, Matrix.identity(4).with_block(0, 1, Matrix([[1]])), f.U)


def test_shape_mismatch():
    f = bruhat_general(Matrix.identity(2))
    with pytest.raises(DimensionMismatch):
        verify_bruhat(Matrix.identity(3), f)
    with pytest.raises(DimensionMismatch):
        bruhat_flip(Matrix([[1, 2, 3]]))
