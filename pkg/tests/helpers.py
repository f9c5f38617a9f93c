import random
from pathlib import Path

from bruhat.errors import ZeroPivotMinor
from bruhat.ldu import ldu_full
from bruhat.matrix import Matrix
from bruhat.minors import oracle_alphas

DATA = Path(__file__).parent / "data"

EXAMPLE_4X4 = Matrix([[1, -4, 0, 1], [4, 5, 5, 3], [1, 2, 2, 2], [3, 0, 0, 1]])

# published reference factorization of EXAMPLE_4X4, entered by hand
REFERENCE_V = Matrix([[-24, 0, 12, 1], [0, 60, 15, 4], [0, 0, 6, 1], [0, 0, 0, 3]])
REFERENCE_U = Matrix([[3, 0, 0, 1], [0, 6, 6, 5], [0, 0, -24, -16], [0, 0, 0, 60]])
REFERENCE_W_PERM = (2, 3, 1, 0)
REFERENCE_W_SCALES_TEXT = ("-1/144", "-1/1440", "1/18", "1/3")


def rand_matrix(rng: random.Random, n: int, m: int | None = None, lo: int = -9, hi: int = 9) -> Matrix:
    m = n if m is None else m
    return Matrix([[rng.randint(lo, hi) for _ in range(m)] for _ in range(n)], m)


def rand_low_rank(rng: random.Random, n: int, m: int, r: int, lo: int = -4, hi: int = 4) -> Matrix:
    return rand_matrix(rng, n, r, lo, hi) @ rand_matrix(rng, r, m, lo, hi)


def rand_sparse(rng: random.Random, n: int, m: int, density: float = 0.3) -> Matrix:
    return Matrix([[rng.randint(-5, 5) if rng.random() < density else 0 for _ in range(m)] for _ in range(n)], m)


def rand_generic(rng: random.Random, n: int, lo: int = -9, hi: int = 9) -> Matrix:
    """Resample until every leading minor is nonzero."""
    while True:
        a = rand_matrix(rng, n, n, lo, hi)
        if all(x != 0 for x in oracle_alphas(a)):
            return a


def is_generic(a: Matrix) -> bool:
    try:
        ldu_full(a)
    except ZeroPivotMinor:
        return False
    return True
