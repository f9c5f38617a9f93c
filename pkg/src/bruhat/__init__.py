"""Exact fraction-free LDU, Bruhat and triangular decompositions over commutative domains."""

from .bruhat import BruhatFactors, bruhat_flip, bruhat_general, verify_bruhat
from .complexity import CountReport, measure_ldu, recurrence_t
from .domain import ZZ, IntegerRing, OpCounter, Ring
from .errors import (
    BruhatError,
    DimensionMismatch,
    DivisionByZero,
    InexactDivision,
    IndexOutOfRange,
    InvalidSize,
    NotInRing,
    ZeroPivotMinor,
)
from .etd import EtdFactors, etd, etd_to_ldu_grouping, verify_etd
from .ldu import LduFactors, ldu_full, ldu_rec
from .matrix import Matrix, Permutation, flip
from .minors import alpha_minor, check_base_minor_identity, check_sylvester, delta_minor, minors_matrix

__all__ = [
    "BruhatError",
    "BruhatFactors",
    "CountReport",
    "DimensionMismatch",
    "DivisionByZero",
    "EtdFactors",
    "IndexOutOfRange",
    "InexactDivision",
    "IntegerRing",
    "InvalidSize",
    "LduFactors",
    "Matrix",
    "NotInRing",
    "OpCounter",
    "Permutation",
    "Ring",
    "ZZ",
    "ZeroPivotMinor",
    "alpha_minor",
    "bruhat_flip",
    "bruhat_general",
    "check_base_minor_identity",
    "check_sylvester",
    "delta_minor",
    "etd",
    "etd_to_ldu_grouping",
    "flip",
    "ldu_full",
    "ldu_rec",
    "measure_ldu",
    "minors_matrix",
    "recurrence_t",
    "verify_bruhat",
    "verify_etd",
]
