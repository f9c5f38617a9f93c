"""Multiplication counts of the recursive LDU against ``t(n) = 2 t(n/2) + 7 (n/2)^3``.

Counting contract: every entry-level multiplication inside the seven block
products of an internal node, plus the seven multiplicative operations
(multiplications and exact divisions) of each 2 x 2 leaf.  Scalings by
leading minors and the entrywise divisions that follow them are not part
of the comparison.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction

from .domain import OpCounter
from .errors import InvalidSize
from .ldu import ldu_full
from .matrix import Matrix

__all__ = ["CountReport", "recurrence_t", "closed_form", "measure_ldu", "PRODUCTS_PER_NODE"]

PRODUCTS_PER_NODE = 7
LEAF_OPS = 7


def _log2(n: int) -> int:
    if not isinstance(n, int) or n < 2 or n & (n - 1):
        raise InvalidSize(f"size must be a power of two >= 2, got {n!r}")
    return n.bit_length() - 1


def recurrence_t(n: int) -> int:
    _log2(n)
    if n == 2:
        return LEAF_OPS
    return 2 * recurrence_t(n // 2) + PRODUCTS_PER_NODE * (n // 2) ** 3


def closed_form(n: int, gamma=1, beta=3) -> Fraction:
    """Summed form with ``M(m) = gamma m^beta`` and ``2^(k-2)`` leaves of cost 7.

    Reported for comparison only: it undercounts the leaves (there are
    ``n / 2`` of them), so it sits ``7 n / 4`` below :func:`recurrence_t`.
    """
    k = _log2(n)
    head = Fraction(7 * gamma * (n**beta - n * 2 ** (beta - 1)), 2**beta - 2)
    return head + Fraction(7 * 2**k, 4)


@dataclass
class CountReport:
    n: int
    block_products: int
    ring_muls_in_blocks: int
    base_case_muls: int
    expected_t: int
    closed_form: str = ""

    @property
    def measured(self) -> int:
        return self.ring_muls_in_blocks + self.base_case_muls

    @property
    def matches(self) -> bool:
        return self.measured == self.expected_t

    def to_dict(self) -> dict:
        d = asdict(self)
        d["measured"] = self.measured
        d["matches"] = self.matches
        return d


def measure_ldu(a: Matrix) -> CountReport:
    """Run the LDU with a fresh counter and check the per-node structure."""
    n = a.nrows
    _log2(n)
    counter = OpCounter()
    ldu_full(a, counter)
    for node in counter.trace:
        if len(node.products) != PRODUCTS_PER_NODE or node.recursive_calls != 2:
            raise AssertionError(
                f"node ({node.k}, {node.n}) made {len(node.products)} block products "
                f"and {node.recursive_calls} recursive calls"
            )
    cf = closed_form(n)
    return CountReport(
        n=n,
        block_products=counter.block_product_count,
        ring_muls_in_blocks=counter.block_mul_count,
        base_case_muls=counter.base_case_ops,
        expected_t=recurrence_t(n),
        closed_form=str(cf),
    )
