"""Commutative domains, their fraction fields, and operation counting.

Ring elements are plain Python objects supporting ``+ - *`` and ``==``;
a :class:`Ring` instance supplies what operators cannot: exact division,
an optional gcd, and the fraction-field constructor.  The shipped
instantiation is :data:`ZZ` over Python's arbitrary-precision ``int``,
whose fractions are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DivisionByZero, InexactDivision

__all__ = [
    "OpCounter",
    "NodeTrace",
    "Ring",
    "IntegerRing",
    "ZZ",
    "Frac",
    "add",
    "mul",
    "exact_div",
    "frac_normalize",
]


@dataclass
class NodeTrace:
    """Block-product bookkeeping for one internal node of the LDU recursion."""

    k: int
    n: int
    products: list[str] = field(default_factory=list)
    recursive_calls: int = 0


@dataclass
class OpCounter:
    """Per-call operation counts.

    ``mul_count`` and ``div_count`` see every ring multiplication and exact
    division.  ``block_product_count`` counts full matrix-by-matrix products
    and ``block_mul_count`` the ring multiplications performed inside them.
    ``base_case_ops`` counts multiplicative operations (products and exact
    divisions) spent in the 1x1 and 2x2 leaves of the LDU recursion.
    """

    mul_count: int = 0
    div_count: int = 0
    block_product_count: int = 0
    block_mul_count: int = 0
    base_case_ops: int = 0
    trace: list[NodeTrace] = field(default_factory=list)

    def count_product(self, muls: int) -> None:
        self.block_product_count += 1
        self.block_mul_count += muls
        self.mul_count += muls


class Ring:
    """A commutative domain.

    Subclasses must implement :meth:`divmod_exact`; ``gcd`` returns ``None``
    when the ring has no gcd, in which case fractions stay unreduced.
    """

    zero = 0
    one = 1

    def add(self, a, b):
        return a + b

    def mul(self, a, b, counter: OpCounter | None = None):
        if counter is not None:
            counter.mul_count += 1
        return a * b

    def divides(self, b, a) -> bool:
        try:
            self.exact_div(a, b)
        except InexactDivision:
            return False
        return True

    def exact_div(self, a, b, counter: OpCounter | None = None):
        if b == self.zero:
            raise DivisionByZero(f"exact division of {a} by zero")
        if counter is not None:
            counter.div_count += 1
        return self.divmod_exact(a, b)

    def divmod_exact(self, a, b):
        raise NotImplementedError

    def gcd(self, a, b):
        return None

    def is_positive_unit_normal(self, a) -> bool:
        """Whether ``a`` is already the preferred associate (e.g. ``a > 0``)."""
        return True

    def frac(self, num, den):
        """Element ``num/den`` of the fraction field."""
        return Frac(num, den, self)

    def is_integral(self, x) -> bool:
        """Whether a fraction-field element lies in the ring."""
        if isinstance(x, Frac):
            return self.divides(x.den, x.num)
        return True

    def to_ring(self, x):
        if isinstance(x, Frac):
            return self.exact_div(x.num, x.den)
        return x


class IntegerRing(Ring):
    """The integers with Python ints; fractions are ``fractions.Fraction``."""

    def divmod_exact(self, a, b):
        q, r = divmod(a, b)
        if r:
            raise InexactDivision(a, b)
        return q

    def gcd(self, a, b):
        return math.gcd(a, b)

    def is_positive_unit_normal(self, a) -> bool:
        return a > 0

    def frac(self, num, den):
        if den == 0:
            raise DivisionByZero(f"{num}/0")
        return Fraction(num, den)

    def is_integral(self, x) -> bool:
        if isinstance(x, Fraction):
            return x.denominator == 1
        return isinstance(x, int)

    def to_ring(self, x):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise InexactDivision(x.numerator, x.denominator)
            return x.numerator
        return x

    def __repr__(self):
        return "ZZ"


ZZ = IntegerRing()


class Frac:
    """Quotient ``num/den`` over an arbitrary :class:`Ring`.

    Reduced by the ring's gcd when it has one; otherwise kept as is and
    compared by cross-multiplication.
    """

    __slots__ = ("num", "den", "ring")

    def __init__(self, num, den, ring: Ring):
        if den == ring.zero:
            raise DivisionByZero(f"{num}/0")
        g = ring.gcd(num, den)
        if g is not None and g != ring.zero and g != ring.one:
            num, den = ring.exact_div(num, g), ring.exact_div(den, g)
        if not ring.is_positive_unit_normal(den):
            num, den = -num, -den
        self.num = num
        self.den = den
        self.ring = ring

    def _coerce(self, other):
        if isinstance(other, Frac):
            return other
        return Frac(other, self.ring.one, self.ring)

    def __add__(self, other):
        o = self._coerce(other)
        return Frac(self.num * o.den + o.num * self.den, self.den * o.den, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return Frac(-self.num, self.den, self.ring)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return Frac(self.num * o.num, self.den * o.den, self.ring)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.num == self.ring.zero:
            raise DivisionByZero("division by zero fraction")
        return Frac(self.num * o.den, self.den * o.num, self.ring)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except Exception:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        if self.ring.gcd(self.num, self.den) is not None:
            return hash((self.num, self.den))
        return 0

    def __repr__(self):
        return f"{self.num}/{self.den}"


def add(a, b):
    return a + b


def mul(a, b, counter: OpCounter | None = None, ring: Ring = ZZ):
    return ring.mul(a, b, counter)


def exact_div(a, b, counter: OpCounter | None = None, ring: Ring = ZZ):
    return ring.exact_div(a, b, counter)


def frac_normalize(num, den, ring: Ring = ZZ):
    """Canonical ``num/den``; raises :class:`DivisionByZero` for ``den == 0``."""
    return ring.frac(num, den)
