"""Exact arithmetic on dyadic rationals (numbers of the form a / 2**e).

The arithmetic functions in this package take values in the dyadic
rationals, and the summatory functions accumulate thousands to billions of
such terms.  Floats would silently round, and a general-purpose Fraction
carries gcd work we never need: the denominator is always a power of two.
This module keeps values in the canonical form (odd numerator, or exactly
zero), so equality is a plain field comparison and addition costs two
shifts and an integer add.
"""

from __future__ import annotations


class DyadicRational:
    """Value numerator / 2**exponent, always kept canonical.

    Canonical form: the numerator is odd, or the value is zero with
    exponent 0.  Numerators are arbitrary-precision integers; all
    arithmetic here is exact, only ``float()`` rounds (correctly, via
    integer true division).  Instances are treated as immutable.
    """

    __slots__ = ("numerator", "exponent")

    def __init__(self, numerator: int, exponent: int = 0):
        if exponent < 0:
            raise ValueError("exponent must be non-negative")
        if numerator == 0:
            exponent = 0
        elif exponent > 0:
            # strip shared powers of two; & works bit-wise for negatives too
            trailing = (numerator & -numerator).bit_length() - 1
            k = trailing if trailing < exponent else exponent
            numerator >>= k
            exponent -= k
        self.numerator = numerator
        self.exponent = exponent

    # -- constructors -------------------------------------------------

    @classmethod
    def from_string(cls, text: str) -> "DyadicRational":
        """Parse the ``str()`` form: "0", "-5", "23/2", "41/4"."""
        text = text.strip()
        if "/" in text:
            num_s, den_s = text.split("/", 1)
            den = int(den_s)
            e = den.bit_length() - 1
            if den <= 0 or (1 << e) != den:
                raise ValueError(f"denominator {den} is not a power of two")
            return cls(int(num_s), e)
        return cls(int(text))

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, DyadicRational):
            return other
        if isinstance(other, int):
            return DyadicRational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        e = self.exponent if self.exponent >= o.exponent else o.exponent
        num = (self.numerator << (e - self.exponent)) + (
            o.numerator << (e - o.exponent)
        )
        return DyadicRational(num, e)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.__add__(DyadicRational(-o.numerator, o.exponent))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o.__sub__(self)

    def __neg__(self):
        return DyadicRational(-self.numerator, self.exponent)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return DyadicRational(self.numerator * o.numerator, self.exponent + o.exponent)

    __rmul__ = __mul__

    # -- comparisons ---------------------------------------------------

    def _cmp_key(self, other: "DyadicRational") -> tuple[int, int]:
        e = self.exponent if self.exponent >= other.exponent else other.exponent
        return (
            self.numerator << (e - self.exponent),
            other.numerator << (e - other.exponent),
        )

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        # canonical form makes equality structural
        return self.numerator == o.numerator and self.exponent == o.exponent

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._cmp_key(o)
        return a < b

    def __le__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._cmp_key(o)
        return a <= b

    def __gt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._cmp_key(o)
        return a > b

    def __ge__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._cmp_key(o)
        return a >= b

    def __hash__(self):
        return hash((self.numerator, self.exponent))

    # -- conversions ---------------------------------------------------

    def __float__(self) -> float:
        # int / int true division is correctly rounded in CPython
        return self.numerator / (1 << self.exponent)

    def __bool__(self) -> bool:
        return self.numerator != 0

    def as_integer_ratio(self) -> tuple[int, int]:
        return self.numerator, 1 << self.exponent

    def __str__(self) -> str:
        if self.exponent == 0:
            return str(self.numerator)
        return f"{self.numerator}/{1 << self.exponent}"

    def __repr__(self) -> str:
        return f"DyadicRational({self.numerator}, {self.exponent})"


ZERO = DyadicRational(0)
ONE = DyadicRational(1)
