"""Exact scalars a + b*sqrt(q) over the rationals.

All combinatorial transforms in this package take values in the real
quadratic ring generated by sqrt(q), where q = (r-1)(k-1) is the growth base
of the graph.  Working in this ring keeps every half-integer power of q
exact, so round-trip identities can be asserted with ``==`` rather than a
tolerance.  Values are immutable and canonical: when q is a perfect square
the sqrt(q) part is folded into the rational part at construction, which
makes structural equality semantic equality.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

__all__ = [
    "AlgebraicValue",
    "RingMismatchError",
    "q_half_power",
    "sqrt_q",
    "parse_value",
]


class RingMismatchError(ValueError):
    """Arithmetic between values attached to different ring parameters q."""


def _exact_root(q: int) -> int | None:
    root = math.isqrt(q)
    return root if root * root == q else None


# 60-digit rational approximations of sqrt(q), keyed by q.  float(a + b*sqrt(q))
# goes through these so that cancellation between the two parts does not
# destroy the result.
_ROOT_APPROX: dict[int, Fraction] = {}

_SCALE = 10**60


def _root_approx(q: int) -> Fraction:
    try:
        return _ROOT_APPROX[q]
    except KeyError:
        approx = Fraction(math.isqrt(q * _SCALE * _SCALE), _SCALE)
        _ROOT_APPROX[q] = approx
        return approx


class AlgebraicValue:
    """An exact number a + b*sqrt(q) with rational a, b and integer q >= 1."""

    __slots__ = ("a", "b", "q")

    def __init__(self, a=0, b=0, q: int = 1):
        q = int(q)
        if q < 1:
            raise ValueError(f"ring parameter must be a positive integer, got {q}")
        a = a if isinstance(a, Fraction) else Fraction(a)
        b = b if isinstance(b, Fraction) else Fraction(b)
        if b:
            root = _exact_root(q)
            if root is not None:
                a += b * root
                b = Fraction(0)
        self.a = a
        self.b = b
        self.q = q

    # -- construction helpers -------------------------------------------------

    @classmethod
    def rational(cls, value, q: int) -> "AlgebraicValue":
        return cls(value, 0, q)

    def _coerce(self, other) -> "AlgebraicValue | None":
        if isinstance(other, AlgebraicValue):
            if other.q != self.q:
                raise RingMismatchError(
                    f"cannot combine values over sqrt({self.q}) and sqrt({other.q})"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return AlgebraicValue(other, 0, self.q)
        return None

    # -- ring operations -------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraicValue(self.a + o.a, self.b + o.b, self.q)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraicValue(self.a - o.a, self.b - o.b, self.q)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraicValue(o.a - self.a, o.b - self.b, self.q)

    def __neg__(self):
        return AlgebraicValue(-self.a, -self.b, self.q)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.b and not o.b:
            return AlgebraicValue(self.a * o.a, 0, self.q)
        return AlgebraicValue(
            self.a * o.a + self.b * o.b * self.q,
            self.a * o.b + self.b * o.a,
            self.q,
        )

    __rmul__ = __mul__

    def inverse(self) -> "AlgebraicValue":
        norm = self.a * self.a - self.b * self.b * self.q
        if norm == 0:
            raise ZeroDivisionError("division by zero in quadratic ring")
        return AlgebraicValue(self.a / norm, -self.b / norm, self.q)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        out = AlgebraicValue(1, 0, self.q)
        base = self
        n = exponent
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparisons and conversions --------------------------------------------

    def is_zero(self) -> bool:
        return not self.a and not self.b

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, AlgebraicValue):
            if other.q != self.q:
                return self.b == 0 == other.b and self.a == other.a
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.q))

    def __float__(self) -> float:
        if not self.b:
            return float(self.a)
        return float(self.a + self.b * _root_approx(self.q))

    def __complex__(self) -> complex:
        return complex(float(self))

    def __abs__(self) -> float:
        return abs(float(self))

    # -- text form ---------------------------------------------------------------

    def __str__(self) -> str:
        if not self.b:
            return str(self.a)
        tail = f"sqrt({self.q})" if abs(self.b) == 1 else f"{abs(self.b)}*sqrt({self.q})"
        sign = "-" if self.b < 0 else ("+" if self.a else "")
        head = str(self.a) if self.a else ""
        return f"{head}{sign}{tail}"

    def __repr__(self) -> str:
        return f"AlgebraicValue({self.a!r}, {self.b!r}, q={self.q})"


def q_half_power(q: int, m: int) -> AlgebraicValue:
    """q**(m/2) as an exact ring element, for any integer m.

    Even m gives a pure rational; odd m gives q**((m-1)/2) * sqrt(q).
    """
    q = int(q)
    if q < 1:
        raise ValueError(f"ring parameter must be a positive integer, got {q}")
    if m % 2 == 0:
        return AlgebraicValue(Fraction(q) ** (m // 2), 0, q)
    return AlgebraicValue(0, Fraction(q) ** ((m - 1) // 2), q)


def sqrt_q(q: int) -> AlgebraicValue:
    return q_half_power(q, 1)


_RATIONAL = r"[+-]?\d+(?:/\d+)?"
_VALUE_RE = re.compile(
    rf"^\s*(?:(?P<a>{_RATIONAL})\s*)?"
    rf"(?:(?P<sign>[+-])?\s*(?:(?P<b>\d+(?:/\d+)?)\s*\*\s*)?sqrt\(\s*(?P<q>\d+)\s*\))?\s*$"
)


def parse_value(text: str, q: int) -> AlgebraicValue:
    """Parse "a/b", "c/d*sqrt(Q)" or "a/b+c/d*sqrt(Q)" into a ring element.

    The sqrt argument, when present, must match the expected ring parameter.
    """
    m = _VALUE_RE.match(text)
    if not m or (m.group("a") is None and m.group("q") is None):
        raise ValueError(f"cannot parse ring value from {text!r}")
    a = Fraction(m.group("a")) if m.group("a") is not None else Fraction(0)
    b = Fraction(0)
    if m.group("q") is not None:
        q_seen = int(m.group("q"))
        if q_seen != q:
            raise RingMismatchError(f"value {text!r} lives over sqrt({q_seen}), expected sqrt({q})")
        b = Fraction(m.group("b")) if m.group("b") is not None else Fraction(1)
        if m.group("sign") == "-":
            b = -b
        if m.group("a") is None and m.group("sign") == "+":
            pass
    return AlgebraicValue(a, b, q)
