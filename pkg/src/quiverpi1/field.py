"""Exact base fields: the rationals and prime fields GF(p)."""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@total_ordering
class Mod:
    """A residue modulo a prime, always stored in ``[0, p)``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.p = p
        self.value = value % p

    def _coerce(self, other):
        if isinstance(other, Mod):
            if other.p != self.p:
                raise ValueError(f"mixing GF({self.p}) and GF({other.p})")
            return other
        if isinstance(other, int):
            return Mod(other, self.p)
        if isinstance(other, Fraction):
            return Mod(other.numerator, self.p) / Mod(other.denominator, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Mod(self.value + other.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Mod(self.value - other.value, self.p)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Mod(other.value - self.value, self.p)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Mod(self.value * other.value, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Mod(-self.value, self.p)

    def inverse(self) -> "Mod":
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return Mod(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return Mod(pow(self.value, e, self.p), self.p)

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, Mod):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, Mod):
            return self.value < other.value
        if isinstance(other, int):
            return self.value < other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __repr__(self):
        return f"Mod({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


class Field:
    """Either QQ (``characteristic == 0``) or GF(p).

    Elements are :class:`fractions.Fraction` over QQ and :class:`Mod` over
    GF(p); both support the ordinary arithmetic operators, so the rest of
    the package is written generically.
    """

    def __init__(self, characteristic: int = 0):
        if characteristic < 0 or (characteristic and not _is_prime(characteristic)):
            raise ValueError(f"characteristic must be 0 or a prime, got {characteristic}")
        self.characteristic = characteristic

    @classmethod
    def QQ(cls) -> "Field":
        return cls(0)

    @classmethod
    def GF(cls, p: int) -> "Field":
        return cls(p)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, x):
        p = self.characteristic
        if isinstance(x, str):
            x = Fraction(x.strip())
        if p == 0:
            if isinstance(x, Mod):
                raise TypeError("cannot coerce a residue into QQ")
            return Fraction(x)
        if isinstance(x, Mod):
            if x.p != p:
                raise ValueError(f"mixing GF({x.p}) and GF({p})")
            return x
        x = Fraction(x)
        if x.denominator % p == 0:
            raise ZeroDivisionError(f"{x} is undefined in GF({p})")
        return Mod(x.numerator, p) / Mod(x.denominator, p)

    def nonzero_elements(self) -> list:
        """All of k* for a prime field; raises over QQ."""
        if not self.characteristic:
            raise ValueError("QQ has infinitely many nonzero elements")
        return [Mod(v, self.characteristic) for v in range(1, self.characteristic)]

    def format(self, x) -> str:
        return str(x)

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __repr__(self):
        return "QQ" if not self.characteristic else f"GF({self.characteristic})"

    __str__ = __repr__


QQ = Field(0)
