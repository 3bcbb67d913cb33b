"""Exact Gaussian rationals a + b*i with Fraction parts."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational


@dataclass(frozen=True)
class GaussQ:
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @staticmethod
    def lift(x) -> "GaussQ":
        if isinstance(x, GaussQ):
            return x
        if isinstance(x, (int, Rational)):
            return GaussQ(Fraction(x))
        raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")

    def __add__(self, other):
        o = GaussQ.lift(other)
        return GaussQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussQ.lift(other))

    def __rsub__(self, other):
        return GaussQ.lift(other) - self

    def __mul__(self, other):
        o = GaussQ.lift(other)
        return GaussQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussQ.lift(other)
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return self * GaussQ(o.re / n, -o.im / n)

    def __eq__(self, other):
        try:
            o = GaussQ.lift(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def conjugate(self) -> "GaussQ":
        return GaussQ(self.re, -self.im)

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def real(self) -> Fraction:
        """The real part; raises if the imaginary part is nonzero."""
        if self.im:
            raise ArithmeticError(f"expected a real value, got {self}")
        return self.re

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*i"


ONE = GaussQ(1)
I = GaussQ(0, 1)
UNITS = {"+1": GaussQ(1), "-1": GaussQ(-1), "+i": GaussQ(0, 1), "-i": GaussQ(0, -1)}


def parse_unit(text: str) -> GaussQ:
    t = text.strip().replace(" ", "")
    aliases = {"1": "+1", "i": "+i"}
    t = aliases.get(t, t)
    if t not in UNITS:
        raise ValueError(f"bad sign {text!r}: expected one of +1, -1, +i, -i")
    return UNITS[t]


def format_unit(u: GaussQ) -> str:
    for k, v in UNITS.items():
        if v == u:
            return k
    raise ValueError(f"{u} is not a fourth root of unity")
