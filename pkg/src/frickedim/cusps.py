"""Cusps of Gamma0(N) and the cusp character sums entering the dimension formulas."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .arith import InvalidInput, divisors, euler_phi
from .characters import GAMMA0_PLUS, ExtChar, QuadChar
from .gauss import GaussQ


@dataclass(frozen=True)
class CuspRep:
    a: int
    c: int
    level: int

    @property
    def width(self) -> int:
        return self.level // gcd(self.level, self.c * self.c)

    def __str__(self):
        if self.c == self.level:
            return "oo" if self.a == 1 else f"{self.a}/{self.c}"
        return f"{self.a}/{self.c}"


def cusp_reps(N: int) -> list[CuspRep]:
    """a/c with c | N and a a unit modulo gcd(c, N/c) (a taken in [1, gcd])."""
    if N < 1:
        raise InvalidInput(f"level must be positive, got {N}")
    out = []
    for c in divisors(N):
        g = gcd(c, N // c)
        for a in range(1, g + 1):
            if gcd(a, g) != 1:
                continue
            # lift a so that gcd(a, c) = 1 as well
            while gcd(a, c) != 1:
                a += g
            out.append(CuspRep(a, c, N))
    return out


def nu_inf(chi: QuadChar) -> int:
    N, f = chi.level, chi.conductor
    total = 0
    for c in divisors(N):
        g = gcd(c, N // c)
        if (N // f) % g == 0:
            total += euler_phi(g)
    return total


_N4_TABLE = {"+1": Fraction(2), "-1": Fraction(1), "+i": Fraction(3, 2), "-i": Fraction(1, 2)}


def nu_inf_plus(chi_hat: ExtChar) -> Fraction:
    if chi_hat.kind != GAMMA0_PLUS:
        raise InvalidInput("nu_inf_plus needs a Gamma0+ extension")
    N = chi_hat.level
    if N == 4:
        s = chi_hat.sign
        key = {GaussQ(1): "+1", GaussQ(-1): "-1", GaussQ(0, 1): "+i", GaussQ(0, -1): "-i"}[s]
        return _N4_TABLE[key]
    return Fraction(nu_inf(chi_hat.base), 2)


def cusp_count_plus(N: int) -> int:
    """Number of cusps of Gamma0+(N)."""
    if N < 2:
        raise InvalidInput("Gamma0+(N) needs N > 1")
    if N == 4:
        return 2
    return nu_inf(QuadChar(N)) // 2
