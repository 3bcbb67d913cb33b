"""Exact integer utilities: factorization, Kronecker symbols, modular square roots."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import gcd, isqrt
import random

MAX_INPUT = 2**63 - 1
# Trial division covers small factors; anything left goes to Miller-Rabin/Brent.
_TRIAL_LIMIT = 2**12
# Deterministic for n < 3.3e24, which covers every 64-bit input.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


class InvalidInput(ValueError):
    """Raised for arguments outside an operation's domain."""


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def valuation(self, p: int) -> int:
        for q, v in self.factors:
            if q == p:
                return v
        return 0

    @property
    def omega(self) -> int:
        return len(self.factors)

    @property
    def phi(self) -> int:
        out = 1
        for p, v in self.factors:
            out *= (p - 1) * p ** (v - 1)
        return out

    @property
    def is_squarefree(self) -> bool:
        return all(v == 1 for _, v in self.factors)

    def value(self) -> int:
        out = 1
        for p, v in self.factors:
            out *= p**v
        return out


def is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    if n % 2 == 0:
        return 2
    rng = random.Random(n)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g


def _split_large(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_probable_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_brent(n)
    _split_large(d, out)
    _split_large(n // d, out)


@lru_cache(maxsize=65536)
def factorize(n: int) -> Factorization:
    """Factor ``1 <= n < 2**63`` by trial division, finishing with Miller-Rabin/Brent."""
    if not isinstance(n, int) or isinstance(n, bool):
        raise InvalidInput(f"expected an integer, got {n!r}")
    if n < 1:
        raise InvalidInput(f"cannot factor {n}: need a positive integer")
    if n > MAX_INPUT:
        raise InvalidInput(f"{n} exceeds the 64-bit input limit")
    found: dict[int, int] = {}
    m = n
    for p in (2, 3):
        while m % p == 0:
            found[p] = found.get(p, 0) + 1
            m //= p
    p = 5
    limit = min(_TRIAL_LIMIT, isqrt(m))
    while p <= limit:
        for q in (p, p + 2):
            if m % q == 0:
                while m % q == 0:
                    found[q] = found.get(q, 0) + 1
                    m //= q
                limit = min(_TRIAL_LIMIT, isqrt(m))
        p += 6
    if m > 1:
        _split_large(m, found)
    return Factorization(n, tuple(sorted(found.items())))


def divisors(n: int) -> list[int]:
    f = factorize(n)
    out = [1]
    for p, v in f:
        out = [d * p**j for d in out for j in range(v + 1)]
    return sorted(out)


def hall_divisors(n: int) -> list[int]:
    """Divisors e of n with gcd(e, n/e) = 1, ascending."""
    f = factorize(n)
    out = [1]
    for p, v in f:
        out = out + [d * p**v for d in out]
    return sorted(out)


def is_hall_divisor(e: int, n: int) -> bool:
    return e > 0 and n % e == 0 and gcd(e, n // e) == 1


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for arbitrary integers."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol (a/n) for odd n > 0.
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _tonelli(d: int, p: int) -> int | None:
    d %= p
    if d == 0:
        return 0
    if p == 2:
        return d
    if pow(d, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(d, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(d, q, p), pow(d, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def _sqrt_prime_power(d: int, p: int, v: int) -> list[int]:
    q = p**v
    if p == 2 and q <= 2**16:
        return [r for r in range(q) if (r * r - d) % q == 0]
    r0 = _tonelli(d, p)
    if r0 is None:
        return []
    roots = sorted({r0, (-r0) % p})
    mod = p
    for _ in range(1, v):
        nxt = mod * p
        if p != 2 and d % p:
            # Hensel step: the lift is unique.
            roots = [(r - (r * r - d) * pow(2 * r, -1, nxt)) % nxt for r in roots]
        else:
            roots = [r + t * mod for r in roots for t in range(p) if ((r + t * mod) ** 2 - d) % nxt == 0]
        mod = nxt
    return sorted(set(roots))


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    return (r1 + m1 * ((r2 - r1) * pow(m1, -1, m2) % m2)) % (m1 * m2)


def sqrt_mod(d: int, m: int) -> list[int]:
    """All r in [0, m) with r*r == d (mod m), sorted."""
    if m < 1:
        raise InvalidInput(f"modulus must be positive, got {m}")
    if m == 1:
        return [0]
    acc, mod = [0], 1
    for p, v in factorize(m):
        local = _sqrt_prime_power(d, p, v)
        if not local:
            return []
        q = p**v
        acc = [crt_pair(a, mod, b, q) for a, b in product(acc, local)]
        mod *= q
    return sorted(acc)


def euler_phi(n: int) -> int:
    return factorize(n).phi


def omega(n: int) -> int:
    return factorize(n).omega


def is_squarefree(n: int) -> bool:
    return factorize(n).is_squarefree


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise InvalidInput("valuation of 0 is infinite")
    n, v = abs(n), 0
    while n % p == 0:
        n //= p
        v += 1
    return v
