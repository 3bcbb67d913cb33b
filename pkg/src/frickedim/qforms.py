"""Positive definite binary quadratic forms, class numbers and genus theory."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import gcd, isqrt

from .arith import InvalidInput, crt_pair, factorize, kronecker

Matrix = tuple[tuple[int, int], tuple[int, int]]
IDENTITY: Matrix = ((1, 0), (0, 1))


@dataclass(frozen=True, order=True)
class QForm:
    A: int
    B: int
    C: int

    @property
    def disc(self) -> int:
        return self.B * self.B - 4 * self.A * self.C

    @property
    def content(self) -> int:
        return gcd(gcd(self.A, self.B), self.C)

    @property
    def is_primitive(self) -> bool:
        return self.content == 1

    @property
    def is_positive_definite(self) -> bool:
        return self.disc < 0 and self.A > 0

    @property
    def is_reduced(self) -> bool:
        A, B, C = self
        if not (abs(B) <= A <= C):
            return False
        return B >= 0 or (abs(B) != A and A != C)

    def __iter__(self):
        yield from (self.A, self.B, self.C)

    def __call__(self, x: int, y: int) -> int:
        return self.A * x * x + self.B * x * y + self.C * y * y

    def transform(self, m: Matrix) -> "QForm":
        """The form X -> Q(m X)."""
        (p, q), (r, s) = m
        A, B, C = self
        return QForm(
            A * p * p + B * p * r + C * r * r,
            2 * A * p * q + B * (p * s + q * r) + 2 * C * r * s,
            A * q * q + B * q * s + C * s * s,
        )

    def __str__(self):
        return f"({self.A},{self.B},{self.C})"


def matmul(m1: Matrix, m2: Matrix) -> Matrix:
    (a, b), (c, d) = m1
    (e, f), (g, h) = m2
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def matinv(m: Matrix) -> Matrix:
    (a, b), (c, d) = m
    return ((d, -b), (-c, a))


def _check_definite(Q: QForm) -> None:
    if Q.disc >= 0 or Q.A <= 0:
        raise InvalidInput(f"{Q} is not positive definite")


def reduce_with_transform(Q: QForm) -> tuple[QForm, Matrix]:
    """Return (R, t) with R reduced and R = Q.transform(t), t in SL2(Z)."""
    _check_definite(Q)
    A, B, C = Q
    t = IDENTITY
    while True:
        if A > C:
            A, B, C = C, -B, A
            t = matmul(t, ((0, -1), (1, 0)))
            continue
        if B > A or B <= -A:
            k = (A - B) // (2 * A)
            A, B, C = A, B + 2 * A * k, A * k * k + B * k + C
            t = matmul(t, ((1, k), (0, 1)))
            continue
        break
    if B < 0 and A == C:
        A, B, C = C, -B, A
        t = matmul(t, ((0, -1), (1, 0)))
    return QForm(A, B, C), t


def reduce(Q: QForm) -> QForm:
    return reduce_with_transform(Q)[0]


def _check_disc(D: int) -> None:
    if not isinstance(D, int) or D >= 0 or D % 4 not in (0, 1):
        raise InvalidInput(f"{D} is not a negative discriminant (need D < 0, D = 0 or 1 mod 4)")


@lru_cache(maxsize=8192)
def _reduced_forms(D: int, primitive: bool) -> tuple[QForm, ...]:
    _check_disc(D)
    out = []
    amax = isqrt(-D // 3)
    for A in range(1, amax + 1):
        for B in range(-A + 1, A + 1):
            if (B * B - D) % (4 * A):
                continue
            C = (B * B - D) // (4 * A)
            if C < A or (B < 0 and A == C):
                continue
            Q = QForm(A, B, C)
            if primitive and not Q.is_primitive:
                continue
            out.append(Q)
    return tuple(out)


def reduced_forms(D: int) -> list[QForm]:
    """Primitive reduced forms of discriminant D, ordered by (A, B)."""
    return list(_reduced_forms(D, True))


def class_number(D: int) -> int:
    return len(_reduced_forms(D, True))


def is_fundamental(D: int) -> bool:
    if D % 4 == 1:
        return factorize(abs(D)).is_squarefree
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and factorize(abs(m)).is_squarefree
    return False


def fundamental_part(D: int) -> tuple[int, int]:
    """(D', l) with D = D' l^2 and D' fundamental."""
    _check_disc(D)
    sign = -1
    core, l = 1, 1
    for p, v in factorize(-D):
        core *= p ** (v % 2)
        l *= p ** (v // 2)
    d0 = sign * core
    if d0 % 4 != 1:
        d0 *= 4
        l //= 2
    return d0, l


# -- generic characters ------------------------------------------------------

_TWO_ORDER = ("m4", "p8", "m8")


def generic_characters(D: int) -> list[str]:
    """Generic-character labels of D: odd primes ascending, then m4, p8, m8."""
    _check_disc(D)
    odd = [f"p{p}" for p in factorize(-D).primes if p != 2]
    if D % 4 == 1:
        return odd
    N = -D // 4
    v2 = factorize(N).valuation(2)
    if N % 4 == 0:
        two = ["m4"] if v2 == 2 else ["m4", "p8"]
    elif N % 4 == 1:
        two = ["m4"]
    elif N % 8 == 2:
        two = ["m8"]
    elif N % 8 == 6:
        two = ["p8"]
    else:
        two = []
    return odd + two


def eval_generic(label: str, r: int) -> int:
    if label == "m4":
        return kronecker(-4, r)
    if label == "p8":
        return kronecker(8, r)
    if label == "m8":
        return kronecker(-8, r)
    return kronecker(r, int(label[1:]))


def represented_value(Q: QForm, coprime_to: int) -> int:
    """Smallest value Q(x, y) coprime to ``coprime_to`` within a doubling search box."""
    _check_definite(Q)
    m = abs(coprime_to)
    box = 4
    while True:
        best = None
        for x in range(0, box + 1):
            for y in range(-box, box + 1):
                if x == 0 and y <= 0:
                    continue
                r = Q(x, y)
                if gcd(r, m) == 1 and (best is None or r < best):
                    best = r
        if best is not None:
            return best
        box *= 2


@dataclass(frozen=True)
class GenusTable:
    disc: int
    characters: tuple[str, ...]
    classes: tuple[QForm, ...]
    assignment: tuple[tuple[int, ...], ...]

    def genera(self) -> list[tuple[tuple[int, ...], list[QForm]]]:
        """Genera ordered with + before - in each slot."""
        groups: dict[tuple[int, ...], list[QForm]] = {}
        for Q, vec in zip(self.classes, self.assignment):
            groups.setdefault(vec, []).append(Q)
        return sorted(groups.items(), key=lambda kv: tuple(-s for s in kv[0]))

    def vector_of(self, Q: QForm) -> tuple[int, ...]:
        R = reduce(Q)
        return self.assignment[self.classes.index(R)]


def genus_vector(Q: QForm, characters, coprime_to: int) -> tuple[int, ...]:
    r = represented_value(Q, coprime_to)
    return tuple(eval_generic(c, r) for c in characters)


@lru_cache(maxsize=1024)
def genus_partition(D: int) -> GenusTable:
    chars = tuple(generic_characters(D))
    classes = tuple(reduced_forms(D))
    assignment = tuple(genus_vector(Q, chars, 2 * D) for Q in classes)
    return GenusTable(D, chars, classes, assignment)


# -- Gamma0(N)-classes of forms with N | A -----------------------------------


@lru_cache(maxsize=4096)
def automorphisms(R: QForm) -> tuple[Matrix, ...]:
    """SL2(Z) automorphs of a reduced form (entries are in {-1, 0, 1})."""
    out = []
    for p, q, r, s in product((-1, 0, 1), repeat=4):
        if p * s - q * r == 1 and R.transform(((p, q), (r, s))) == R:
            out.append(((p, q), (r, s)))
    return tuple(out)


def p1_normalize(x: int, y: int, N: int) -> tuple[tuple[int, int], ...]:
    """Canonical label of the point (x : y) of P^1(Z/N), one pair per prime power."""
    out = []
    for p, v in factorize(N):
        q = p**v
        xq, yq = x % q, y % q
        if yq % p:
            out.append((xq * pow(yq, -1, q) % q, 1))
        elif xq % p:
            out.append((1, yq * pow(xq, -1, q) % q))
        else:
            raise InvalidInput(f"({x}:{y}) is not a point of P^1(Z/{N})")
    return tuple(out)


def gamma0_class_key(Q: QForm, N: int):
    """Exact Gamma0(N)-equivalence key of a positive definite form with N | A.

    Q equals R.transform(g) for the reduced R; the class is determined by the
    coset g*Gamma0(N), i.e. the P^1(Z/N) point of g's first column, taken up
    to the automorphs of R.
    """
    R, t = reduce_with_transform(Q)
    g = matinv(t)
    x, y = g[0][0], g[1][0]
    if N == 1:
        return (R, ())
    labels = []
    for a in automorphisms(R):
        ax = a[0][0] * x + a[0][1] * y
        ay = a[1][0] * x + a[1][1] * y
        labels.append(p1_normalize(ax, ay, N))
    return (R, min(labels))


def _lift_coprime(x: int, y: int, N: int) -> tuple[int, int]:
    x %= N
    y %= N
    if x == 0:
        x = N
    k = 0
    while gcd(x, y + k * N) != 1:
        k += 1
    return x, y + k * N


def _complete(x: int, y: int) -> Matrix:
    # solve x*s - u*y = 1
    g, s, u = _xgcd(x, y)
    assert g == 1
    return ((x, -u), (y, s))


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


@lru_cache(maxsize=4096)
def _p1_points(N: int) -> tuple[tuple[int, int], ...]:
    """One integer representative (x, y), gcd(x, y) = 1, per point of P^1(Z/N)."""
    pts, mod = [(0, 0)], 1
    for p, v in factorize(N):
        q = p**v
        local = [(x, 1) for x in range(q)] + [(1, p * y) for y in range(q // p)]
        pts = [(crt_pair(x0, mod, x1, q), crt_pair(y0, mod, y1, q)) for x0, y0 in pts for x1, y1 in local]
        mod *= q
    return tuple(_lift_coprime(x, y, N) for x, y in pts)


def gamma0_classes_of(R: QForm, N: int, accept=None) -> list[QForm]:
    """Representatives of the Gamma0(N)-classes inside the SL2(Z)-class of R having N | A.

    ``accept`` optionally filters on the transformed form (it must be a
    Gamma0(N)-invariant condition, e.g. on B mod 2N).
    """
    R = reduce(R)
    keys = {}
    for x, y in _p1_points(N):
        if R(x, y) % N:
            continue
        Q = R.transform(_complete(x, y))
        if accept is not None and not accept(Q):
            continue
        k = gamma0_class_key(Q, N)
        keys.setdefault(k, Q)
    return list(keys.values())
