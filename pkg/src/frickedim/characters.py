"""Quadratic Dirichlet characters, Atkin-Lehner matrices and their extensions.

An Atkin-Lehner coset element of level N attached to a Hall divisor e is the
real matrix

    [[a*sqrt(e),     b/sqrt(e)],
     [c*N/sqrt(e),   d*sqrt(e)]]      with  a*d*e - b*c*N/e = 1,

stored exactly through its integer entries (a, b, c, d) and the tag e.  Tag 1
is an ordinary element [[a, b], [c*N, d]] of Gamma0(N).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from math import gcd

from .arith import InvalidInput, factorize, hall_divisors, is_hall_divisor, kronecker
from .gauss import GaussQ, format_unit, parse_unit

TWO_PARTS = ("triv", "m4", "p8", "m8")
_TWO_CONDUCTOR = {"triv": 1, "m4": 4, "p8": 8, "m8": 8}
_TWO_KRONECKER = {"m4": -4, "p8": 8, "m8": -8}

GAMMA0 = "gamma0"
GAMMA0_PLUS = "gamma0+"
GAMMA0_STAR = "gamma0*"
GROUP_KINDS = (GAMMA0, GAMMA0_PLUS, GAMMA0_STAR)


class NotExtendable(InvalidInput):
    """The character has no extension to the requested group."""


def _allowed_two_parts(v2: int) -> tuple[str, ...]:
    if v2 <= 1:
        return ("triv",)
    if v2 == 2:
        return ("triv", "m4")
    return TWO_PARTS


@dataclass(frozen=True)
class QuadChar:
    """A trivial or quadratic character mod N, stored by its local components."""

    level: int
    odd_part: tuple[int, ...] = ()
    two_part: str = "triv"

    def __post_init__(self):
        N = self.level
        if not isinstance(N, int) or N < 1:
            raise InvalidInput(f"level must be a positive integer, got {N!r}")
        f = factorize(N)
        if len(set(self.odd_part)) != len(self.odd_part):
            raise InvalidInput(f"duplicate character components in {self.odd_part}")
        for p in self.odd_part:
            if p == 2 or p not in f.primes:
                raise InvalidInput(f"component p{p} is not an odd prime dividing {N}")
        if self.two_part not in TWO_PARTS:
            raise InvalidInput(f"unknown 2-adic component {self.two_part!r}")
        if self.two_part not in _allowed_two_parts(f.valuation(2)):
            raise InvalidInput(f"2-adic component {self.two_part} is incompatible with v2({N}) = {f.valuation(2)}")
        object.__setattr__(self, "odd_part", tuple(sorted(self.odd_part)))

    @property
    def conductor(self) -> int:
        out = _TWO_CONDUCTOR[self.two_part]
        for p in self.odd_part:
            out *= p
        return out

    @property
    def parity(self) -> int:
        """chi(-1)."""
        s = -1 if self.two_part in ("m4", "m8") else 1
        for p in self.odd_part:
            if p % 4 == 3:
                s = -s
        return s

    @property
    def is_trivial(self) -> bool:
        return not self.odd_part and self.two_part == "triv"

    def component(self, p: int) -> "QuadChar":
        """The p-component as a character of the same level."""
        if p == 2:
            return QuadChar(self.level, (), self.two_part)
        return QuadChar(self.level, (p,) if p in self.odd_part else ())

    def __call__(self, n: int) -> int:
        val = 1
        if self.two_part != "triv":
            val = kronecker(_TWO_KRONECKER[self.two_part], n)
        for p in self.odd_part:
            if not val:
                return 0
            val *= kronecker(n, p)
        return val

    @property
    def label(self) -> str:
        toks = [f"p{p}" for p in self.odd_part]
        if self.two_part != "triv":
            toks.append(self.two_part)
        return ",".join(toks) if toks else "triv"

    def __str__(self):
        return self.label


def make_char(N: int, spec) -> QuadChar:
    """Build a character from a token list or comma-separated string (``p13,p17``, ``m4``, ``triv``)."""
    if isinstance(spec, str):
        tokens = [t.strip() for t in spec.split(",") if t.strip()]
    else:
        tokens = [str(t).strip() for t in spec]
    odd: list[int] = []
    two = None
    for tok in tokens:
        if tok in ("triv", "1"):
            continue
        if tok in ("m4", "p8", "m8"):
            if two is not None:
                raise InvalidInput(f"more than one 2-adic component in {spec!r}")
            two = tok
        elif tok.startswith("p") and tok[1:].isdigit():
            odd.append(int(tok[1:]))
        else:
            raise InvalidInput(f"bad character token {tok!r}")
    return QuadChar(N, tuple(odd), two or "triv")


@lru_cache(maxsize=4096)
def list_chars(N: int) -> tuple[QuadChar, ...]:
    """All trivial/quadratic characters mod N, trivial first."""
    f = factorize(N)
    odd = [p for p in f.primes if p != 2]
    subsets = [c for r in range(len(odd) + 1) for c in combinations(odd, r)]
    return tuple(QuadChar(N, s, t) for t in _allowed_two_parts(f.valuation(2)) for s in subsets)


@dataclass(frozen=True)
class ALMatrix:
    level: int
    e: int
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if not is_hall_divisor(self.e, self.level):
            raise InvalidInput(f"{self.e} is not a Hall divisor of {self.level}")
        if self.a * self.d * self.e - self.b * self.c * (self.level // self.e) != 1:
            raise InvalidInput(f"determinant condition fails for {self}")

    def __matmul__(self, other: "ALMatrix") -> "ALMatrix":
        if other.level != self.level:
            raise InvalidInput("cannot multiply matrices of different levels")
        N, e1, e2 = self.level, self.e, other.e
        g = gcd(e1, e2)
        lcm = e1 * e2 // g
        e3 = lcm // g
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = other.a, other.b, other.c, other.d
        return ALMatrix(
            N,
            e3,
            g * a1 * a2 + b1 * c2 * (N // lcm),
            (a1 * b2 * e1 + b1 * d2 * e2) // g,
            (c1 * a2 * e2 + d1 * c2 * e1) // g,
            c1 * b2 * (N // lcm) + g * d1 * d2,
        )

    def inverse(self) -> "ALMatrix":
        return ALMatrix(self.level, self.e, self.d, -self.b, -self.c, self.a)

    def neg(self) -> "ALMatrix":
        return ALMatrix(self.level, self.e, -self.a, -self.b, -self.c, -self.d)

    @property
    def trace_coefficient(self) -> int:
        """The trace divided by sqrt(e)."""
        return self.a + self.d

    def to_float(self):
        s = self.e**0.5
        N = self.level
        return [[self.a * s, self.b / s], [self.c * N / s, self.d * s]]

    def integer_matrix(self):
        """The Gamma0(N) element [[a, b], [cN, d]] (tag 1 only)."""
        if self.e != 1:
            raise InvalidInput("only tag-1 elements are integer matrices")
        return ((self.a, self.b), (self.c * self.level, self.d))


def identity(N: int) -> ALMatrix:
    return ALMatrix(N, 1, 1, 0, 0, 1)


@lru_cache(maxsize=65536)
def atkin_lehner(N: int, e: int) -> ALMatrix:
    """Canonical W_e: b = d = 1 and 0 <= a < N/e; W_N = [[0, -1/sqrt N], [sqrt N, 0]]."""
    if not is_hall_divisor(e, N):
        raise InvalidInput(f"{e} is not a Hall divisor of {N}")
    if e == 1:
        return identity(N)
    if e == N:
        return ALMatrix(N, N, 0, -1, 1, 0)
    m = N // e
    a = pow(e, -1, m)
    return ALMatrix(N, e, a, 1, (a * e - 1) // m, 1)


def al_mul(m1: ALMatrix, m2: ALMatrix) -> ALMatrix:
    return m1 @ m2


def char_eval(chi: QuadChar, n: int) -> int:
    """chi(n) for the primitive character underlying chi."""
    return chi(n)


def _hall_part(N: int, p: int) -> int:
    return p ** factorize(N).valuation(p)


@lru_cache(maxsize=4096)
def commutator_obstruction(chi: QuadChar) -> tuple[tuple[int, int], ...]:
    """Prime pairs (p, q) whose Atkin-Lehner commutator has chi-value -1.

    chi extends to Gamma0*(N) only when this is empty.
    """
    N = chi.level
    primes = factorize(N).primes
    bad = []
    for p, q in combinations(primes, 2):
        wp = atkin_lehner(N, _hall_part(N, p))
        wq = atkin_lehner(N, _hall_part(N, q))
        comm = wp @ wq @ wp.inverse() @ wq.inverse()
        if chi(comm.d) != 1:
            bad.append((p, q))
    return tuple(bad)


def allowed_signs(chi: QuadChar, e: int) -> tuple[GaussQ, GaussQ]:
    """The two admissible values of an extension on the canonical W_e (e a prime-power Hall divisor or N)."""
    w = atkin_lehner(chi.level, e)
    sq = chi((w @ w).d)
    if sq == 1:
        return (GaussQ(1), GaussQ(-1))
    return (GaussQ(0, 1), GaussQ(0, -1))


@dataclass(frozen=True)
class ExtChar:
    """A character of Gamma0(N), Gamma0+(N) or Gamma0*(N) restricting to ``base``."""

    base: QuadChar
    kind: str = GAMMA0
    sign: GaussQ | None = None
    star_signs: tuple[tuple[int, GaussQ], ...] = ()
    _wcache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        chi, N = self.base, self.base.level
        if self.kind not in GROUP_KINDS:
            raise InvalidInput(f"unknown group kind {self.kind!r}")
        if self.kind == GAMMA0_PLUS:
            if N < 2:
                raise InvalidInput("Gamma0+(N) needs N > 1")
            if self.sign is None:
                raise InvalidInput("Gamma0+ extension needs a sign on W_N")
            if self.sign not in allowed_signs(chi, N):
                raise InvalidInput(f"sign {format_unit(self.sign)} does not square to chi(-1) = {chi.parity}")
        elif self.kind == GAMMA0_STAR:
            f = factorize(N)
            if N < 2 or not f.is_squarefree:
                raise InvalidInput(f"Gamma0*(N) needs square-free N > 1, got {N}")
            if commutator_obstruction(chi):
                raise NotExtendable(f"{chi} mod {N} does not extend to Gamma0*({N})")
            signs = dict(self.star_signs)
            if sorted(signs) != list(f.primes):
                raise InvalidInput(f"need one sign for each prime of {N}, got {sorted(signs)}")
            for p, s in signs.items():
                if s not in allowed_signs(chi, p):
                    opts = "/".join(format_unit(u) for u in allowed_signs(chi, p))
                    raise InvalidInput(f"sign {format_unit(s)} at {p} not admissible; expected {opts}")
            object.__setattr__(self, "star_signs", tuple(sorted(signs.items())))

    @property
    def level(self) -> int:
        return self.base.level

    @property
    def is_trivial(self) -> bool:
        if not self.base.is_trivial:
            return False
        if self.kind == GAMMA0_PLUS:
            return self.sign == 1
        if self.kind == GAMMA0_STAR:
            return all(s == 1 for _, s in self.star_signs)
        return True

    def conjugate(self) -> "ExtChar":
        return ExtChar(
            self.base,
            self.kind,
            None if self.sign is None else self.sign.conjugate(),
            tuple((p, s.conjugate()) for p, s in self.star_signs),
        )

    def on_w(self, e: int) -> GaussQ:
        """Value on the canonical W_e."""
        if e in self._wcache:
            return self._wcache[e]
        N = self.level
        if e == 1:
            val = GaussQ(1)
        elif self.kind == GAMMA0_PLUS and e == N:
            val = self.sign
        elif self.kind == GAMMA0_STAR:
            primes = factorize(e).primes
            if len(primes) == 1:
                val = dict(self.star_signs)[primes[0]]
            else:
                p = primes[0]
                rest = e // p
                # W_p W_rest = h W_e with h in Gamma0(N)
                h = atkin_lehner(N, p) @ atkin_lehner(N, rest) @ atkin_lehner(N, e).inverse()
                val = self.on_w(p) * self.on_w(rest) * self.base(h.d)
        else:
            raise InvalidInput(f"W_{e} does not lie in {self.kind}({N})")
        self._wcache[e] = val
        return val

    @property
    def sign_label(self) -> str:
        if self.kind == GAMMA0_PLUS:
            return format_unit(self.sign)
        if self.kind == GAMMA0_STAR:
            return ",".join(f"{p}:{format_unit(s)}" for p, s in self.star_signs)
        return ""


def ext_eval(chi_hat: ExtChar, m: ALMatrix) -> GaussQ:
    """Evaluate an extended character on an Atkin-Lehner coset element."""
    if m.level != chi_hat.level:
        raise InvalidInput("matrix level does not match the character level")
    w = atkin_lehner(m.level, m.e)
    g = m @ w.inverse()
    v = chi_hat.base(g.d)
    if v == 0:
        return GaussQ(0)
    return chi_hat.on_w(m.e) * v


def extensions(chi: QuadChar, kind: str) -> list[ExtChar]:
    """All extensions of chi to the given group, in deterministic sign order."""
    N = chi.level
    if kind == GAMMA0:
        return [ExtChar(chi)]
    if kind == GAMMA0_PLUS:
        return [ExtChar(chi, GAMMA0_PLUS, s) for s in allowed_signs(chi, N)]
    if kind == GAMMA0_STAR:
        f = factorize(N)
        if N < 2 or not f.is_squarefree:
            raise InvalidInput(f"Gamma0*(N) needs square-free N > 1, got {N}")
        if commutator_obstruction(chi):
            raise NotExtendable(f"{chi} mod {N} does not extend to Gamma0*({N})")
        choices = [[(p, s) for s in allowed_signs(chi, p)] for p in f.primes]
        return [ExtChar(chi, GAMMA0_STAR, None, tuple(c)) for c in product(*choices)]
    raise InvalidInput(f"unknown group kind {kind!r}")


def extends_to_star(chi: QuadChar) -> bool:
    return factorize(chi.level).is_squarefree and not commutator_obstruction(chi)


def parse_sign(text: str) -> GaussQ:
    try:
        return parse_unit(text)
    except ValueError as exc:
        raise InvalidInput(str(exc)) from None


def parse_star_signs(text: str) -> tuple[tuple[int, GaussQ], ...]:
    """Parse ``13:+1,17:-1``."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ":" not in part:
            raise InvalidInput(f"bad star sign {part!r}; expected p:sign")
        p, s = part.split(":", 1)
        if not p.strip().isdigit():
            raise InvalidInput(f"bad prime in star sign {part!r}")
        out.append((int(p), parse_sign(s)))
    return tuple(out)


def all_hall_divisors(N: int) -> list[int]:
    return hall_divisors(N)
