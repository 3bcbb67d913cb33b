"""Elliptic points: character sums over order-2 and order-3 points of Gamma0(N),
Gamma0+(N) and Gamma0*(N).

Order-2 points fixed by an element of an Atkin-Lehner coset W_e*Gamma0(N) are
handled through trace-zero elements

    [[a*sqrt(e), -b/sqrt(e)], [c*N/sqrt(e), -a*sqrt(e)]],   b*c*N/e - a^2*e = 1,

which correspond to positive definite forms (cN, -2ae, b) of discriminant -4e.
Such a form has content 1 (family "primitive") or content 2 (family "half",
only for e = 3 mod 4, i.e. twice a primitive form of discriminant -e).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .arith import InvalidInput, divisors, factorize, hall_divisors, is_hall_divisor, kronecker, sqrt_mod
from .characters import (
    GAMMA0_PLUS,
    GAMMA0_STAR,
    ALMatrix,
    ExtChar,
    QuadChar,
    ext_eval,
    extensions,
)
from .gauss import GaussQ
from .qforms import (
    QForm,
    class_number,
    fundamental_part,
    gamma0_class_key,
    gamma0_classes_of,
    reduce,
    reduced_forms,
    represented_value,
)

SCAN_CAP = 2**20


class InternalLimit(RuntimeError):
    """A bounded search gave up before reaching its target."""


# -- Gamma0(N) ---------------------------------------------------------------


def a4_roots(N: int) -> list[int]:
    return sqrt_mod(-1, N)


def a3_roots(N: int) -> list[int]:
    """s mod N with s^2 + s + 1 = 0."""
    if N == 1:
        return [0]
    if N % 2 == 0:
        return []  # s^2 + s + 1 is always odd
    inv2 = (N + 1) // 2
    return sorted((r - 1) * inv2 % N for r in sqrt_mod(-3, N))


def nu2(chi: QuadChar) -> int:
    return sum(chi(s) for s in a4_roots(chi.level))


def nu3(chi: QuadChar) -> int:
    return sum(chi(s) for s in a3_roots(chi.level))


def a3_orbits(N: int) -> list[tuple[int, int]]:
    """Size-2 orbits of s -> -1 - s on the roots of s^2 + s + 1."""
    out = []
    for s in a3_roots(N):
        t = (-1 - s) % N
        if s < t:
            out.append((s, t))
    return out


def nu3_plus(chi_hat: ExtChar) -> int:
    return sum(chi_hat.base(s) for s, _ in a3_orbits(chi_hat.level))


# -- trace-zero elements of W_e Gamma0(N) -------------------------------------


def _families(e: int):
    fams = [("primitive", R) for R in reduced_forms(-4 * e)]
    if e % 4 == 3:
        fams += [("half", QForm(2 * R.A, 2 * R.B, 2 * R.C)) for R in reduced_forms(-e)]
    return fams


def _admissible(e: int):
    return lambda Q: Q.B % (2 * e) == 0


@lru_cache(maxsize=4096)
def p1_class_forms(N: int, e: int) -> tuple[QForm, ...]:
    """Gamma0(N)-classes of forms (cN, -2ae, b) of discriminant -4e, one representative each.

    Built from P^1(Z/N) coset data, independently of the a-scan.
    """
    if not is_hall_divisor(e, N) or e == 1:
        raise InvalidInput(f"{e} is not a Hall divisor > 1 of {N}")
    out = []
    for _, R in _families(e):
        out.extend(gamma0_classes_of(R, N, _admissible(e)))
    return tuple(out)


def expected_class_count(N: int, e: int) -> tuple[int, int]:
    """(primitive, half) class counts from the P^1 enumeration."""
    forms = p1_class_forms(N, e)
    half = sum(1 for Q in forms if Q.content == 2)
    return len(forms) - half, half


def rho_class_count(N: int, e: int) -> int:
    """#{rho mod 2N : rho^2 = -4e mod 4N} * h(-4e): the primitive-family count."""
    rhos = [r for r in sqrt_mod(-4 * e, 4 * N) if r < 2 * N]
    return len(rhos) * class_number(-4 * e)


def form_to_element(Q: QForm, N: int, e: int) -> ALMatrix:
    c, B, b = Q.A // N, Q.B, Q.C
    a = -B // (2 * e)
    return ALMatrix(N, e, a, -b, c, -a)


def _scan(N: int, e: int, target: int, bound: int, exhaust: bool) -> dict:
    m = N // e
    found: dict = {}
    iters = 0
    k = 0
    while True:
        for a in (0,) if k == 0 else (k, -k):
            iters += 1
            t = 1 + a * a * e
            if t % m:
                continue
            prod = t // m
            for c in divisors(prod):
                Q = QForm(c * N, -2 * a * e, prod // c)
                found.setdefault(gamma0_class_key(Q, N), Q)
        if not exhaust and len(found) >= target:
            return found
        k += 1
        if k > bound:
            if exhaust:
                return found
            bound *= 2
        if iters > SCAN_CAP:
            raise InternalLimit(f"class scan for N={N}, e={e} found {len(found)} of {target} after {iters} steps")


@dataclass(frozen=True)
class EllipticClassStar:
    e: int
    rho: int
    cls: QForm
    subfamily: str
    form: QForm
    element: ALMatrix

    @property
    def key(self):
        return (self.e, self.rho, self.subfamily, self.cls)


def _initial_bound(N: int) -> int:
    return 4 * isqrt(N) + 4


@lru_cache(maxsize=4096)
def coset_elliptic_classes(N: int, e: int, initial_bound: int | None = None, exhaust: bool = False):
    """Gamma0(N)-classes of trace-zero elements of W_e Gamma0(N), by scanning a."""
    prim, half = expected_class_count(N, e)
    target = prim + half
    bound = initial_bound or _initial_bound(N)
    found = _scan(N, e, target, bound, exhaust)
    if len(found) != target:
        raise InternalLimit(f"class scan for N={N}, e={e} found {len(found)} classes, expected {target}")
    out = []
    for Q in found.values():
        if Q.content == 1:
            fam, cls = "primitive", reduce(Q)
        else:
            fam, cls = "half", reduce(QForm(Q.A // 2, Q.B // 2, Q.C // 2))
        out.append(EllipticClassStar(e, Q.B % (2 * N), cls, fam, Q, form_to_element(Q, N, e)))
    out.sort(key=lambda x: (x.subfamily != "primitive", x.rho, x.cls))
    return tuple(out)


def _check_star_level(N: int) -> None:
    if N < 2 or not factorize(N).is_squarefree:
        raise InvalidInput(f"Gamma0*(N) needs square-free N > 1, got {N}")


def star_elliptic_classes(N: int, e: int, initial_bound: int | None = None, exhaust: bool = False):
    _check_star_level(N)
    if not is_hall_divisor(e, N) or e == 1:
        raise InvalidInput(f"{e} is not a Hall divisor > 1 of {N}")
    return list(coset_elliptic_classes(N, e, initial_bound, exhaust))


def is_rotation_cube(m: ALMatrix) -> bool:
    """True when the trace-zero element m of W_3 Gamma0(N) is the cube of an order-6 rotation.

    An element of W_3 Gamma0(N) with trace +-sqrt(3) fixing the same point is
    (+-I + +-m)/2 up to scaling, which is integral exactly when a is odd and
    b, c are even.
    """
    return m.e == 3 and m.a % 2 == 1 and m.b % 2 == 0 and m.c % 2 == 0


def _counted(cl: EllipticClassStar) -> bool:
    # order-6 points are counted by the delta_12 term, not as order-2 points
    return not is_rotation_cube(cl.element)


def coset_sum(chi_hat: ExtChar, e: int) -> GaussQ:
    """Sum of chi_hat over the order-2 classes of W_e Gamma0(N)."""
    total = GaussQ(0)
    for cl in coset_elliptic_classes(chi_hat.level, e):
        if _counted(cl):
            total += ext_eval(chi_hat, cl.element)
    return total


# -- Gamma0+(N) ---------------------------------------------------------------


@dataclass(frozen=True)
class EllipticClassPlus:
    family: str
    cls: QForm
    r: int
    element: ALMatrix


def extra_count_plus(N: int) -> int:
    if N < 4:
        raise InvalidInput("extra_count_plus needs N >= 4")
    out = class_number(-4 * N)
    if N % 4 == 3:
        out += class_number(-N)
    return out


def plus_elliptic_classes(N: int) -> list[EllipticClassPlus]:
    out = []
    for cl in coset_elliptic_classes(N, N):
        if not _counted(cl):
            continue
        fam = "disc4N" if cl.subfamily == "primitive" else "discN"
        out.append(EllipticClassPlus(fam, cl.cls, represented_value(cl.cls, 4 * N), cl.element))
    return out


def _check_plus(chi_hat: ExtChar) -> None:
    if chi_hat.kind != GAMMA0_PLUS:
        raise InvalidInput("expected a Gamma0+ extension")


def _plus_class_sum(chi: QuadChar) -> int:
    """The sum of chi over the W_N-fixed classes, by the genus-theory case list."""
    N = chi.level
    if chi.is_trivial:
        return extra_count_plus(N)
    dfund, _ = fundamental_part(-4 * N)
    f = chi.conductor
    if f != -dfund:
        return 0
    fac = factorize(N)
    v2 = fac.valuation(2)
    if v2 >= 2:
        if v2 % 2 == 0:
            return class_number(-4 * N)
        core = -dfund // 8
        # the 2-part of (dfund/.) on odd integers
        wanted = "m8" if core % 4 == 1 else "p8"
        return class_number(-4 * N) if chi.two_part == wanted else 0
    if N % 4 == 3:
        if f % 8 == 3:
            return class_number(-4 * N) - class_number(-N)
        return class_number(-4 * N) + class_number(-N)
    return 0


def nu2_plus(chi_hat: ExtChar) -> GaussQ:
    _check_plus(chi_hat)
    N, eps = chi_hat.level, chi_hat.sign
    if N in (2, 3):
        return eps
    return GaussQ(Fraction(nu2(chi_hat.base), 2)) + eps * _plus_class_sum(chi_hat.base)


def nu2_plus_oracle(chi_hat: ExtChar) -> GaussQ:
    """nu2+ from the class lists of discriminants -4N and -N, evaluating chi at represented values."""
    _check_plus(chi_hat)
    chi, N, eps = chi_hat.base, chi_hat.level, chi_hat.sign
    if N < 4:
        raise InvalidInput("the class-sum oracle needs N >= 4")
    m = 4 * N * chi.conductor
    s = sum(chi(represented_value(Q, m)) for Q in reduced_forms(-4 * N))
    if N % 4 == 3:
        s += chi(2) * sum(chi(represented_value(Q, m)) for Q in reduced_forms(-N))
    return GaussQ(Fraction(nu2(chi), 2)) + eps * s


def nu2_plus_direct(chi_hat: ExtChar) -> GaussQ:
    """nu2+ by evaluating chi+ on explicit representatives of every W_N-fixed class."""
    _check_plus(chi_hat)
    N = chi_hat.level
    base = GaussQ(0) if N == 2 else GaussQ(Fraction(nu2(chi_hat.base), 2))
    return base + coset_sum(chi_hat, N)


# -- Gamma0*(N) ---------------------------------------------------------------


def _primes(N: int) -> tuple[int, ...]:
    return factorize(N).primes


def delta8_star(N: int) -> int:
    _check_star_level(N)
    return int(N % 2 == 0 and all(p % 4 == 1 for p in _primes(N // 2)))


def delta12_star(N: int) -> int:
    _check_star_level(N)
    return int(N % 3 == 0 and all(p % 3 == 1 for p in _primes(N // 3)))


def nu3_star(N: int) -> int:
    _check_star_level(N)
    return int(all(p % 3 == 1 for p in _primes(N)))


def rotation_generator(N: int, e: int) -> ALMatrix:
    """An element of W_e Gamma0(N) with trace -sqrt(e) and positive lower-left entry (e = 2 or 3).

    It generates the stabilizer of the order-4 (e = 2) or order-6 (e = 3) point.
    """
    m = N // e
    for a in range(m):
        t = e * a * a + e * a + 1
        if t % m == 0:
            return ALMatrix(N, e, a, -(t // m), 1, -1 - a)
    raise InvalidInput(f"no order-{2 * e} point for level {N}")


def _check_star(chi_hat: ExtChar) -> None:
    if chi_hat.kind != GAMMA0_STAR:
        raise InvalidInput("expected a Gamma0* extension")


def star_rotation_sign(chi_hat: ExtChar, e: int) -> GaussQ:
    return ext_eval(chi_hat, rotation_generator(chi_hat.level, e))


def star_coset_sums(chi_hat: ExtChar) -> dict[int, GaussQ]:
    _check_star(chi_hat)
    return {e: coset_sum(chi_hat, e) for e in hall_divisors(chi_hat.level)[1:]}


def nu2_star(chi_hat: ExtChar) -> GaussQ:
    _check_star(chi_hat)
    N = chi_hat.level
    w = factorize(N).omega
    total = GaussQ(0)
    if not delta8_star(N):
        # with an order-4 point present, the Gamma0(N) order-2 points all become order 4
        total += GaussQ(Fraction(nu2(chi_hat.base), 2**w))
    for s in star_coset_sums(chi_hat).values():
        total += s * Fraction(2, 2**w)
    return total


def kappa(chi: QuadChar, e: int, a: int) -> int:
    """prod over p | gcd(f, N/e) of ((-a mod p)/p)."""
    N, f = chi.level, chi.conductor
    out = 1
    for p in _primes(N // e):
        if f % p == 0:
            out *= kronecker(-a, p)
    return out


def chi_e(chi: QuadChar, e: int, cl: EllipticClassStar) -> int:
    f = chi.conductor
    ps = [p for p in _primes(e) if f % p == 0]
    r = represented_value(cl.cls, 4 * chi.level * f)
    out = 1
    for p in ps:
        out *= kronecker(r, p)
        if cl.subfamily == "half":
            out *= kronecker(2, p)
    return out


def coset_sum_formula(chi_hat: ExtChar, e: int) -> GaussQ:
    """S_e via chi*(W_e) * sum of kappa(rho) * chi_e(class), the genus-character route."""
    _check_star(chi_hat)
    chi = chi_hat.base
    total = 0
    for cl in coset_elliptic_classes(chi.level, e):
        if not _counted(cl):
            continue
        total += kappa(chi, e, cl.element.a) * chi_e(chi, e, cl)
    return chi_hat.on_w(e) * total


def star_count(N: int) -> int:
    """Number of order-2 points of Gamma0*(N) (trivial character, all signs +1)."""
    triv = extensions(QuadChar(N), GAMMA0_STAR)[0]
    return int(nu2_star(triv).real())


__all__ = [
    "EllipticClassPlus",
    "EllipticClassStar",
    "InternalLimit",
    "a3_orbits",
    "a3_roots",
    "a4_roots",
    "coset_elliptic_classes",
    "coset_sum",
    "coset_sum_formula",
    "delta12_star",
    "delta8_star",
    "is_rotation_cube",
    "expected_class_count",
    "extra_count_plus",
    "nu2",
    "nu2_plus",
    "nu2_plus_direct",
    "nu2_plus_oracle",
    "nu2_star",
    "nu3",
    "nu3_plus",
    "nu3_star",
    "plus_elliptic_classes",
    "rho_class_count",
    "rotation_generator",
    "star_coset_sums",
    "star_elliptic_classes",
    "star_rotation_sign",
]
