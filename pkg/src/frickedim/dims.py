"""Dimension formulas for Gamma0(N), Gamma0+(N) and Gamma0*(N) with trivial or quadratic character."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arith import InvalidInput, factorize
from .characters import (
    GAMMA0,
    GAMMA0_PLUS,
    GAMMA0_STAR,
    ExtChar,
    NotExtendable,
    QuadChar,
    extends_to_star,
    extensions,
)
from .cusps import cusp_count_plus, nu_inf, nu_inf_plus
from .elliptic import (
    a3_orbits,
    a4_roots,
    delta8_star,
    delta12_star,
    extra_count_plus,
    nu2,
    nu2_plus,
    nu2_star,
    nu3,
    nu3_plus,
    nu3_star,
    star_rotation_sign,
)
from .gauss import GaussQ, format_unit


class UnsupportedWeight(InvalidInput):
    """Weight 1 (and other weights the formulas do not cover)."""


class ConsistencyError(ArithmeticError):
    """A computed dimension came out non-integral, negative or non-real."""


# -- gamma coefficients ----------------------------------------------------------

_G8 = {
    (0, 1): Fraction(3, 8), (0, -1): Fraction(-1, 8),
    (2, 1): Fraction(-3, 8), (2, -1): Fraction(1, 8),
    (4, 1): Fraction(-1, 8), (4, -1): Fraction(3, 8),
    (6, 1): Fraction(1, 8), (6, -1): Fraction(-3, 8),
}  # fmt: skip

_G12_REAL = {
    1: {0: 5, 2: -5, 4: -3, 6: -1, 8: 1, 10: 3},
    -1: {0: -1, 2: 1, 4: 3, 6: 5, 8: -5, 10: -3},
}
_G12_IMAG = {
    1: {1: -3, 3: -1, 5: 1, 7: 3, 9: 5, 11: -5},
    -1: {1: 3, 3: 5, 5: -5, 7: -3, 9: -1, 11: 1},
}


def gamma_coeff(order: int, k: int, sign=None) -> GaussQ:
    """gamma_3, gamma_4 (sign ignored), gamma_8, gamma_12 (indexed by the sign on the rotation generator)."""
    if order == 3:
        return GaussQ({0: Fraction(1, 3), 1: Fraction(0), 2: Fraction(-1, 3)}[k % 3])
    if order == 4:
        return {0: GaussQ(Fraction(1, 4)), 2: GaussQ(Fraction(-1, 4)),
                1: GaussQ(0, Fraction(1, 4)), 3: GaussQ(0, Fraction(-1, 4))}[k % 4]  # fmt: skip
    s = GaussQ.lift(sign) if sign is not None else None
    if order == 8:
        if s is None or not s.is_real or k % 2:
            raise InvalidInput(f"gamma_8 is defined for even k and a real sign, got k={k}, sign={sign}")
        return GaussQ(_G8[(k % 8, int(s.re))])
    if order == 12:
        if s is None:
            raise InvalidInput("gamma_12 needs a sign")
        if s.is_real and k % 2 == 0:
            return GaussQ(Fraction(_G12_REAL[int(s.re)][k % 12], 12))
        if not s.is_real and s.re == 0 and k % 2 == 1:
            return GaussQ(Fraction(_G12_IMAG[int(s.im)][k % 12], 12))
        raise InvalidInput(f"gamma_12 has no entry for k={k} and sign {format_unit(s)}")
    raise InvalidInput(f"no gamma coefficient of order {order}")


# -- index ---------------------------------------------------------------------------


def index_nu0(kind: str, N: int) -> Fraction:
    f = factorize(N)
    nu0 = Fraction(N)
    for p in f.primes:
        nu0 *= Fraction(p + 1, p)
    if kind == GAMMA0:
        return nu0
    if kind == GAMMA0_PLUS:
        return nu0 / 2
    if kind == GAMMA0_STAR:
        if not f.is_squarefree:
            raise InvalidInput(f"Gamma0*(N) needs square-free N, got {N}")
        return nu0 / 2**f.omega
    raise InvalidInput(f"unknown group kind {kind!r}")


# -- reports -------------------------------------------------------------------------

TERM_NAMES = ("index", "e2", "e3", "d8", "d12", "cusp")


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass
class DimReport:
    group: str
    level: int
    weight: int
    chi: str
    signs: str
    terms: dict = field(default_factory=dict)
    dim_cusp: int | None = None
    dim_eisenstein: int | None = None
    dim_modular: int | None = None
    flags: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "level": self.level,
            "weight": self.weight,
            "chi": self.chi,
            "signs": self.signs,
            "terms": {k: _frac_str(self.terms[k]) for k in TERM_NAMES if k in self.terms},
            "dims": {"cusp": self.dim_cusp, "eisenstein": self.dim_eisenstein, "modular": self.dim_modular},
            "flags": list(self.flags),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "DimReport":
        return cls(
            d["group"], d["level"], d["weight"], d["chi"], d["signs"],
            {k: Fraction(v) for k, v in d["terms"].items()},
            d["dims"]["cusp"], d["dims"]["eisenstein"], d["dims"]["modular"],
            list(d["flags"]),
        )  # fmt: skip


def _parity_ok(chi_hat: ExtChar, k: int) -> bool:
    return chi_hat.base.parity == (-1) ** (k % 2)


def _real(x: GaussQ, what: str) -> Fraction:
    if not x.is_real:
        raise ConsistencyError(f"{what} has a nonzero imaginary part: {x}")
    return x.re


def dim_terms(chi_hat: ExtChar, k: int) -> dict[str, Fraction]:
    """Signed contributions whose sum is dim S_k - dim M_{2-k}(conjugate)."""
    if not _parity_ok(chi_hat, k):
        raise InvalidInput(f"parity mismatch: chi(-1) = {chi_hat.base.parity} but k = {k}")
    chi, N, kind = chi_hat.base, chi_hat.level, chi_hat.kind
    g4, g3 = gamma_coeff(4, k), gamma_coeff(3, k)
    zero = GaussQ(0)
    index = Fraction(k - 1, 12) * index_nu0(kind, N)
    if kind == GAMMA0:
        e2, e3 = g4 * nu2(chi), g3 * nu3(chi)
        d8 = d12 = zero
        cusp = Fraction(nu_inf(chi), 2)
    elif kind == GAMMA0_PLUS:
        e2, e3 = g4 * nu2_plus(chi_hat), g3 * nu3_plus(chi_hat)
        d8 = gamma_coeff(8, k, chi_hat.sign) if N == 2 else zero
        d12 = gamma_coeff(12, k, chi_hat.sign) if N == 3 else zero
        cusp = nu_inf_plus(chi_hat) / 2
    elif kind == GAMMA0_STAR:
        e2, e3 = g4 * nu2_star(chi_hat), g3 * nu3_star(N)
        d8 = gamma_coeff(8, k, star_rotation_sign(chi_hat, 2)) if delta8_star(N) else zero
        d12 = gamma_coeff(12, k, star_rotation_sign(chi_hat, 3)) if delta12_star(N) else zero
        cusp = Fraction(1, 2)
    else:
        raise InvalidInput(f"unknown group kind {kind!r}")
    return {
        "index": index,
        "e2": _real(e2, "elliptic order-2 term"),
        "e3": _real(e3, "elliptic order-3 term"),
        "d8": _real(d8, "order-4 term"),
        "d12": _real(d12, "order-6 term"),
        "cusp": -cusp,
    }


def dim_diff(chi_hat: ExtChar, k: int) -> Fraction:
    return sum(dim_terms(chi_hat, k).values(), Fraction(0))


def _as_dim(x: Fraction, what: str) -> int:
    if x.denominator != 1 or x < 0:
        raise ConsistencyError(f"{what} = {x} is not a nonnegative integer")
    return int(x)


def _check_weight(k: int) -> None:
    if k == 1:
        raise UnsupportedWeight("weight 1 is not covered by these dimension formulas")


def dim_cusp(chi_hat: ExtChar, k: int) -> int:
    _check_weight(k)
    if k <= 0 or not _parity_ok(chi_hat, k):
        return 0
    d = dim_diff(chi_hat, k)
    if k == 2 and chi_hat.is_trivial:
        d += 1
    return _as_dim(d, f"dim S_{k}")


def dim_modular(chi_hat: ExtChar, k: int) -> int:
    _check_weight(k)
    if k < 0 or not _parity_ok(chi_hat, k):
        return 0
    if k == 0:
        return int(chi_hat.is_trivial)
    # S_{2-k} = 0 for k >= 2, so the reflected formula gives dim M_k directly
    return _as_dim(-dim_diff(chi_hat.conjugate(), 2 - k), f"dim M_{k}")


def dim_eisenstein(chi_hat: ExtChar, k: int) -> int:
    _check_weight(k)
    return _as_dim(Fraction(dim_modular(chi_hat, k) - dim_cusp(chi_hat, k)), f"dim E_{k}")


def dim_report(chi_hat: ExtChar, k: int) -> DimReport:
    rep = DimReport(chi_hat.kind, chi_hat.level, k, chi_hat.base.label, chi_hat.sign_label)
    if k == 1:
        rep.flags.append("weight_unsupported")
        return rep
    if not _parity_ok(chi_hat, k):
        rep.flags.append("parity_vanishing")
        rep.dim_cusp = rep.dim_eisenstein = rep.dim_modular = 0
        return rep
    if k >= 2:
        rep.terms = dim_terms(chi_hat, k)
    rep.dim_cusp = dim_cusp(chi_hat, k)
    rep.dim_modular = dim_modular(chi_hat, k)
    rep.dim_eisenstein = rep.dim_modular - rep.dim_cusp
    return rep


# -- genus, Riemann-Roch, power relations ---------------------------------------------


def genus_plus(N: int) -> int:
    if N < 2:
        raise InvalidInput("Gamma0+(N) needs N > 1")
    if N <= 3:
        e2 = 1
    else:
        e2 = Fraction(len(a4_roots(N)), 2) + extra_count_plus(N)
    g = (
        index_nu0(GAMMA0_PLUS, N) / 12
        - Fraction(e2) / 4
        - Fraction(len(a3_orbits(N)), 3)
        - (Fraction(3, 8) if N == 2 else 0)
        - (Fraction(5, 12) if N == 3 else 0)
        - Fraction(cusp_count_plus(N), 2)
        + 1
    )
    return _as_dim(g, f"genus of X0+({N})")


def riemann_roch_dim(chi_hat: ExtChar, k: int, degD: int) -> int:
    if k <= 2:
        raise UnsupportedWeight("the Riemann-Roch identity is stated for k > 2")
    if not _parity_ok(chi_hat, k):
        raise InvalidInput("parity mismatch")
    if degD < 0:
        raise InvalidInput("degD must be nonnegative")
    return dim_cusp(chi_hat, k) + degD


@dataclass
class RelationCheck:
    name: str
    status: str  # "pass", "fail" or "skipped"
    detail: str


def verify_power_relations(N: int, chi: QuadChar, k: int) -> list[RelationCheck]:
    out = []
    base = dim_cusp(ExtChar(chi), k)
    f = factorize(N)

    if N > 1:
        plus = [dim_cusp(x, k) for x in extensions(chi, GAMMA0_PLUS)]
        ok = sum(plus) == base
        out.append(RelationCheck("sum-plus", "pass" if ok else "fail", f"{base} = {' + '.join(map(str, plus))}"))
    else:
        out.append(RelationCheck("sum-plus", "skipped", "N = 1"))

    if N > 1 and f.is_squarefree:
        try:
            star = [dim_cusp(x, k) for x in extensions(chi, GAMMA0_STAR)]
            ok = sum(star) == base
            out.append(RelationCheck("sum-star", "pass" if ok else "fail", f"{base} = {' + '.join(map(str, star))}"))
        except NotExtendable:
            out.append(RelationCheck("sum-star", "skipped", "chi does not extend to Gamma0*(N)"))
    else:
        out.append(RelationCheck("sum-star", "skipped", "N not square-free"))

    if N > 3 and N % 4 == 1 and not chi.is_trivial:
        plus = [dim_cusp(x, k) for x in extensions(chi, GAMMA0_PLUS)]
        ok = all(2 * d == base for d in plus)
        out.append(RelationCheck("halving", "pass" if ok else "fail", f"{base} = 2 * {plus}"))
    else:
        out.append(RelationCheck("halving", "skipped", "needs N > 3, N = 1 mod 4 and nontrivial chi"))

    if N > 1 and f.is_squarefree and all(p % 4 == 1 for p in f.primes) and chi.conductor == N:
        star = [dim_cusp(x, k) for x in extensions(chi, GAMMA0_STAR)]
        ok = all(2**f.omega * d == base for d in star)
        out.append(RelationCheck("star-power", "pass" if ok else "fail", f"{base} = {2**f.omega} * {star}"))
    else:
        out.append(RelationCheck("star-power", "skipped", "needs square-free N with all p = 1 mod 4 and conductor N"))
    return out


def all_extensions(chi: QuadChar, kind: str) -> list[ExtChar]:
    """Extensions, or [] when chi does not extend (Gamma0* only)."""
    if kind == GAMMA0_STAR and not extends_to_star(chi):
        return []
    return extensions(chi, kind)
