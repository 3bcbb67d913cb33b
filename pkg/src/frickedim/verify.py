"""Verification suites shared by the CLI and the test-suite."""

from __future__ import annotations

from dataclasses import dataclass, field

from .arith import factorize, hall_divisors
from .characters import GAMMA0_PLUS, GAMMA0_STAR, ExtChar, extends_to_star, extensions, list_chars, make_char
from .dims import ConsistencyError, dim_cusp, dim_eisenstein, dim_modular, genus_plus
from .elliptic import coset_sum, nu2, nu2_plus, nu2_plus_oracle, star_elliptic_classes
from .qforms import QForm, class_number, genus_partition, reduce


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    passed: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)

    def record(self, ok: bool, detail=None) -> None:
        self.checked += 1
        if ok:
            self.passed += 1
        else:
            self.failures.append(detail)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: checked={self.checked} passed={self.passed} skipped={self.skipped}"


def _parity_weights(chi, kmin: int = 2, kmax: int = 13):
    return [k for k in range(kmin, kmax + 1) if chi.parity == (-1) ** (k % 2)]


_N = 65
GENERA_65 = {
    (1, 1, 1): [QForm(_N, 0, 1), QForm(29 * _N, -4 * _N, 9)],
    (1, -1, -1): [QForm(2 * _N, -2 * _N, 33), QForm(18 * _N, -14 * _N, 177)],
    (-1, 1, -1): [QForm(6 * _N, -2 * _N, 11), QForm(6 * _N, 2 * _N, 11)],
    (-1, -1, 1): [QForm(22 * _N, 2 * _N, 3), QForm(22 * _N, -2 * _N, 3)],
}
"""Genera of discriminant -260 keyed by ((-1/.), (./5), (./13))."""


def suite_worked_example() -> SuiteResult:
    res = SuiteResult("worked-example")
    chi = make_char(221, "p13,p17")
    res.record(dim_cusp(ExtChar(chi), 6) == 104, "dim S6(Gamma0(221)) != 104")
    res.record(nu2(chi) == -4, "nu2 != -4")
    (minus,) = [x for x in extensions(chi, GAMMA0_PLUS) if x.sign == -1]
    res.record(dim_cusp(minus, 6) == 52, "dim S6(Gamma0+(221)) != 52")
    for x in extensions(chi, GAMMA0_STAR):
        res.record(dim_cusp(x, 6) == 26, f"dim S6(Gamma0*(221)) != 26 for {x.sign_label}")
    table = genus_partition(-260)
    order = {c: i for i, c in enumerate(table.characters)}
    got = {}
    for vec, forms in table.genera():
        key = (vec[order["m4"]], vec[order["p5"]], vec[order["p13"]])
        got[key] = sorted(forms)
    want = {k: sorted(reduce(q) for q in v) for k, v in GENERA_65.items()}
    res.record(got == want, f"genus table of -260 differs: {got}")
    for D, h in ((-884, 16), (-52, 2), (-68, 4)):
        res.record(class_number(D) == h, f"h({D}) != {h}")
    for e, n in ((221, 16), (13, 4), (17, 8)):
        res.record(len(star_elliptic_classes(221, e)) == n, f"{n} classes expected for e={e}")
    return res


def suite_sum_identity(max_level: int = 300, max_star: int = 200) -> SuiteResult:
    """Sum over extensions and integrality of every dimension."""
    res = SuiteResult("sum-identity")
    for N in range(2, max_level + 1):
        star_ok = N <= max_star and factorize(N).is_squarefree
        for chi in list_chars(N):
            groups = [GAMMA0_PLUS]
            if star_ok:
                if extends_to_star(chi):
                    groups.append(GAMMA0_STAR)
                else:
                    res.skipped += 1
            for k in _parity_weights(chi):
                try:
                    base = dim_cusp(ExtChar(chi), k)
                    dim_modular(ExtChar(chi), k)
                    for kind in groups:
                        parts = []
                        for x in extensions(chi, kind):
                            parts.append(dim_cusp(x, k))
                            dim_eisenstein(x, k)
                        res.record(sum(parts) == base, (kind, N, chi.label, k, base, parts))
                except ConsistencyError as exc:
                    res.record(False, (N, chi.label, k, str(exc)))
    return res


def suite_oracle(max_level: int = 500) -> SuiteResult:
    res = SuiteResult("oracle")
    for N in range(4, max_level + 1):
        for chi in list_chars(N):
            for x in extensions(chi, GAMMA0_PLUS):
                a, b = nu2_plus(x), nu2_plus_oracle(x)
                res.record(a == b, (N, chi.label, x.sign_label, str(a), str(b)))
    return res


def suite_zero_sum(max_level: int = 500) -> SuiteResult:
    """S_e = 0 for chi of conductor N, on square-free N whose primes are all 1 mod 4."""
    res = SuiteResult("zero-sum")
    for N in range(2, max_level + 1):
        f = factorize(N)
        if not f.is_squarefree:
            continue
        if not all(p % 4 == 1 for p in f.primes):
            res.skipped += 1
            continue
        chi = make_char(N, [f"p{p}" for p in f.primes])
        for x in extensions(chi, GAMMA0_STAR):
            for e in hall_divisors(N)[1:]:
                res.record(coset_sum(x, e) == 0, (N, x.sign_label, e))
    return res


def suite_halving(max_level: int = 1000) -> SuiteResult:
    res = SuiteResult("halving")
    for N in range(5, max_level + 1, 4):
        for chi in list_chars(N)[1:]:
            for k in _parity_weights(chi):
                base = dim_cusp(ExtChar(chi), k)
                for x in extensions(chi, GAMMA0_PLUS):
                    res.record(2 * dim_cusp(x, k) == base, (N, chi.label, x.sign_label, k))
    return res


def suite_star_power(max_level: int = 1000) -> SuiteResult:
    res = SuiteResult("star-power")
    for N in range(5, max_level + 1):
        f = factorize(N)
        if not f.is_squarefree or not all(p % 4 == 1 for p in f.primes):
            continue
        chi = make_char(N, [f"p{p}" for p in f.primes])
        for k in range(2, 13, 2):
            base = dim_cusp(ExtChar(chi), k)
            for x in extensions(chi, GAMMA0_STAR):
                res.record(2**f.omega * dim_cusp(x, k) == base, (N, x.sign_label, k))
    return res


GENUS_ZERO = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 41, 47, 59, 71)


def suite_genus() -> SuiteResult:
    res = SuiteResult("genus")
    for N in GENUS_ZERO:
        res.record(genus_plus(N) == 0, N)
    res.record(genus_plus(37) == 1, 37)
    return res


SUITES = {
    "worked-example": lambda m: suite_worked_example(),
    "sum-identity": lambda m: suite_sum_identity(m or 300, min(m or 200, 200)),
    "oracle": lambda m: suite_oracle(m or 500),
    "zero-sum": lambda m: suite_zero_sum(m or 500),
    "halving": lambda m: suite_halving(m or 1000),
    "star-power": lambda m: suite_star_power(m or 1000),
    "genus": lambda m: suite_genus(),
}


def run_suite(name: str, max_level: int | None = None) -> list[SuiteResult]:
    if name == "all":
        return [fn(max_level) for fn in SUITES.values()]
    return [SUITES[name](max_level)]
