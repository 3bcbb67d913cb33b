"""Acceptance criteria 1-10, each at its stated tolerance.

Every test prints one ``PASS``/``FAIL`` line; the lines are repeated in the
pytest terminal summary.  Run directly with ``python3 tests/test_acceptance.py``.
"""

import time
from functools import lru_cache

from frickedim.arith import factorize, hall_divisors
from frickedim.characters import GAMMA0_PLUS, GAMMA0_STAR, ExtChar, extends_to_star, extensions, list_chars, make_char
from frickedim.dims import ConsistencyError, dim_cusp, dim_eisenstein, dim_modular, genus_plus
from frickedim.elliptic import coset_sum, nu2, star_elliptic_classes
from frickedim.gauss import GaussQ
from frickedim.qforms import QForm, class_number, genus_partition, reduce
from frickedim.verify import suite_halving, suite_oracle, suite_star_power

RESULTS = []


def report(number, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    RESULTS.append(line)
    print(line)
    return ok


def test_criterion_01_worked_example():
    t = time.perf_counter()
    chi = make_char(221, "p13,p17")
    base = dim_cusp(ExtChar(chi), 6)
    (minus,) = [x for x in extensions(chi, GAMMA0_PLUS) if x.sign == -1]
    plus = dim_cusp(minus, 6)
    (star,) = [x for x in extensions(chi, GAMMA0_STAR) if x.sign_label == "13:-1,17:-1"]
    st = dim_cusp(star, 6)
    n2 = nu2(chi)
    elapsed = time.perf_counter() - t
    ok = (base, plus, st, n2) == (104, 52, 26, -4) and elapsed < 1
    assert report(1, ok, f"dims {base}/{plus}/{st}, nu2 = {n2}, {elapsed:.2f}s")


N65 = 65
GENERA_65 = {
    (1, 1, 1): [QForm(N65, 0, 1), QForm(29 * N65, -4 * N65, 9)],
    (1, -1, -1): [QForm(2 * N65, -2 * N65, 33), QForm(18 * N65, -14 * N65, 177)],
    (-1, 1, -1): [QForm(6 * N65, -2 * N65, 11), QForm(6 * N65, 2 * N65, 11)],
    (-1, -1, 1): [QForm(22 * N65, 2 * N65, 3), QForm(22 * N65, -2 * N65, 3)],
}  # keyed by ((-1/.), (./5), (./13))


def test_criterion_02_genera_of_65():
    t = time.perf_counter()
    table = genus_partition(-260)
    pos = {c: i for i, c in enumerate(table.characters)}
    got = {}
    for vec, forms in table.genera():
        got[(vec[pos["m4"]], vec[pos["p5"]], vec[pos["p13"]])] = sorted(forms)
    want = {k: sorted(reduce(q) for q in v) for k, v in GENERA_65.items()}
    elapsed = time.perf_counter() - t
    ok = got == want and all(len(v) == 2 for v in got.values()) and elapsed < 1
    assert report(2, ok, f"{len(got)} genera of sizes {sorted(len(v) for v in got.values())}, {elapsed:.2f}s")


def test_criterion_03_level_221_classes():
    t = time.perf_counter()
    h = [class_number(D) for D in (-884, -52, -68)]
    sizes = [len(star_elliptic_classes(221, e)) for e in (221, 13, 17)]
    elapsed = time.perf_counter() - t
    ok = h == [16, 2, 4] and sizes == [16, 4, 8] and elapsed < 5
    assert report(3, ok, f"h = {h}, class sets {sizes}, {elapsed:.2f}s")


def _weights(chi):
    return [k for k in range(2, 14) if chi.parity == (-1) ** k]


@lru_cache(maxsize=None)
def full_sweep():
    """One pass over criterion 4's range, collecting sum and integrality failures."""
    t = time.perf_counter()
    sums = checked = defined = 0
    sum_fail, int_fail = [], []
    skipped = 0

    def dims(x, k):
        nonlocal defined
        try:
            c, m, e = dim_cusp(x, k), dim_modular(x, k), dim_eisenstein(x, k)
        except ConsistencyError as exc:
            int_fail.append((x.kind, x.level, x.base.label, x.sign_label, k, str(exc)))
            return None
        defined += 3
        if min(c, m, e) < 0:
            int_fail.append((x.kind, x.level, x.base.label, x.sign_label, k, (c, m, e)))
        return c

    for N in range(1, 301):
        star = 2 <= N <= 200 and factorize(N).is_squarefree
        for chi in list_chars(N):
            groups = [GAMMA0_PLUS] if N > 1 else []
            if star:
                if extends_to_star(chi):
                    groups.append(GAMMA0_STAR)
                else:
                    skipped += 1
            for k in _weights(chi):
                base = dims(ExtChar(chi), k)
                for kind in groups:
                    parts = [dims(x, k) for x in extensions(chi, kind)]
                    if base is None or None in parts:
                        continue
                    checked += 1
                    if sum(parts) != base:
                        sum_fail.append((kind, N, chi.label, k, base, parts))
    return checked, sum_fail, defined, int_fail, skipped, time.perf_counter() - t


def test_criterion_04_sum_over_extensions():
    checked, fails, _, _, skipped, elapsed = full_sweep()
    ok = not fails and elapsed < 300
    detail = f"{checked} identities, {len(fails)} failures, {skipped} non-extendable chi skipped for Gamma0*, {elapsed:.1f}s"
    assert report(4, ok, detail), fails[:5]


def test_criterion_05_halving():
    r = suite_halving(1000)
    assert report(5, r.ok, f"{r.checked} checks, {len(r.failures)} failures"), r.failures[:5]


def test_criterion_06_star_power():
    r = suite_star_power(1000)
    assert report(6, r.ok, f"{r.checked} checks, {len(r.failures)} failures"), r.failures[:5]


def test_criterion_07_oracle():
    r = suite_oracle(500)
    assert report(7, r.ok, f"{r.checked} comparisons, {len(r.failures)} discrepancies"), r.failures[:5]


def test_criterion_08_zero_sums():
    """Every square-free N <= 500 with a character of conductor N, as stated."""
    checked, fails, skipped = 0, [], 0
    for N in range(2, 501):
        f = factorize(N)
        if not f.is_squarefree or N % 2 == 0:
            continue  # no quadratic character of conductor N
        chi = make_char(N, [f"p{p}" for p in f.primes])
        if not extends_to_star(chi):
            skipped += 1
            continue
        for x in extensions(chi, GAMMA0_STAR):
            total = GaussQ(0)
            for e in hall_divisors(N)[1:]:
                s = coset_sum(x, e)
                total += s
                checked += 1
                if s != 0:
                    fails.append((N, x.sign_label, e, str(s)))
            checked += 1
            if total != 0:
                fails.append((N, x.sign_label, "G1*", str(total)))
    levels = sorted({f[0] for f in fails})
    detail = f"{checked} sums, {len(fails)} nonzero, {skipped} non-extendable skipped; failing levels start {levels[:8]}"
    assert report(8, not fails, detail), fails[:5]


def test_criterion_09_integrality():
    _, _, defined, fails, _, _ = full_sweep()
    assert report(9, not fails, f"{defined} dimensions, {len(fails)} non-integral or negative"), fails[:5]


GENUS_ZERO = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 41, 47, 59, 71)


def test_criterion_10_genus():
    zero = [genus_plus(p) for p in GENUS_ZERO]
    g37 = genus_plus(37)
    ok = zero == [0] * len(GENUS_ZERO) and g37 == 1
    assert report(10, ok, f"genus 0 at {len(GENUS_ZERO)} primes: {zero == [0] * len(GENUS_ZERO)}, genus(37) = {g37}")


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
