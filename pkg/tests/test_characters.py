import pytest
from hypothesis import given, strategies as st
from sympy import Matrix, simplify, sqrt, zeros
from sympy.functions.combinatorial.numbers import kronecker_symbol

from frickedim.arith import hall_divisors
from frickedim.characters import (
    GAMMA0_PLUS,
    GAMMA0_STAR,
    ExtChar,
    InvalidInput,
    NotExtendable,
    QuadChar,
    atkin_lehner,
    commutator_obstruction,
    ext_eval,
    extends_to_star,
    extensions,
    list_chars,
    make_char,
    parse_sign,
    parse_star_signs,
)
from frickedim.gauss import GaussQ


def test_make_char_and_label():
    chi = make_char(221, "p13,p17")
    assert chi.conductor == 221 and chi.parity == 1 and chi.label == "p13,p17"
    assert make_char(8, "m8").parity == -1
    assert make_char(5, "triv").is_trivial


@pytest.mark.parametrize(
    "N,spec",
    [(5, "p13"), (4, "p8"), (6, "m4"), (12, "m4,p8"), (9, "q3"), (10, "p2")],
)
def test_make_char_rejects(N, spec):
    with pytest.raises(InvalidInput):
        make_char(N, spec)


def test_list_chars_counts():
    # 2^(number of odd primes) times the 2-adic choices
    assert len(list_chars(221)) == 4
    assert len(list_chars(12)) == 4
    assert len(list_chars(24)) == 8
    assert list_chars(7)[0].is_trivial


@given(st.integers(2, 400), st.data())
def test_character_values_are_primitive_kronecker_symbols(N, data):
    chi = data.draw(st.sampled_from(list_chars(N)))
    D = 1
    for p in chi.odd_part:
        D *= p if p % 4 == 1 else -p
    D *= {"triv": 1, "m4": -4, "p8": 8, "m8": -8}[chi.two_part]
    n = data.draw(st.integers(-1000, 1000))
    assert chi(n) == kronecker_symbol(D, n)
    assert chi(-1) == chi.parity


def _real_matrix(m):
    s = sqrt(m.e)
    return Matrix([[m.a * s, m.b / s], [m.c * m.level / s, m.d * s]])


@pytest.mark.parametrize("N", [6, 12, 30, 221, 60, 105])
def test_coset_product_matches_real_matrices(N):
    ws = [atkin_lehner(N, e) for e in hall_divisors(N)]
    for w1 in ws:
        assert simplify(_real_matrix(w1).det()) == 1
        for w2 in ws:
            prod = _real_matrix(w1) * _real_matrix(w2)
            assert simplify(prod - _real_matrix(w1 @ w2)) == zeros(2, 2)


def test_almatrix_product_closes():
    w13, w17 = atkin_lehner(221, 13), atkin_lehner(221, 17)
    prod = w13 @ w17
    assert prod.e == 221
    assert (w13 @ w13.inverse()).e == 1


def test_plus_signs_square_to_parity():
    for N in range(2, 60):
        for chi in list_chars(N):
            for x in extensions(chi, GAMMA0_PLUS):
                w = atkin_lehner(N, N)
                assert x.sign * x.sign == chi((w @ w).d)


def test_star_extension_count():
    chi = make_char(221, "p13,p17")
    exts = extensions(chi, GAMMA0_STAR)
    assert len(exts) == 4
    assert {x.sign_label for x in exts} == {"13:+1,17:+1", "13:+1,17:-1", "13:-1,17:+1", "13:-1,17:-1"}


def test_non_extendable_character():
    bad = [chi for chi in list_chars(15) if commutator_obstruction(chi)]
    assert bad
    with pytest.raises(NotExtendable):
        extensions(bad[0], GAMMA0_STAR)
    assert not extends_to_star(bad[0])


def test_ext_eval_is_multiplicative_on_cosets():
    chi = make_char(221, "p13,p17")
    for x in extensions(chi, GAMMA0_STAR):
        w13, w17 = atkin_lehner(221, 13), atkin_lehner(221, 17)
        assert ext_eval(x, w13 @ w17) == ext_eval(x, w13) * ext_eval(x, w17)


def test_parse_signs():
    assert parse_sign("+i") == GaussQ(0, 1)
    assert parse_star_signs("13:+1,17:-1") == ((13, GaussQ(1)), (17, GaussQ(-1)))
    with pytest.raises(InvalidInput):
        parse_sign("2")
    with pytest.raises(InvalidInput):
        parse_star_signs("13+1")


def test_ext_char_validation():
    chi = make_char(7, "p7")
    with pytest.raises(InvalidInput):
        ExtChar(chi, GAMMA0_PLUS, GaussQ(1))
    with pytest.raises(InvalidInput):
        ExtChar(QuadChar(12), GAMMA0_STAR, None, ((2, GaussQ(1)), (3, GaussQ(1))))
