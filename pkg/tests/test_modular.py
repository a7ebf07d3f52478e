import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tiltfactor.charring import WeylCombo, decompose_weyl, dimension, weyl_character
from tiltfactor.modular import (
    OracleCoverageError,
    PrimeContext,
    a1_tilting_oracle,
    is_r_minuscule,
    is_restricted,
    minuscule_weights,
    p_contract,
    p_expand,
    simple_character,
    steinberg_weight,
    tilting_character,
    tilting_combo,
    tilting_form,
    tilting_route,
)
from tiltfactor.rootsys import RootSystemError, build_root_datum, pair, weyl_dimension

A1 = build_root_datum("A", 1)
A2 = build_root_datum("A", 2)
TYPES = [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("B", 4), ("C", 2), ("C", 3),
         ("C", 4), ("D", 3), ("D", 4), ("F", 4), ("G", 2)]
ALL_TYPES = TYPES + [("D", 5), ("E", 6), ("E", 7), ("E", 8)]


def ctx(t, n, p):
    return PrimeContext(build_root_datum(t, n), p)


def test_prime_validation():
    with pytest.raises(ValueError, match="prime"):
        PrimeContext(A1, 4)
    with pytest.raises(ValueError, match="prime"):
        PrimeContext(A1, 1)
    c = PrimeContext(A2, 3)
    assert c.two_h_minus_2 == 4 and c.donkin_assumed
    assert not PrimeContext(A2, 5).donkin_assumed
    assert not PrimeContext(A1, 2).donkin_assumed


def test_is_restricted():
    c = ctx("A", 1, 2)
    assert is_restricted(c, 1, (1,))
    assert not is_restricted(c, 1, (2,))
    for t, n, p, r in [("A", 2, 3, 1), ("B", 3, 2, 2), ("G", 2, 5, 1)]:
        cc = ctx(t, n, p)
        assert is_restricted(cc, r, steinberg_weight(cc, r))
        assert not is_restricted(cc, r, tuple(c + 1 for c in steinberg_weight(cc, r)))
    with pytest.raises(RootSystemError):
        is_restricted(c, 1, (-1,))


def test_p_expand_examples():
    assert p_expand(ctx("A", 1, 2), (5,)) == [(1,), (0,), (1,)]
    assert p_expand(ctx("A", 2, 3), (4, 1)) == [(1, 1), (1, 0)]
    assert p_expand(ctx("A", 2, 3), (2, 1)) == [(2, 1)]
    with pytest.raises(RootSystemError):
        p_expand(ctx("A", 2, 3), (-1, 1))


@settings(max_examples=1000, deadline=None)
@given(st.sampled_from(TYPES), st.sampled_from([2, 3, 5]), st.data())
def test_p_adic_round_trip(tn, p, data):
    c = ctx(*tn, p)
    lam = tuple(data.draw(st.lists(st.integers(0, 10 ** 6), min_size=tn[1], max_size=tn[1])))
    digits = p_expand(c, lam)
    assert p_contract(c, digits) == lam
    assert all(0 <= x < p for d in digits for x in d)


def test_minuscule_examples():
    assert minuscule_weights(build_root_datum("A", 3)) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert minuscule_weights(build_root_datum("E", 8)) == []
    assert minuscule_weights(build_root_datum("D", 4)) == [(1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]


@pytest.mark.parametrize("t,n", ALL_TYPES)
def test_minuscule_list_by_root_pairings(t, n):
    # minuscule fundamental weights pair to at most 1 with every positive coroot
    d = build_root_datum(t, n)
    brute = [d.fundamental_weight(i) for i in range(1, n + 1)
             if max(pair(d, cv, d.fundamental_weight(i)) for cv in d.positive_coroots) <= 1]
    assert minuscule_weights(d) == brute
    for lam in minuscule_weights(d):
        assert max(lam) <= 1
        assert pair(d, d.highest_short_root_coroot, lam) == 1
        if t != "E" or n == 6:
            assert weyl_character(d, lam).entries == {lam: 1}


def test_is_r_minuscule_examples():
    assert is_r_minuscule(ctx("A", 1, 2), 2, (3,)) == (True, [(1,), (1,)])
    ok, digits = is_r_minuscule(ctx("A", 2, 3), 2, (4, 1))
    assert not ok and digits == [(1, 1), (1, 0)]
    for t, n, p in [("A", 2, 3), ("E", 8, 2), ("G", 2, 5)]:
        c = ctx(t, n, p)
        assert is_r_minuscule(c, 1, c.datum.zero())[0]
    assert not is_r_minuscule(ctx("A", 1, 2), 1, (3,))[0]


def test_steinberg_weight():
    assert steinberg_weight(ctx("A", 1, 2), 2) == (3,)
    assert steinberg_weight(ctx("A", 2, 3), 1) == (2, 2)
    for t, n in [("A", 1), ("A", 2), ("B", 2)]:
        for p in (2, 3):
            for r in (1, 2):
                c = ctx(t, n, p)
                assert weyl_dimension(c.datum, steinberg_weight(c, r)) == p ** (r * c.datum.num_positive_roots)


def test_simple_character_examples():
    c = ctx("A", 1, 2)
    ch = simple_character(c, (3,))
    assert ch.entries == {(3,): 1, (1,): 1}
    assert dimension(ch) == 4
    c3 = ctx("A", 2, 3)
    st3 = simple_character(c3, (2, 2))
    assert st3 == weyl_character(c3.datum, (2, 2)) and dimension(st3) == 27
    for t, n in [("A", 3), ("B", 3), ("C", 2), ("D", 4)]:
        cc = ctx(t, n, 2)
        for lam in minuscule_weights(cc.datum):
            assert simple_character(cc, lam) == weyl_character(cc.datum, lam)


def test_simple_character_digit_product_dimension():
    c = ctx("A", 2, 2)
    # digits: (1,1) = St, (1,0) minuscule, (0,1) minuscule
    lam = p_contract(c, [(1, 1), (1, 0), (0, 1)])
    assert dimension(simple_character(c, lam)) == 8 * 3 * 3


def test_simple_character_out_of_oracle():
    with pytest.raises(OracleCoverageError, match=r"digit 0 = \(2, 0\)"):
        simple_character(ctx("A", 2, 3), (2, 0))


def test_tilting_examples():
    c3 = ctx("A", 1, 3)
    assert decompose_weyl(tilting_character(c3, (3,))).terms == {(3,): 1, (1,): 1}
    c2 = ctx("A", 1, 2)
    assert decompose_weyl(tilting_character(c2, (4,))).terms == {(4,): 1, (2,): 1}
    for t, n, p in [("A", 2, 3), ("B", 2, 2), ("C", 3, 2), ("G", 2, 2)]:
        cc = ctx(t, n, p)
        for r in (1, 2) if n <= 2 else (1,):
            stw = steinberg_weight(cc, r)
            tc = tilting_character(cc, stw)
            assert tc == weyl_character(cc.datum, stw)
            assert dimension(tc) == p ** (r * cc.datum.num_positive_roots)


def test_tilting_form_greedy_prefers_larger_r():
    c = ctx("A", 1, 2)
    form = tilting_form(c, (4,))
    assert (form.r, form.mu, form.lam) == (2, (0,), (1,))
    form = tilting_form(c, (9,))
    assert (form.r, form.mu, form.lam) == (3, (0,), (2,))
    form = tilting_form(c, (10,))
    assert (form.r, form.mu, form.lam) == (3, (0,), (3,))


def test_tilting_uncovered_weight():
    c = ctx("A", 2, 3)
    with pytest.raises(OracleCoverageError, match="no decomposition"):
        tilting_combo(c, (2, 0))
    assert tilting_route(c, (2, 0)) == "uncovered"
    c1 = ctx("A", 1, 3)
    assert tilting_route(c1, (4,)) == "a1-oracle"
    assert decompose_weyl(tilting_character(c1, (4,))).terms == {(4,): 1, (0,): 1}


def test_a1_oracle_examples():
    c = ctx("A", 1, 2)
    assert decompose_weyl(a1_tilting_oracle(c, 1)).terms == {(1,): 1}
    t2 = a1_tilting_oracle(c, 2)
    assert decompose_weyl(t2).terms == {(2,): 1, (0,): 1} and dimension(t2) == 4
    assert decompose_weyl(a1_tilting_oracle(c, 4)).terms == {(4,): 1, (2,): 1}
    c5 = ctx("A", 1, 5)
    assert decompose_weyl(a1_tilting_oracle(c5, 4)).terms == {(4,): 1}
    assert decompose_weyl(a1_tilting_oracle(c5, 6)).terms == {(6,): 1, (2,): 1}
    with pytest.raises(RootSystemError):
        a1_tilting_oracle(ctx("A", 2, 2), 1)
    assert a1_tilting_oracle(2, 6) == a1_tilting_oracle(c, 6)
    with pytest.raises(ValueError, match="prime"):
        a1_tilting_oracle(4, 1)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_tilting_agrees_with_a1_oracle(p):
    c = ctx("A", 1, p)
    covered = 0
    for m in range(201):
        oracle = decompose_weyl(a1_tilting_oracle(c, m))
        assert oracle.top() == ((m,), 1) and oracle.is_nonnegative()
        if tilting_route(c, (m,)) == "proposition":
            covered += 1
            assert tilting_combo(c, (m,), allow_a1_oracle=False) == oracle, m
    assert covered > 0


@pytest.mark.parametrize("t,n,p", [("A", 2, 2), ("A", 2, 3), ("B", 2, 3), ("A", 3, 2), ("C", 2, 2)])
def test_tilting_combo_positive_with_top_term(t, n, p):
    c = ctx(t, n, p)
    st1 = steinberg_weight(c, 1)
    for lam in [c.datum.zero()] + minuscule_weights(c.datum):
        for mu in [c.datum.zero()] + minuscule_weights(c.datum):
            hw = tuple(p * m + s + l for m, s, l in zip(mu, st1, lam))
            combo = tilting_combo(c, hw)
            assert combo.top() == (hw, 1)
            assert combo.is_nonnegative()


def test_weyl_combo_str():
    assert str(WeylCombo(A2, {(3, 0): 1, (1, 1): 2})) == "chi(3,0) + 2*chi(1,1)"
