import itertools

import pytest
from hypothesis import given, strategies as st

from turner import combinatorics as cb
from turner.invariants import (InvariantAlgebra, deconcatenate, divided_product,
                               dual_monomial_sign, invariant_space, invariants_of_direct_sum,
                               is_invariant, kappa, kappa_of_monomial, orbit_sum, shuffle)
from turner.presets import preset
from turner.superalgebra import clean, pairing, place_permute

PAR = (0, 1, 1)  # x even, u and v odd


def tensors(max_deg):
    word = st.integers(0, max_deg).flatmap(lambda k: st.tuples(*[st.integers(0, 2)] * k))
    return st.dictionaries(word, st.integers(-2, 2), min_size=1, max_size=3).map(
        lambda t: {w: c for w, c in t.items() if c})


def test_shuffle_examples():
    assert shuffle({(0,): 1}, {(1,): 1}, (0, 0)) == {(0, 1): 1, (1, 0): 1}
    assert shuffle({(1,): 1}, {(1,): 1}, PAR) == {}


@given(tensors(2), tensors(2), tensors(1))
def test_shuffle_associative(r, s, t):
    lhs = shuffle(shuffle(r, s, PAR), t, PAR)
    rhs = shuffle(r, shuffle(s, t, PAR), PAR)
    assert clean(lhs) == clean(rhs)


def test_orbit_sum_examples():
    assert orbit_sum((3,), (0,)) == {(0, 0, 0): 1}
    assert orbit_sum((1, 1), (0, 0)) == {(0, 1): 1, (1, 0): 1}
    with pytest.raises(ValueError):
        orbit_sum((0, 2), (0, 1))


@pytest.mark.parametrize("c", cb.enumerate_exponents(PAR, 3))
def test_orbit_sums_invariant(c):
    t = orbit_sum(c, PAR)
    assert is_invariant(t, PAR)
    for g in cb.all_perms(3):
        assert place_permute(t, g, PAR) == t


def test_coproduct_examples():
    assert deconcatenate({(0,): 1}) == {0: {((), (0,)): 1}, 1: {((0,), ()): 1}}
    comps = deconcatenate({(0, 1): 1})
    assert comps[0] == {((), (0, 1)): 1}
    assert comps[1] == {((0,), (1,)): 1}
    assert comps[2] == {((0, 1), ()): 1}


def _parity(word):
    return sum(PAR[i] for i in word) & 1


@given(tensors(2), tensors(2))
def test_bialgebra_law(s, t):
    lhs = {}
    for comp in deconcatenate(shuffle(s, t, PAR)).values():
        for key, c in comp.items():
            lhs[key] = lhs.get(key, 0) + c
    rhs = {}
    for cs in deconcatenate(s).values():
        for (s1, s2), a in cs.items():
            for ct in deconcatenate(t).values():
                for (t1, t2), b in ct.items():
                    sign = -1 if _parity(s2) and _parity(t1) else 1
                    for w1, x in shuffle({s1: 1}, {t1: 1}, PAR).items():
                        for w2, y in shuffle({s2: 1}, {t2: 1}, PAR).items():
                            key = (w1, w2)
                            rhs[key] = rhs.get(key, 0) + sign * a * b * x * y
    assert clean(lhs) == clean(rhs)


def test_kappa_examples():
    assert kappa({(2,): 1}, (0,)) == {(0, 0): 1}
    assert kappa_of_monomial((2,), (0,)) == {(0, 0): 2}


@pytest.mark.parametrize("d1,d2", [(1, 1), (1, 2), (2, 1), (0, 3)])
def test_kappa_multiplicative(d1, d2):
    for c in cb.enumerate_exponents(PAR, d1):
        for e in cb.enumerate_exponents(PAR, d2):
            coeff, total = divided_product(c, e, PAR)
            lhs = kappa({total: coeff}, PAR) if coeff else {}
            rhs = shuffle(kappa({c: 1}, PAR), kappa({e: 1}, PAR), PAR)
            assert clean(lhs) == clean(rhs)


def test_pairing_examples():
    assert pairing({(0, 0): 1}, {(0, 0): 1}, (0,)) == 1
    assert pairing({(0, 1): 1}, {(1, 0): 1}, (0, 1)) == 0


@pytest.mark.parametrize("d", [1, 2, 3])
def test_dual_monomials_pair_diagonally(d):
    for c in cb.enumerate_exponents(PAR, d):
        beta = {cb.exponent_word(c): 1}
        for e in cb.enumerate_exponents(PAR, d):
            val = pairing(beta, orbit_sum(e, PAR), PAR)
            assert val == (dual_monomial_sign(c, PAR) if c == e else 0)


@pytest.mark.parametrize("d", [0, 1, 2, 3, 4])
def test_direct_sum_dimensions(d):
    parity = (0, 1, 0, 1)
    part_u = [0, 1]
    table = invariants_of_direct_sum(parity, part_u, d)
    big = invariant_space(parity, d)
    assert sorted(k for k, _ in table.values()) == list(range(big.dim))
    conv = sum(invariant_space((0, 1), e).dim * invariant_space((0, 1), d - e).dim
               for e in range(d + 1))
    assert len(table) == conv == big.dim


def test_direct_sum_with_zero_summand():
    big = invariant_space((0, 1), 2)
    table = invariants_of_direct_sum((0, 1), [0, 1], 2)
    assert table == {(2, c, ()): (big.index[c], 1) for c in big.exponents}


@pytest.mark.parametrize("name,d", [("exterior", 3), ("pq-a2", 2), ("zz-a2", 2)])
def test_invariant_algebra_associative(name, d):
    inv = InvariantAlgebra(preset(name), d)
    for i, j, k in itertools.product(range(inv.dim), repeat=3):
        assert inv.multiply(inv.product(i, j), {k: 1}) == inv.multiply({i: 1}, inv.product(j, k))
    for i in range(inv.dim):
        assert inv.multiply(inv.unit, {i: 1}) == {i: 1}
