import itertools
import math

import pytest

from turner.double import DIVIDED, PLAIN
from turner.invariants import deconcatenate
from turner.linalg import Lattice
from turner.presets import preset
from turner.schur import (ConstantsMismatch, SchurAlgebra, SchurDouble, dual_product, epsilon,
                          schur_algebra)
from turner.schurweyl import commutant_table
from turner.superalgebra import clean, tensor_power

# |M^B(n,d)| from the generating function (1-t)^(-even n^2) (1+t)^(odd n^2)
DIMS = {
    ("trivial", 2): [1, 4, 10, 20], ("trivial", 3): [1, 9, 45, 165],
    ("dual", 1): [1, 2, 3, 4], ("dual", 2): [1, 8, 36, 120],
    ("exterior", 1): [1, 2, 2, 2], ("exterior", 2): [1, 8, 32, 88],
    ("pq-a2", 1): [1, 3, 5, 7], ("pq-a2", 2): [1, 12, 74, 316],
    ("zz-a2", 1): [1, 6, 19, 44], ("zz-a2", 2): [1, 24, 292],
}
# dimensions of D^A(n,d): convolution of the counts above
DOUBLE_DIMS = {("trivial", 2, 2): 36, ("pq-a2", 2, 2): 292, ("exterior", 2, 2): 128,
               ("pq-a2", 1, 3): 44, ("dual", 1, 2): 10}

SMALL = [(a, n, d) for a in ("trivial", "dual", "exterior", "pq-a2", "zz-a2")
         for n in (1, 2) for d in (1, 2)]


@pytest.mark.parametrize("key", sorted(DIMS))
def test_dimensions(key):
    name, n = key
    for d, want in enumerate(DIMS[key]):
        assert schur_algebra(preset(name), n, d).dim == want


@pytest.mark.parametrize("name,n,d", sorted(DOUBLE_DIMS))
def test_double_dimensions(name, n, d):
    assert SchurDouble(preset(name), n, d).dim == DOUBLE_DIMS[(name, n, d)]


def test_xi_examples():
    s = SchurAlgebra(preset("trivial"), 2, 3)
    i = s.inv.index[(0, 3, 0, 0)]
    assert s.xi_expand(i) == tensor_power({1: 1}, 3)
    s = SchurAlgebra(preset("exterior"), 1, 2)
    i = s.inv.index[(1, 1)]
    assert s.xi_expand(i) == {(0, 1): 1, (1, 0): 1}


@pytest.mark.parametrize("name,n,d", [("exterior", 2, 3), ("pq-a2", 2, 2), ("zz-a2", 1, 3)])
def test_xi_matches_orbit_sums(name, n, d):
    s = SchurAlgebra(preset(name), n, d)
    for i in range(s.dim):
        assert s.xi_expand(i) == s.inv.expand(i)


def test_matrix_units():
    s = SchurAlgebra(preset("trivial"), 2, 1)
    e = {name: s.inv.index[tuple(int(k == j) for k in range(4))]
         for j, name in enumerate(["11", "12", "21", "22"])}
    assert s.multiply({e["12"]: 1}, {e["21"]: 1}) == {e["11"]: 1}
    assert s.multiply({e["21"]: 1}, {e["21"]: 1}) == {}


@pytest.mark.parametrize("name,n,d", SMALL + [("exterior", 2, 3), ("pq-a2", 1, 3)])
def test_formula_matches_tensor_products(name, n, d):
    s = SchurAlgebra(preset(name), n, d)
    assert s.green_constants() == s.oracle_constants()
    assert s.structure_constants() == s.green_constants()


@pytest.mark.parametrize("n,d", [(2, 1), (2, 3)])
def test_mismatch_is_reported(monkeypatch, n, d):
    s = SchurAlgebra(preset("trivial"), n, d)
    table = s.green_constants()
    broken = {k: {e: f + 1 for e, f in row.items()} for k, row in table.items()}
    monkeypatch.setattr(s, "green_constants", lambda: broken)
    with pytest.raises(ConstantsMismatch, match="formula"):
        s.structure_constants()


def test_sampled_verification_is_seeded():
    s = SchurAlgebra(preset("pq-a2"), 2, 3)
    assert s.structure_constants(seed=1) == s.green_constants()


@pytest.mark.parametrize("name,n,d", [("trivial", 2, 2), ("pq-a2", 2, 2), ("zz-a2", 2, 1)])
def test_weight_idempotents(name, n, d):
    from turner import combinatorics as cb
    s = SchurAlgebra(preset(name), n, d)
    idem = [s.weight_idempotent(lam) for lam in cb.enumerate_weights(n, d)]
    total = {}
    for x in idem:
        for k, v in x.items():
            total[k] = total.get(k, 0) + v
    assert clean(total) == s.unit
    for (i, a), (j, b) in itertools.product(enumerate(idem), repeat=2):
        assert s.multiply(a, b) == (a if i == j else {})


def test_classical_table_matches_endomorphisms():
    s = SchurAlgebra(preset("trivial"), 2, 2)
    assert commutant_table(s) == s.structure_constants()


def test_dual_products():
    par = (0, 0, 1, 1)
    assert dual_product((1, 0, 0, 0), (0, 1, 0, 0), par) == (1, (1, 1, 0, 0))
    assert dual_product((0, 0, 1, 0), (0, 0, 1, 0), par)[0] == 0
    for e, f in itertools.product(range(4), repeat=2):
        coeff, _ = dual_product((e, 0, 0, 0), (f, 0, 0, 0), par, divided=True)
        assert coeff == math.comb(e + f, e)
    # two odd entries anticommute
    a, _ = dual_product((0, 0, 1, 0), (0, 0, 0, 1), par)
    b, _ = dual_product((0, 0, 0, 1), (0, 0, 1, 0), par)
    assert a == -b != 0
    assert epsilon((0, 0, 0, 1), (0, 0, 1, 0), par) == -1


@pytest.mark.parametrize("name,n,d", [("exterior", 2, 2), ("pq-a2", 1, 3), ("zz-a2", 1, 2)])
def test_coproduct_matches_deconcatenation(name, n, d):
    s = SchurAlgebra(preset(name), n, d)
    spaces = {k: SchurAlgebra(preset(name), n, k).inv for k in range(d + 1)}
    for i in range(s.dim):
        listed = {(left, right): sign for left, right, sign in s.coproduct_xi(i)}
        for e, comp in deconcatenate(s.xi_expand(i)).items():
            got = {}
            for (u, w), c in comp.items():
                if u in spaces[e].word_index and w in spaces[d - e].word_index:
                    got[(spaces[e].exponents[spaces[e].word_index[u]],
                         spaces[d - e].exponents[spaces[d - e].word_index[w]])] = c
            assert got == {k: v for k, v in listed.items() if sum(k[0]) == e}


def test_coproduct_small_cases():
    s = SchurAlgebra(preset("trivial"), 2, 1)
    for i in range(s.dim):
        terms = s.coproduct_xi(i)
        assert len(terms) == 2 and all(sign == 1 for _, _, sign in terms)


@pytest.mark.parametrize("name,n,d", SMALL)
def test_divided_constants_integral(name, n, d):
    s = SchurAlgebra(preset(name), n, d)
    left, right = s.divided_constants(s.green_constants())
    assert all(isinstance(v, int) for row in left.values() for v in row.values())


# ---------------------------------------------------------------- the double


@pytest.mark.parametrize("name,n,d", [("trivial", 2, 2), ("exterior", 2, 2), ("dual", 1, 2),
                                      ("pq-a2", 1, 2), ("pq-a2", 2, 1)])
def test_closed_form_matches_transport(name, n, d):
    sd = SchurDouble(preset(name), n, d)
    for variant in (PLAIN, DIVIDED):
        for i in range(sd.dim):
            for j in range(sd.dim):
                assert sd.product_closed_form(i, j, variant) == sd.product(i, j, variant)


@pytest.mark.parametrize("name,n,d", [("trivial", 2, 2), ("exterior", 1, 2), ("pq-a2", 1, 2)])
def test_double_restricts_to_schur_algebra(name, n, d):
    sd = SchurDouble(preset(name), n, d)
    s = SchurAlgebra(preset(name), n, d)
    zero = tuple([0] * len(s.exponents[0]))
    table = s.structure_constants()
    idx = s.inv.index
    for c, e in itertools.product(s.exponents, repeat=2):
        got = sd.product(sd.index[(c, zero)], sd.index[(e, zero)])
        want = {sd.index[(s.exponents[k], zero)]: v for k, v in table.get((idx[c], idx[e]), {}).items()}
        assert got == want
        # (xi (x) 1)(1 (x) x) = 1 (x) (xi . x)
        got = sd.product(sd.index[(c, zero)], sd.index[(zero, e)])
        want = {sd.index[(zero, g)]: table.get((idx[g], idx[c]), {}).get(idx[e], 0)
                for g in s.exponents}
        assert got == {k: v for k, v in want.items() if v}


@pytest.mark.parametrize("d", range(1, 5))
def test_schur_double_of_integers(d):
    sd = SchurDouble(preset("trivial"), 1, d)
    z = [sd.index[((d - e,), (e,))] for e in range(d + 1)]
    for e, f in itertools.product(range(d + 1), repeat=2):
        want = {z[e + f]: math.comb(e + f, e)} if e + f <= d else {}
        assert sd.product_closed_form(z[e], z[f], DIVIDED) == want


@pytest.mark.parametrize("name,n,d", [("trivial", 2, 2), ("pq-a2", 1, 2), ("exterior", 2, 2)])
def test_transport_into_trivial_extension_schur(name, n, d):
    sd = SchurDouble(preset(name), n, d)
    for i in range(sd.dim):
        for j in range(sd.dim):
            lhs = sd.to_schur(sd.product(i, j))
            rhs = sd.big.multiply(sd.to_schur({i: 1}), sd.to_schur({j: 1}))
            assert lhs == clean(rhs)


def test_double_is_proper_sublattice():
    sd = SchurDouble(preset("trivial"), 2, 2)
    lat = sd.lattice(PLAIN)
    full = Lattice({k: 1} for k in range(sd.big.dim))
    assert lat.rank == full.rank == 36
    assert lat != full
    assert lat.index_in(full) > 1
    assert sd.lattice(DIVIDED) == full


def test_turner_degree_additive():
    sd = SchurDouble(preset("pq-a2"), 2, 1)
    for i in range(sd.dim):
        for j in range(sd.dim):
            for k in sd.product(i, j):
                assert sd.turner_degree(k) == sd.turner_degree(i) + sd.turner_degree(j)


@pytest.mark.parametrize("name", ["trivial", "pq-a2"])
@pytest.mark.parametrize("form", ["unit", "weights"])
def test_generation(name, form):
    ok, words, missing = SchurDouble(preset(name), 2, 2).generation_check(form)
    assert ok and missing is None and words


def test_generation_degree_one():
    ok, _, _ = SchurDouble(preset("pq-a2"), 2, 1).generation_check()
    assert ok
