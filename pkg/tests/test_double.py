import itertools
import math
import random

import pytest
from hypothesis import given, strategies as st

from turner.double import (DIVIDED, PLAIN, TurnerDouble, form_is_associative,
                           replay_certificate, subalgebra_closure)
from turner.invariants import orbit_sum, shuffle
from turner.linalg import Lattice
from turner.presets import preset
from turner.superalgebra import clean, matrix_superalgebra, tensor_power


@pytest.mark.parametrize("name", ["trivial", "dual", "exterior", "pq-a2", "zz-a2"])
def test_degree_one_is_trivial_extension(name):
    dbl = TurnerDouble(preset(name), 1)
    t = dbl.t
    assert dbl.dim == t.dim
    for i in range(dbl.dim):
        for j in range(dbl.dim):
            lhs = dbl.phi(dbl.product(i, j, DIVIDED), DIVIDED)
            rhs = t.multiply(dbl.phi({i: 1}, DIVIDED), dbl.phi({j: 1}, DIVIDED))
            assert clean(lhs) == clean(rhs)


@pytest.mark.parametrize("d", range(6))
def test_truncated_polynomials(d):
    dbl = TurnerDouble(preset("trivial"), d)
    z = [dbl.index[((d - e,), (e,))] for e in range(d + 1)]
    for e, f in itertools.product(range(d + 1), repeat=2):
        if e + f <= d:
            assert dbl.product(z[e], z[f], PLAIN) == {z[e + f]: 1}
            assert dbl.product(z[e], z[f], DIVIDED) == {z[e + f]: math.comb(e + f, e)}
        else:
            assert dbl.product(z[e], z[f], PLAIN) == {}


@pytest.mark.parametrize("name,d", [("trivial", 3), ("exterior", 2), ("pq-a2", 2)])
def test_phi_on_pure_invariants(name, d):
    dbl = TurnerDouble(preset(name), d)
    zero = tuple([0] * dbl.x.dim)
    plain = [k for k, (j, dual) in enumerate(dbl.t.info["source"]) if not dual]
    order = sorted(plain, key=lambda k: dbl.t.info["source"][k][0])
    for i, (c, f) in enumerate(dbl.labels):
        if f == zero:
            want = {tuple(order[j] for j in w): v for w, v in orbit_sum(c, dbl.x.parity).items()}
            assert dbl.phi_tensor(i) == want


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_phi_of_integers(d):
    dbl = TurnerDouble(preset("trivial"), d)
    par = dbl.t.parity
    for e in range(d + 1):
        i = dbl.index[((d - e,), (e,))]
        want = shuffle(tensor_power({0: 1}, d - e), tensor_power({1: 1}, e), par)
        assert dbl.phi_tensor(i) == want


@pytest.mark.parametrize("name,d", [("pq-a2", 2), ("exterior", 3), ("dual", 2)])
def test_transport_matches_coproduct_formula(name, d):
    dbl = TurnerDouble(preset(name), d)
    for i in range(dbl.dim):
        for j in range(dbl.dim):
            assert clean(dbl.product_sweedler(i, j)) == dbl.product(i, j, PLAIN)


def test_generators_small_cases():
    dbl = TurnerDouble(preset("pq-a2"), 1)
    assert Lattice(dbl.generators()) == Lattice({k: 1} for k in range(dbl.t.dim))
    assert len(TurnerDouble(preset("trivial"), 2).generators()) == 2


@pytest.mark.parametrize("name,d", [("trivial", 1), ("trivial", 2), ("pq-a2", 1), ("pq-a2", 2)])
def test_generation(name, d):
    dbl = TurnerDouble(preset(name), d)
    ok, closure, words = dbl.generation_check()
    assert ok
    gens = dbl.generators()
    assert replay_certificate(gens, dbl.inv_t.multiply, dbl.inv_t.unit, words) == closure


def test_turner_degrees():
    dbl = TurnerDouble(preset("pq-a2"), 2)
    par = dbl.t.parity
    src = dbl.t.info["source"]
    ones = tensor_power(dbl.t.unit, 1)
    for k, (j, dual) in enumerate(src):
        vec = dbl.inv_t.coords(shuffle(ones, {(k,): 1}, par), check=True)
        label = dbl.phi_inverse(vec, PLAIN)
        degrees = {dbl.turner_degree(i) for i in label}
        if dbl.x.parity[j] and not dual:
            assert degrees == {1}
        elif dual and not dbl.x.parity[j]:
            assert degrees == {2}


@given(st.integers(0, 10**6))
def test_products_are_homogeneous(seed):
    dbl = _pq_double()
    rng = random.Random(seed)
    i, j = rng.randrange(dbl.dim), rng.randrange(dbl.dim)
    want = dbl.turner_degree(i) + dbl.turner_degree(j)
    assert all(dbl.turner_degree(k) == want for k in dbl.product(i, j))


_CACHE = {}


def _pq_double():
    if "pq" not in _CACHE:
        _CACHE["pq"] = TurnerDouble(preset("pq-a2"), 2)
    return _CACHE["pq"]


def test_pairing_form():
    dbl = TurnerDouble(preset("trivial"), 2)
    form = dbl.symmetric_form()
    assert form["symmetric"] and form["matches_functional"]
    xi_1 = dbl.index[((2,), (0,))]
    one_y = dbl.index[((0,), (2,))]
    assert form["gram"][xi_1][one_y] == 1
    rng = random.Random(1)
    triples = [tuple(rng.randrange(dbl.dim) for _ in range(3)) for _ in range(50)]
    assert form_is_associative(dbl, triples)


@pytest.mark.parametrize("name", ["trivial", "pq-a2"])
def test_gram_unimodular(name):
    dbl = TurnerDouble(preset(name), 2)
    assert abs(dbl.symmetric_form()["determinant"]) == 1


def test_divided_lattice_contains_plain_with_index():
    dbl = TurnerDouble(preset("trivial"), 3)
    plain, div = dbl.lattice(PLAIN), dbl.lattice(DIVIDED)
    assert plain.index_in(div) == math.prod(math.factorial(e) for e in range(4))


def test_subalgebra_closure_of_unit():
    m = matrix_superalgebra(preset("trivial"), 2)
    lat, words = subalgebra_closure([], m.multiply, m.unit)
    assert words == [()] and lat.rank == 1
    with pytest.raises(ValueError):
        TurnerDouble(preset("trivial"), -1)
