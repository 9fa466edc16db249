import itertools
import json
import random

import pytest

from turner import combinatorics as cb
from turner.linalg import rank
from turner.quiver import (Desuperization, Quiver, SchiverDouble, adapted_pair, bipartition_pair,
                           orientation_independent, path_superalgebra, rank_polynomial,
                           trivext_zigzag_iso, vertex_idempotents, zigzag_algebra)
from turner.superalgebra import clean


def test_quiver_validation():
    with pytest.raises(ValueError, match="loop"):
        Quiver(2, ((1, 1),))
    with pytest.raises(ValueError, match="multiple"):
        Quiver(2, ((1, 2), (2, 1)))
    with pytest.raises(ValueError, match="connected"):
        Quiver(3, ((1, 2),))
    with pytest.raises(ValueError, match="unknown"):
        Quiver(2, ((1, 3),))


def test_quiver_json_roundtrip(tmp_path):
    q = Quiver.type_a(3)
    path = tmp_path / "q.json"
    path.write_text(json.dumps(q.to_json()))
    assert Quiver.load(path) == q


@pytest.mark.parametrize("l,want", [(1, {0: 1, 2: 1}), (2, {0: 2, 1: 2, 2: 2}),
                                    (3, {0: 3, 1: 4, 2: 3})])
def test_zigzag_graded_rank(l, want):
    assert rank_polynomial(zigzag_algebra(Quiver.type_a(l))) == want


def test_path_algebra_arrows_square_to_zero():
    p = path_superalgebra(Quiver.type_a(3))
    arrows = [k for k, nm in enumerate(p.names) if nm.startswith("b")]
    for a, b in itertools.product(arrows, repeat=2):
        assert p.mul_basis(a, b) == {}
    assert p.mul_basis(p.index("e2"), p.index("b(1,2)")) == {p.index("b(1,2)"): 1}


@pytest.mark.parametrize("q", [Quiver.type_a(3), Quiver.type_a(3, reverse=True),
                               Quiver(3, ((2, 1), (2, 3))), Quiver(4, ((1, 2), (2, 3), (3, 4), (4, 1)))])
def test_trivial_extension_is_zigzag(q):
    t, z, mapping = trivext_zigzag_iso(q)
    assert sorted(mapping) == list(range(z.dim))
    assert t.dim == z.dim


def test_zigzag_cycle_relation():
    z = zigzag_algebra(Quiver.type_a(3))
    prod = z.mul_basis(z.index("a(2,1)"), z.index("a(1,2)"))
    assert prod == z.mul_basis(z.index("a(2,3)"), z.index("a(3,2)")) == {z.index("c2"): 1}
    assert z.mul_basis(z.index("a(1,2)"), z.index("a(2,3)")) == {}
    assert z.info["loop_neighbor"] == {1: 2, 2: 1, 3: 2}


def test_bipartition_signs():
    assert Quiver.type_a(4).signs() == {1: 1, 2: -1, 3: 1, 4: -1}
    with pytest.raises(ValueError, match="odd cycle"):
        Quiver(3, ((1, 2), (2, 3), (3, 1))).signs()


def test_even_algebra_has_trivial_pair():
    from turner.presets import preset
    alg = preset("trivial")
    assert adapted_pair(alg, alg.unit, {}) == (alg.unit, {})


def test_adapted_pair_rejects():
    z = zigzag_algebra(Quiver.type_a(2))
    e1, e2 = ({i: 1} for i in vertex_idempotents(z))
    with pytest.raises(ValueError, match="adapted"):
        adapted_pair(z, z.unit, {})
    with pytest.raises(ValueError, match="identity"):
        adapted_pair(z, e1, {})
    assert adapted_pair(z, e1, e2) == (e1, e2)


@pytest.mark.parametrize("d", [2, 3])
def test_desuperization_relations(d):
    z = zigzag_algebra(Quiver.type_a(2))
    e0, e1 = bipartition_pair(Quiver.type_a(2), z)
    ds = Desuperization(z, e0, e1, d)
    assert all(ds.check_relations().values())
    assert all(abs(v) == 1 for v in ds.block_determinants().values())
    # the first slot is untouched and tau squares to one
    x = z.index("a(1,2)")
    assert ds.sigma_slot(x, 0) == ds.graded.slot({x: 1}, 0)
    t = ds.sigma_tau(0)
    assert clean(ds.graded.multiply(t, t)) == ds.graded.unit()


def test_desuperization_multiplicative_and_invertible():
    z = zigzag_algebra(Quiver.type_a(2))
    ds = Desuperization(z, *bipartition_pair(Quiver.type_a(2), z), 2)
    keys = list(ds.plain.basis())
    rng = random.Random(4)
    assert ds.check_multiplicative([tuple(rng.sample(keys, 2)) for _ in range(300)])
    for key in keys:
        assert ds.sigma_inverse(ds.sigma({key: 1})) == {key: 1}


@pytest.fixture(scope="module")
def schiver():
    return SchiverDouble(Quiver.type_a(2), 2, 2)


def test_alternating_module_iso(schiver):
    assert schiver.model.check_module_iso()


def test_psi_multiplicative(schiver):
    from turner.schurweyl import compose_matrices
    sz = schiver.sz
    rng = random.Random(6)
    for _ in range(40):
        i, j = rng.randrange(sz.dim), rng.randrange(sz.dim)
        lhs = schiver.psi(sz.multiply({i: 1}, {j: 1}))
        assert lhs == clean(compose_matrices(schiver.psi({i: 1}), schiver.psi({j: 1})))


def test_psi_injective(schiver):
    assert rank([schiver.psi({i: 1}) for i in range(schiver.sz.dim)]) == schiver.sz.dim


def test_i_lambda_properties(schiver):
    from turner.schurweyl import compose_matrices
    model = schiver.model
    z = schiver.z
    for lam in model.lambdas():
        mats = [model.i_lambda(lam, {y: 1}) for y in range(z.dim)]
        assert rank(mats) == z.dim
        for x, y in itertools.product(range(z.dim), repeat=2):
            prod = {}
            for k, c in z.mul_basis(x, y).items():
                for key, v in mats[k].items():
                    prod[key] = prod.get(key, 0) + c * v
            assert clean(compose_matrices(mats[x], mats[y])) == clean(prod)
        # degree is carried by the basis label
        for y in range(z.dim):
            for (o, i) in mats[y]:
                assert model.degree_of(o) - model.degree_of(i) == z.degree[y]


def test_schiver_generation(schiver):
    ok, words = schiver.superized_check()
    assert ok and words
    ok, words, missing = schiver.desuperized_check()
    assert ok and missing is None
    assert schiver.generator_identity()


def test_psi_generator_formula(schiver):
    model = schiver.model
    for i in range(schiver.sz.dim)[:12]:
        gens = model.psi_from_generators(schiver.sz.inv.expand(i))
        mat = schiver.psi({i: 1})
        for lam, mod in model.family.modules.items():
            start = {(lam, k): c for k, c in mod.generator().items()}
            assert clean(model.apply(mat, start)) == gens[lam]


@pytest.mark.parametrize("n,d", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_orientation_independent(n, d):
    assert orientation_independent(2, n, d)


def test_orientation_independent_three_vertices():
    assert orientation_independent(3, 1, 2)


def test_schiver_needs_enough_rows():
    with pytest.raises(ValueError):
        SchiverDouble(Quiver.type_a(2), 1, 2).superized_generators()


def test_weight_count():
    assert len(SchiverDouble(Quiver.type_a(2), 2, 2).model.lambdas()) == len(cb.enumerate_weights(2, 1))
