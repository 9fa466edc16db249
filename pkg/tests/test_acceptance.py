"""Acceptance criteria, one test each.

Every test records a PASS or FAIL line; the lines are printed together in
the terminal summary (see ``conftest.py``).  All comparisons are exact.
"""

import itertools
import math
import random
import subprocess
import sys
import time

import pytest

from turner import combinatorics as cb
from turner.double import DIVIDED, PLAIN, TurnerDouble, form_is_associative
from turner.linalg import (Lattice, determinant, rank_mod_p, signed_permutation_det, smith_diagonal,
                           solve_in_lattice)
from turner.presets import preset
from turner.quiver import Desuperization, Quiver, SchiverDouble, bipartition_pair, zigzag_algebra
from turner.schur import SchurAlgebra, SchurDouble
from turner.schurweyl import (Truncation, commutant_dimension, commutant_table, compose_matrices,
                              faithfulness_rank)
from turner.superalgebra import clean, matrix_superalgebra, place_permute, tensor_product

SEED = 0


@pytest.fixture
def criterion(request, acceptance_log):
    """Yield a recorder; the PASS/FAIL line is written whatever the outcome."""
    state = {"label": None, "start": time.perf_counter()}

    def record(label):
        state["label"] = label

    yield record
    failed = request.node.rep_call.failed if hasattr(request.node, "rep_call") else True
    seconds = time.perf_counter() - state["start"]
    acceptance_log.append(f"{'FAIL' if failed else 'PASS'} {state['label']} ({seconds:.1f} s)")


def _within(start, limit):
    elapsed = time.perf_counter() - start
    assert elapsed < limit, f"took {elapsed:.1f} s, limit {limit} s"


# 1 ----------------------------------------------------------------------------

def test_sign_engine_coherence(criterion):
    criterion("1 sign engine: action and automorphism laws, d <= 4, mixed parity")
    start = time.perf_counter()
    for name in ("exterior", "pq-a2"):
        alg = preset(name)
        par = alg.parity
        assert set(par) == {0, 1}
        for d in range(1, 5):
            perms = cb.all_perms(d)
            words = list(itertools.product(range(alg.dim), repeat=d))
            moved = {(w, g): place_permute({w: 1}, g, par) for w in words for g in perms}
            for w, g, h in itertools.product(words, perms, perms):
                assert place_permute(moved[(w, g)], h, par) == moved[(w, cb.compose(g, h))]
            for u, v in itertools.product(words, repeat=2):
                prod = tensor_product(alg, {u: 1}, {v: 1})
                for g in perms:
                    assert place_permute(prod, g, par) == \
                        clean(tensor_product(alg, moved[(u, g)], moved[(v, g)]))
    _within(start, 10)


# 2 ----------------------------------------------------------------------------

def test_phi_bijective_and_multiplicative(criterion):
    criterion("2 phi: divided double onto Inv T_X, bijective and multiplicative")
    start = time.perf_counter()
    rng = random.Random(SEED)
    for name in ("trivial", "dual", "pq-a2"):
        for d in (1, 2, 3):
            dbl = TurnerDouble(preset(name), d)
            cols = [dbl.phi({i: 1}, DIVIDED) for i in range(dbl.dim)]
            assert dbl.dim == dbl.inv_t.dim
            assert signed_permutation_det(cols, dbl.inv_t.dim) in (1, -1)
            pairs = list(itertools.product(range(dbl.dim), repeat=2))
            if d == 3:
                pairs = rng.sample(pairs, min(500, len(pairs)))
            for i, j in pairs:
                lhs = clean(dbl.phi(dbl.product_sweedler(i, j), PLAIN))
                rhs = clean(dbl.inv_t.multiply(dbl.phi({i: 1}, PLAIN), dbl.phi({j: 1}, PLAIN)))
                assert lhs == rhs, (name, d, dbl.describe(i), dbl.describe(j))
    _within(start, 120)


# 3 ----------------------------------------------------------------------------

def _bilinear(product):
    cache = {}

    def mul(a, b):
        out = {}
        for i, x in a.items():
            for j, y in b.items():
                if (i, j) not in cache:
                    cache[(i, j)] = product(i, j)
                for k, v in cache[(i, j)].items():
                    out[k] = out.get(k, 0) + x * y * v
        return clean(out)
    return mul


def test_double_product_associative(criterion):
    criterion("3 double product associative: exhaustive d = 2, 10^4 random triples d = 3")
    rng = random.Random(SEED)
    for name in ("trivial", "pq-a2"):
        for d in (2, 3):
            dbl = TurnerDouble(preset(name), d)
            mul = _bilinear(dbl.product_sweedler)
            n = dbl.dim
            if d == 2:
                triples = itertools.product(range(n), repeat=3)
            else:
                triples = [(rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(10_000)]
            for i, j, k in triples:
                a, b, c = {i: 1}, {j: 1}, {k: 1}
                assert mul(mul(a, b), c) == mul(a, mul(b, c)), (name, d, i, j, k)


# 4 ----------------------------------------------------------------------------

def test_doubles_of_integers_are_truncated_polynomials(criterion):
    criterion("4 D^d Z = Z[z]_d and divided z^(e) z^(f) = C(e+f,e) z^(e+f), d <= 5")
    for d in range(6):
        dbl = TurnerDouble(preset("trivial"), d)
        z = [dbl.index[((d - e,), (e,))] for e in range(d + 1)]
        assert sorted(z) == list(range(dbl.dim))
        for e, f in itertools.product(range(d + 1), repeat=2):
            inside = e + f <= d
            assert dbl.product(z[e], z[f], PLAIN) == ({z[e + f]: 1} if inside else {})
            assert dbl.product(z[e], z[f], DIVIDED) == ({z[e + f]: math.comb(e + f, e)} if inside else {})


# 5 ----------------------------------------------------------------------------

GREEN = [(a, n, d) for a in ("trivial", "pq-a2", "zz-a2") for n in (1, 2) for d in (1, 2)]


def test_green_formula(criterion):
    criterion("5 closed-form constants = tensor-expansion constants; S(2,2) = commutant table")
    start = time.perf_counter()
    for name, n, d in GREEN:
        s = SchurAlgebra(preset(name), n, d)
        assert s.green_constants() == s.oracle_constants(), (name, n, d)
    s = SchurAlgebra(preset("trivial"), 2, 2)
    assert commutant_table(s) == s.green_constants()
    _within(start, 300)


# 6 ----------------------------------------------------------------------------

def test_commutant_and_faithfulness(criterion):
    criterion("6 commutant dimension = |M^B(n,d)| and faithful action")
    for name, n, d in GREEN + [("trivial", 3, 2)]:
        s = SchurAlgebra(preset(name), n, d)
        assert commutant_dimension(preset(name), n, d) == s.dim, (name, n, d)
        assert faithfulness_rank(s) == s.dim, (name, n, d)


# 7 ----------------------------------------------------------------------------

TRUNCATION = [(a, n, d) for a in ("trivial", "zz-a2") for n in (1, 2, 3) for d in range(1, n + 1)]


def test_idempotent_truncation(criterion):
    criterion("7 truncation: phi multiplicative, phi(w) v_omega = v_omega w, S xi_omega = V^(x)d")
    rng = random.Random(SEED)
    for name, n, d in TRUNCATION:
        tr = Truncation(preset(name), n, d)
        basis = list(tr.wreath.basis())
        pairs = list(itertools.product(basis, repeat=2))
        if len(pairs) > 20_000:
            pairs = rng.sample(pairs, 20_000)
        assert tr.check_phi(pairs), (name, n, d)
        assert tr.check_characterization(basis), (name, n, d)
        report = tr.check_bimodule(sample=2000, seed=SEED)
        assert report["rank"] == report["dim"]
        assert report["lattice_equal"] and report["right_compatible"], (name, n, d)
        assert report["omega_to_v_omega"]


# 8 ----------------------------------------------------------------------------

def test_symmetric_form(criterion):
    criterion("8 Gram form symmetric, associative, unimodular; divided contrast witness degenerate mod 2")
    rng = random.Random(SEED)
    for name in ("trivial", "pq-a2"):
        dbl = TurnerDouble(matrix_superalgebra(preset(name), 2), 2)
        form = dbl.symmetric_form()
        gram = form["gram"]
        m = dbl.dim
        assert form["symmetric"] and form["matches_functional"]
        triples = [(rng.randrange(m), rng.randrange(m), rng.randrange(m)) for _ in range(200)]
        assert form_is_associative(dbl, triples)
        assert abs(form["determinant"]) == 1
        for p in (2, 3, 5):
            assert rank_mod_p(gram, p) == m
    witness = TurnerDouble(preset("trivial"), 2).gram_functional(DIVIDED)
    assert determinant(witness) % 2 == 0
    assert rank_mod_p(witness, 2) < len(witness)


# 9 ----------------------------------------------------------------------------

def _integral(values):
    return all(isinstance(v, int) for v in values)


def test_divided_integrality(criterion):
    criterion("9 divided constants and divided double products integral")
    for name, n, d in GREEN:
        s = SchurAlgebra(preset(name), n, d)
        left, right = s.divided_constants(s.green_constants())
        assert _integral(v for t in (left, right) for row in t.values() for v in row.values())
    doubles = [(a, d) for a in ("trivial", "dual", "pq-a2") for d in (1, 2, 3)]
    doubles += [("trivial", d) for d in (4, 5)]
    for name, d in doubles:
        dbl = TurnerDouble(preset(name), d)
        for i, j in itertools.product(range(dbl.dim), repeat=2):
            assert _integral(dbl.product(i, j, DIVIDED).values()), (name, d, i, j)


# 10 ---------------------------------------------------------------------------

def _same_lattice(closure: Lattice, target: Lattice) -> bool:
    """Containment plus trivial Smith invariants of the inclusion."""
    if closure.rank != target.rank:
        return False
    if not all(target.contains(r) for r in closure.rows.values()):
        return False
    keys = sorted(target.rows)
    coords = [solve_in_lattice(target, r) for r in closure.rows.values()]
    diag = smith_diagonal([[c.get(k, 0) for k in keys] for c in coords])
    return len(diag) == target.rank and all(x == 1 for x in diag)


@pytest.mark.parametrize("name", ["trivial", "pq-a2"])
def test_generation_schur_double(criterion, name):
    criterion(f"10 generation of D^A(2,2), A = {name}")
    start = time.perf_counter()
    from turner.double import subalgebra_closure
    sd = SchurDouble(preset(name), 2, 2)
    target = sd.lattice(PLAIN)
    for form in ("unit", "weights"):
        closure, _ = subalgebra_closure(sd.generators(form), sd.big.multiply, sd.big.unit)
        assert _same_lattice(closure, target), form
    _within(start, 300)


def test_generation_desuperized(criterion):
    criterion("10 generation for Q = A_2, desuperized form")
    start = time.perf_counter()
    from turner.double import subalgebra_closure
    sch = SchiverDouble(Quiver.type_a(2), 2, 2)
    gens = sch.desuperized_generators()
    unit = {(k, k): 1 for k in range(sch.model.dim)}
    closure, _ = subalgebra_closure(gens, compose_matrices, unit)
    target = Lattice(sch.psi(sch.to_sz({i: 1})) for i in range(sch.double.dim))
    assert _same_lattice(closure, target)
    assert sch.generator_identity()
    _within(start, 300)


# 11 ---------------------------------------------------------------------------

def test_desuperization(criterion):
    criterion("11 desuperization: relations, blockwise bijective, module iso, psi on generators")
    q = Quiver.type_a(2)
    z = zigzag_algebra(q)
    e0, e1 = bipartition_pair(q, z)
    for d in (2, 3):
        ds = Desuperization(z, e0, e1, d)
        assert all(ds.check_relations().values()), d
        assert all(v in (1, -1) for v in ds.block_determinants().values()), d
    sch = SchiverDouble(q, 2, 2)
    model = sch.model
    assert model.check_module_iso()
    gens = sch.superized_generators()
    images = [sch.psi(g) for g in gens]
    for (a, pa), (b, pb) in itertools.product(zip(gens, images), repeat=2):
        assert sch.psi(sch.sz.multiply(a, b)) == clean(compose_matrices(pa, pb))
    from turner.linalg import rank
    assert rank([sch.psi({i: 1}) for i in range(sch.sz.dim)]) == sch.sz.dim


# 12 ---------------------------------------------------------------------------

def test_verify_all(criterion):
    criterion("12 `turner verify all` exits 0 within 15 minutes")
    start = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "turner.cli", "verify", "all"],
                          capture_output=True, text=True, timeout=900)
    assert proc.returncode == 0, proc.stderr
    assert proc.stderr.strip().splitlines()[-1] == "PASS"
    _within(start, 900)
