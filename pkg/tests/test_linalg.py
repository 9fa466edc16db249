import random

import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.matrices.normalforms import smith_normal_form

from turner.linalg import (Lattice, RationalSpan, determinant, rank, rank_mod_p,
                           signed_permutation_det, smith_diagonal, solve_in_lattice)

small_matrix = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n))


def _rows(mat):
    return [{j: x for j, x in enumerate(row) if x} for row in mat]


@given(small_matrix)
def test_determinant_matches_sympy(mat):
    assert determinant(mat) == sympy.Matrix(mat).det()


@given(small_matrix)
def test_rank_matches_sympy(mat):
    assert rank(_rows(mat)) == sympy.Matrix(mat).rank()


@given(small_matrix, st.sampled_from([2, 3, 5]))
def test_rank_mod_p_matches_determinant(mat, p):
    full = rank_mod_p(mat, p) == len(mat)
    assert full == (determinant(mat) % p != 0)


@given(small_matrix)
def test_smith_matches_sympy(mat):
    ours = smith_diagonal(mat)
    ref = smith_normal_form(sympy.Matrix(mat), domain=sympy.ZZ)
    theirs = [abs(ref[i, i]) for i in range(min(ref.shape)) if ref[i, i]]
    assert ours == theirs


@given(small_matrix)
def test_lattice_index_is_abs_determinant(mat):
    lat = Lattice(_rows(mat))
    full = Lattice({j: 1} for j in range(len(mat)))
    det = determinant(mat)
    if det:
        assert lat.index_in(full) == abs(det)
        assert (lat == full) == (abs(det) == 1)
    else:
        assert lat.rank < len(mat)


def test_lattice_membership_and_solve():
    lat = Lattice([{0: 2, 1: 1}, {1: 3}])
    assert lat.contains({0: 2, 1: 4})
    assert not lat.contains({0: 1})
    coords = solve_in_lattice(lat, {0: 4, 1: 5})
    rebuilt = {}
    for p, f in coords.items():
        for k, v in lat.rows[p].items():
            rebuilt[k] = rebuilt.get(k, 0) + f * v
    assert {k: v for k, v in rebuilt.items() if v} == {0: 4, 1: 5}
    with pytest.raises(ValueError):
        solve_in_lattice(lat, {0: 1})


def test_hermite_is_canonical_under_generator_order():
    rng = random.Random(3)
    vecs = [{j: rng.randint(-4, 4) for j in range(4)} for _ in range(6)]
    a = Lattice(vecs)
    b = Lattice(reversed(vecs))
    assert a == b
    assert a.hermite() == b.hermite()


def test_rational_span_express():
    span = RationalSpan()
    span.insert({0: 2, 1: 2})
    span.insert({1: 3})
    coeffs = span.express({0: 1, 1: 4})
    assert coeffs is not None
    assert span.express({2: 1}) is None


def test_signed_permutation_det():
    assert signed_permutation_det([{1: 1}, {0: 1}], 2) == -1
    assert signed_permutation_det([{0: -1}, {1: 1}], 2) == -1
    assert signed_permutation_det([{0: 2}, {1: 1}], 2) is None
    assert signed_permutation_det([{0: 1}, {0: 1}], 2) is None
