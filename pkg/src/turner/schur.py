"""Generalized Schur algebras ``S^A(n,d) = Inv^d M_n(A)`` and their doubles.

Basis vectors ``xi_C`` are indexed by matrix tuples ``C`` whose flattened
counts follow the basis order of ``M_n(A)`` (label, then row, then column).
Structure constants are produced by a closed signed sum over triples of
sequences and, independently, by multiplying expanded tensors.
"""

from __future__ import annotations

import itertools
import random
from functools import cached_property, lru_cache
from typing import Mapping, Sequence

from . import combinatorics as cb
from .double import DIVIDED, PLAIN, TurnerDouble, subalgebra_closure
from .invariants import InvariantAlgebra, shuffle, shuffle_all
from .linalg import Lattice
from .superalgebra import (SuperAlgebra, add_term, matrix_superalgebra,
                           matrix_trivext_iso, tensor_power, trivial_extension)

BASIS_ORDER_VERSION = 1

FORMULA, ORACLE, VERIFIED = "formula", "oracle", "verified"
VERIFY_SAMPLE = 2000


class ConstantsMismatch(RuntimeError):
    """The closed formula and the tensor computation disagree."""


class SchurAlgebra:
    """``S^A(n,d)`` with its ``xi_C`` basis."""

    def __init__(self, alg: SuperAlgebra, n: int, d: int):
        if n < 1 or d < 0:
            raise ValueError("need n >= 1 and d >= 0")
        self.alg = alg
        self.n = n
        self.d = d
        self.x = matrix_superalgebra(alg, n)
        self.inv = InvariantAlgebra(self.x, d)
        self.entries = self.x.info["entries"]

    @property
    def dim(self) -> int:
        return self.inv.dim

    @property
    def exponents(self) -> list[tuple[int, ...]]:
        return self.inv.exponents

    def matrix_tuple(self, i: int) -> cb.MatrixTuple:
        return cb.MatrixTuple(self.alg.names, self.alg.parity, self.n, self.exponents[i])

    def parity_of(self, i: int) -> int:
        return self.inv.basis_parity(i)

    def describe(self, i: int) -> str:
        parts = []
        for j, k in enumerate(self.exponents[i]):
            if k:
                parts.append(self.x.names[j] + (f"^{k}" if k > 1 else ""))
        return "*".join(parts) or "1"

    # -- the basis as tensors
    def xi_expand(self, i: int) -> dict:
        """``xi_C`` as a signed sum over rearrangements of its sorted triples."""
        mt = self.matrix_tuple(i)
        pos = {e: k for k, e in enumerate(self.entries)}
        out = {}
        for seq in mt.orbit():
            keys = [(b, r, s) for r, b, s in seq]
            odd = [bool(self.alg.parity[b]) for r, b, s in seq]
            sign = -1 if cb.odd_inversions(keys, odd) & 1 else 1
            out[tuple(pos[k] for k in keys)] = sign
        return out

    def coords(self, tensor: Mapping[tuple, int], check: bool = False) -> dict:
        return self.inv.coords(tensor, check)

    def multiply(self, a: Mapping[int, int], b: Mapping[int, int]) -> dict:
        return self.inv.multiply(a, b)

    @cached_property
    def unit(self) -> dict:
        return self.inv.unit

    # -- structure constants
    @cached_property
    def _factorizations(self) -> dict[int, list[tuple[int, int, int]]]:
        out: dict[int, list] = {}
        for (b1, b2), prod in self.alg.table.items():
            for b, c in prod.items():
                out.setdefault(b, []).append((b1, b2, c))
        return out

    def green_constants(self) -> dict[tuple[int, int], dict]:
        """``f^E_{CD}`` from the closed signed sum, keyed by ``(C, D)``."""
        n, d, alg = self.n, self.d, self.alg
        par = alg.parity
        exp_index = self.inv.index
        m = self.x.dim
        out: dict[tuple[int, int], dict] = {}
        facts = self._factorizations
        for e_idx, e_exp in enumerate(self.exponents):
            triples = self.matrix_tuple(e_idx).triples()
            rows = [r for r, _, _ in triples]
            labels = [b for _, b, _ in triples]
            cols = [s for _, _, s in triples]
            choices = [facts.get(b, []) for b in labels]
            if any(not ch for ch in choices):
                continue
            for t in itertools.product(range(n), repeat=d):
                for pick in itertools.product(*choices):
                    b1 = [p[0] for p in pick]
                    b2 = [p[1] for p in pick]
                    left = [(b1[k], rows[k], t[k]) for k in range(d)]
                    right = [(b2[k], t[k], cols[k]) for k in range(d)]
                    c_exp = _counts(left, n, m, par)
                    if c_exp is None:
                        continue
                    d_exp = _counts(right, n, m, par)
                    if d_exp is None:
                        continue
                    sign = cb.odd_inversions(left, [par[b] for b in b1]) + \
                        cb.odd_inversions(right, [par[b] for b in b2]) + \
                        _bracket([par[b] for b in b1], [par[b] for b in b2])
                    coeff = 1
                    for p in pick:
                        coeff *= p[2]
                    if sign & 1:
                        coeff = -coeff
                    key = (exp_index[c_exp], exp_index[d_exp])
                    add_term(out.setdefault(key, {}), e_idx, coeff)
        return {k: v for k, v in out.items() if v}

    def oracle_constants(self) -> dict[tuple[int, int], dict]:
        """``f^E_{CD}`` by multiplying expanded tensors in ``Tens^d M_n(A)``."""
        return self.inv.structure_constants()

    def structure_constants(self, mode: str = VERIFIED, seed: int = 0) -> dict[tuple[int, int], dict]:
        """Constants in the given mode.

        ``verified`` compares the formula with the tensor products on every
        pair for ``d <= 2`` and on ``VERIFY_SAMPLE`` seeded pairs beyond.
        """
        if mode == FORMULA:
            return self.green_constants()
        if mode == ORACLE:
            return self.oracle_constants()
        if mode != VERIFIED:
            raise ValueError(f"unknown mode {mode!r}")
        green = self.green_constants()
        pairs = list(itertools.product(range(self.dim), repeat=2))
        if self.d > 2 and len(pairs) > VERIFY_SAMPLE:
            pairs = sorted(random.Random(seed).sample(pairs, VERIFY_SAMPLE))
        for key in pairs:
            want = self.inv.product(*key)
            if green.get(key, {}) != want:
                c, dd = key
                raise ConstantsMismatch(
                    f"f(C={self.describe(c)}, D={self.describe(dd)}): formula {green.get(key)} "
                    f"vs tensor product {want}")
        return green

    # -- signs and the dual basis
    def epsilon(self, c: Sequence[int], e: Sequence[int]) -> int:
        return epsilon(c, e, self.x.parity)

    def dual_product(self, c: Sequence[int], e: Sequence[int], divided: bool = False):
        """Coefficient of ``x^(C+D)`` in ``x^C x^D`` (or of the divided version)."""
        return dual_product(c, e, self.x.parity, divided)

    def coproduct_xi(self, i: int) -> list[tuple[tuple[int, ...], tuple[int, ...], int]]:
        c = self.exponents[i]
        out = []
        for left in itertools.product(*(range(k + 1) for k in c)):
            right = tuple(a - b for a, b in zip(c, left))
            out.append((tuple(left), right, self.epsilon(left, right)))
        return out

    def divided_constants(self, table: Mapping[tuple[int, int], Mapping[int, int]]):
        """``(f^(E)_(C)D, f^(E)_C(D))`` tables; raises ``ArithmeticError`` if not integral."""
        left, right = {}, {}
        fact = [cb.factorial(c) for c in self.exponents]
        for (c, dd), row in table.items():
            for e, f in row.items():
                a, ra = divmod(f * fact[c], fact[e])
                b, rb = divmod(f * fact[dd], fact[e])
                if ra or rb:
                    raise ArithmeticError(f"divided constant not integral at ({c}, {dd}, {e})")
                if a:
                    left.setdefault((c, dd), {})[e] = a
                if b:
                    right.setdefault((c, dd), {})[e] = b
        return left, right

    # -- idempotents
    def weight_idempotent(self, lam: Sequence[int]) -> dict:
        """``xi_lam = E_11^(x)lam_1 * ... * E_nn^(x)lam_n``."""
        if len(lam) != self.n or sum(lam) != self.d:
            raise ValueError("weight does not match n and d")
        pos = {e: k for k, e in enumerate(self.entries)}
        factors = []
        for r, k in enumerate(lam):
            e_rr = {pos[(b, r, r)]: c for b, c in self.alg.unit.items()}
            factors.append(tensor_power(e_rr, k))
        return self.coords(shuffle_all(factors, self.x.parity), check=True)

    def diagonal_unit(self, y: int, rest: Sequence[int] | None = None) -> dict:
        """``xi^y_11 * 1^(d-1)``, or ``xi^y_11 * E_22^rest_0 * ...`` when ``rest`` is given."""
        pos = {e: k for k, e in enumerate(self.entries)}
        first = {(pos[(y, 0, 0)],): 1}
        if rest is None:
            unit_x = {pos[(b, r, r)]: c for r in range(self.n) for b, c in self.alg.unit.items()}
            tail = tensor_power(unit_x, self.d - 1)
        else:
            factors = []
            for r, k in enumerate(rest, start=1):
                e_rr = {pos[(b, r, r)]: c for b, c in self.alg.unit.items()}
                factors.append(tensor_power(e_rr, k))
            tail = shuffle_all(factors, self.x.parity)
        return self.coords(shuffle(first, tail, self.x.parity), check=True)


def _counts(triples, n, m, par) -> tuple[int, ...] | None:
    counts = [0] * m
    for b, r, s in triples:
        k = (b * n + r) * n + s
        counts[k] += 1
        if par[b] and counts[k] > 1:
            return None
    return tuple(counts)


def _bracket(xp, yp) -> int:
    total = running = 0
    for x, y in zip(xp, yp):
        total += x * running
        running += y
    return total


def epsilon(c: Sequence[int], e: Sequence[int], parity: Sequence[int]) -> int:
    """``epsilon_{CD}``: sign from odd entries of ``C`` sitting above odd entries of ``D``."""
    total = 0
    for i, ci in enumerate(c):
        if parity[i] and ci:
            if e[i]:
                return 0
            for j in range(i):
                if parity[j] and e[j]:
                    total += ci * e[j]
    return -1 if total & 1 else 1


def dual_product(c: Sequence[int], e: Sequence[int], parity: Sequence[int], divided: bool = False):
    eps = epsilon(c, e, parity)
    if not eps:
        return 0, tuple(a + b for a, b in zip(c, e))
    pc = sum(k for i, k in enumerate(c) if parity[i]) & 1
    pe = sum(k for i, k in enumerate(e) if parity[i]) & 1
    coeff = -eps if pc and pe else eps
    total = tuple(a + b for a, b in zip(c, e))
    if divided:
        coeff *= cb.binomial(total, e)
    return coeff, total


# ---------------------------------------------------------------- the double

class SchurDouble:
    """``D^A(n,d)`` and ``'D^A(n,d)`` inside ``S^{T_A}(n,d)``."""

    def __init__(self, alg: SuperAlgebra, n: int, d: int):
        self.alg = alg
        self.n = n
        self.d = d
        self.double = TurnerDouble(matrix_superalgebra(alg, n), d)
        self.labels = self.double.labels
        self.index = self.double.index
        self.big = SchurAlgebra(trivial_extension(alg), n, d)
        mta, tx, mapping = matrix_trivext_iso(alg, n)
        if tx.names != self.double.t.names or mta.names != self.big.x.names:
            raise RuntimeError("inconsistent basis orders")
        back = [0] * len(mapping)
        for k, v in enumerate(mapping):
            back[v] = k
        self._to_big: list[tuple[int, int]] = []
        for k in range(self.double.inv_t.dim):
            image = self.big.coords({tuple(back[j] for j in w): c
                                     for w, c in self.double.inv_t.expand(k).items()})
            if len(image) != 1:
                raise RuntimeError("relabelled basis vector is not a signed basis vector")
            self._to_big.append(next(iter(image.items())))

    @property
    def dim(self) -> int:
        return self.double.dim

    @cached_property
    def _small(self) -> dict[int, SchurAlgebra]:
        return {k: SchurAlgebra(self.alg, self.n, k) for k in range(self.d + 1)}

    @cached_property
    def _tables(self) -> dict[int, dict]:
        return {k: s.structure_constants(VERIFIED if k <= 2 else FORMULA)
                for k, s in self._small.items()}

    def product(self, i: int, j: int, variant: str = PLAIN) -> dict:
        return self.double.product(i, j, variant)

    def multiply(self, a, b, variant: str = PLAIN) -> dict:
        return self.double.multiply(a, b, variant)

    def turner_degree(self, i: int) -> int:
        return self.double.turner_degree(i)

    def to_schur(self, vec: Mapping[int, int], variant: str = PLAIN) -> dict:
        """Coordinates in ``S^{T_A}(n,d)``."""
        out: dict = {}
        for k, c in self.double.phi(vec, variant).items():
            kk, s = self._to_big[k]
            add_term(out, kk, s * c)
        return out

    def lattice(self, variant: str = PLAIN) -> Lattice:
        return Lattice(self.to_schur({i: 1}, variant) for i in range(self.dim))

    def _f(self, k: int, c: tuple, dd: tuple, e: tuple) -> int:
        s = self._small[k]
        return self._tables[k].get((s.inv.index[c], s.inv.index[dd]), {}).get(s.inv.index[e], 0)

    def product_closed_form(self, i: int, j: int, variant: str = PLAIN) -> dict:
        """The product from the explicit rule in terms of ``f`` and ``epsilon``."""
        (c, dd), (e, ff) = self.labels[i], self.labels[j]
        par = self.double.x.parity

        def bar(v):
            return sum(k for t, k in enumerate(v) if par[t]) & 1

        def splits(v):
            for left in itertools.product(*(range(k + 1) for k in v)):
                yield tuple(left), tuple(a - b for a, b in zip(v, left))

        small = self._small
        deg_d, deg_f = sum(dd), sum(ff)
        out: dict = {}
        for c1, c2 in splits(c):
            if sum(c1) != deg_f:
                continue
            eps_c = epsilon(c1, c2, par)
            if not eps_c:
                continue
            for e1, e2 in splits(e):
                if sum(e2) != deg_d or sum(e1) != sum(c2):
                    continue
                eps_e = epsilon(e1, e2, par)
                if not eps_e:
                    continue
                mid = sum(c2)
                for dp in small[deg_d].exponents:
                    f1 = self._f(deg_d, e2, dp, dd)
                    if not f1:
                        continue
                    for fp in small[deg_f].exponents:
                        f2 = self._f(deg_f, fp, c1, ff)
                        if not f2:
                            continue
                        s = (bar(c1) * bar(c2) + bar(c1) * bar(e1) + bar(c1) * bar(dp)
                             + bar(dp) * bar(e1) + bar(e1) * bar(e2))
                        coeff = eps_c * eps_e
                        if variant == DIVIDED:
                            num = f1 * cb.factorial(dp) * f2 * cb.factorial(fp)
                            den = cb.factorial(dd) * cb.factorial(ff)
                            q, r = divmod(num, den)
                            if r:
                                raise ArithmeticError("divided constant not integral")
                            coeff *= q
                        else:
                            coeff *= f1 * f2
                        if s & 1:
                            coeff = -coeff
                        dual_coeff, total = dual_product(dp, fp, par, divided=(variant == DIVIDED))
                        if not dual_coeff:
                            continue
                        sm = small[mid]
                        left = sm.inv.product(sm.inv.index[c2], sm.inv.index[e1])
                        for g, cg in left.items():
                            add_term(out, self.index[(sm.exponents[g], total)],
                                     coeff * dual_coeff * cg)
        return out

    # -- generation inside S^{T_A}(n,d)
    def generators(self, form: str = "unit") -> list[dict]:
        """Basis of ``S^{A_0}(n,d)`` plus ``xi^y_11 * 1^(d-1)`` (``unit``) or
        ``xi^y_11 * E_22^lam_2 * ... * E_nn^lam_n`` over weights ``lam`` (``weights``, needs ``n >= d``)."""
        big = self.big
        ta = big.alg
        even_plain = [k for k, (j, dual) in enumerate(ta.info["source"])
                      if not dual and not self.alg.parity[j]]
        allowed = {k for k, (b, r, s) in enumerate(big.entries) if b in even_plain}
        gens = [{i: 1} for i, c in enumerate(big.exponents)
                if all(k in allowed for k, v in enumerate(c) if v)]
        if form == "unit":
            gens += [big.diagonal_unit(y) for y in range(ta.dim)]
        elif form == "weights":
            if self.n < self.d:
                raise ValueError("the weights form needs n >= d")
            for lam in cb.enumerate_weights(self.n - 1, self.d - 1) if self.n > 1 else [()]:
                gens += [big.diagonal_unit(y, lam) for y in range(ta.dim)]
        else:
            raise ValueError("form must be 'unit' or 'weights'")
        return gens

    def generation_check(self, form: str = "unit"):
        """Closure of the generators against the ``D^A(n,d)`` lattice.

        Returns ``(equal, certificate words, missing)`` where ``missing`` is
        a lattice basis vector not reached (``None`` when equal).
        """
        gens = self.generators(form)
        closure, words = subalgebra_closure(gens, self.big.multiply, self.big.unit)
        target = self.lattice(PLAIN)
        if closure == target:
            return True, words, None
        missing = next((i for i in range(self.dim) if not closure.contains(self.to_schur({i: 1}))), None)
        return False, words, missing


@lru_cache(maxsize=None)
def schur_algebra(alg: SuperAlgebra, n: int, d: int) -> SchurAlgebra:
    return SchurAlgebra(alg, n, d)
