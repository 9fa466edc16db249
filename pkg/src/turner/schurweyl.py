"""Wreath products, tensor space and the Schur-Weyl commutant.

``W^A_d`` elements are dicts ``{(word, g): c}`` standing for
``(b_1 (x) ... (x) b_d) g``.  Tensor space ``V^{(x)d}`` with ``V = A^n``
uses words of letters ``(r, b)`` for ``v_r^b``.  Both carry the Koszul sign
rule unless built with ``graded=False``, which gives the unsigned wreath
product ``W^{|A|}_d``.
"""

from __future__ import annotations

import itertools
import random
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from . import combinatorics as cb
from .invariants import shuffle_all
from .linalg import Lattice, RationalSpan, rank, signed_permutation_det
from .superalgebra import SuperAlgebra, add_into, add_term, bracket, clean, matrix_superalgebra

Word = tuple
WreathKey = tuple  # (word, perm)


def _signed_permute(word: Sequence, g: cb.Perm, par: Sequence[int]) -> tuple[tuple, int]:
    """``word^g`` and the sign from odd letters crossing."""
    ginv = cb.inverse(g)
    flips = 0
    for a in range(len(word)):
        if par[a]:
            for c in range(a + 1, len(word)):
                if par[c] and ginv[a] > ginv[c]:
                    flips += 1
    return cb.act(word, g), (-1 if flips & 1 else 1)


class WreathAlgebra:
    """``W^A_d = A^{(x)d} x| Z S_d``; set ``graded=False`` for ``W^{|A|}_d``."""

    def __init__(self, alg: SuperAlgebra, d: int, graded: bool = True):
        self.alg = alg
        self.d = d
        self.graded = graded
        self.parity = tuple(alg.parity) if graded else (0,) * alg.dim

    @cached_property
    def perms(self) -> list[cb.Perm]:
        return cb.all_perms(self.d)

    @property
    def dim(self) -> int:
        return self.alg.dim ** self.d * len(self.perms)

    def basis(self) -> Iterable[WreathKey]:
        for word in itertools.product(range(self.alg.dim), repeat=self.d):
            for g in self.perms:
                yield (word, g)

    def word_product(self, u: Word, v: Word) -> dict:
        """Slotwise product ``u v`` in ``A^{(x)d}`` with the Koszul sign."""
        par = self.parity
        coeff = -1 if bracket([par[i] for i in u], [par[j] for j in v]) else 1
        partial = {(): coeff}
        for i, j in zip(u, v):
            prod = self.alg.mul_basis(i, j)
            if not prod:
                return {}
            partial = {pre + (k,): c * x for pre, c in partial.items() for k, x in prod.items()}
        return partial

    def multiply(self, a: Mapping[WreathKey, int], b: Mapping[WreathKey, int]) -> dict:
        """``(u g)(v h) = u v^{g^-1} gh``."""
        out: dict = {}
        par = self.parity
        for (u, g), x in a.items():
            ginv = cb.inverse(g)
            for (v, h), y in b.items():
                v2, s = _signed_permute(v, ginv, [par[i] for i in v])
                gh = cb.compose(g, h)
                for w, c in self.word_product(u, v2).items():
                    add_term(out, (w, gh), x * y * s * c)
        return out

    def unit(self) -> dict:
        out: dict = {}
        for word, c in self._unit_word().items():
            out[(word, cb.identity(self.d))] = c
        return out

    def _unit_word(self) -> dict:
        out = {(): 1}
        for _ in range(self.d):
            out = {w + (i,): c * x for w, c in out.items() for i, x in self.alg.unit.items()}
        return out

    def slot(self, x: Mapping[int, int], c: int) -> dict:
        """``x[c]``: ``x`` in slot ``c`` (0-based), the unit elsewhere."""
        out = {(): 1}
        for a in range(self.d):
            vec = x if a == c else self.alg.unit
            out = {w + (i,): k * v for w, k in out.items() for i, v in vec.items()}
        e = cb.identity(self.d)
        return {(w, e): k for w, k in clean(out).items()}

    def perm(self, g: cb.Perm) -> dict:
        return {(w, tuple(g)): c for w, c in self._unit_word().items()}

    def tau(self, r: int) -> dict:
        """The adjacent transposition swapping slots ``r`` and ``r+1`` (0-based)."""
        return self.perm(cb.transposition(self.d, r))

    def generators(self) -> list[dict]:
        gens = [self.slot({b: 1}, c) for c in range(self.d) for b in range(self.alg.dim)]
        gens += [self.tau(r) for r in range(self.d - 1)]
        return gens

    def is_associative_on(self, triples: Iterable[tuple[WreathKey, WreathKey, WreathKey]]) -> bool:
        for a, b, c in triples:
            x, y, z = {a: 1}, {b: 1}, {c: 1}
            if self.multiply(self.multiply(x, y), z) != self.multiply(x, self.multiply(y, z)):
                return False
        return True


class TensorSpace:
    """``V^{(x)d}`` for ``V = A^n`` with the left ``Tens^d M_n(A)`` and right ``W^A_d`` actions."""

    def __init__(self, alg: SuperAlgebra, n: int, d: int):
        self.alg = alg
        self.n = n
        self.d = d
        self.x = matrix_superalgebra(alg, n)
        self.wreath = WreathAlgebra(alg, d)

    @cached_property
    def letters(self) -> list[tuple[int, int]]:
        return [(r, b) for r in range(self.n) for b in range(self.alg.dim)]

    @cached_property
    def words(self) -> list[Word]:
        return list(itertools.product(self.letters, repeat=self.d))

    @property
    def dim(self) -> int:
        return len(self.letters) ** self.d

    def _par(self, word: Word) -> list[int]:
        return [self.alg.parity[b] for _, b in word]

    def v(self, rows: Sequence[int], labels: Sequence[Mapping[int, int]] | None = None) -> dict:
        """``v_{r_1}^{x_1} (x) ... (x) v_{r_d}^{x_d}``; the ``x_a`` default to ``1_A``."""
        out = {(): 1}
        for a, r in enumerate(rows):
            vec = self.alg.unit if labels is None else labels[a]
            out = {w + ((r, b),): c * x for w, c in out.items() for b, x in vec.items()}
        return clean(out)

    def right_act(self, vec: Mapping[Word, int], w: Mapping[WreathKey, int]) -> dict:
        out: dict = {}
        par_a = self.alg.parity
        for word, c in vec.items():
            vp = self._par(word)
            for (u, g), k in w.items():
                coeff = c * k * (-1 if bracket(vp, [par_a[i] for i in u]) else 1)
                partial = {(): coeff}
                for (r, b), x in zip(word, u):
                    prod = self.alg.mul_basis(b, x)
                    if not prod:
                        partial = {}
                        break
                    partial = {pre + ((r, j),): q * y for pre, q in partial.items() for j, y in prod.items()}
                for pw, q in partial.items():
                    moved, s = _signed_permute(pw, g, self._par(pw))
                    add_term(out, moved, q * s)
        return out

    def left_act(self, tensor: Mapping[tuple, int], vec: Mapping[Word, int]) -> dict:
        """Action of ``Tens^d M_n(A)`` (tensor over ``M_n(A)`` basis indices)."""
        entries = self.x.info["entries"]
        par_x = self.x.parity
        out: dict = {}
        for xword, c in tensor.items():
            xp = [par_x[i] for i in xword]
            for word, k in vec.items():
                if any(entries[i][2] != r for i, (r, _) in zip(xword, word)):
                    continue
                coeff = c * k * (-1 if bracket(xp, self._par(word)) else 1)
                partial = {(): coeff}
                for i, (_, b) in zip(xword, word):
                    x, r, _ = entries[i]
                    prod = self.alg.mul_basis(x, b)
                    if not prod:
                        partial = {}
                        break
                    partial = {pre + ((r, j),): q * y for pre, q in partial.items() for j, y in prod.items()}
                add_into(out, partial)
        return out

    def action_columns(self, tensor: Mapping[tuple, int]) -> dict:
        """The endomorphism of ``tensor`` as a sparse matrix ``{(out, in): c}``."""
        out: dict = {}
        for word in self.words:
            for o, c in self.left_act(tensor, {word: 1}).items():
                out[(o, word)] = c
        return out


def compose_matrices(a: Mapping, b: Mapping) -> dict:
    """``a o b`` for sparse matrices keyed ``(row, col)``."""
    by_row: dict = {}
    for (o, i), c in b.items():
        by_row.setdefault(o, []).append((i, c))
    out: dict = {}
    for (o, m), c in a.items():
        for i, k in by_row.get(m, ()):
            add_term(out, (o, i), c * k)
    return out


# ---------------------------------------------------------------- the commutant

def _commutation_equations(space: TensorSpace, matrix_unknown: bool) -> tuple[list[dict], int]:
    if matrix_unknown:
        return _full_equations(space)
    return _reduced_equations(space)


def _reduced_equations(space: TensorSpace) -> tuple[list[dict], int]:
    """A right ``A^{(x)d}``-linear map is fixed by the images of the free generators ``v_r``.

    Unknowns are the coordinates of each image; equivariance under the
    adjacent transpositions gives the equations.
    """
    seqs = list(itertools.product(range(space.n), repeat=space.d))
    words = space.words
    eqs = []
    for r in seqs:
        for k in range(space.d - 1):
            t = cb.transposition(space.d, k)
            rt = cb.act(r, t)
            for w in words:
                moved, s = _signed_permute(w, t, space._par(w))
                eqs.append(clean({(rt, moved): 1, (r, w): -s}) if (rt, moved) != (r, w) else
                           clean({(r, w): 1 - s}))
    return [e for e in eqs if e], len(seqs) * len(words)


def _full_equations(space: TensorSpace) -> tuple[list[dict], int]:
    """Commutation with the generators ``x[c]`` and ``tau_r`` for an arbitrary matrix."""
    words = space.words
    eqs = []
    for gen in space.wreath.generators():
        images = {w: space.right_act({w: 1}, gen) for w in words}
        for v in words:
            # (M (v g))[o'] - ((M v) g)[o'] = 0 for every o'
            rows: dict = {}
            for u, a in images[v].items():
                for o in words:
                    add_term(rows.setdefault(o, {}), (o, u), a)
            for o in words:
                for o2, b in images[o].items():
                    add_term(rows.setdefault(o2, {}), (o, v), -b)
            eqs.extend(clean(r) for r in rows.values() if clean(r))
    return eqs, len(words) ** 2


def commutant_dimension(alg: SuperAlgebra, n: int, d: int, method: str = "reduced") -> int:
    """Rank of ``End_{W^A_d}(V^{(x)d})`` from the linear commutation system over Q."""
    space = TensorSpace(alg, n, d)
    if method not in ("reduced", "full"):
        raise ValueError("method must be 'reduced' or 'full'")
    eqs, unknowns = _commutation_equations(space, method == "full")
    return unknowns - rank(eqs)


def action_matrices(schur, space: TensorSpace | None = None) -> list[dict]:
    space = space or TensorSpace(schur.alg, schur.n, schur.d)
    return [space.action_columns(schur.inv.expand(i)) for i in range(schur.dim)]


def faithfulness_rank(schur, space: TensorSpace | None = None) -> int:
    return rank(action_matrices(schur, space))


def commutes_with_wreath(space: TensorSpace, matrix: Mapping) -> bool:
    cols: dict = {}
    for (o, i), c in matrix.items():
        cols.setdefault(i, {})[o] = c
    for gen in space.wreath.generators():
        for v in space.words:
            lhs: dict = {}
            for u, a in space.right_act({v: 1}, gen).items():
                add_into(lhs, cols.get(u, {}), a)
            rhs = space.right_act(cols.get(v, {}), gen)
            if clean(lhs) != clean(rhs):
                return False
    return True


def commutant_table(schur) -> dict[tuple[int, int], dict]:
    """Structure constants of ``S^A(n,d)`` obtained by composing endomorphisms of ``V^{(x)d}``.

    Raises ``RuntimeError`` if some basis endomorphism fails to commute with
    the wreath action or a composite leaves their integral span.
    """
    space = TensorSpace(schur.alg, schur.n, schur.d)
    mats = action_matrices(schur, space)
    for i, m in enumerate(mats):
        if not commutes_with_wreath(space, m):
            raise RuntimeError(f"basis element {schur.describe(i)} does not commute with W")
    span = RationalSpan()
    for m in mats:
        span.insert(m)
    table = {}
    for i, a in enumerate(mats):
        for j, b in enumerate(mats):
            comp = compose_matrices(a, b)
            if not comp:
                continue
            coeffs = span.express(comp)
            if coeffs is None or any(c.denominator != 1 for c in coeffs.values()):
                raise RuntimeError("composite is not an integral combination")
            table[(i, j)] = {k: int(c) for k, c in coeffs.items()}
    return table


# ---------------------------------------------------------------- idempotent truncation

class Truncation:
    """``W^A_d ~ xi_omega S^A(n,d) xi_omega`` and ``S^A(n,d) xi_omega ~ V^{(x)d}`` for ``d <= n``."""

    def __init__(self, alg: SuperAlgebra, n: int, d: int):
        if d > n:
            raise ValueError("idempotent truncation needs d <= n")
        self.space = TensorSpace(alg, n, d)
        self.wreath = self.space.wreath
        self.x = self.space.x
        self.pos = {e: k for k, e in enumerate(self.x.info["entries"])}
        self.alg, self.n, self.d = alg, n, d

    def phi(self, w: Mapping[WreathKey, int]) -> dict:
        """Image as a tensor in ``Tens^d M_n(A)``."""
        out: dict = {}
        for (word, g), c in w.items():
            ginv = cb.inverse(g)
            factors = [{(self.pos[(word[a], a, ginv[a])],): 1} for a in range(self.d)]
            add_into(out, shuffle_all(factors, self.x.parity), c)
        return out

    def tensor_product(self, s: Mapping, t: Mapping) -> dict:
        from .superalgebra import tensor_product
        return tensor_product(self.x, s, t)

    @cached_property
    def v_omega(self) -> dict:
        return self.space.v(range(self.d))

    def check_phi(self, pairs: Iterable[tuple[WreathKey, WreathKey]]) -> bool:
        for a, b in pairs:
            lhs = self.tensor_product(self.phi({a: 1}), self.phi({b: 1}))
            if clean(lhs) != clean(self.phi(self.wreath.multiply({a: 1}, {b: 1}))):
                return False
        return True

    def check_characterization(self, basis: Iterable[WreathKey] | None = None) -> bool:
        """``phi(w) v_omega = v_omega w``."""
        for key in basis if basis is not None else self.wreath.basis():
            w = {key: 1}
            if clean(self.space.left_act(self.phi(w), self.v_omega)) != \
                    clean(self.space.right_act(self.v_omega, w)):
                return False
        return True

    def column_basis(self) -> list[tuple[tuple, dict]]:
        """``xi_C`` with column weight ``omega`` (a basis of ``S xi_omega``) as tensors."""
        out = []
        for rows in itertools.product(range(self.n), repeat=self.d):
            for labels in itertools.product(range(self.alg.dim), repeat=self.d):
                factors = [{(self.pos[(labels[a], rows[a], a)],): 1} for a in range(self.d)]
                out.append(((rows, labels), shuffle_all(factors, self.x.parity)))
        return out

    def bimodule_map(self, tensor: Mapping) -> dict:
        return self.space.left_act(tensor, self.v_omega)

    def check_bimodule(self, sample: int | None = None, seed: int = 0) -> dict:
        """Bijectivity over Z and compatibility with both actions."""
        cols = self.column_basis()
        images = [self.bimodule_map(t) for _, t in cols]
        keyset = {w: k for k, w in enumerate(self.space.words)}
        det = signed_permutation_det([{keyset[w]: c for w, c in im.items()} for im in images],
                                     self.space.dim)
        lattice_ok = det is not None or Lattice(images) == Lattice({w: 1} for w in self.space.words)
        rng = random.Random(seed)
        gens = self.wreath.generators()
        tests = [(t, g) for _, t in cols for g in gens]
        if sample is not None and len(tests) > sample:
            tests = rng.sample(tests, sample)
        right_ok = True
        xi_omega = self.phi(self.wreath.unit())
        for t, g in tests:
            lhs = self.bimodule_map(self.tensor_product(t, self.phi(g)))
            rhs = self.space.right_act(self.bimodule_map(t), g)
            if clean(lhs) != clean(rhs):
                right_ok = False
                break
        fixed = all(clean(self.tensor_product(t, xi_omega)) == clean(t) for _, t in cols[:50])
        return {"rank": rank(images), "dim": self.space.dim, "determinant": det,
                "lattice_equal": lattice_ok, "right_compatible": right_ok, "xi_omega_fixes": fixed,
                "omega_to_v_omega": clean(self.bimodule_map(xi_omega)) == clean(self.v_omega)}


# ---------------------------------------------------------------- colored permutation modules

def colors(alg: SuperAlgebra, idempotents: Sequence[Mapping[int, int]]) -> list[int]:
    """For each basis element ``b`` the unique ``i`` with ``e_i b = b``.

    Raises ``ValueError`` unless the ``e_i`` are orthogonal idempotents
    summing to 1 and the basis splits as a union of bases of the ``e_i A``.
    """
    total: dict = {}
    for i, e in enumerate(idempotents):
        add_into(total, e)
        for j, f in enumerate(idempotents):
            prod = alg.multiply(e, f)
            if clean(prod) != (clean(e) if i == j else {}):
                raise ValueError(f"idempotents {i + 1} and {j + 1} are not orthogonal idempotents")
    if clean(total) != clean(alg.unit):
        raise ValueError("idempotents do not sum to 1")
    out = []
    for b in range(alg.dim):
        hits = [i for i, e in enumerate(idempotents) if alg.multiply(e, {b: 1}) == {b: 1}]
        if len(hits) != 1:
            raise ValueError(f"basis element {alg.names[b]} is not in a single e_i A")
        out.append(hits[0])
    return out


def colored_weights(n: int, l: int, d: int) -> list[tuple[int, ...]]:
    """``Lambda([1,n] x I, d)`` as tuples indexed by ``(r, i)`` in lexicographic order."""
    return cb.enumerate_weights(n * l, d)


class ColoredPermutationModule:
    """``M_lam`` induced from the trivial (or alternating) module of ``W_lam``.

    Basis labels are ``(word, g)`` standing for ``m_lam word g`` with
    ``word`` of the right colors and ``g`` a shortest coset representative.
    ``zeta`` (one sign per color) twists ``S_lam`` by ``eps_lam``; it only
    makes sense over the unsigned wreath product.
    """

    def __init__(self, wreath: WreathAlgebra, idempotents: Sequence[Mapping[int, int]],
                 lam: Sequence[int], n: int, zeta: Sequence[int] | None = None):
        self.wreath = wreath
        self.alg = wreath.alg
        self.d = wreath.d
        self.l = len(idempotents)
        self.n = n
        if len(lam) != n * self.l or sum(lam) != self.d:
            raise ValueError("colored weight does not match n, the idempotents and d")
        self.lam = tuple(lam)
        self.idempotents = [dict(e) for e in idempotents]
        self.color_of = colors(self.alg, self.idempotents)
        self.zeta = tuple(zeta) if zeta is not None else None
        self.slot_color = [k % self.l for k, part in enumerate(self.lam) for _ in range(part)]
        self.slot_row = [k // self.l for k, part in enumerate(self.lam) for _ in range(part)]
        self.blocks = cb.blocks(self.lam)

    @cached_property
    def reps(self) -> tuple[cb.Perm, ...]:
        return cb.shortest_coset_reps(self.lam).representatives

    @cached_property
    def basis(self) -> list[tuple[Word, cb.Perm]]:
        per_slot = [[b for b in range(self.alg.dim) if self.color_of[b] == i] for i in self.slot_color]
        return [(w, g) for w in itertools.product(*per_slot) for g in self.reps]

    @cached_property
    def index(self) -> dict:
        return {k: i for i, k in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def expected_dim(self) -> int:
        sizes = [sum(1 for c in self.color_of if c == i) for i in range(self.l)]
        out = len(self.reps)
        for i in range(self.l):
            out *= sizes[i] ** sum(self.lam[k] for k in range(i, len(self.lam), self.l))
        return out

    def _eps(self, k: cb.Perm) -> int:
        if self.zeta is None:
            return 1
        sign = 1
        for idx, blk in enumerate(self.blocks):
            if self.zeta[idx % self.l] == -1:
                inv = sum(1 for a in blk for c in blk if a < c and k[a] > k[c])
                if inv & 1:
                    sign = -sign
        return sign

    def _factor(self, p: cb.Perm) -> tuple[cb.Perm, cb.Perm]:
        """``p = k g`` with ``k`` in the Young subgroup and ``g`` a shortest representative."""
        pinv = cb.inverse(p)
        k = [0] * self.d
        for blk in self.blocks:
            ordered = sorted(blk, key=lambda a: pinv[a])
            for a, b in zip(blk, ordered):
                k[a] = b
        k = tuple(k)
        return k, cb.compose(cb.inverse(k), p)

    def _in_words(self, z: Word) -> bool:
        return all(self.color_of[b] == i for b, i in zip(z, self.slot_color))

    def act(self, vec: Mapping, w: Mapping[WreathKey, int]) -> dict:
        """Right action of a wreath element on ``{(word, g): c}``."""
        par = self.wreath.parity
        out: dict = {}
        for (x, g), c in vec.items():
            ginv = cb.inverse(g)
            for (y, h), k in w.items():
                y2, s = _signed_permute(y, ginv, [par[i] for i in y])
                p = cb.compose(g, h)
                kk, rep = self._factor(p)
                eps = self._eps(kk)
                for z, q in self.wreath.word_product(x, y2).items():
                    if not self._in_words(z):
                        continue
                    z2, s2 = _signed_permute(z, kk, [par[i] for i in z])
                    add_term(out, (z2, rep), c * k * s * q * eps * s2)
        return out

    def generator(self) -> dict:
        """``m_lam`` itself: ``m_lam e_lam``."""
        out = {(): 1}
        for i in self.slot_color:
            out = {w + (b,): c * x for w, c in out.items() for b, x in self.idempotents[i].items()}
        e = cb.identity(self.d)
        return {(w, e): c for w, c in clean(out).items()}

    def basis_element(self, key) -> dict:
        return {key: 1}

    def v_lambda(self, space: TensorSpace) -> dict:
        labels = [self.idempotents[i] for i in self.slot_color]
        return space.v(self.slot_row, labels)


class ModuleFamily:
    """``M(n,d) = (+)_lam M_lam`` over all colored weights, with a global basis."""

    def __init__(self, wreath: WreathAlgebra, idempotents: Sequence[Mapping[int, int]], n: int,
                 zeta: Sequence[int] | None = None):
        self.wreath = wreath
        self.n = n
        self.l = len(idempotents)
        self.weights = colored_weights(n, self.l, wreath.d)
        self.modules = {lam: ColoredPermutationModule(wreath, idempotents, lam, n, zeta)
                        for lam in self.weights}
        self.basis = [(lam, key) for lam in self.weights for key in self.modules[lam].basis]
        self.index = {k: i for i, k in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def act(self, vec: Mapping, w: Mapping) -> dict:
        """Right action on ``{(lam, key): c}``."""
        out: dict = {}
        by_lam: dict = {}
        for (lam, key), c in vec.items():
            by_lam.setdefault(lam, {})[key] = c
        for lam, part in by_lam.items():
            for key, c in self.modules[lam].act(part, w).items():
                add_term(out, (lam, key), c)
        return out

    def is_endomorphism(self, matrix: Mapping, gens: Sequence[Mapping] | None = None) -> bool:
        """Whether ``{(out, in): c}`` (global indices) commutes with the wreath generators."""
        cols: dict = {}
        for (o, i), c in matrix.items():
            cols.setdefault(i, {})[self.basis[o]] = c
        for gen in gens if gens is not None else self.wreath.generators():
            for i, b in enumerate(self.basis):
                lhs: dict = {}
                for u, a in self.act({b: 1}, gen).items():
                    add_into(lhs, cols.get(self.index[u], {}), a)
                rhs = self.act(cols.get(i, {}), gen)
                if clean(lhs) != clean(rhs):
                    return False
        return True


class TensorModuleIso:
    """``Tens^lam V -> M^A_lam``, ``v_lam -> m_lam``, assembled over all colored weights.

    ``forward[word] = (global index, sign)`` identifies tensor-space basis
    words with module basis vectors.
    """

    def __init__(self, alg: SuperAlgebra, n: int, d: int, idempotents: Sequence[Mapping[int, int]]):
        self.space = TensorSpace(alg, n, d)
        self.family = ModuleFamily(self.space.wreath, idempotents, n)
        self.backward: list[tuple[Word, int]] = []
        self.forward: dict = {}
        for g_idx, (lam, (x, g)) in enumerate(self.family.basis):
            mod = self.family.modules[lam]
            w = {(x, g): 1}
            image = clean(self.space.right_act(mod.v_lambda(self.space), w))
            if len(image) != 1:
                raise RuntimeError("module basis vector does not map to a signed basis word")
            (word, c), = image.items()
            if c not in (1, -1) or word in self.forward:
                raise RuntimeError("tensor/module map is not a signed bijection")
            self.forward[word] = (g_idx, c)
            self.backward.append((word, c))
        if len(self.forward) != self.space.dim:
            raise RuntimeError("tensor/module map is not surjective")

    def to_module(self, vec: Mapping[Word, int]) -> dict:
        out: dict = {}
        for word, c in vec.items():
            k, s = self.forward[word]
            add_term(out, self.family.basis[k], c * s)
        return out

    def to_space(self, vec: Mapping) -> dict:
        out: dict = {}
        for key, c in vec.items():
            word, s = self.backward[self.family.index[key]]
            add_term(out, word, c * s)
        return out

    def check_equivariant(self) -> bool:
        for gen in self.space.wreath.generators():
            for word in self.space.words:
                lhs = self.to_module(self.space.right_act({word: 1}, gen))
                rhs = self.family.act(self.to_module({word: 1}), gen)
                if clean(lhs) != clean(rhs):
                    return False
        return True

    def endomorphism(self, tensor: Mapping) -> dict:
        """The transported action of an element of ``Tens^d M_n(A)`` as ``{(out, in): c}``."""
        out: dict = {}
        for i, (word, s) in enumerate(self.backward):
            for key, c in self.to_module(self.space.left_act(tensor, {word: s})).items():
                out[(self.family.index[key], i)] = c
        return out


def decomposition_dimensions(alg: SuperAlgebra, n: int, d: int,
                             idempotents: Sequence[Mapping[int, int]]) -> dict:
    """``dim Tens^lam V`` against the sum of ``dim M_lam`` over colored refinements."""
    wreath = WreathAlgebra(alg, d)
    l = len(idempotents)
    out = {}
    for lam in cb.enumerate_weights(n, d):
        parts = [mu for mu in colored_weights(n, l, d)
                 if tuple(sum(mu[r * l:(r + 1) * l]) for r in range(n)) == lam]
        mods = [ColoredPermutationModule(wreath, idempotents, mu, n) for mu in parts]
        tens = len(cb.shortest_coset_reps(lam).representatives) * alg.dim ** d
        out[lam] = {"tensor": tens, "colored": sum(m.dim for m in mods),
                    "formula": sum(m.expected_dim() for m in mods)}
    return out
