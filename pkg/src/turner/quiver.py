"""Quivers, their odd path algebras and zigzag algebras, and desuperization.

Vertices are numbered ``1..l``.  Paths compose like functions: the arrow
``s -> t`` satisfies ``e_t * beta * e_s = beta``, and ``a(i,j)`` is the zigzag
arrow from ``j`` to ``i``.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Mapping, Sequence

from . import combinatorics as cb
from .double import subalgebra_closure
from .linalg import Lattice, determinant, signed_permutation_det
from .schurweyl import ModuleFamily, TensorModuleIso, WreathAlgebra, compose_matrices
from .superalgebra import (SuperAlgebra, add_into, add_term, clean, is_homomorphism,
                           trivial_extension)


@dataclass(frozen=True)
class Quiver:
    vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        l = self.vertices
        if l < 1:
            raise ValueError("a quiver needs at least one vertex")
        seen = set()
        for s, t in self.edges:
            if not (1 <= s <= l and 1 <= t <= l):
                raise ValueError(f"edge {(s, t)} uses an unknown vertex")
            if s == t:
                raise ValueError(f"loop at vertex {s}")
            key = frozenset((s, t))
            if key in seen:
                raise ValueError(f"multiple edges between {s} and {t}")
            seen.add(key)
        reach = {1}
        todo = [1]
        while todo:
            v = todo.pop()
            for w in self.neighbors(v):
                if w not in reach:
                    reach.add(w)
                    todo.append(w)
        if len(reach) != l:
            raise ValueError("underlying graph is not connected")

    @classmethod
    def from_json(cls, data: Mapping) -> "Quiver":
        return cls(int(data["vertices"]), tuple((int(s), int(t)) for s, t in data["edges"]))

    @classmethod
    def load(cls, path: str | Path) -> "Quiver":
        return cls.from_json(json.loads(Path(path).read_text()))

    def to_json(self) -> dict:
        return {"vertices": self.vertices, "edges": [list(e) for e in self.edges]}

    @classmethod
    def type_a(cls, l: int, reverse: bool = False) -> "Quiver":
        edges = tuple((i + 1, i) if reverse else (i, i + 1) for i in range(1, l))
        return cls(l, edges)

    def neighbors(self, v: int) -> list[int]:
        out = [t for s, t in self.edges if s == v] + [s for s, t in self.edges if t == v]
        return sorted(out)

    def signs(self) -> dict[int, int]:
        """Bipartition signs by breadth-first 2-colouring, vertex 1 positive.

        Raises ``ValueError`` when the graph has an odd cycle.
        """
        zeta = {1: 1}
        queue = deque([1])
        while queue:
            v = queue.popleft()
            for w in self.neighbors(v):
                if w not in zeta:
                    zeta[w] = -zeta[v]
                    queue.append(w)
                elif zeta[w] == zeta[v]:
                    raise ValueError(f"graph has an odd cycle through {v} and {w}; "
                                     "desuperization needs a bipartite graph")
        return dict(sorted(zeta.items()))


def path_superalgebra(q: Quiver) -> SuperAlgebra:
    """``P_Q``: vertex idempotents (even, degree 0) and arrows (odd, degree 1), arrows square to zero."""
    l = q.vertices
    names = [f"e{i}" for i in range(1, l + 1)] + [f"b({s},{t})" for s, t in q.edges]
    parity = [0] * l + [1] * len(q.edges)
    table: dict = {}
    for i in range(l):
        table[(i, i)] = {i: 1}
    for k, (s, t) in enumerate(q.edges):
        b = l + k
        table[(t - 1, b)] = {b: 1}
        table[(b, s - 1)] = {b: 1}
    unit = {i: 1 for i in range(l)}
    alg = SuperAlgebra(tuple(names), tuple(parity), table, unit, tuple(parity),
                       f"P(l={l},E={list(q.edges)})", {"quiver": q})
    alg.check()
    return alg


def zigzag_algebra(q: Quiver) -> SuperAlgebra:
    """The zigzag superalgebra of the underlying graph, graded by path length.

    ``info["loop_neighbor"][i]`` records the neighbour ``j`` used to present
    ``c(i) = a(i,j) a(j,i)``; every other neighbour gives the same product.
    """
    l = q.vertices
    arrows = [(i, j) for i in range(1, l + 1) for j in q.neighbors(i)]
    names = [f"e{i}" for i in range(1, l + 1)] + [f"c{i}" for i in range(1, l + 1)] + \
            [f"a({i},{j})" for i, j in arrows]
    degree = [0] * l + [2] * l + [1] * len(arrows)
    parity = [x % 2 for x in degree]
    pos = {nm: k for k, nm in enumerate(names)}
    table: dict = {}

    def put(x, y, z):
        table[(pos[x], pos[y])] = {pos[z]: 1}

    for i in range(1, l + 1):
        put(f"e{i}", f"e{i}", f"e{i}")
        put(f"e{i}", f"c{i}", f"c{i}")
        put(f"c{i}", f"e{i}", f"c{i}")
    for i, j in arrows:
        put(f"e{i}", f"a({i},{j})", f"a({i},{j})")
        put(f"a({i},{j})", f"e{j}", f"a({i},{j})")
        put(f"a({i},{j})", f"a({j},{i})", f"c{i}")
    unit = {i: 1 for i in range(l)}
    loop_neighbor = {i: (q.neighbors(i)[0] if q.neighbors(i) else None) for i in range(1, l + 1)}
    alg = SuperAlgebra(tuple(names), tuple(parity), table, unit, tuple(degree),
                       f"Z(l={l},E={sorted({tuple(sorted(e)) for e in q.edges})})",
                       {"quiver": q, "loop_neighbor": loop_neighbor})
    alg.check()
    return alg


def trivext_zigzag_iso(q: Quiver):
    """The basis bijection ``T_{P_Q} -> Z`` as a list of target indices.

    ``e_i -> e_i``, ``e_i* -> c(i)``, and an arrow ``j -> i`` goes to
    ``a(i,j)`` with its dual going to ``a(j,i)``.  Raises ``RuntimeError``
    unless it is a degree-preserving algebra isomorphism.
    """
    p = path_superalgebra(q)
    t = trivial_extension(p)
    z = zigzag_algebra(q)
    l = q.vertices
    mapping = []
    for j, dual in t.info["source"]:
        if j < l:
            mapping.append(z.index(f"c{j + 1}" if dual else f"e{j + 1}"))
        else:
            s, tt = q.edges[j - l]
            mapping.append(z.index(f"a({s},{tt})" if dual else f"a({tt},{s})"))
    if sorted(mapping) != list(range(z.dim)):
        raise RuntimeError("basis map is not a bijection")
    if any(t.degree[k] != z.degree[mapping[k]] for k in range(t.dim)):
        raise RuntimeError("basis map does not preserve degrees")
    if not is_homomorphism(t, z, lambda k: {mapping[k]: 1}):
        raise RuntimeError("basis map is not multiplicative")
    return t, z, mapping


def build_pq_and_zigzag(q: Quiver):
    t, z, mapping = trivext_zigzag_iso(q)
    return t.info["base"], z, mapping


def vertex_idempotents(z: SuperAlgebra) -> list[int]:
    q: Quiver = z.info["quiver"]
    return [z.index(f"e{i}") for i in range(1, q.vertices + 1)]


def rank_polynomial(alg: SuperAlgebra) -> dict[int, int]:
    return alg.graded_rank()


# ---------------------------------------------------------------- desuperization

def adapted_pair(alg: SuperAlgebra, e0: Mapping[int, int], e1: Mapping[int, int]):
    """Validate ``(e0, e1)``: orthogonal idempotents summing to 1 splitting ``A`` by parity.

    Raises ``ValueError`` naming a witness basis element on failure.
    """
    e0, e1 = clean(e0), clean(e1)
    total = dict(e0)
    add_into(total, e1)
    if clean(total) != clean(alg.unit):
        raise ValueError("e0 + e1 is not the identity")
    for a, b, want in ((e0, e0, e0), (e1, e1, e1), (e0, e1, {}), (e1, e0, {})):
        if clean(alg.multiply(a, b)) != want:
            raise ValueError("e0, e1 are not orthogonal idempotents")
    pair = (e0, e1)
    for b in range(alg.dim):
        for p in (0, 1):
            for q in (0, 1):
                if (p + q) % 2 == alg.parity[b]:
                    continue
                if clean(alg.multiply(alg.multiply(pair[p], {b: 1}), pair[q])):
                    raise ValueError(f"pair is not adapted: e{p} {alg.names[b]} e{q} != 0")
    return e0, e1


def bipartition_pair(q: Quiver, z: SuperAlgebra) -> tuple[dict, dict]:
    zeta = q.signs()
    e0 = {z.index(f"e{i}"): 1 for i, s in zeta.items() if s == 1}
    e1 = {z.index(f"e{i}"): 1 for i, s in zeta.items() if s == -1}
    return adapted_pair(z, e0, e1)


class Desuperization:
    """``sigma: W^{|A|}_d -> |W^A_d|`` for an adapted pair of idempotents."""

    def __init__(self, alg: SuperAlgebra, e0: Mapping[int, int], e1: Mapping[int, int], d: int):
        self.alg = alg
        self.d = d
        self.e = adapted_pair(alg, e0, e1)
        self.plain = WreathAlgebra(alg, d, graded=False)
        self.graded = WreathAlgebra(alg, d, graded=True)

    def sigma_slot(self, x: int, t: int) -> dict:
        """Image of ``x[t]`` (slot ``t`` 0-based) for a basis element ``x``."""
        par = self.alg.parity[x]
        out: dict = {}
        for eps in itertools.product((0, 1), repeat=t):
            sign = -1 if (sum(eps) * par) & 1 else 1
            vec = {(): sign}
            for k in range(self.d):
                if k < t:
                    f = self.e[eps[k]]
                elif k == t:
                    f = {x: 1}
                else:
                    f = self.alg.unit
                vec = {w + (i,): c * v for w, c in vec.items() for i, v in f.items()}
            add_into(out, vec)
        e = cb.identity(self.d)
        return {(w, e): c for w, c in clean(out).items()}

    def sigma_tau(self, r: int) -> dict:
        mid: dict = {}
        for p in (0, 1):
            for q in (0, 1):
                vec = {(): -1 if p and q else 1}
                for k in range(self.d):
                    f = self.e[p] if k == r else self.e[q] if k == r + 1 else self.alg.unit
                    vec = {w + (i,): c * v for w, c in vec.items() for i, v in f.items()}
                add_into(mid, vec)
        e = cb.identity(self.d)
        return self.graded.multiply(self.graded.tau(r), {(w, e): c for w, c in clean(mid).items()})

    def sigma_perm(self, g: cb.Perm) -> dict:
        out = self.graded.unit()
        for r in cb.reduced_word(g):
            out = self.graded.multiply(out, self.sigma_tau(r))
        return out

    def sigma_basis(self, key) -> dict:
        word, g = key
        out = self.graded.unit()
        for t, x in enumerate(word):
            out = self.graded.multiply(out, self.sigma_slot(x, t))
        return self.graded.multiply(out, self.sigma_perm(g))

    def sigma(self, w: Mapping) -> dict:
        out: dict = {}
        for key, c in w.items():
            add_into(out, self.sigma_basis(key), c)
        return clean(out)

    @cached_property
    def _blocks(self) -> dict:
        """Per permutation: the images of the words of ``A^{(x)d} g``."""
        out = {}
        for g in self.plain.perms:
            out[g] = {w: self.sigma_basis((w, g)) for w in itertools.product(range(self.alg.dim), repeat=self.d)}
        return out

    def block_determinants(self) -> dict:
        """Determinant of ``sigma`` on each ``A^{(x)d} g``, which must be a unit."""
        words = list(itertools.product(range(self.alg.dim), repeat=self.d))
        pos = {w: k for k, w in enumerate(words)}
        out = {}
        for g, images in self._blocks.items():
            cols = []
            for w in words:
                if any(h != g for (_, h) in images[w]):
                    out[g] = 0
                    break
                cols.append({pos[u]: c for (u, _), c in images[w].items()})
            else:
                det = signed_permutation_det(cols, len(words))
                if det is None:
                    det = determinant([[c.get(k, 0) for c in cols] for k in range(len(words))])
                out[g] = det
        return out

    @cached_property
    def _inverse(self) -> dict:
        out = {}
        for g, images in self._blocks.items():
            for w, img in images.items():
                if len(img) != 1:
                    raise RuntimeError("sigma is not a signed permutation on this block")
                (key, c), = img.items()
                out[key] = ((w, g), c)
        return out

    def sigma_inverse(self, w: Mapping) -> dict:
        out: dict = {}
        for key, c in w.items():
            src, s = self._inverse[key]
            add_term(out, src, c * s)
        return out

    def check_relations(self) -> dict[str, bool]:
        """Wreath relations pushed through ``sigma``."""
        G, d, m = self.graded, self.d, self.alg.dim
        mul = G.multiply
        slot = {(x, t): self.sigma_slot(x, t) for x in range(m) for t in range(d)}
        tau = {r: self.sigma_tau(r) for r in range(d - 1)}
        unit = G.unit()

        def img(vec, t):
            out: dict = {}
            for x, c in vec.items():
                add_into(out, slot[(x, t)], c)
            return clean(out)

        res = {}
        res["same_slot"] = all(
            clean(mul(slot[(x, t)], slot[(y, t)])) == img(self.alg.mul_basis(x, y), t)
            for x in range(m) for y in range(m) for t in range(d))
        res["commuting_slots"] = all(
            clean(mul(slot[(x, b)], slot[(y, c)])) == clean(mul(slot[(y, c)], slot[(x, b)]))
            for x in range(m) for y in range(m) for b in range(d) for c in range(d) if b != c)
        res["unit"] = all(img(self.alg.unit, t) == clean(unit) for t in range(d))
        res["involution"] = all(clean(mul(tau[r], tau[r])) == clean(unit) for r in tau)
        res["braid"] = all(
            clean(mul(mul(tau[r], tau[r + 1]), tau[r])) == clean(mul(mul(tau[r + 1], tau[r]), tau[r + 1]))
            for r in range(d - 2))
        res["far_commute"] = all(
            clean(mul(tau[r], tau[s])) == clean(mul(tau[s], tau[r]))
            for r in tau for s in tau if abs(r - s) > 1)
        res["perm_slot"] = all(
            clean(mul(tau[r], slot[(x, c)])) ==
            clean(mul(slot[(x, cb.transposition(d, r)[c])], tau[r]))
            for r in tau for x in range(m) for c in range(d))
        res["first_slot_fixed"] = all(clean(slot[(x, 0)]) == clean(G.slot({x: 1}, 0)) for x in range(m))
        return res

    def check_multiplicative(self, pairs) -> bool:
        for a, b in pairs:
            if clean(self.sigma(self.plain.multiply({a: 1}, {b: 1}))) != \
                    clean(self.graded.multiply(self.sigma({a: 1}), self.sigma({b: 1}))):
                return False
        return True


class SchiverModel:
    """Desuperized endomorphism model of ``|S^A(n,d)|`` for an adapted refinement.

    ``idempotents`` are the ``e_i`` and ``zeta`` their signs; ``e^0`` and
    ``e^1`` are the sums of the positive and negative ones.
    """

    def __init__(self, alg: SuperAlgebra, n: int, d: int, idempotents: Sequence[Mapping[int, int]],
                 zeta: Sequence[int]):
        self.alg, self.n, self.d = alg, n, d
        self.idempotents = [dict(e) for e in idempotents]
        self.zeta = tuple(zeta)
        e0: dict = {}
        e1: dict = {}
        for e, s in zip(self.idempotents, self.zeta):
            add_into(e0 if s == 1 else e1, e)
        self.desup = Desuperization(alg, e0, e1, d)
        self.iso = TensorModuleIso(alg, n, d, idempotents)
        self.graded_family = self.iso.family
        self.family = ModuleFamily(self.desup.plain, idempotents, n, zeta)
        self._f: list[tuple[int, int]] = []
        seen = set()
        for lam, key in self.family.basis:
            mod = self.graded_family.modules[lam]
            image = clean(mod.act(mod.generator(), self.desup.sigma({key: 1})))
            if len(image) != 1:
                raise RuntimeError("alternating module basis does not map to a signed basis vector")
            (k2, c), = image.items()
            j = self.graded_family.index[(lam, k2)]
            if c not in (1, -1) or j in seen:
                raise RuntimeError("alternating module map is not a signed bijection")
            seen.add(j)
            self._f.append((j, c))
        self._f_inv = {j: (i, c) for i, (j, c) in enumerate(self._f)}

    @property
    def dim(self) -> int:
        return self.family.dim

    def f(self, vec: Mapping) -> dict:
        """``M^{|A|} -> |M^A|^sigma`` on ``{(lam, key): c}``."""
        out: dict = {}
        for key, c in vec.items():
            j, s = self._f[self.family.index[key]]
            add_term(out, self.graded_family.basis[j], c * s)
        return out

    def f_inverse(self, vec: Mapping) -> dict:
        out: dict = {}
        for key, c in vec.items():
            i, s = self._f_inv[self.graded_family.index[key]]
            add_term(out, self.family.basis[i], c * s)
        return out

    def check_module_iso(self) -> bool:
        """``f(m h) = f(m) sigma(h)`` for every basis ``m`` and wreath generator ``h``."""
        for h in self.desup.plain.generators():
            sh = self.desup.sigma(h)
            for key in self.family.basis:
                lhs = self.f(self.family.act({key: 1}, h))
                rhs = self.graded_family.act(self.f({key: 1}), sh)
                if clean(lhs) != clean(rhs):
                    return False
        return True

    def psi(self, tensor: Mapping) -> dict:
        """``psi(y)`` for ``y`` given as a tensor in ``Tens^d M_n(A)``, as ``{(out, in): c}``."""
        out: dict = {}
        index = self.family.index
        for i, key in enumerate(self.family.basis):
            vec = self.iso.to_space(self.f({key: 1}))
            image = self.f_inverse(self.iso.to_module(self.iso.space.left_act(tensor, vec)))
            for k2, c in image.items():
                out[(index[k2], i)] = c
        return out

    def psi_from_generators(self, tensor: Mapping) -> dict:
        """``psi(y)(m_lam) = sum_mu m_mu sigma^{-1}(h_{mu,lam})`` on the generators ``m_lam``."""
        out = {}
        for lam, mod in self.family.modules.items():
            gmod = self.graded_family.modules[lam]
            v_lam = gmod.v_lambda(self.iso.space)
            image = self.iso.to_module(self.iso.space.left_act(tensor, v_lam))
            acc: dict = {}
            for (mu, (x, g)), c in image.items():
                h = self.desup.sigma_inverse({(x, g): c})
                add_into(acc, self.family.act({(mu, k): v for k, v in self.family.modules[mu].generator().items()}, h))
            out[lam] = clean(acc)
        return out

    def apply(self, matrix: Mapping, vec: Mapping) -> dict:
        cols: dict = {}
        for (o, i), c in matrix.items():
            cols.setdefault(i, []).append((o, c))
        out: dict = {}
        for key, c in vec.items():
            for o, k in cols.get(self.family.index[key], ()):
                add_term(out, self.family.basis[o], c * k)
        return out

    def degree_of(self, idx: int) -> int:
        lam, (word, _) = self.family.basis[idx]
        return sum(self.alg.degree[b] for b in word)

    def hat(self, lam: Sequence[int], k: int) -> tuple[int, ...]:
        l = len(self.idempotents)
        return tuple(1 if i == k else 0 for i in range(l)) + tuple(lam)

    def i_lambda(self, lam: Sequence[int], z: Mapping[int, int]) -> dict:
        """``i^lam(z)``: summed over the idempotent components ``e_j z e_k``."""
        out: dict = {}
        for j, ej in enumerate(self.idempotents):
            for k, ek in enumerate(self.idempotents):
                part = clean(self.alg.multiply(self.alg.multiply(ej, z), ek))
                if part:
                    add_into(out, self._i_component(lam, j, k, part))
        return clean(out)

    def _i_component(self, lam, j, k, z) -> dict:
        src, dst = self.hat(lam, k), self.hat(lam, j)
        if src not in self.family.modules or dst not in self.family.modules:
            raise ValueError("colored weight out of range")
        wreath = self.desup.plain
        dst_mod = self.family.modules[dst]
        start = dst_mod.act(dst_mod.generator(), wreath.slot(z, 0))
        start = {(dst, key): c for key, c in start.items()}
        out = {}
        index = self.family.index
        for key in self.family.modules[src].basis:
            for k2, c in self.family.act(start, {key: 1}).items():
                out[(index[k2], index[(src, key)])] = c
        return out

    def lambdas(self) -> list[tuple[int, ...]]:
        return cb.enumerate_weights((self.n - 1) * len(self.idempotents), self.d - 1)


def relabel_schur(src, dst, mapping: Sequence[int]) -> list[tuple[int, int]]:
    """Signed basis map ``S^A(n,d) -> S^B(n,d)`` induced by a basis bijection ``A -> B``."""
    pos_dst = {e: k for k, e in enumerate(dst.entries)}
    m = [pos_dst[(mapping[b], r, s)] for b, r, s in src.entries]
    out = []
    for k in range(src.dim):
        image = dst.coords({tuple(m[i] for i in w): c for w, c in src.inv.expand(k).items()})
        if len(image) != 1:
            raise RuntimeError("relabelled vector is not a signed basis vector")
        out.append(next(iter(image.items())))
    return out


def apply_signed(vec: Mapping[int, int], table: Sequence[tuple[int, int]]) -> dict:
    out: dict = {}
    for k, c in vec.items():
        kk, s = table[k]
        add_term(out, kk, c * s)
    return out


class SchiverDouble:
    """``D_Q(n,d)`` inside ``S^Z(n,d)`` together with its desuperized model."""

    def __init__(self, q: Quiver, n: int, d: int):
        from .schur import SchurAlgebra, SchurDouble

        self.q, self.n, self.d = q, n, d
        t, z, mapping = trivext_zigzag_iso(q)
        self.z = z
        self.pq = t.info["base"]
        self.double = SchurDouble(self.pq, n, d)
        self.sz = SchurAlgebra(z, n, d)
        self._relabel = relabel_schur(self.double.big, self.sz, mapping)

    def to_sz(self, vec: Mapping[int, int], variant: str = "plain") -> dict:
        return apply_signed(self.double.to_schur(vec, variant), self._relabel)

    def lattice(self) -> Lattice:
        return Lattice(self.to_sz({i: 1}) for i in range(self.double.dim))

    @cached_property
    def model(self) -> SchiverModel:
        zeta = self.q.signs()
        idem = [{self.z.index(f"e{i}"): 1} for i in range(1, self.q.vertices + 1)]
        return SchiverModel(self.z, self.n, self.d, idem, [zeta[i] for i in range(1, self.q.vertices + 1)])

    def degree_zero(self) -> list[int]:
        deg0 = {k for k, (b, _, _) in enumerate(self.sz.entries) if self.z.degree[b] == 0}
        return [i for i, c in enumerate(self.sz.exponents) if all(k in deg0 for k, v in enumerate(c) if v)]

    def superized_generators(self) -> list[dict]:
        """Degree-zero basis and ``xi^z_11 * E_22^lam_2 * ... * E_nn^lam_n``."""
        if self.n < self.d:
            raise ValueError("needs n >= d")
        gens = [{i: 1} for i in self.degree_zero()]
        for lam in cb.enumerate_weights(self.n - 1, self.d - 1):
            gens += [self.sz.diagonal_unit(y, lam) for y in range(self.z.dim)]
        return gens

    def superized_check(self):
        closure, words = subalgebra_closure(self.superized_generators(), self.sz.multiply, self.sz.unit)
        return closure == self.lattice(), words

    def psi(self, vec: Mapping[int, int]) -> dict:
        out: dict = {}
        for i, c in vec.items():
            add_into(out, self._psi_basis(i), c)
        return clean(out)

    @cached_property
    def _psi_cache(self) -> dict:
        return {}

    def _psi_basis(self, i: int) -> dict:
        m = self._psi_cache.get(i)
        if m is None:
            m = self._psi_cache[i] = self.model.psi(self.sz.inv.expand(i))
        return m

    def desuperized_generators(self) -> list[dict]:
        model = self.model
        gens = [self._psi_basis(i) for i in self.degree_zero()]
        for lam in model.lambdas():
            gens += [model.i_lambda(lam, {y: 1}) for y in range(self.z.dim)]
        return gens

    def desuperized_check(self):
        """Closure in ``End(M^{|Z|}(n,d))`` against ``psi(D_Q(n,d))``.

        Returns ``(equal, certificate words, missing double basis index)``.
        """
        if self.n < self.d:
            raise ValueError("needs n >= d")
        gens = self.desuperized_generators()
        unit = {(k, k): 1 for k in range(self.model.dim)}
        closure, words = subalgebra_closure(gens, compose_matrices, unit)
        target = [self.psi(self.to_sz({i: 1})) for i in range(self.double.dim)]
        if closure == Lattice(target):
            return True, words, None
        missing = next((i for i, t in enumerate(target) if not closure.contains(t)), None)
        return False, words, missing

    def generator_identity(self) -> bool:
        """``psi(xi^z_11 * E_22^lam ...)`` equals the sum of ``i^mu(z)`` over refinements ``mu`` of ``lam``."""
        model = self.model
        l = self.q.vertices
        for lam in cb.enumerate_weights(self.n - 1, self.d - 1):
            refinements = [mu for mu in model.lambdas()
                           if tuple(sum(mu[r * l:(r + 1) * l]) for r in range(self.n - 1)) == lam]
            for y in range(self.z.dim):
                lhs = self.psi(self.sz.diagonal_unit(y, lam))
                rhs: dict = {}
                for mu in refinements:
                    add_into(rhs, model.i_lambda(mu, {y: 1}))
                if lhs != clean(rhs):
                    return False
        return True


def orientation_independent(l: int, n: int, d: int) -> bool:
    """``D_Q(n,d)`` in ``S^Z(n,d)`` is the same lattice for both orientations of ``A_l``."""
    a = SchiverDouble(Quiver.type_a(l), n, d)
    b = SchiverDouble(Quiver.type_a(l, reverse=True), n, d)
    if a.z.names != b.z.names:
        return False
    return a.lattice() == b.lattice()
