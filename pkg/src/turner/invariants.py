"""Shuffle product, invariant tensors and their orbit-sum bases.

Every basis vector of ``Inv^d V`` is an orbit sum with coefficient ``+1`` on
its sorted word, so coordinates of an invariant tensor are read off from
sorted words alone.
"""

from __future__ import annotations

from functools import cached_property
from typing import Mapping, Sequence

from . import combinatorics as cb
from .superalgebra import (SuperAlgebra, add_into, add_term, clean, perm_bracket,
                           place_permute, tensor_product)


# ---------------------------------------------------------------- shuffle and orbit sums

def shuffle(x: Mapping[tuple, int], y: Mapping[tuple, int], parity: Sequence[int]) -> dict:
    """``x * y``: signed sum of ``(u (x) w)^g`` over the ``(d, e)`` shuffles ``g``."""
    out: dict = {}
    for u, a in x.items():
        for w, b in y.items():
            word = u + w
            par = [parity[i] for i in word]
            for g in cb.shuffle_perms(len(u), len(w)):
                coeff = a * b
                if perm_bracket(g, par):
                    coeff = -coeff
                add_term(out, cb.act(word, g), coeff)
    return out


def shuffle_all(factors: Sequence[Mapping[tuple, int]], parity: Sequence[int]) -> dict:
    out: dict = {(): 1}
    for f in factors:
        out = shuffle(out, f, parity)
    return out


def orbit_sum(c: Sequence[int], parity: Sequence[int]) -> dict:
    """The basis vector ``x_1^{(x)c_1} * x_2^{(x)c_2} * ...`` of ``Inv^d V``."""
    if any(parity[i] and k > 1 for i, k in enumerate(c)):
        raise ValueError("odd exponents must be 0 or 1")
    base = cb.exponent_word(c)
    par = [parity[i] for i in base]
    out = {}
    for target in cb.distinct_rearrangements(base):
        g = cb.perm_to_sequence(base, target)
        out[target] = -1 if perm_bracket(g, par) else 1
    return out


def is_sorted(word: Sequence[int]) -> bool:
    return all(word[a] <= word[a + 1] for a in range(len(word) - 1))


def is_invariant(tensor: Mapping[tuple, int], parity: Sequence[int]) -> bool:
    """Invariance under all place permutations, tested on adjacent transpositions."""
    if not tensor:
        return True
    d = len(next(iter(tensor)))
    return all(place_permute(tensor, cb.transposition(d, r), parity) == clean(tensor)
               for r in range(d - 1))


def deconcatenate(tensor: Mapping[tuple, int]) -> dict[int, dict]:
    """Components of the deconcatenation coproduct, keyed by the left degree."""
    out: dict[int, dict] = {}
    for word, coeff in tensor.items():
        for e in range(len(word) + 1):
            add_term(out.setdefault(e, {}), (word[:e], word[e:]), coeff)
    return {e: comp for e, comp in out.items() if comp}


coproduct = deconcatenate


def flip(pairs: Mapping[tuple, int], parity: Sequence[int]) -> dict:
    """The signed swap ``a (x) b -> (-1)^{|a||b|} b (x) a`` on pairs of words."""
    out: dict = {}
    for (u, w), c in pairs.items():
        pu = sum(parity[i] for i in u) & 1
        pw = sum(parity[i] for i in w) & 1
        add_term(out, (w, u), -c if pu and pw else c)
    return out


# ---------------------------------------------------------------- (divided) symmetric powers

def reorder_sign(c: Sequence[int], e: Sequence[int], parity: Sequence[int]) -> int:
    """Sign of rewriting ``x^c x^e`` with all variables in basis order."""
    total, seen = 0, 0
    for i in range(len(c) - 1, -1, -1):
        if parity[i]:
            total += e[i] * seen
            seen += c[i]
    return -1 if total & 1 else 1


def sym_product(c: Sequence[int], e: Sequence[int], parity: Sequence[int]):
    """``x^c x^e`` in the symmetric superalgebra as ``(coeff, exponent)``."""
    total = tuple(a + b for a, b in zip(c, e))
    if any(parity[i] and k > 1 for i, k in enumerate(total)):
        return 0, total
    return reorder_sign(c, e, parity), total


def divided_product(c: Sequence[int], e: Sequence[int], parity: Sequence[int]):
    """``x^(c) x^(e)`` in the divided power superalgebra."""
    sign, total = sym_product(c, e, parity)
    return sign * cb.binomial(total, e), total


def kappa(divided: Mapping[tuple, int], parity: Sequence[int]) -> dict:
    """Image of a divided-power polynomial ``{exponent: coeff}`` in ``Inv V``."""
    out: dict = {}
    for c, coeff in divided.items():
        add_into(out, orbit_sum(c, parity), coeff)
    return out


def kappa_of_monomial(c: Sequence[int], parity: Sequence[int]) -> dict:
    """``kappa(x^c) = c! * orbit_sum(c)``, landing in the span of the ``v*...*v``."""
    return kappa({tuple(c): cb.factorial(c)}, parity)


def dual_monomial_sign(c: Sequence[int], parity: Sequence[int]) -> int:
    """``<xi_sorted_word(c), orbit_sum(c)>``: the sign relating monomial and dual bases."""
    k = sum(c[i] for i in range(len(c)) if parity[i])
    return -1 if (k * (k - 1) // 2) & 1 else 1


# ---------------------------------------------------------------- bases

class InvariantSpace:
    """``Inv^d V`` for a superspace ``V`` with ordered homogeneous basis."""

    def __init__(self, parity: Sequence[int], d: int):
        self.parity = tuple(parity)
        self.d = d
        self.exponents = cb.enumerate_exponents(self.parity, d)
        self.index = {c: i for i, c in enumerate(self.exponents)}
        self.words = [cb.exponent_word(c) for c in self.exponents]
        self.word_index = {w: i for i, w in enumerate(self.words)}
        self._expansions: dict[int, dict] = {}

    @property
    def dim(self) -> int:
        return len(self.exponents)

    def basis_parity(self, i: int) -> int:
        c = self.exponents[i]
        return sum(k for j, k in enumerate(c) if self.parity[j]) & 1

    def expand(self, i: int) -> dict:
        vec = self._expansions.get(i)
        if vec is None:
            vec = self._expansions[i] = orbit_sum(self.exponents[i], self.parity)
        return vec

    def expand_vector(self, coords: Mapping[int, int]) -> dict:
        out: dict = {}
        for i, c in coords.items():
            add_into(out, self.expand(i), c)
        return out

    def coords(self, tensor: Mapping[tuple, int], check: bool = False) -> dict:
        out = {}
        for word, c in tensor.items():
            i = self.word_index.get(word)
            if i is not None and c:
                out[i] = c
        if check and self.expand_vector(out) != clean(tensor):
            raise ValueError("tensor is not invariant")
        return out

    def coproduct_coords(self, i: int) -> dict[int, dict]:
        """``Delta`` of a basis vector in orbit-sum coordinates ``{e: {(j1, j2): c}}``."""
        spaces = {e: invariant_space(self.parity, e) for e in range(self.d + 1)}
        out: dict[int, dict] = {}
        for e, comp in deconcatenate(self.expand(i)).items():
            left, right = spaces[e], spaces[self.d - e]
            for (u, w), c in comp.items():
                j1, j2 = left.word_index.get(u), right.word_index.get(w)
                if j1 is not None and j2 is not None:
                    out.setdefault(e, {})[(j1, j2)] = c
        return out


_SPACES: dict = {}


def invariant_space(parity: Sequence[int], d: int) -> InvariantSpace:
    key = (tuple(parity), d)
    sp = _SPACES.get(key)
    if sp is None:
        sp = _SPACES[key] = InvariantSpace(parity, d)
    return sp


class InvariantAlgebra(InvariantSpace):
    """``Inv^d A`` as a subalgebra of ``Tens^d A`` (slotwise product)."""

    def __init__(self, alg: SuperAlgebra, d: int):
        super().__init__(alg.parity, d)
        self.alg = alg
        self._products: dict[tuple[int, int], dict] = {}

    def product(self, i: int, j: int) -> dict:
        key = (i, j)
        vec = self._products.get(key)
        if vec is None:
            vec = self._products[key] = self.coords(
                tensor_product(self.alg, self.expand(i), self.expand(j)))
        return vec

    def multiply(self, x: Mapping[int, int], y: Mapping[int, int]) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                add_into(out, self.product(i, j), a * b)
        return out

    def structure_constants(self) -> dict[tuple[int, int], dict]:
        return {(i, j): p for i in range(self.dim) for j in range(self.dim)
                if (p := self.product(i, j))}

    @cached_property
    def unit(self) -> dict:
        from .superalgebra import tensor_power
        return self.coords(tensor_power(self.alg.unit, self.d), check=True)

    def degree_of(self, i: int) -> int:
        if self.alg.degree is None:
            raise ValueError("algebra is not graded")
        return sum(k * self.alg.degree[j] for j, k in enumerate(self.exponents[i]))


# ---------------------------------------------------------------- direct sums

def invariants_of_direct_sum(parity: Sequence[int], part_u: Sequence[int], d: int):
    """Decompose ``Inv^d (U + W)`` along a basis partition ``U`` / ``W``.

    ``part_u`` lists the basis indices spanning ``U``; the rest span ``W``.
    Returns ``{(e, cu, cw): (k, sign)}``: the product ``s * t`` of the basis
    vectors ``cu`` of ``Inv^e U`` and ``cw`` of ``Inv^{d-e} W`` equals
    ``sign`` times basis vector ``k`` of ``Inv^d V``.
    """
    u_idx = list(part_u)
    w_idx = [i for i in range(len(parity)) if i not in set(u_idx)]
    u_par = [parity[i] for i in u_idx]
    w_par = [parity[i] for i in w_idx]
    big = invariant_space(parity, d)
    out = {}
    for e in range(d + 1):
        su, sw = invariant_space(u_par, e), invariant_space(w_par, d - e)
        for cu_i, cu in enumerate(su.exponents):
            s = {tuple(u_idx[x] for x in word): c for word, c in su.expand(cu_i).items()}
            for cw_i, cw in enumerate(sw.exponents):
                t = {tuple(w_idx[x] for x in word): c for word, c in sw.expand(cw_i).items()}
                coords = big.coords(shuffle(s, t, parity))
                if len(coords) != 1:
                    raise RuntimeError("star product of basis vectors is not a signed basis vector")
                (k, sign), = coords.items()
                out[(e, cu, cw)] = (k, sign)
    return out
