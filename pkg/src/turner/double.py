"""The Turner double of a superalgebra and its divided-power enlargement.

``D^d X`` is spanned by ``xi_c (x) x^D`` with ``xi_c`` an orbit-sum basis
vector of ``Inv^e X`` and ``x^D`` the dual basis vector of ``(Inv^f X)*``,
``e + f = d``.  The divided lattice ``'D^d X`` uses ``x^(D) = x^D / D!``.

Products are computed by transport into ``Inv^d T_X`` along
``xi (x) x  ->  xi * kappa(x)``, which maps the divided basis to signed basis
vectors.  :meth:`TurnerDouble.product_sweedler` evaluates the defining
coproduct formula directly and serves as an independent check.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Mapping, Sequence

from . import combinatorics as cb
from .invariants import (InvariantAlgebra, dual_monomial_sign, invariant_space, orbit_sum,
                         shuffle)
from .linalg import Lattice, determinant
from .superalgebra import (SuperAlgebra, add_into, add_term, clean, tensor_power,
                           trivial_extension)

PLAIN, DIVIDED = "plain", "divided"

Label = tuple[tuple[int, ...], tuple[int, ...]]


def _check_variant(variant: str) -> None:
    if variant not in (PLAIN, DIVIDED):
        raise ValueError(f"variant must be {PLAIN!r} or {DIVIDED!r}")


class TurnerDouble:
    """``D^d X`` and ``'D^d X`` for a superalgebra ``X`` with a basis."""

    def __init__(self, x: SuperAlgebra, d: int):
        if d < 0:
            raise ValueError("d must be non-negative")
        self.x = x
        self.d = d
        self.t = trivial_extension(x)
        self.inv_t = InvariantAlgebra(self.t, d)
        src = self.t.info["source"]
        self._plain_pos = {j: k for k, (j, dual) in enumerate(src) if not dual}
        self._dual_pos = {j: k for k, (j, dual) in enumerate(src) if dual}
        self.labels: list[Label] = [
            (c, f) for e in range(d, -1, -1)
            for c in cb.enumerate_exponents(x.parity, e)
            for f in cb.enumerate_exponents(x.parity, d - e)]
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        self._phi: list[tuple[int, int]] = [self._phi_basis(lab) for lab in self.labels]
        self._phi_inv: dict[int, tuple[int, int]] = {}
        for i, (k, s) in enumerate(self._phi):
            if k in self._phi_inv:
                raise RuntimeError("phi is not injective on basis vectors")
            self._phi_inv[k] = (i, s)
        if len(self._phi_inv) != self.inv_t.dim:
            raise RuntimeError("phi is not surjective on basis vectors")
        self._div_products: dict[tuple[int, int], dict] = {}

    # -- bookkeeping
    @property
    def dim(self) -> int:
        return len(self.labels)

    def bidegree(self, i: int) -> tuple[int, int]:
        c, f = self.labels[i]
        return sum(c), sum(f)

    def basis_parity(self, i: int) -> int:
        c, f = self.labels[i]
        par = self.x.parity
        return (sum(k for j, k in enumerate(c) if par[j]) + sum(k for j, k in enumerate(f) if par[j])) & 1

    def divided_factor(self, i: int) -> int:
        """``D!``: the plain basis vector is this multiple of the divided one."""
        return cb.factorial(self.labels[i][1])

    def describe(self, i: int) -> str:
        c, f = self.labels[i]
        left = "*".join(f"{self.x.names[j]}^{k}" if k > 1 else self.x.names[j]
                        for j, k in enumerate(c) if k) or "1"
        right = "".join(f"x({self.x.names[j]})^{k}" if k > 1 else f"x({self.x.names[j]})"
                        for j, k in enumerate(f) if k) or "1"
        return f"{left} (x) {right}"

    # -- the isomorphism onto Inv^d T_X
    def _phi_tensor(self, lab: Label) -> dict:
        c, f = lab
        par = self.x.parity
        left = {tuple(self._plain_pos[j] for j in w): s for w, s in orbit_sum(c, par).items()}
        right = {tuple(self._dual_pos[j] for j in w): s for w, s in orbit_sum(f, par).items()}
        out = shuffle(left, right, self.t.parity)
        if dual_monomial_sign(f, par) < 0:
            out = {w: -v for w, v in out.items()}
        return out

    def _phi_basis(self, lab: Label) -> tuple[int, int]:
        coords = self.inv_t.coords(self._phi_tensor(lab))
        if len(coords) != 1:
            raise RuntimeError("phi does not send a basis vector to a signed basis vector")
        (k, s), = coords.items()
        return k, s

    def phi(self, vec: Mapping[int, int], variant: str = DIVIDED) -> dict:
        """Coordinates in ``Inv^d T_X`` of an element given in the chosen basis."""
        _check_variant(variant)
        out: dict = {}
        for i, c in vec.items():
            k, s = self._phi[i]
            factor = self.divided_factor(i) if variant == PLAIN else 1
            add_term(out, k, s * c * factor)
        return out

    def phi_inverse(self, coords: Mapping[int, int], variant: str = DIVIDED) -> dict:
        _check_variant(variant)
        out: dict = {}
        for k, c in coords.items():
            i, s = self._phi_inv[k]
            val = s * c
            if variant == PLAIN:
                q, r = divmod(val, self.divided_factor(i))
                if r:
                    raise ArithmeticError("element is not in the plain lattice")
                val = q
            add_term(out, i, val)
        return out

    def phi_matrix(self) -> list[tuple[int, int, int]]:
        """Triples ``(label index, Inv^d T_X index, sign)`` for the divided basis."""
        return [(i, k, s) for i, (k, s) in enumerate(self._phi)]

    def phi_tensor(self, i: int) -> dict:
        """``xi * kappa(x)`` for the divided basis vector ``i`` as a tensor over ``T_X``."""
        return self._phi_tensor(self.labels[i])

    # -- products
    def _product_divided(self, i: int, j: int) -> dict:
        key = (i, j)
        out = self._div_products.get(key)
        if out is None:
            (k1, s1), (k2, s2) = self._phi[i], self._phi[j]
            coords = self.inv_t.product(k1, k2)
            out = self._div_products[key] = self.phi_inverse(
                {k: s1 * s2 * c for k, c in coords.items()})
        return out

    def product(self, i: int, j: int, variant: str = PLAIN) -> dict:
        _check_variant(variant)
        div = self._product_divided(i, j)
        if variant == DIVIDED:
            return div
        scale_ = self.divided_factor(i) * self.divided_factor(j)
        out = {}
        for k, c in div.items():
            q, r = divmod(c * scale_, self.divided_factor(k))
            if r:
                raise ArithmeticError("plain lattice is not closed under the product")
            out[k] = q
        return out

    def multiply(self, a: Mapping[int, int], b: Mapping[int, int], variant: str = PLAIN) -> dict:
        out: dict = {}
        for i, x in a.items():
            for j, y in b.items():
                add_into(out, self.product(i, j, variant), x * y)
        return out

    @cached_property
    def unit(self) -> dict:
        coords = invariant_space(self.x.parity, self.d).coords(tensor_power(self.x.unit, self.d), check=True)
        f0 = tuple([0] * self.x.dim)
        exps = cb.enumerate_exponents(self.x.parity, self.d)
        return {self.index[(exps[k], f0)]: v for k, v in coords.items()}

    def structure_constants(self, variant: str = PLAIN) -> dict[tuple[int, int], dict]:
        return {(i, j): p for i in range(self.dim) for j in range(self.dim)
                if (p := self.product(i, j, variant))}

    # -- the defining coproduct formula
    @cached_property
    def _inv(self) -> dict[int, InvariantAlgebra]:
        return {k: InvariantAlgebra(self.x, k) for k in range(self.d + 1)}

    def dual_product(self, deg1: int, a: int, deg2: int, b: int) -> dict:
        """``x^a x^b`` in ``(Inv X)*``, computed as the dual of the coproduct."""
        big = self._inv[deg1 + deg2]
        out = {}
        for g in range(big.dim):
            comp = big.coproduct_coords(g).get(deg1, {})
            c = comp.get((a, b), 0)
            if c:
                pa = self._inv[deg1].basis_parity(a)
                pb = self._inv[deg2].basis_parity(b)
                out[g] = -c if pa and pb else c
        return out

    def _right_dual(self, deg: int, dual_idx: int, eta: int) -> dict:
        """``x^D . eta`` with ``<x^D . eta, b> = <x^D, eta b>``."""
        inv = self._inv[deg]
        return clean({b: inv.product(eta, b).get(dual_idx, 0) for b in range(inv.dim)})

    def _left_dual(self, deg: int, xi: int, dual_idx: int) -> dict:
        """``xi . x^F`` with ``<b, xi . x^F> = <b xi, x^F>``."""
        inv = self._inv[deg]
        return clean({b: inv.product(b, xi).get(dual_idx, 0) for b in range(inv.dim)})

    def _inv_index(self, c: Sequence[int]) -> tuple[int, int]:
        k = sum(c)
        return k, self._inv[k].index[tuple(c)]

    def product_sweedler(self, i: int, j: int) -> dict:
        """Plain-basis product from the coproduct formula, without passing through ``T_X``."""
        (c1, f1), (c2, f2) = self.labels[i], self.labels[j]
        e1, xi = self._inv_index(c1)
        d1, x_idx = self._inv_index(f1)
        e2, eta = self._inv_index(c2)
        d2, y_idx = self._inv_index(f2)
        inv = self._inv
        p_eta = inv[e2].basis_parity(eta)
        p_x = inv[d1].basis_parity(x_idx)
        out: dict = {}
        xi_cop = inv[e1].coproduct_coords(xi).get(d2, {})
        eta_cop = inv[e2].coproduct_coords(eta).get(e2 - d1, {}) if e2 >= d1 else {}
        mid = e1 - d2
        for (xi1, xi2), a in xi_cop.items():
            p1 = inv[d2].basis_parity(xi1)
            p2 = inv[mid].basis_parity(xi2)
            right = self._left_dual(d2, xi1, y_idx)
            for (eta1, eta2), b in eta_cop.items():
                q1 = inv[mid].basis_parity(eta1)
                sign = (p1 * (p2 + p_eta + p_x) + q1 * p_x) & 1
                coeff = -a * b if sign else a * b
                left_prod = inv[mid].product(xi2, eta1)
                if not left_prod:
                    continue
                left = self._right_dual(d1, x_idx, eta2)
                dual = {}
                for u, cu in left.items():
                    for v, cv in right.items():
                        add_into(dual, self.dual_product(d1, u, d2, v), cu * cv)
                for g, cg in left_prod.items():
                    cexp = inv[mid].exponents[g]
                    for h, ch in dual.items():
                        fexp = inv[d1 + d2].exponents[h]
                        add_term(out, self.index[(cexp, fexp)], coeff * cg * ch)
        return out

    # -- generation
    def to_inv_t(self, vec: Mapping[int, int], variant: str = PLAIN) -> dict:
        return self.phi(vec, variant)

    def lattice(self, variant: str = PLAIN) -> Lattice:
        """The image of ``D^d X`` (or ``'D^d X``) in ``Inv^d T_X`` coordinates."""
        return Lattice(self.phi({i: 1}, variant) for i in range(self.dim))

    def generators(self, reduced: Iterable[int] | None = None) -> list[dict]:
        """Generators in ``Inv^d T_X`` coordinates.

        The invariants of the even part, together with ``1^(d-1) * t`` for
        ``t`` in a basis of ``Y = X_1 + X*``, or in the subset ``reduced`` of
        ``T_X`` indices when given.
        """
        if self.d < 1:
            raise ValueError("d must be positive")
        t = self.t
        out = []
        even = [j for j in range(self.x.dim) if not self.x.parity[j]]
        for c in cb.enumerate_exponents([0] * len(even), self.d):
            full = [0] * self.x.dim
            for j, k in zip(even, c):
                full[j] = k
            out.append(self.phi({self.index[(tuple(full), tuple([0] * self.x.dim))]: 1}, PLAIN))
        ys = sorted(reduced) if reduced is not None else self.y_basis()
        ones = tensor_power(t.unit, self.d - 1)
        for k in ys:
            out.append(self.inv_t.coords(shuffle(ones, {(k,): 1}, t.parity), check=True))
        return out

    def y_basis(self) -> list[int]:
        return [k for k, (j, dual) in enumerate(self.t.info["source"]) if dual or self.x.parity[j]]

    def ad_closure_spans_y(self, subset: Iterable[int]) -> bool:
        """Whether the ``ad(X_0)``-closure of the span of ``subset`` is all of ``Y``."""
        t = self.t
        even_x = [self._plain_pos[j] for j in range(self.x.dim) if not self.x.parity[j]]
        lat = Lattice({k: 1} for k in subset)
        todo = [{k: 1} for k in subset]
        while todo:
            u = todo.pop()
            for x in even_x:
                v = add_into(t.multiply({x: 1}, u), t.multiply(u, {x: 1}), -1)
                if lat.insert(v):
                    todo.append(v)
        return lat == Lattice({k: 1} for k in self.y_basis())

    def generation_check(self, reduced: Iterable[int] | None = None):
        """Closure of :meth:`generators` against the plain lattice.

        Returns ``(equal, closure lattice, certificate words)``.
        """
        gens = self.generators(reduced)
        closure, words = subalgebra_closure(gens, self.inv_t.multiply, self.inv_t.unit)
        return closure == self.lattice(PLAIN), closure, words

    # -- gradings and forms
    def turner_degree(self, i: int) -> int:
        if not self.x.odd_square_zero():
            raise ValueError("the grading needs the odd part of X to square to zero")
        c, f = self.labels[i]
        par = self.x.parity
        return sum(k for j, k in enumerate(c) if par[j]) + \
            sum((1 if par[j] else 2) * k for j, k in enumerate(f))

    def functional(self, vec: Mapping[int, int], variant: str = PLAIN):
        """``F(xi (x) x) = x(1^d)`` on ``D^{0,d}``, zero elsewhere.

        For the divided variant the value on ``1 (x) x^(D)`` is taken to be
        the value on ``1 (x) x^D`` (the form transported basis by basis).
        """
        unit_x = self._inv[self.d].coords(tensor_power(self.x.unit, self.d), check=True)
        total = 0
        for i, c in vec.items():
            cexp, fexp = self.labels[i]
            if sum(cexp) == 0:
                total += c * unit_x.get(self._inv[self.d].index[fexp], 0)
        return total

    def gram_pairing(self) -> list[list[int]]:
        """``(xi (x) x, eta (x) y) = <xi, y><x, eta>`` on the plain basis."""
        n = self.dim
        out = [[0] * n for _ in range(n)]
        for i, (c1, f1) in enumerate(self.labels):
            j = self.index.get((f1, c1))
            if j is not None:
                out[i][j] = 1
        return out

    def gram_functional(self, variant: str = PLAIN) -> list[list[int]]:
        n = self.dim
        return [[self.functional(self.product(i, j, variant), variant) for j in range(n)]
                for i in range(n)]

    def symmetric_form(self) -> dict:
        gram = self.gram_pairing()
        via_f = self.gram_functional(PLAIN)
        n = self.dim
        det = determinant(gram)
        return {
            "gram": gram,
            "matches_functional": gram == via_f,
            "symmetric": all(gram[i][j] == gram[j][i] for i in range(n) for j in range(n)),
            "determinant": det,
        }


def form_is_associative(double: TurnerDouble, triples, variant: str = PLAIN) -> bool:
    """``F((ab)c) = F(a(bc))`` is automatic; this checks ``(ab, c) = (a, bc)`` for the Gram form."""
    for i, j, k in triples:
        ab = double.product(i, j, variant)
        bc = double.product(j, k, variant)
        lhs = double.functional(double.multiply(ab, {k: 1}, variant), variant)
        rhs = double.functional(double.multiply({i: 1}, bc, variant), variant)
        if lhs != rhs:
            return False
    return True


def subalgebra_closure(generators: Sequence[Mapping], multiply, unit: Mapping):
    """Z-span of all products of ``generators`` (and the unit).

    Returns the lattice and a list of generator words whose products span it.
    Vectors are right-multiplied by generators until nothing new appears.
    """
    lat = Lattice()
    words: list[tuple[int, ...]] = []
    queue: list[tuple[tuple[int, ...], dict]] = []
    if lat.insert(unit):
        words.append(())
        queue.append(((), dict(unit)))
    for k, g in enumerate(generators):
        if lat.insert(g):
            words.append((k,))
            queue.append(((k,), dict(g)))
    pos = 0
    while pos < len(queue):
        word, vec = queue[pos]
        pos += 1
        for k, g in enumerate(generators):
            prod = multiply(vec, g)
            if prod and lat.insert(prod):
                words.append(word + (k,))
                queue.append((word + (k,), prod))
    return lat, words


def replay_certificate(generators: Sequence[Mapping], multiply, unit: Mapping,
                       words: Sequence[Sequence[int]]) -> Lattice:
    """Rebuild the lattice spanned by the products named in a certificate."""
    lat = Lattice()
    for word in words:
        vec = dict(unit)
        for k in word:
            vec = multiply(vec, generators[k])
        lat.insert(vec)
    return lat
