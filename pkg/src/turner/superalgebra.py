"""Superalgebras given by structure constants, and the Koszul sign engine.

Basis elements are addressed by integer index; vectors are sparse dicts
``index -> coefficient`` with zeros dropped.  Words (elements of tensor
powers) are tuples of indices and tensors are dicts ``word -> coefficient``.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .combinatorics import Perm, act, inverse

PRESENTATION_VERSION = 1

Vec = dict


# ---------------------------------------------------------------- sparse vectors

def add_into(acc: dict, vec: Mapping, coeff=1) -> dict:
    """``acc += coeff * vec`` in place, dropping zeros."""
    if not coeff:
        return acc
    for key, val in vec.items():
        new = acc.get(key, 0) + coeff * val
        if new:
            acc[key] = new
        else:
            acc.pop(key, None)
    return acc


def add_term(acc: dict, key, coeff) -> None:
    new = acc.get(key, 0) + coeff
    if new:
        acc[key] = new
    else:
        acc.pop(key, None)


def scale(vec: Mapping, coeff) -> dict:
    if not coeff:
        return {}
    return {k: coeff * v for k, v in vec.items()}


def clean(vec: Mapping) -> dict:
    return {k: v for k, v in vec.items() if v}


def linear_combination(terms: Iterable[tuple[object, Mapping]]) -> dict:
    acc: dict = {}
    for coeff, vec in terms:
        add_into(acc, vec, coeff)
    return acc


def reduce_mod(vec: Mapping, p: int) -> dict:
    return {k: v % p for k, v in vec.items() if v % p}


def parse_ring(text: str) -> int | None:
    """``"Z"`` and ``"Q"`` give ``None``; ``"F_p"`` / ``"Fp"`` / ``"p"`` give ``p``."""
    t = text.strip().upper()
    if t in ("Z", "Q"):
        return None
    t = t.removeprefix("F_").removeprefix("F")
    p = int(t)
    if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    return p


def to_ring(value, ring: str):
    """Coerce an integer or rational into the scalar ring named by ``ring``."""
    p = parse_ring(ring)
    if p is None:
        if ring.strip().upper() == "Z" and Fraction(value).denominator != 1:
            raise ValueError(f"{value} is not an integer")
        return Fraction(value) if ring.strip().upper() == "Q" else int(value)
    v = Fraction(value)
    return (v.numerator * pow(v.denominator, -1, p)) % p


# ---------------------------------------------------------------- sign rules

def bracket(xp: Sequence[int], yp: Sequence[int]) -> int:
    """Exponent ``sum_{a<c} xp[c]*yp[a]`` (mod 2) of the Koszul sign.

    This is the sign picked up when the ``y``-factors are moved past the
    later ``x``-factors, e.g. in ``(x_1 (x) x_2)(y_1 (x) y_2)``.
    """
    total = running = 0
    for x, y in zip(xp, yp):
        total += x * running
        running += y
    return total & 1


def koszul_sign(xp: Sequence[int], yp: Sequence[int]) -> int:
    return -1 if bracket(xp, yp) else 1


def perm_bracket(g: Perm, par: Sequence[int]) -> int:
    """Exponent of the sign of the place permutation ``g`` on a word with parities ``par``.

    Counts pairs of odd slots ``a < c`` whose relative order ``g`` reverses.
    """
    ginv = inverse(g)
    total = 0
    d = len(g)
    for a in range(d):
        if par[a]:
            for c in range(a + 1, d):
                if par[c] and ginv[a] > ginv[c]:
                    total += 1
    return total & 1


def place_permute(tensor: Mapping[tuple, int], g: Perm, parity: Sequence[int]) -> dict:
    """Right place action ``(v_1..v_d)^g = +-v_{g1}..v_{gd}`` on a tensor."""
    out: dict = {}
    for word, coeff in tensor.items():
        sign = perm_bracket(g, [parity[x] for x in word])
        add_term(out, act(word, g), -coeff if sign else coeff)
    return out


def pairing(beta: Mapping[tuple, int], vec: Mapping[tuple, int], parity: Sequence[int]):
    """``<beta, v>`` for a dual tensor (words over dual indices) and a tensor."""
    total = 0
    for word, coeff in beta.items():
        other = vec.get(word)
        if other:
            par = [parity[x] for x in word]
            total += (-1 if bracket(par, par) else 1) * coeff * other
    return total


# ---------------------------------------------------------------- presentations

@dataclass(frozen=True, eq=False)
class SuperAlgebra:
    """A finite rank superalgebra with a homogeneous basis.

    ``table[(i, j)]`` is the product of basis elements ``i`` and ``j`` as a
    sparse vector; missing pairs multiply to zero.
    """

    names: tuple[str, ...]
    parity: tuple[int, ...]
    table: Mapping[tuple[int, int], Mapping[int, int]]
    unit: Mapping[int, int]
    degree: tuple[int, ...] | None = None
    title: str = ""
    info: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError("basis labels must be distinct")
        if len(self.parity) != len(self.names):
            raise ValueError("one parity per label")
        if any(p not in (0, 1) for p in self.parity):
            raise ValueError("parities must be 0 or 1")
        if list(self.parity) != sorted(self.parity):
            raise ValueError("even labels must precede odd labels")
        if self.degree is not None and len(self.degree) != len(self.names):
            raise ValueError("one degree per label")
        object.__setattr__(self, "_index", {nm: i for i, nm in enumerate(self.names)})

    # -- basics
    @property
    def dim(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"{name!r} is not a basis label of {self.title or 'the algebra'}") from None

    def vector(self, coeffs: Mapping[str, int]) -> dict:
        return clean({self.index(k): v for k, v in coeffs.items()})

    def named(self, vec: Mapping[int, int]) -> dict:
        return {self.names[i]: c for i, c in sorted(vec.items())}

    def element(self, coeffs: Mapping[str, int] | str) -> "Element":
        if isinstance(coeffs, str):
            coeffs = {coeffs: 1}
        return Element(self, self.vector(coeffs))

    @property
    def even(self) -> list[int]:
        return [i for i, p in enumerate(self.parity) if not p]

    @property
    def odd(self) -> list[int]:
        return [i for i, p in enumerate(self.parity) if p]

    def mul_basis(self, i: int, j: int) -> Mapping[int, int]:
        return self.table.get((i, j), {})

    def multiply(self, x: Mapping[int, int], y: Mapping[int, int]) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                add_into(out, self.mul_basis(i, j), a * b)
        return out

    def unit_vector(self) -> dict:
        return dict(self.unit)

    # -- validation
    def check(self) -> None:
        """Raise ``ValueError`` unless parity, unit and associativity axioms hold."""
        m = self.dim
        for (i, j), prod in self.table.items():
            for k in prod:
                if self.parity[k] != (self.parity[i] + self.parity[j]) % 2:
                    raise ValueError(f"product {self.names[i]}*{self.names[j]} is not parity homogeneous")
                if self.degree is not None and self.degree[k] != self.degree[i] + self.degree[j]:
                    raise ValueError(f"product {self.names[i]}*{self.names[j]} breaks the grading")
        if any(self.parity[i] for i in self.unit):
            raise ValueError("unit must be even")
        for i in range(m):
            e = {i: 1}
            if self.multiply(self.unit, e) != e or self.multiply(e, self.unit) != e:
                raise ValueError(f"unit fails on {self.names[i]}")
        for i, j, k in itertools.product(range(m), repeat=3):
            left = self.multiply(self.mul_basis(i, j), {k: 1})
            right = self.multiply({i: 1}, self.mul_basis(j, k))
            if left != right:
                raise ValueError(f"associativity fails on ({self.names[i]}, {self.names[j]}, {self.names[k]})")

    def odd_square_zero(self) -> bool:
        return all(not self.mul_basis(i, j) for i in self.odd for j in self.odd)

    def graded_rank(self) -> dict[int, int]:
        if self.degree is None:
            raise ValueError("algebra is not graded")
        out: dict[int, int] = {}
        for deg in self.degree:
            out[deg] = out.get(deg, 0) + 1
        return dict(sorted(out.items()))

    # -- serialization
    def to_json(self) -> dict:
        labels = []
        for i, nm in enumerate(self.names):
            entry = {"name": nm, "parity": self.parity[i]}
            if self.degree is not None:
                entry["degree"] = self.degree[i]
            labels.append(entry)
        kappa = [{"left": self.names[i], "right": self.names[j], "result": self.named(prod)}
                 for (i, j), prod in sorted(self.table.items()) if prod]
        return {"version": PRESENTATION_VERSION, "title": self.title, "labels": labels,
                "unit": self.named(self.unit), "kappa": kappa}

    @classmethod
    def from_json(cls, data: Mapping) -> "SuperAlgebra":
        version = data.get("version", PRESENTATION_VERSION)
        if version != PRESENTATION_VERSION:
            raise ValueError(f"unsupported presentation version {version}")
        labels = data["labels"]
        names = tuple(str(x["name"]) for x in labels)
        parity = tuple(int(x["parity"]) for x in labels)
        has_deg = [("degree" in x) for x in labels]
        if any(has_deg) and not all(has_deg):
            raise ValueError("degrees must be given for all labels or none")
        degree = tuple(int(x["degree"]) for x in labels) if all(has_deg) and labels else None
        idx = {nm: i for i, nm in enumerate(names)}

        def lookup(nm):
            if nm not in idx:
                raise ValueError(f"unknown label {nm!r}")
            return idx[nm]

        table: dict = {}
        for rule in data.get("kappa", []):
            key = (lookup(rule["left"]), lookup(rule["right"]))
            if key in table:
                raise ValueError(f"duplicate product rule for {rule['left']}*{rule['right']}")
            prod = clean({lookup(k): int(v) for k, v in rule["result"].items()})
            if prod:
                table[key] = prod
        unit = clean({lookup(k): int(v) for k, v in data["unit"].items()})
        alg = cls(names, parity, table, unit, degree, str(data.get("title", "")))
        alg.check()
        return alg

    def content_hash(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def reduce_mod(self, p: int) -> "SuperAlgebra":
        """The same presentation with structure constants reduced mod ``p``."""
        table = {k: reduce_mod(v, p) for k, v in self.table.items()}
        return SuperAlgebra(self.names, self.parity, {k: v for k, v in table.items() if v},
                            reduce_mod(self.unit, p), self.degree, f"{self.title} mod {p}",
                            dict(self.info))


@dataclass(frozen=True)
class Element:
    """A vector tagged with the space it lives in."""

    carrier: object
    coeffs: Mapping

    def _same(self, other: "Element") -> None:
        if not isinstance(other, Element) or other.carrier is not self.carrier:
            raise ValueError("elements live in different spaces")

    def __add__(self, other: "Element") -> "Element":
        self._same(other)
        return Element(self.carrier, add_into(dict(self.coeffs), other.coeffs))

    def __sub__(self, other: "Element") -> "Element":
        self._same(other)
        return Element(self.carrier, add_into(dict(self.coeffs), other.coeffs, -1))

    def __rmul__(self, scalar) -> "Element":
        return Element(self.carrier, scale(self.coeffs, scalar))

    def __mul__(self, other):
        if isinstance(other, Element):
            self._same(other)
            return Element(self.carrier, self.carrier.multiply(self.coeffs, other.coeffs))
        return Element(self.carrier, scale(self.coeffs, other))

    def __eq__(self, other) -> bool:
        return isinstance(other, Element) and other.carrier is self.carrier and \
            clean(self.coeffs) == clean(other.coeffs)

    def __hash__(self):
        return hash((id(self.carrier), frozenset(clean(self.coeffs).items())))

    def __repr__(self) -> str:
        names = getattr(self.carrier, "names", None)
        items = sorted(self.coeffs.items())
        if names is not None:
            return " + ".join(f"{c}*{names[k]}" for k, c in items) or "0"
        return " + ".join(f"{c}*{k}" for k, c in items) or "0"


# ---------------------------------------------------------------- tensors

def word_parities(alg_parity: Sequence[int], word: Sequence[int]) -> list[int]:
    return [alg_parity[x] for x in word]


def tensor_product(alg: SuperAlgebra, x: Mapping[tuple, int], y: Mapping[tuple, int]) -> dict:
    """Product in ``Tens^d A``: slotwise products with the Koszul sign."""
    out: dict = {}
    par = alg.parity
    for u, a in x.items():
        pu = [par[i] for i in u]
        for w, b in y.items():
            if len(u) != len(w):
                raise ValueError("tensor degrees differ")
            coeff = a * b
            if bracket(pu, [par[j] for j in w]):
                coeff = -coeff
            partial = {(): coeff}
            for i, j in zip(u, w):
                prod = alg.mul_basis(i, j)
                if not prod:
                    partial = {}
                    break
                partial = {pre + (k,): c * v for pre, c in partial.items() for k, v in prod.items()}
            add_into(out, partial)
    return out


tensor_power_product = tensor_product


def tensor_power(vec: Mapping[int, int], d: int) -> dict:
    """``v^{(x) d}`` as a tensor."""
    out: dict = {(): 1}
    for _ in range(d):
        out = {w + (i,): c * v for w, c in out.items() for i, v in vec.items()}
    return clean(out)


def concat(x: Mapping[tuple, int], y: Mapping[tuple, int]) -> dict:
    """``x (x) y`` as a tensor of higher degree (no sign)."""
    out: dict = {}
    for u, a in x.items():
        for w, b in y.items():
            add_term(out, u + w, a * b)
    return out


def relabel_tensor(tensor: Mapping[tuple, int], mapping: Sequence[int]) -> dict:
    return {tuple(mapping[i] for i in w): c for w, c in tensor.items()}


# ---------------------------------------------------------------- dual actions

def left_dual_action(alg: SuperAlgebra, a: Mapping[int, int], alpha: Mapping[int, int]) -> dict:
    """``a . alpha`` with ``(a . alpha)(b) = alpha(b a)``; duals indexed like the basis."""
    out: dict = {}
    for b in range(alg.dim):
        val = sum(alpha.get(k, 0) * c for k, c in alg.multiply({b: 1}, a).items())
        if val:
            out[b] = val
    return out


def right_dual_action(alg: SuperAlgebra, alpha: Mapping[int, int], a: Mapping[int, int]) -> dict:
    """``alpha . a`` with ``(alpha . a)(b) = alpha(a b)``."""
    out: dict = {}
    for b in range(alg.dim):
        val = sum(alpha.get(k, 0) * c for k, c in alg.multiply(a, {b: 1}).items())
        if val:
            out[b] = val
    return out


def dual_regular_actions(alg: SuperAlgebra, a: Mapping[int, int], alpha: Mapping[int, int]):
    return left_dual_action(alg, a, alpha), right_dual_action(alg, alpha, a)


# ---------------------------------------------------------------- constructions

def trivial_extension(alg: SuperAlgebra) -> SuperAlgebra:
    """``A + A*`` with ``(a, alpha)(b, beta) = (ab, a.beta + alpha.b)``.

    Basis order: even basis, even duals, odd basis, odd duals.
    ``info["source"][k]`` is ``(j, is_dual)`` for the ``k``-th label.
    """
    source = [(j, False) for j in alg.even] + [(j, True) for j in alg.even] + \
             [(j, False) for j in alg.odd] + [(j, True) for j in alg.odd]
    position = {src: k for k, src in enumerate(source)}
    names = tuple(alg.names[j] + ("*" if dual else "") for j, dual in source)
    parity = tuple(alg.parity[j] for j, _ in source)
    table: dict = {}
    for p, (i, di) in enumerate(source):
        for q, (j, dj) in enumerate(source):
            if di and dj:
                continue
            if not di and not dj:
                prod = {position[(k, False)]: c for k, c in alg.mul_basis(i, j).items()}
            elif not di:
                prod = {position[(k, True)]: c for k, c in left_dual_action(alg, {i: 1}, {j: 1}).items()}
            else:
                prod = {position[(k, True)]: c for k, c in right_dual_action(alg, {i: 1}, {j: 1}).items()}
            if prod:
                table[(p, q)] = prod
    degree = None
    if alg.odd_square_zero():
        base = alg.degree if alg.degree is not None else alg.parity
        if all(x in (0, 1) for x in base):
            degree = tuple(2 - base[j] if dual else base[j] for j, dual in source)
    unit = {position[(j, False)]: c for j, c in alg.unit.items()}
    return SuperAlgebra(names, parity, table, unit, degree, f"T({alg.title})",
                        {"source": tuple(source), "base": alg})


def matrix_superalgebra(alg: SuperAlgebra, n: int) -> SuperAlgebra:
    """``M_n(A)`` with basis ``b[r,s]`` ordered by label, then row, then column."""
    if n < 1:
        raise ValueError("n must be positive")
    m = alg.dim
    entries = tuple((b, r, s) for b in range(m) for r in range(n) for s in range(n))
    pos = {e: k for k, e in enumerate(entries)}
    names = tuple(f"{alg.names[b]}[{r + 1},{s + 1}]" for b, r, s in entries)
    parity = tuple(alg.parity[b] for b, _, _ in entries)
    table: dict = {}
    for (b1, r, s) in entries:
        for (b2, t, u) in entries:
            if s != t:
                continue
            prod = alg.mul_basis(b1, b2)
            if prod:
                table[(pos[(b1, r, s)], pos[(b2, t, u)])] = {pos[(b, r, u)]: c for b, c in prod.items()}
    unit = {pos[(b, r, r)]: c for r in range(n) for b, c in alg.unit.items()}
    degree = tuple(alg.degree[b] for b, _, _ in entries) if alg.degree is not None else None
    return SuperAlgebra(names, parity, table, unit, degree, f"M_{n}({alg.title})",
                        {"entries": entries, "base": alg, "n": n})


def is_homomorphism(src: SuperAlgebra, dst: SuperAlgebra, image: Callable[[int], Mapping[int, int]]) -> bool:
    """Whether the linear map given on basis elements is unital and multiplicative."""
    def img(vec):
        out: dict = {}
        for i, c in vec.items():
            add_into(out, image(i), c)
        return out

    if img(src.unit) != clean(dst.unit):
        return False
    for i in range(src.dim):
        for j in range(src.dim):
            if img(src.mul_basis(i, j)) != dst.multiply(image(i), image(j)):
                return False
    return True


def matrix_trivext_iso(alg: SuperAlgebra, n: int):
    """Basis bijection ``M_n(T_A) -> T_{M_n(A)}`` realising the algebra isomorphism.

    A basis entry ``(a, 0)`` at ``(r, s)`` goes to ``(a[r,s], 0)``, while a
    dual entry ``(0, b*)`` at ``(r, s)`` goes to the dual of ``b[s,r]``.
    Returns ``(M_n(T_A), T_{M_n(A)}, mapping)`` where ``mapping`` is a list
    of target indices.  Raises ``RuntimeError`` if multiplicativity fails.
    """
    ta = trivial_extension(alg)
    mta = matrix_superalgebra(ta, n)
    x = matrix_superalgebra(alg, n)
    tx = trivial_extension(x)
    xpos = {e: k for k, e in enumerate(x.info["entries"])}
    txpos = {src: k for k, src in enumerate(tx.info["source"])}
    mapping = []
    for q, r, s in mta.info["entries"]:
        j, dual = ta.info["source"][q]
        if dual:
            mapping.append(txpos[(xpos[(j, s, r)], True)])
        else:
            mapping.append(txpos[(xpos[(j, r, s)], False)])
    if sorted(mapping) != list(range(tx.dim)):
        raise RuntimeError("relabelling is not a bijection")
    if not is_homomorphism(mta, tx, lambda i: {mapping[i]: 1}):
        raise RuntimeError("matrix/trivial-extension relabelling is not multiplicative")
    return mta, tx, mapping
