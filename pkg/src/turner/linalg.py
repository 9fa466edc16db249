"""Exact integer and rational linear algebra on sparse vectors.

Vectors are dicts from comparable keys to integers.  Lattices are kept in
echelon form by gcd-based row insertion; the canonical Hermite form decides
lattice equality.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

from .superalgebra import add_into, clean


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _combine(x: Mapping, a: int, y: Mapping, b: int) -> dict:
    out = {k: a * v for k, v in x.items()} if a else {}
    if b:
        add_into(out, y, b)
    return clean(out)


class Lattice:
    """A sublattice of ``Z^(keys)`` spanned by inserted vectors."""

    def __init__(self, vectors: Iterable[Mapping] = ()):
        self.rows: dict = {}
        for v in vectors:
            self.insert(v)

    def insert(self, vec: Mapping) -> bool:
        """Add ``vec`` to the spanning set; return whether the lattice grew."""
        v = clean(vec)
        changed = False
        while v:
            p = min(v)
            r = self.rows.get(p)
            if r is None:
                if v[p] < 0:
                    v = {k: -x for k, x in v.items()}
                self.rows[p] = v
                return True
            a, b = r[p], v[p]
            if b % a == 0:
                v = _combine(v, 1, r, -(b // a))
                continue
            g, x, y = _xgcd(a, b)
            new_r = _combine(r, x, v, y)
            if new_r[p] < 0:
                new_r = {k: -c for k, c in new_r.items()}
            v = _combine(v, a // g, r, -(b // g))
            self.rows[p] = new_r
            changed = True
        return changed

    def contains(self, vec: Mapping) -> bool:
        v = clean(vec)
        while v:
            p = min(v)
            r = self.rows.get(p)
            if r is None or v[p] % r[p]:
                return False
            v = _combine(v, 1, r, -(v[p] // r[p]))
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def hermite(self) -> tuple:
        """Canonical Hermite normal form: rows by pivot, entries above pivots reduced."""
        pivots = sorted(self.rows)
        rows = {p: dict(self.rows[p]) for p in pivots}
        for i in range(len(pivots) - 1, -1, -1):
            p = pivots[i]
            for q in pivots[i + 1:]:
                c = rows[p].get(q, 0)
                if c:
                    f = c // rows[q][q]
                    if f:
                        rows[p] = _combine(rows[p], 1, rows[q], -f)
        return tuple((p, tuple(sorted(rows[p].items()))) for p in pivots)

    def __eq__(self, other) -> bool:
        return isinstance(other, Lattice) and self.hermite() == other.hermite()

    def index_in(self, other: "Lattice") -> int | None:
        """``[other : self]`` when ``self`` is a full-rank sublattice of ``other``, else ``None``."""
        if self.rank != other.rank or not all(other.contains(r) for r in self.rows.values()):
            return None
        return abs(det_from_rows(self, other))


def det_from_rows(sub: Lattice, sup: Lattice) -> int:
    keys = sorted(sup.rows)
    coords = [solve_in_lattice(sup, r) for r in sub.rows.values()]
    mat = [[c.get(k, 0) for k in keys] for c in coords]
    return determinant(mat)


def solve_in_lattice(lat: Lattice, vec: Mapping) -> dict:
    """Coordinates of ``vec`` in the echelon rows of ``lat`` (keyed by pivot)."""
    v = clean(vec)
    out = {}
    while v:
        p = min(v)
        r = lat.rows.get(p)
        if r is None or v[p] % r[p]:
            raise ValueError("vector is not in the lattice")
        f = v[p] // r[p]
        out[p] = f
        v = _combine(v, 1, r, -f)
    return out


# ---------------------------------------------------------------- rational elimination

class RationalSpan:
    """A subspace of ``Q^(keys)`` with membership tests and coordinate solving.

    Rows are primitive integer vectors; each row remembers its expression
    in the inserted generators.
    """

    def __init__(self):
        self.rows: dict = {}
        self.exprs: dict = {}
        self.count = 0

    def insert(self, vec: Mapping) -> bool:
        v = {k: Fraction(x) for k, x in clean(vec).items()}
        expr = {self.count: Fraction(1)}
        self.count += 1
        v, expr = self._reduce(v, expr)
        if not v:
            return False
        p = min(v)
        lead = v[p]
        self.rows[p] = {k: x / lead for k, x in v.items()}
        self.exprs[p] = {k: x / lead for k, x in expr.items()}
        return True

    def _reduce(self, v: dict, expr: dict):
        v = dict(v)
        expr = dict(expr)
        for p in sorted(self.rows):
            c = v.get(p)
            if c:
                add_into(v, self.rows[p], -c)
                add_into(expr, self.exprs[p], -c)
        return v, expr

    @property
    def rank(self) -> int:
        return len(self.rows)

    def express(self, vec: Mapping) -> dict | None:
        """Coefficients on inserted generators reproducing ``vec``, or ``None``."""
        v = {k: Fraction(x) for k, x in clean(vec).items()}
        rest, expr = self._reduce(v, {})
        if rest:
            return None
        return clean({k: -x for k, x in expr.items()})


def rank(vectors: Iterable[Mapping]) -> int:
    """Rank over Q, computed with fraction-free integer elimination."""
    rows: dict = {}
    for vec in vectors:
        v = clean(vec)
        while v:
            p = min(v)
            r = rows.get(p)
            if r is None:
                g = 0
                for x in v.values():
                    g = gcd(g, x)
                rows[p] = {k: x // g for k, x in v.items()} if g > 1 else v
                break
            a, b = r[p], v[p]
            g = gcd(a, b)
            v = _combine(v, a // g, r, -(b // g))
            if v:
                c = 0
                for x in v.values():
                    c = gcd(c, x)
                if c > 1:
                    v = {k: x // c for k, x in v.items()}
    return len(rows)


def nullity(vectors: Sequence[Mapping], unknowns: int) -> int:
    return unknowns - rank(vectors)


def determinant(mat: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    n = len(mat)
    if n == 0:
        return 1
    a = [list(row) for row in mat]
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def signed_permutation_det(columns: Sequence[Mapping[int, int]], size: int) -> int | None:
    """Determinant if the columns form a signed permutation matrix, else ``None``."""
    seen = set()
    sign = 1
    target = []
    for col in columns:
        col = clean(col)
        if len(col) != 1:
            return None
        (k, c), = col.items()
        if c not in (1, -1) or k in seen:
            return None
        seen.add(k)
        sign *= c
        target.append(k)
    if len(target) != size:
        return None
    # parity of the permutation
    order = {k: i for i, k in enumerate(sorted(target))}
    perm = [order[k] for k in target]
    visited = [False] * size
    for i in range(size):
        if not visited[i]:
            j, length = i, 0
            while not visited[j]:
                visited[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def smith_diagonal(mat: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors of an integer matrix."""
    a = [list(r) for r in mat]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    out = []
    t = 0
    while t < min(rows, cols):
        entries = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    for j in range(t, cols):
                        a[i][j] -= q * a[t][j]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for i in range(t, rows):
                        a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        done = False
            if done:
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if a[i][j] % a[t][t]), None)
                if bad is None:
                    break
                for j in range(t, cols):
                    a[t][j] += a[bad[0]][j]
        out.append(abs(a[t][t]))
        t += 1
    return out


def dense(vectors: Sequence[Mapping], keys: Sequence) -> list[list[int]]:
    return [[v.get(k, 0) for k in keys] for v in vectors]


def rank_mod_p(mat: Sequence[Sequence[int]], p: int) -> int:
    """Rank of an integer matrix over the field with ``p`` elements."""
    rows = [[x % p for x in row] for row in mat]
    r = 0
    cols = len(rows[0]) if rows else 0
    for c in range(cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        r += 1
    return r
