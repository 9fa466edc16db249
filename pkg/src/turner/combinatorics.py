"""Weights, sequences, coset representatives and matrix-tuple index sets.

Permutations are tuples in one-line notation on positions ``0..d-1``:
``g[a]`` is the image of ``a``.  Products compose like functions,
``(g*h)(a) = g(h(a))``, so the place action ``(word^g)[a] = word[g[a]]``
is a right action: ``(w^g)^h = w^(g*h)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

Perm = tuple[int, ...]
Weight = tuple[int, ...]


# ---------------------------------------------------------------- permutations

def identity(d: int) -> Perm:
    return tuple(range(d))


def compose(g: Perm, h: Perm) -> Perm:
    """Return ``g*h``, i.e. apply ``h`` first."""
    return tuple(g[x] for x in h)


def inverse(g: Perm) -> Perm:
    out = [0] * len(g)
    for a, b in enumerate(g):
        out[b] = a
    return tuple(out)


def length(g: Perm) -> int:
    """Coxeter length, counted as the number of inversions."""
    d = len(g)
    return sum(1 for a in range(d) for c in range(a + 1, d) if g[a] > g[c])


def transposition(d: int, r: int) -> Perm:
    """The simple transposition swapping positions ``r`` and ``r+1``."""
    g = list(range(d))
    g[r], g[r + 1] = r + 1, r
    return tuple(g)


def reduced_word(g: Perm) -> list[int]:
    """Indices ``r_1..r_k`` with ``g = s_{r_1} * ... * s_{r_k}`` and ``k = length(g)``."""
    word: list[int] = []
    cur = list(g)
    # peel simple reflections off the left: s_r*g is shorter iff g^{-1}(r) > g^{-1}(r+1)
    while True:
        inv = inverse(tuple(cur))
        for r in range(len(cur) - 1):
            if inv[r] > inv[r + 1]:
                word.append(r)
                cur = [r + 1 if x == r else r if x == r + 1 else x for x in cur]
                break
        else:
            return word


def act(word: Sequence, g: Perm) -> tuple:
    """Unsigned right place action: slot ``a`` of the result is ``word[g[a]]``."""
    return tuple(word[x] for x in g)


def all_perms(d: int) -> list[Perm]:
    return list(itertools.permutations(range(d)))


# ---------------------------------------------------------------- weights

def enumerate_weights(n: int, d: int) -> list[Weight]:
    """Compositions of ``d`` into ``n`` parts, lexicographically descending."""
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    return list(_compositions(n, d))


def _compositions(n: int, d: int) -> Iterator[Weight]:
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _compositions(n - 1, d - first):
            yield (first,) + rest


def blocks(lam: Sequence[int]) -> list[range]:
    """Consecutive position blocks of sizes ``lam`` (possibly empty)."""
    out, start = [], 0
    for part in lam:
        out.append(range(start, start + part))
        start += part
    return out


def weight_sequence(lam: Sequence[int]) -> tuple[int, ...]:
    """The non-decreasing sequence ``0^lam_0 1^lam_1 ...``."""
    return tuple(r for r, part in enumerate(lam) for _ in range(part))


def weight_of(seq: Sequence[int], n: int) -> Weight:
    counts = [0] * n
    for r in seq:
        counts[r] += 1
    return tuple(counts)


def in_young_subgroup(g: Perm, lam: Sequence[int]) -> bool:
    return all(g[a] in blk for blk in blocks(lam) for a in blk)


def young_subgroup(lam: Sequence[int]) -> list[Perm]:
    d = sum(lam)
    factors = [list(itertools.permutations(blk)) for blk in blocks(lam)]
    out = []
    for choice in itertools.product(*factors):
        g = [0] * d
        for blk, images in zip(blocks(lam), choice):
            for a, b in zip(blk, images):
                g[a] = b
        out.append(tuple(g))
    return out


# ---------------------------------------------------------------- sequences

def distinct_rearrangements(seq: Sequence) -> Iterator[tuple]:
    """Distinct permutations of ``seq``, in lexicographic order of positions of the sorted input."""
    items = sorted(set(seq), key=list(seq).index)
    counts = {x: 0 for x in items}
    for x in seq:
        counts[x] += 1
    d = len(seq)
    out: list = []

    def rec():
        if len(out) == d:
            yield tuple(out)
            return
        for x in items:
            if counts[x]:
                counts[x] -= 1
                out.append(x)
                yield from rec()
                out.pop()
                counts[x] += 1

    yield from rec()


def perm_to_sequence(base: Sequence, target: Sequence) -> Perm:
    """The shortest ``g`` with ``act(base, g) == target``.

    The ``k``-th occurrence of a value in ``target`` is taken from the
    ``k``-th occurrence of that value in ``base``.
    """
    slots: dict = {}
    for pos, x in enumerate(base):
        slots.setdefault(x, []).append(pos)
    used: dict = {}
    g = []
    for x in target:
        k = used.get(x, 0)
        try:
            g.append(slots[x][k])
        except (KeyError, IndexError):
            raise ValueError("target is not a rearrangement of base") from None
        used[x] = k + 1
    return tuple(g)


# ---------------------------------------------------------------- cosets

@dataclass(frozen=True)
class CosetData:
    weight: Weight
    side: str
    representatives: tuple[Perm, ...]


@lru_cache(maxsize=None)
def _left_reps(lam: Weight) -> tuple[Perm, ...]:
    base = weight_sequence(lam)
    return tuple(perm_to_sequence(base, s) for s in distinct_rearrangements(base))


def shortest_coset_reps(lam: Sequence[int], side: str = "left") -> CosetData:
    """Shortest representatives of parabolic cosets.

    ``side="left"`` gives the representatives ``g`` of the cosets
    ``S_lam g`` (those with ``g^{-1}`` increasing on every block);
    ``side="right"`` gives their inverses, representing ``g S_lam``.
    """
    lam = tuple(lam)
    reps = _left_reps(lam)
    if side == "right":
        reps = tuple(inverse(g) for g in reps)
    elif side != "left":
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    return CosetData(lam, side, reps)


@lru_cache(maxsize=None)
def shuffle_perms(d: int, e: int) -> tuple[Perm, ...]:
    """Shortest representatives of ``(S_d x S_e) g``: the ``(d, e)`` shuffles."""
    return _left_reps((d, e))


def is_left_shortest(g: Perm, lam: Sequence[int]) -> bool:
    inv = inverse(g)
    return all(inv[a] < inv[a + 1] for blk in blocks(lam) for a in blk[:-1])


def double_coset_rep(c: Sequence[Sequence[int]]) -> Perm:
    """The shortest double coset representative attached to an integer matrix.

    Rows give ``mu`` and columns give ``lam``; the returned ``g`` sends
    exactly ``c[r][s]`` elements of the ``s``-th ``lam``-block into the
    ``r``-th ``mu``-block, increasing on ``lam``-blocks and with ``g^{-1}``
    increasing on ``mu``-blocks.
    """
    n = len(c)
    mu = [sum(row) for row in c]
    lam = [sum(c[r][s] for r in range(n)) for s in range(n)]
    row_blocks, col_blocks = blocks(mu), blocks(lam)
    g = [0] * sum(lam)
    row_fill = [blk.start for blk in row_blocks]
    col_next = [blk.start for blk in col_blocks]
    for r in range(n):
        for s in range(n):
            for _ in range(c[r][s]):
                g[col_next[s]] = row_fill[r]
                col_next[s] += 1
                row_fill[r] += 1
    return tuple(g)


def matrices_with_margins(mu: Sequence[int], lam: Sequence[int]) -> list[tuple[tuple[int, ...], ...]]:
    """Non-negative integer matrices with row sums ``mu`` and column sums ``lam``."""
    n = len(mu)
    out = []

    def rec(r, rows, remaining):
        if r == n:
            if all(x == 0 for x in remaining):
                out.append(tuple(rows))
            return
        for row in _bounded_compositions(mu[r], remaining):
            rec(r + 1, rows + [row], [a - b for a, b in zip(remaining, row)])

    rec(0, [], list(lam))
    return out


def _bounded_compositions(total: int, bounds: Sequence[int]) -> Iterator[tuple[int, ...]]:
    if not bounds:
        if total == 0:
            yield ()
        return
    for first in range(min(total, bounds[0]), -1, -1):
        for rest in _bounded_compositions(total - first, bounds[1:]):
            yield (first,) + rest


def embed_block_perms(lam: Sequence[int], parts: Sequence[Perm]) -> Perm:
    """The element ``(g_1, ..., g_n)`` of the Young subgroup ``S_lam``."""
    g = []
    for blk, h in zip(blocks(lam), parts):
        g.extend(blk.start + x for x in h)
    return tuple(g)


# ---------------------------------------------------------------- matrix tuples

def enumerate_exponents(parity: Sequence[int], d: int) -> list[tuple[int, ...]]:
    """Count vectors ``c`` over an ordered basis with ``|c| = d`` and odd entries in {0,1}.

    Lexicographically descending, so the first basis element varies slowest.
    """
    m = len(parity)
    out: list[tuple[int, ...]] = []
    cur = [0] * m

    def rec(i, left):
        if i == m:
            if left == 0:
                out.append(tuple(cur))
            return
        top = min(left, 1) if parity[i] else left
        for k in range(top, -1, -1):
            cur[i] = k
            rec(i + 1, left - k)
        cur[i] = 0

    rec(0, d)
    return out


def exponent_word(c: Sequence[int]) -> tuple[int, ...]:
    """The sorted word ``0^c_0 1^c_1 ...`` of basis indices."""
    return tuple(i for i, k in enumerate(c) for _ in range(k))


def exponent_of(word: Iterable[int], m: int) -> tuple[int, ...]:
    counts = [0] * m
    for i in word:
        counts[i] += 1
    return tuple(counts)


def factorial(c: Iterable[int], parity: Sequence[int] | None = None) -> int:
    """``c!``: product of entry factorials (odd entries are 0 or 1 anyway)."""
    out = 1
    for k in c:
        out *= math.factorial(k)
    return out


def binomial(c: Sequence[int], e: Sequence[int]) -> int:
    out = 1
    for a, b in zip(c, e):
        if b > a or b < 0:
            return 0
        out *= math.comb(a, b)
    return out


@dataclass(frozen=True)
class MatrixTuple:
    """Per-label ``n x n`` matrices of non-negative integers.

    ``counts`` is flattened in the canonical order: label outermost, then
    row, then column.  Odd labels carry only 0/1 entries.
    """

    labels: tuple[str, ...]
    parity: tuple[int, ...]
    n: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != len(self.labels) * self.n * self.n:
            raise ValueError("counts do not match labels and n")
        for idx, k in enumerate(self.counts):
            if k < 0 or (self.parity[idx // (self.n * self.n)] and k > 1):
                raise ValueError("odd entries must be 0 or 1, all entries non-negative")

    @classmethod
    def from_matrices(cls, labels, parity, matrices: dict) -> "MatrixTuple":
        first = next(iter(matrices.values()))
        n = len(first)
        counts = []
        for b in labels:
            mat = matrices.get(b, [[0] * n for _ in range(n)])
            counts.extend(mat[r][s] for r in range(n) for s in range(n))
        return cls(tuple(labels), tuple(parity), n, tuple(counts))

    def matrix(self, label: str) -> tuple[tuple[int, ...], ...]:
        n, k = self.n, self.labels.index(label)
        off = k * n * n
        return tuple(tuple(self.counts[off + r * n + s] for s in range(n)) for r in range(n))

    def entry(self, b: int, r: int, s: int) -> int:
        return self.counts[(b * self.n + r) * self.n + s]

    @property
    def size(self) -> int:
        return sum(self.counts)

    @property
    def even_size(self) -> int:
        nn = self.n * self.n
        return sum(k for i, k in enumerate(self.counts) if not self.parity[i // nn])

    @property
    def odd_size(self) -> int:
        return self.size - self.even_size

    def row_weight(self) -> Weight:
        n = self.n
        return tuple(sum(self.entry(b, r, s) for b in range(len(self.labels)) for s in range(n))
                     for r in range(n))

    def column_weight(self) -> Weight:
        n = self.n
        return tuple(sum(self.entry(b, r, s) for b in range(len(self.labels)) for r in range(n))
                     for s in range(n))

    def factorial(self) -> int:
        return factorial(self.counts)

    def binomial(self, other: "MatrixTuple") -> int:
        return binomial(self.counts, other.counts)

    def __add__(self, other: "MatrixTuple") -> "MatrixTuple":
        return MatrixTuple(self.labels, self.parity, self.n,
                           tuple(a + b for a, b in zip(self.counts, other.counts)))

    def triples(self) -> tuple[tuple[int, int, int], ...]:
        """The canonically sorted sequence of ``(row, label, column)`` triples."""
        n = self.n
        return tuple((r, b, s) for b in range(len(self.labels)) for r in range(n)
                     for s in range(n) for _ in range(self.entry(b, r, s)))

    def orbit(self) -> Iterator[tuple[tuple[int, int, int], ...]]:
        """All distinct rearrangements of :meth:`triples`."""
        return distinct_rearrangements(self.triples())


def enumerate_matrix_tuples(labels: Sequence[str], parity: Sequence[int], n: int,
                            d: int) -> list[MatrixTuple]:
    flat = [p for p in parity for _ in range(n * n)]
    return [MatrixTuple(tuple(labels), tuple(parity), n, c) for c in enumerate_exponents(flat, d)]


def orbit_sequences(c: MatrixTuple):
    """Canonical triple sequence of ``c`` and an iterator over its orbit."""
    return c.triples(), c.orbit()


def odd_inversions(keys: Sequence, odd: Sequence[bool]) -> int:
    """Number of pairs ``a < c`` of odd entries with ``keys[a] > keys[c]``."""
    total = 0
    for a in range(len(keys)):
        if odd[a]:
            for c in range(a + 1, len(keys)):
                if odd[c] and keys[a] > keys[c]:
                    total += 1
    return total
