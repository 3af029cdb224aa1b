"""The poset of partitions of ``m`` indexed by binary sequences of length ``n``.

A partition assigns a non-negative multiplicity to every ``a`` in
``I = {0,1}^n``.  Its pattern matrix stacks ``parts[a]`` copies of the row
``a`` in lexicographic order of ``I``; ``mu <= lam`` when, after permuting
rows, the pattern of ``mu`` is obtained from that of ``lam`` by turning some
ones into zeros.
"""
from __future__ import annotations

import itertools
import json
import sys
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterator, Sequence

from .errors import CapacityError, DimensionError

BinarySequence = tuple[int, ...]


def _check_arity(n: int) -> None:
    if n < 1:
        raise CapacityError(f"arity must be at least 1, got {n}")
    if n >= sys.maxsize.bit_length():
        raise CapacityError(f"2**{n} parts exceed the platform integer range")


@lru_cache(maxsize=None)
def binary_sequences(n: int) -> tuple[BinarySequence, ...]:
    """All of ``{0,1}^n`` in lexicographic order."""
    if n < 0:
        raise CapacityError(f"negative arity {n}")
    return tuple(itertools.product((0, 1), repeat=n))


def bitstring(a: BinarySequence) -> str:
    return "".join(map(str, a))


@dataclass(frozen=True)
class IndexedPartition:
    """Ordered partition of ``m`` with one part per binary sequence.

    ``parts`` is dense: ``parts[i]`` belongs to ``binary_sequences(n)[i]``.
    """

    n: int
    m: int
    parts: tuple[int, ...]

    def __post_init__(self):
        if len(self.parts) != 2 ** self.n:
            raise DimensionError(f"expected {2 ** self.n} parts, got {len(self.parts)}")
        if any(p < 0 for p in self.parts):
            raise ValueError("parts must be non-negative")
        if sum(self.parts) != self.m:
            raise ValueError(f"parts sum to {sum(self.parts)}, not {self.m}")

    @classmethod
    def from_parts(cls, parts: Sequence[int]) -> "IndexedPartition":
        k = len(parts)
        n = k.bit_length() - 1
        if k < 1 or 2 ** n != k:
            raise DimensionError(f"number of parts ({k}) is not a power of two")
        return cls(n, sum(parts), tuple(int(p) for p in parts))

    @classmethod
    def concentrated(cls, n: int, m: int, a: BinarySequence) -> "IndexedPartition":
        parts = [0] * 2 ** n
        parts[binary_sequences(n).index(tuple(a))] = m
        return cls(n, m, tuple(parts))

    @classmethod
    def bottom(cls, n: int, m: int) -> "IndexedPartition":
        return cls.concentrated(n, m, (0,) * n)

    @classmethod
    def top(cls, n: int, m: int) -> "IndexedPartition":
        return cls.concentrated(n, m, (1,) * n)

    @property
    def index(self) -> tuple[BinarySequence, ...]:
        return binary_sequences(self.n)

    def __getitem__(self, a: BinarySequence) -> int:
        return self.parts[self.index.index(tuple(a))]

    def items(self) -> Iterator[tuple[BinarySequence, int]]:
        return zip(self.index, self.parts)

    def as_dict(self) -> dict[str, int]:
        return {bitstring(a): p for a, p in self.items()}

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "parts": self.as_dict()}

    @classmethod
    def from_json(cls, obj) -> "IndexedPartition":
        if isinstance(obj, str):
            obj = json.loads(obj)
        n, m = int(obj["n"]), int(obj["m"])
        raw = obj["parts"]
        parts = [0] * 2 ** n
        for key, val in raw.items():
            a = tuple(int(ch) for ch in key)
            if len(a) != n:
                raise DimensionError(f"bitstring {key!r} does not have length {n}")
            parts[binary_sequences(n).index(a)] = int(val)
        return cls(n, m, tuple(parts))

    def label(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"

    def __str__(self):
        return self.label()


def enumerate_partitions(n: int, m: int) -> list[IndexedPartition]:
    """Every partition of ``m`` into ``2**n`` labelled parts.

    Ordered lexicographically by part vector, largest first part first, so the
    bottom element leads (for ``n=1``: ``(m,0), (m-1,1), ..., (0,m)``).
    """
    _check_arity(n)
    if m < 0:
        raise ValueError("rank must be non-negative")
    k = 2 ** n
    out: list[IndexedPartition] = []

    def rec(prefix: list[int], remaining: int):
        if len(prefix) == k - 1:
            out.append(IndexedPartition(n, m, tuple(prefix + [remaining])))
            return
        for v in range(remaining, -1, -1):
            prefix.append(v)
            rec(prefix, remaining - v)
            prefix.pop()

    rec([], m)
    return out


def partition_count(n: int, m: int) -> int:
    _check_arity(n)
    return comb(m + 2 ** n - 1, 2 ** n - 1)


def pattern_matrix(lam: IndexedPartition) -> tuple[BinarySequence, ...]:
    """Rows of the 0/1 pattern matrix, blocks in lexicographic order of ``I``."""
    rows: list[BinarySequence] = []
    for a, p in lam.items():
        rows.extend([a] * p)
    return tuple(rows)


def partition_from_rows(rows: Sequence[BinarySequence], n: int) -> IndexedPartition:
    index = {a: i for i, a in enumerate(binary_sequences(n))}
    parts = [0] * 2 ** n
    for r in rows:
        parts[index[tuple(r)]] += 1
    return IndexedPartition(n, len(rows), tuple(parts))


def _dominated(x: BinarySequence, y: BinarySequence) -> bool:
    return all(u <= v for u, v in zip(x, y))


def _hopcroft_karp(adj: list[list[int]], n_right: int) -> int:
    """Size of a maximum matching; ``adj[u]`` lists right vertices of ``u``."""
    INF = len(adj) + 1
    match_l = [-1] * len(adj)
    match_r = [-1] * n_right
    dist = [0] * len(adj)

    def bfs() -> bool:
        q = deque()
        for u in range(len(adj)):
            if match_l[u] < 0:
                dist[u] = 0
                q.append(u)
            else:
                dist[u] = INF
        found = False
        while q:
            u = q.popleft()
            for v in adj[u]:
                w = match_r[v]
                if w < 0:
                    found = True
                elif dist[w] == INF:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return found

    def dfs(u: int) -> bool:
        for v in adj[u]:
            w = match_r[v]
            if w < 0 or (dist[w] == dist[u] + 1 and dfs(w)):
                match_l[u] = v
                match_r[v] = u
                return True
        dist[u] = INF
        return False

    size = 0
    while bfs():
        for u in range(len(adj)):
            if match_l[u] < 0 and dfs(u):
                size += 1
    return size


def leq(mu: IndexedPartition, lam: IndexedPartition) -> bool:
    """``mu <= lam``: a perfect matching of rows with each mu-row below its partner."""
    if (mu.n, mu.m) != (lam.n, lam.m):
        raise DimensionError(f"cannot compare (n={mu.n}, m={mu.m}) with (n={lam.n}, m={lam.m})")
    if mu == lam:
        return True
    # Row weights must be able to drop, not rise.
    if weight(mu) > weight(lam):
        return False
    rows_mu, rows_lam = pattern_matrix(mu), pattern_matrix(lam)
    adj = [[j for j, y in enumerate(rows_lam) if _dominated(x, y)] for x in rows_mu]
    return _hopcroft_karp(adj, len(rows_lam)) == len(rows_mu)


def down_set(lam: IndexedPartition) -> list[IndexedPartition]:
    """All ``mu <= lam``, in enumeration order."""
    return [mu for mu in enumerate_partitions(lam.n, lam.m) if leq(mu, lam)]


def hasse(n: int, m: int) -> list[tuple[IndexedPartition, IndexedPartition]]:
    """Cover relations ``(child, parent)`` of the full poset."""
    elems = enumerate_partitions(n, m)
    below = {
        j: {i for i in range(len(elems)) if i != j and leq(elems[i], elems[j])}
        for j in range(len(elems))
    }
    edges = []
    for j, lower in below.items():
        for i in lower:
            if not any(i in below[k] for k in lower):
                edges.append((elems[i], elems[j]))
    edges.sort(key=lambda e: (elems.index(e[1]), elems.index(e[0])))
    return edges


def weight(lam: IndexedPartition) -> int:
    """Number of non-identity entries: sum of ``parts[a] * |a|``."""
    return sum(p * sum(a) for a, p in lam.items())


def in_S(lam: IndexedPartition) -> bool:
    """Whether every column of the pattern matrix contains a one."""
    cols = [0] * lam.n
    for a, p in lam.items():
        if p:
            for i, bit in enumerate(a):
                cols[i] += bit
    return all(cols)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def inverted_primes(lam: IndexedPartition) -> set[int]:
    """Primes up to the largest part sitting on a sequence with ``|a| > 1``."""
    top = max((p for a, p in lam.items() if sum(a) > 1), default=0)
    return {q for q in range(2, top + 1) if is_prime(q)}
