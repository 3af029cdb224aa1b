"""Conjugacy classes and graded characters of classical Weyl groups.

The Weyl group of ``U(m)`` is the symmetric group; ``Sp(m)`` and ``SO(2m+1)``
share the signed permutation group; ``SO(2m)`` has the index-two subgroup of
signed permutations with an even number of sign changes.  A class is recorded
by its signed cycle type: a cycle is *negative* when the product of the signs
along it is -1.
"""
from __future__ import annotations

import enum
import itertools
import json
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from .errors import CapacityError, DomainError
from .poly import Poly, prod

#: Largest rank for which SO(2m) classes are found by brute force.
SOEVEN_BRUTE_FORCE_BOUND = 6


class Kind(enum.Enum):
    U = "U"
    Sp = "Sp"
    SOodd = "SOodd"
    SOeven = "SOeven"


@dataclass(frozen=True)
class GroupFamily:
    kind: Kind
    rank: int

    def __post_init__(self):
        if not isinstance(self.kind, Kind):
            object.__setattr__(self, "kind", Kind(self.kind))
        if self.rank < 0:
            raise DomainError("rank must be non-negative")

    @property
    def dim(self) -> int:
        m = self.rank
        if self.kind is Kind.U:
            return m * m
        if self.kind in (Kind.Sp, Kind.SOodd):
            return m * (2 * m + 1)
        return m * (2 * m - 1)

    @property
    def weyl_order(self) -> int:
        m = self.rank
        if self.kind is Kind.U:
            return factorial(m)
        if self.kind in (Kind.Sp, Kind.SOodd):
            return 2 ** m * factorial(m)
        return 2 ** max(m - 1, 0) * factorial(m)

    @property
    def degrees(self) -> tuple[int, ...]:
        """Degrees of the basic invariants of the Weyl group."""
        m = self.rank
        if self.kind is Kind.U:
            return tuple(range(1, m + 1))
        if self.kind in (Kind.Sp, Kind.SOodd):
            return tuple(2 * i for i in range(1, m + 1))
        if m == 0:
            return ()
        return tuple(sorted([2 * i for i in range(1, m)] + [m]))

    @property
    def signed(self) -> bool:
        return self.kind is not Kind.U

    def block(self, k: int) -> "GroupFamily":
        """Group of the same family on a block of rank ``k``."""
        return GroupFamily(self.kind, k)

    def __str__(self):
        names = {Kind.U: "U({})", Kind.Sp: "Sp({})"}
        if self.kind in names:
            return names[self.kind].format(self.rank)
        if self.kind is Kind.SOodd:
            return f"SO({2 * self.rank + 1})"
        return f"SO({2 * self.rank})"


def family(name: str, rank: int) -> GroupFamily:
    aliases = {
        "u": Kind.U, "unitary": Kind.U,
        "sp": Kind.Sp, "symplectic": Kind.Sp,
        "soodd": Kind.SOodd, "orthogonalodd": Kind.SOodd,
        "soeven": Kind.SOeven, "orthogonaleven": Kind.SOeven,
    }
    try:
        return GroupFamily(aliases[name.lower()], rank)
    except KeyError:
        raise DomainError(f"unknown group family {name!r}") from None


@dataclass(frozen=True)
class CycleClass:
    positive: tuple[int, ...]
    negative: tuple[int, ...]
    size: int

    @property
    def rank(self) -> int:
        return sum(self.positive) + sum(self.negative)

    def label(self) -> str:
        pos = ",".join(map(str, self.positive))
        if not self.negative:
            return f"({pos})"
        return f"({pos}|{','.join(map(str, self.negative))})"

    def to_json(self) -> dict:
        return {"positive": list(self.positive), "negative": list(self.negative), "size": self.size}


@dataclass(frozen=True)
class GradedTrace:
    """Power series ``numerator / denominator``, kept unreduced."""

    numerator: Poly
    denominator: Poly

    def __post_init__(self):
        if not self.denominator[0]:
            raise ArithmeticError("denominator is not invertible as a power series")

    def as_poly(self) -> Poly:
        try:
            return self.numerator.exact_div(self.denominator)
        except ArithmeticError as exc:
            raise ArithmeticError(f"graded trace is not a polynomial: {exc}") from None


def integer_partitions(m: int, largest: int | None = None):
    """Partitions of ``m`` as non-increasing tuples."""
    if largest is None:
        largest = m
    if m == 0:
        yield ()
        return
    for first in range(min(m, largest), 0, -1):
        for rest in integer_partitions(m - first, first):
            yield (first,) + rest


def _centralizer(cycles: tuple[int, ...], base: int) -> int:
    out = 1
    for length, mult in Counter(cycles).items():
        out *= (base * length) ** mult * factorial(mult)
    return out


def _signed_cycle_type(perm: tuple[int, ...], signs: tuple[int, ...]):
    seen = [False] * len(perm)
    pos, neg = [], []
    for start in range(len(perm)):
        if seen[start]:
            continue
        length, sign, i = 0, 1, start
        while not seen[i]:
            seen[i] = True
            sign *= signs[i]
            i = perm[i]
            length += 1
        (pos if sign > 0 else neg).append(length)
    return tuple(sorted(pos, reverse=True)), tuple(sorted(neg, reverse=True))


def _compose(x, y):
    """Signed permutation ``x * y`` (apply ``y`` first)."""
    (px, sx), (py, sy) = x, y
    return tuple(px[py[i]] for i in range(len(px))), tuple(sy[i] * sx[py[i]] for i in range(len(px)))


def _inverse(x):
    p, s = x
    inv = [0] * len(p)
    sinv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
        sinv[j] = s[i]
    return tuple(inv), tuple(sinv)


def signed_permutations(m: int, even_only: bool = False):
    for perm in itertools.permutations(range(m)):
        for signs in itertools.product((1, -1), repeat=m):
            if even_only and signs.count(-1) % 2:
                continue
            yield perm, signs


def _brute_force_classes(m: int, even_only: bool) -> list[CycleClass]:
    """Conjugacy classes found by orbit search under conjugation by generators."""
    ident = tuple(range(m)), (1,) * m
    gens = []
    for i in range(m - 1):
        p = list(range(m))
        p[i], p[i + 1] = p[i + 1], p[i]
        gens.append((tuple(p), (1,) * m))
    if m >= 1 and not even_only:
        gens.append((tuple(range(m)), (-1,) + (1,) * (m - 1)))
    if m >= 2 and even_only:
        p = list(range(m))
        p[0], p[1] = 1, 0
        gens.append((tuple(p), (-1, -1) + (1,) * (m - 2)))
    gens = [(g, _inverse(g)) for g in gens]
    unseen = set(signed_permutations(m, even_only))
    classes = []
    # Identity first, then in a deterministic order.
    for rep in sorted(unseen, key=lambda x: (x != ident, x)):
        if rep not in unseen:
            continue
        orbit = {rep}
        frontier = [rep]
        while frontier:
            x = frontier.pop()
            for g, ginv in gens:
                y = _compose(_compose(g, x), ginv)
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
        unseen -= orbit
        pos, neg = _signed_cycle_type(*rep)
        classes.append(CycleClass(pos, neg, len(orbit)))
    return classes


@lru_cache(maxsize=None)
def _classes(kind: Kind, m: int, bound: int) -> tuple[CycleClass, ...]:
    if kind is Kind.U:
        return tuple(
            CycleClass(lam, (), factorial(m) // _centralizer(lam, 1)) for lam in integer_partitions(m)
        )
    if kind in (Kind.Sp, Kind.SOodd):
        order = 2 ** m * factorial(m)
        out = []
        for k in range(m, -1, -1):
            for pos in integer_partitions(k):
                for neg in integer_partitions(m - k):
                    size = order // (_centralizer(pos, 2) * _centralizer(neg, 2))
                    out.append(CycleClass(pos, neg, size))
        return tuple(out)
    if m > bound:
        raise CapacityError(f"SO({2 * m}) class data limited to rank <= {bound}")
    if m == 0:
        return (CycleClass((), (), 1),)
    return tuple(_brute_force_classes(m, even_only=True))


def conjugacy_classes(g: GroupFamily, bound: int = SOEVEN_BRUTE_FORCE_BOUND) -> tuple[CycleClass, ...]:
    """Conjugacy classes of the Weyl group of ``g`` with their sizes.

    Rank 0 yields the single class of the trivial group.
    """
    if g.rank == 0:
        return (CycleClass((), (), 1),)
    return _classes(g.kind, g.rank, bound)


def dump_classes(g: GroupFamily) -> str:
    return json.dumps(
        {"group": str(g), "order": g.weyl_order, "classes": [c.to_json() for c in conjugacy_classes(g)]},
        indent=2,
    )


def _check_member(g: GroupFamily, w: CycleClass) -> None:
    if w.rank != g.rank:
        raise DomainError(f"class {w.label()} has rank {w.rank}, group {g} has rank {g.rank}")
    if g.kind is Kind.U and w.negative:
        raise DomainError(f"{g} has no negative cycles")
    if g.kind is Kind.SOeven and len(w.negative) % 2:
        raise DomainError(f"{g} requires an even number of negative cycles")


def _one_minus(k: int, sign: int = -1) -> Poly:
    """``1 + sign * t**k``."""
    return Poly.one() + Poly.monomial(k, sign)


def coinvariant_trace(g: GroupFamily, w: CycleClass) -> GradedTrace:
    """Graded trace of ``w`` on the cohomology of ``G/T``.

    ``prod(1 - t^(2 d_i)) / det(1 - t^2 w)`` over the invariant degrees ``d_i``.
    """
    _check_member(g, w)
    num = prod(_one_minus(2 * d) for d in g.degrees)
    den = prod(_one_minus(2 * l) for l in w.positive) * prod(_one_minus(2 * l, +1) for l in w.negative)
    return GradedTrace(num, den)


@lru_cache(maxsize=4096)
def coinvariant_poly(g: GroupFamily, w: CycleClass) -> Poly:
    return coinvariant_trace(g, w).as_poly()


def torus_exterior_trace(g: GroupFamily, w: CycleClass, n: int) -> Poly:
    """Graded trace of ``w`` on the cohomology of ``T^n``: ``det(1 + t w)^n``."""
    _check_member(g, w)
    if n < 0:
        raise DomainError("arity must be non-negative")
    minus_t = Poly([0, -1])
    base = prod(Poly.one() - minus_t ** l for l in w.positive) * prod(
        Poly.one() + minus_t ** l for l in w.negative
    )
    return base ** n


def det_character(w: CycleClass) -> int:
    """Determinant of ``w`` on its (signed) permutation representation."""
    exponent = sum(l - 1 for l in w.positive) + sum(w.negative)
    return -1 if exponent % 2 else 1


def brute_force_class_sizes(g: GroupFamily) -> Counter:
    """Signed cycle type -> number of elements, by enumerating the whole group."""
    m = g.rank
    counts: Counter = Counter()
    if g.kind is Kind.U:
        elems = ((p, (1,) * m) for p in itertools.permutations(range(m)))
    else:
        elems = signed_permutations(m, even_only=g.kind is Kind.SOeven)
    for p, s in elems:
        counts[_signed_cycle_type(p, s)] += 1
    return counts
