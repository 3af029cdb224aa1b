"""Rational Poincare series of commuting-tuple spaces and their stable summands.

Rationally the space of commuting ``n``-tuples in ``G`` (identity component)
has the cohomology of ``(H*(G/T) (x) H*(T^n))^W``.  Averaging graded traces
over the Weyl group gives its Poincare polynomial.  Each summand indexed by a
partition ``lam`` is modelled the same way after restricting to the block
subgroup ``W_lam``; a second, closed-form model multiplies the Poincare
polynomial of the flag manifold ``G/G_lam`` by the sphere dimensions of the
compactified commuting varieties of the blocks.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb

from .errors import ConsistencyError, UnsupportedFamilyError
from .poly import Poly, prod
from .poset import BinarySequence, IndexedPartition, enumerate_partitions, in_S, weight
from .weyl import (
    CycleClass,
    GroupFamily,
    Kind,
    coinvariant_poly,
    conjugacy_classes,
    det_character,
    torus_exterior_trace,
)

SUMMAND_FAMILIES = (Kind.U, Kind.Sp)


def _require(g: GroupFamily, kinds, what: str) -> None:
    if g.kind not in kinds:
        raise UnsupportedFamilyError(f"{what} is not available for {g}")


def _check_rank(g: GroupFamily, lam: IndexedPartition) -> None:
    if lam.m != g.rank:
        raise ValueError(f"partition of {lam.m} does not match rank {g.rank} of {g}")


def _betti(p: Poly, what: str) -> Poly:
    """Assert that ``p`` is a polynomial of Betti numbers."""
    if not p.is_integral() or not p.is_nonnegative():
        raise ConsistencyError(f"{what} is not a non-negative integer series: {p.to_list()}")
    return p


def flag_poincare(g: GroupFamily, lam: IndexedPartition) -> Poly:
    """Poincare polynomial of ``G / prod_a G(lam_a)``."""
    _require(g, (Kind.U, Kind.Sp, Kind.SOodd), "flag manifold series")
    _check_rank(g, lam)
    step = 2 if g.kind is Kind.U else 4

    def factorial_poly(k: int) -> Poly:
        return prod(Poly.one() - Poly.monomial(step * i) for i in range(1, k + 1))

    num = factorial_poly(g.rank)
    den = prod(factorial_poly(p) for p in lam.parts)
    return num.exact_div(den)


def sphere_dim(block: GroupFamily, l: int) -> int:
    """Dimension of the rational sphere ``C_l(g_k)^+`` for a block group of rank ``k``."""
    k = block.rank
    if k == 0 or l == 0:
        return 0
    if l % 2 == 0:
        return l * k
    return block.dim + (l - 1) * k


def sphere_dims(g: GroupFamily, lam: IndexedPartition) -> list[tuple[BinarySequence, int, int, int]]:
    return [(a, p, sum(a), sphere_dim(g.block(p), sum(a))) for a, p in lam.items()]


def summand_series_closed(g: GroupFamily, lam: IndexedPartition) -> Poly:
    """Flag-manifold polynomial shifted by the total block sphere dimension."""
    _require(g, SUMMAND_FAMILIES, "summand series")
    shift = sum(d for *_, d in sphere_dims(g, lam))
    return flag_poincare(g, lam).shift(shift)


def _block_classes(g: GroupFamily, lam: IndexedPartition):
    """Classes of ``prod_a W(lam_a)`` as (embedded class, size, character)."""
    per_block = []
    for a, p in lam.items():
        per_block.append([(c, sum(a)) for c in conjugacy_classes(g.block(p))])
    for combo in itertools.product(*per_block):
        pos = tuple(sorted((l for c, _ in combo for l in c.positive), reverse=True))
        neg = tuple(sorted((l for c, _ in combo for l in c.negative), reverse=True))
        size, chi = 1, 1
        for c, weight_a in combo:
            size *= c.size
            if weight_a % 2:
                chi *= det_character(c)
        yield CycleClass(pos, neg, 1), size, chi


def summand_series_equivariant(g: GroupFamily, lam: IndexedPartition) -> Poly:
    """Reduced series of the summand, as ``W_lam``-twisted invariants of ``H*(G/T)``.

    Each block of ``lam_a`` rows contributes top cells of dimension ``|a|`` that
    the block Weyl group permutes with character ``det^|a|``.
    """
    _require(g, SUMMAND_FAMILIES, "summand series")
    _check_rank(g, lam)
    total = Poly.zero()
    order = 0
    for w, size, chi in _block_classes(g, lam):
        total = total + coinvariant_poly(g, w) * (size * chi)
        order += size
    series = (total / order).shift(weight(lam))
    return _betti(series, f"summand {lam.label()} of {g}")


def hom_series(g: GroupFamily, n: int) -> Poly:
    """Rational Poincare polynomial of ``Hom(Z^n, G)`` (identity component for SO)."""
    if n < 0:
        raise ValueError("arity must be non-negative")
    total = Poly.zero()
    for w in conjugacy_classes(g):
        total = total + coinvariant_poly(g, w) * torus_exterior_trace(g, w, n) * w.size
    series = total / g.weyl_order
    _betti(series, f"series of Hom(Z^{n}, {g})")
    if series[0] != 1:
        raise ConsistencyError(f"series of Hom(Z^{n}, {g}) has constant term {series[0]}")
    return series


def hom_mod_S_series(g: GroupFamily, n: int) -> Poly:
    """Reduced series of ``Hom(Z^n, G) / S_n(G)``: summands over partitions in S."""
    _require(g, SUMMAND_FAMILIES, "summand series")
    if n == 0:
        return Poly.zero()
    total = Poly.zero()
    for lam in enumerate_partitions(n, g.rank):
        if in_S(lam):
            total = total + summand_series_equivariant(g, lam)
    return total


def adem_cohen_series(g: GroupFamily, n: int) -> Poly:
    """``sum_r C(n, r) Q_r`` with ``Q_0 = 1`` and ``Q_r`` the series of ``Hom/S_r``."""
    total = Poly.one()
    for r in range(1, n + 1):
        total = total + hom_mod_S_series(g, r) * comb(n, r)
    return total


@dataclass(frozen=True)
class SummandReport:
    partition: IndexedPartition
    flag_poly: Poly
    sphere_dims: list
    series_closed: Poly
    series_equivariant: Poly

    @property
    def agree(self) -> bool:
        return self.series_closed == self.series_equivariant

    @property
    def total_sphere_dim(self) -> int:
        return sum(d for *_, d in self.sphere_dims)

    def to_json(self) -> dict:
        return {
            "partition": self.partition.to_json(),
            "flag_poly": self.flag_poly.render(),
            "sphere_dims": [
                {"block": "".join(map(str, a)), "size": p, "arity": l, "dim": d}
                for a, p, l, d in self.sphere_dims
            ],
            "D": self.total_sphere_dim,
            "series": self.series_equivariant.render(),
            "series_coefficients": self.series_equivariant.to_list(),
            "series_closed": self.series_closed.render(),
            "agree": self.agree,
        }


@dataclass(frozen=True)
class SplittingTable:
    group: GroupFamily
    n: int
    reports: list[SummandReport]
    summand_total: Poly
    hom: Poly
    all_agree: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "all_agree", all(r.agree for r in self.reports))

    @property
    def identity_holds(self) -> bool:
        return self.summand_total == self.hom


def summand_report(g: GroupFamily, lam: IndexedPartition) -> SummandReport:
    return SummandReport(
        partition=lam,
        flag_poly=flag_poincare(g, lam),
        sphere_dims=sphere_dims(g, lam),
        series_closed=summand_series_closed(g, lam),
        series_equivariant=summand_series_equivariant(g, lam),
    )


def _report_task(args):
    return summand_report(*args)


def splitting_table(g: GroupFamily, n: int, workers: int = 1) -> SplittingTable:
    """One report per partition, in canonical order, plus the global identity."""
    _require(g, SUMMAND_FAMILIES, "summand series")
    parts = enumerate_partitions(n, g.rank)
    tasks = [(g, lam) for lam in parts]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_report_task, tasks, chunksize=8))
    else:
        reports = [summand_report(*t) for t in tasks]
    total = sum((r.series_equivariant for r in reports), Poly.zero())
    return SplittingTable(g, n, reports, total, hom_series(g, n))


def localization_caveat(g: GroupFamily) -> str:
    if g.kind is Kind.U:
        return f"series valid after inverting m! = {g.weyl_order}"
    return f"series valid after inverting 2^m*m! = {g.weyl_order}"

