"""End-to-end acceptance checks, shared by ``homsplit selftest`` and the test suite."""
from __future__ import annotations

import time
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import modp, numstrat, oracles, series
from .poly import Poly, parse
from .poset import IndexedPartition, binary_sequences, enumerate_partitions, leq
from .weyl import family

# Hom(Z^2, U(2)) summands, sphere wedges read as Poincare polynomials and the
# top commuting variety read rationally as S^4.
U2_Z2_SUMMANDS = {
    (2, 0, 0, 0): "1",
    (0, 2, 0, 0): "t^4",
    (0, 0, 2, 0): "t^4",
    (0, 0, 0, 2): "t^4",
    (1, 1, 0, 0): "t + t^3",
    (1, 0, 1, 0): "t + t^3",
    (1, 0, 0, 1): "t^2 + t^4",
    (0, 1, 1, 0): "t^2 + t^4",
    (0, 1, 0, 1): "t^3 + t^5",
    (0, 0, 1, 1): "t^3 + t^5",
}
HOM_Z2_U2 = "1 + 2*t + 2*t^2 + 4*t^3 + 5*t^4 + 2*t^5"
Q2_U2 = "2*t^2 + 2*t^3 + 3*t^4 + 2*t^5"

UNITARY_RANGE = [(n, m) for n in (1, 2, 3) for m in (1, 2, 3, 4)]
SYMPLECTIC_RANGE = [(n, m) for n in (1, 2, 3) for m in (1, 2, 3)]


@dataclass
class Outcome:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float
    limit: float | None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        budget = f" (limit {self.limit:g}s)" if self.limit else ""
        return f"[{status}] {self.number:2d}. {self.name}: {self.detail} [{self.seconds:.2f}s{budget}]"


@dataclass
class Criterion:
    number: int
    name: str
    run: Callable[..., tuple[bool, str]]
    limit: float | None = None

    def evaluate(self, **kwargs) -> Outcome:
        start = time.perf_counter()
        try:
            ok, detail = self.run(**kwargs)
        except Exception as exc:  # reported, not swallowed
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        elapsed = time.perf_counter() - start
        if self.limit is not None and elapsed >= self.limit:
            ok, detail = False, f"{detail}; exceeded {self.limit:g}s"
        return Outcome(self.number, self.name, ok, detail, elapsed, self.limit)


def _groups():
    for n, m in UNITARY_RANGE:
        yield family("U", m), n
    for n, m in SYMPLECTIC_RANGE:
        yield family("Sp", m), n


def u2_summand_table(**_) -> tuple[bool, str]:
    table = series.splitting_table(family("U", 2), 2)
    got = {r.partition.parts: r.series_equivariant for r in table.reports}
    want = {k: parse(v) for k, v in U2_Z2_SUMMANDS.items()}
    if len(got) != 10:
        return False, f"{len(got)} summands instead of 10"
    bad = [k for k in want if got.get(k) != want[k]]
    return not bad, "10 summands match" if not bad else f"mismatch at {bad}"


def splitting_identity(**_) -> tuple[bool, str]:
    bad = []
    for g, n in _groups():
        table = series.splitting_table(g, n)
        if not table.identity_holds:
            bad.append(f"{g} n={n}")
    return not bad, "sum of summands = Hom series on all ranges" if not bad else f"fails for {bad}"


def model_agreement(**_) -> tuple[bool, str]:
    bad, count = [], 0
    for g, n in _groups():
        for lam in enumerate_partitions(n, g.rank):
            count += 1
            if series.summand_series_closed(g, lam) != series.summand_series_equivariant(g, lam):
                bad.append(f"{g} {lam.label()}")
    return not bad, f"{count} summands agree" if not bad else f"{len(bad)} mismatches, e.g. {bad[:3]}"


def classical_oracle(**_) -> tuple[bool, str]:
    bad = [m for m in range(1, 7) if series.hom_series(family("U", m), 1) != oracles.unitary_group_series(m)]
    return not bad, "U(m) = prod(1 + t^(2i-1)) for m <= 6" if not bad else f"fails for m={bad}"


def example_su2(**_) -> tuple[bool, str]:
    got = series.hom_series(family("U", 2), 2)
    return got == parse(HOM_Z2_U2), got.render()


def adem_cohen(**_) -> tuple[bool, str]:
    bad = []
    for g, n in _groups():
        if series.adem_cohen_series(g, n) != series.hom_series(g, n):
            bad.append(f"{g} n={n}")
    q2 = series.hom_mod_S_series(family("U", 2), 2)
    if q2 != parse(Q2_U2):
        bad.append(f"Q_2(U(2)) = {q2}")
    return not bad, f"identity holds; Q_2(U(2)) = {q2}" if not bad else f"fails for {bad}"


def modp_identity(**_) -> tuple[bool, str]:
    bad = []
    for p in (2, 3, 5, 7):
        for n in (4, 6, 8):
            if modp.cnup_modp_closed(p, n) != modp.cnup_modp_gysin(p, n):
                bad.append((p, n))
    if modp.flag_unordered_series(2) != parse("1 + t + t^2"):
        bad.append("U(2)/N")
    for p in (3, 5, 7, 11, 13):
        if modp.degrees_to_series(modp.guerra_jana_degrees(p)) != modp.flag_unordered_series(p):
            bad.append(f"basis p={p}")
    return not bad, "closed = Gysin; basis regenerates series" if not bad else f"fails: {bad}"


def char0_monomials(**_) -> tuple[bool, str]:
    bad, count = [], 0
    for kind, top in (("U", 4), ("Sp", 3)):
        for m in range(1, top + 1):
            g = family(kind, m)
            for n in range(1, 5):
                for a in binary_sequences(n):
                    l = sum(a)
                    lam = IndexedPartition.concentrated(n, m, a)
                    if l == 0:
                        expect = 0
                    elif l % 2 == 0:
                        expect = l * m
                    else:
                        expect = g.dim + (l - 1) * m
                    count += 1
                    if series.summand_series_equivariant(g, lam) != Poly.monomial(expect):
                        bad.append(f"{g} {lam.label()}")
    return not bad, f"{count} single-block summands are monomials" if not bad else f"fails: {bad[:3]}"


def so3_example(**_) -> tuple[bool, str]:
    g = family("SOodd", 1)
    bad = [n for n in range(1, 5) if series.hom_series(g, n) != oracles.so3_series(n)]
    return not bad, "matches stunted projective spaces for n <= 4" if not bad else f"fails for n={bad}"


def numerical_suite(seeds: int = 100, **_) -> tuple[bool, str]:
    tol = numstrat.Tolerances(one=1e-6, margin=0.1)
    fails = []
    parts = [lam for n in (1, 2, 3) for m in (1, 2, 3, 4) for lam in enumerate_partitions(n, m)]
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        for lam in parts:
            for seed in range(seeds):
                t = numstrat.random_commuting_tuple(lam, seed, tol)
                if numstrat.classify(t, seed, tol).partition != lam:
                    fails.append(f"round trip {lam.label()} seed {seed}")
                rng = np.random.default_rng(10_000 + seed)
                moved = t.conjugate(numstrat.haar_unitary(lam.m, rng))
                if numstrat.classify(moved, seed + 1, tol).partition != lam:
                    fails.append(f"conjugation {lam.label()} seed {seed}")
        for seed in range(seeds):
            m, n = seed % 6 + 1, seed % 3 + 1
            x = numstrat.random_commuting_skew(m, n, seed)
            err = np.max(np.abs(numstrat.cayley_inv(numstrat.cayley(x)).matrices - x.matrices))
            if err > 1e-10:
                fails.append(f"cayley_inv o cayley {m=} {seed=}: {err:.2e}")
            a = numstrat.random_commuting_tuple(
                IndexedPartition.top(n, m), seed, numstrat.Tolerances(margin=0.1)
            )
            err = np.max(np.abs(numstrat.cayley(numstrat.cayley_inv(a)).matrices - a.matrices))
            if err > 1e-10:
                fails.append(f"cayley o cayley_inv {m=} {seed=}: {err:.2e}")
        for i, seed in enumerate(range(seeds)):
            lam = parts[(7 * i) % len(parts)]
            t = numstrat.random_commuting_tuple(lam, seed, tol)
            dec = numstrat.block_decompose(t, seed, tol)
            err = np.max(np.abs(numstrat.reassemble(dec).matrices - t.matrices))
            if err > 1e-10:
                fails.append(f"reassembly {lam.label()} seed {seed}: {err:.2e}")
            chain = numstrat.closure_probe(lam, 2 * lam.m * lam.n, seed, tol=tol)
            if chain[-1] != IndexedPartition.bottom(lam.n, lam.m) or not all(
                leq(b, a) for a, b in zip(chain, chain[1:])
            ):
                fails.append(f"closure chain {lam.label()} seed {seed}")
    return not fails, f"{len(parts)} strata x {seeds} seeds" if not fails else f"{len(fails)} failures: {fails[:3]}"


def poset_oracle(**_) -> tuple[bool, str]:
    bad, count = [], 0
    for n, m in ((1, 5), (2, 4), (3, 3)):
        table = oracles.brute_leq_table(n, m)
        for (mu, lam), want in table.items():
            count += 1
            if leq(mu, lam) != want:
                bad.append((mu.label(), lam.label()))
    return not bad, f"{count} pairs agree" if not bad else f"{len(bad)} disagreements: {bad[:3]}"


CRITERIA = [
    Criterion(1, "Hom(Z^2, U(2)) summand table", u2_summand_table, 1.0),
    Criterion(2, "splitting identity", splitting_identity, 60.0),
    Criterion(3, "model agreement", model_agreement),
    Criterion(4, "classical U(m) oracle", classical_oracle),
    Criterion(5, "Hom(Z^2, U(2)) example", example_su2),
    Criterion(6, "Adem-Cohen identity", adem_cohen),
    Criterion(7, "mod-p identity", modp_identity, 1.0),
    Criterion(8, "single-block monomials", char0_monomials),
    Criterion(9, "SO(3) stunted projective oracle", so3_example),
    Criterion(10, "numerical strata suite", numerical_suite, 120.0),
    Criterion(11, "poset order oracle", poset_oracle),
]


def run_all(seeds: int = 100, only=None) -> list[Outcome]:
    out = []
    for c in CRITERIA:
        if only and c.number not in only:
            continue
        out.append(c.evaluate(seeds=seeds))
    return out
