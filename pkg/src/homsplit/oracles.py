"""Independent brute-force references used by the self-checks.

Nothing here calls into the code paths it is meant to check.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

from .poly import Poly, prod
from .poset import IndexedPartition, enumerate_partitions, pattern_matrix


def brute_leq(mu: IndexedPartition, lam: IndexedPartition) -> bool:
    """Try every row permutation of ``M(lam)`` and every lowering of its ones."""
    rows_mu = pattern_matrix(mu)
    rows_lam = pattern_matrix(lam)
    ones = [(i, j) for i, row in enumerate(rows_lam) for j, bit in enumerate(row) if bit]
    target = sorted(rows_mu)
    reachable = set()
    for k in range(len(ones) + 1):
        for lowered in itertools.combinations(ones, k):
            mat = [list(r) for r in rows_lam]
            for i, j in lowered:
                mat[i][j] = 0
            reachable.add(tuple(tuple(r) for r in mat))
    for mat in reachable:
        for perm in itertools.permutations(mat):
            if list(perm) == target:
                return True
    return False


def brute_leq_table(n: int, m: int) -> dict:
    """``(mu, lam) -> bool`` for every pair, sharing the lowering sets per ``lam``."""
    elems = enumerate_partitions(n, m)
    table = {}
    for lam in elems:
        rows_lam = pattern_matrix(lam)
        ones = [(i, j) for i, row in enumerate(rows_lam) for j, bit in enumerate(row) if bit]
        reach = set()
        for k in range(len(ones) + 1):
            for lowered in itertools.combinations(ones, k):
                mat = [list(r) for r in rows_lam]
                for i, j in lowered:
                    mat[i][j] = 0
                for perm in set(itertools.permutations(tuple(tuple(r) for r in mat))):
                    reach.add(perm)
        for mu in elems:
            table[mu, lam] = pattern_matrix(mu) in reach
    return table


def brute_hasse(n: int, m: int) -> set:
    elems = enumerate_partitions(n, m)
    rel = brute_leq_table(n, m)
    lt = {(a, b) for (a, b), v in rel.items() if v and a != b}
    return {
        (a, b) for (a, b) in lt
        if not any((a, c) in lt and (c, b) in lt for c in elems)
    }


def unitary_group_series(m: int) -> Poly:
    """Poincare polynomial of ``U(m)``: exterior algebra on degrees 1, 3, ..., 2m-1."""
    return prod(Poly.one() + Poly.monomial(2 * i - 1) for i in range(1, m + 1))


def stunted_projective_series(low: int, high: int) -> Poly:
    """Reduced rational series of ``RP^high / RP^(low-1)`` from cellular chains.

    Cells sit in dimensions ``low..high``; the boundary ``C_j -> C_(j-1)`` is
    multiplication by ``1 + (-1)^j`` (so 0 or 2), and is zero out of the
    bottom cell because the cells below it are collapsed.
    """
    def boundary_rank(j: int) -> int:
        if j <= low or j > high:
            return 0
        return 1 if (1 + (-1) ** j) else 0

    coeffs = [Fraction(0)] * (high + 1)
    for j in range(low, high + 1):
        coeffs[j] = Fraction(1 - boundary_rank(j) - boundary_rank(j + 1))
    return Poly(coeffs)


def so3_series(n: int) -> Poly:
    """``1 + sum_l C(n, l) * RP^(l+2)/RP^(l-1)`` over ``1 <= l <= n``."""
    total = Poly.one()
    for l in range(1, n + 1):
        total = total + stunted_projective_series(l, l + 2) * comb(n, l)
    return total


def signed_permutation_matrix(perm, signs):
    m = len(perm)
    mat = [[0] * m for _ in range(m)]
    for i, (j, s) in enumerate(zip(perm, signs)):
        mat[j][i] = s
    return mat


def int_det(mat) -> int:
    """Determinant by cofactor expansion (small matrices only)."""
    k = len(mat)
    if k == 0:
        return 1
    total = 0
    for j in range(k):
        if mat[0][j]:
            minor = [row[:j] + row[j + 1:] for row in mat[1:]]
            total += (-1) ** j * mat[0][j] * int_det(minor)
    return total
