"""Mod-p Poincare series of the compactified commuting variety ``C_n(u_p)^+``.

Valid for a prime ``p`` and even ``n >= 4``, where the Euler class of the
relevant sphere bundle over the unordered flag manifold ``U(p)/N`` vanishes
and the Gysin sequence splits.  Coefficients are dimensions over ``F_p``.
"""
from __future__ import annotations

from collections import Counter
from itertools import combinations

from .errors import DomainError
from .poly import Poly, prod
from .poset import is_prime

GYSIN = "Gysin assembly 1 + t^(n+1)(P-1) + t^(np)P over U(p)/N"
CLOSED = "closed formula 1 + t^(np) + (t^(n+1) + t^(np))(t^(2p-3) + t^(2p-2)) prod_(k<=p-2)(1 + t^(2k-1))"


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")


def _check_arity(n: int) -> None:
    if n % 2:
        raise DomainError(f"odd arity {n}: the Serre differentials are not determined")
    if n < 4:
        raise DomainError(f"arity {n}: only even n >= 4 is covered (n = 2 has a nonzero Euler class)")


def _odd_factor(p: int) -> Poly:
    return prod(Poly.one() + Poly.monomial(2 * k - 1) for k in range(1, p - 1))


def flag_unordered_series(p: int) -> Poly:
    """Mod-p series of ``U(p)/N``; for ``p = 2`` this is ``RP^2``."""
    _check_prime(p)
    return Poly.one() + (Poly.monomial(2 * p - 3) + Poly.monomial(2 * p - 2)) * _odd_factor(p)


def guerra_jana_degrees(p: int) -> Counter:
    """Degrees of the additive basis ``1, alpha_S, gamma_S`` (``S`` in ``{1..p-2}``)."""
    _check_prime(p)
    if p == 2:
        raise DomainError("the basis description covers odd primes only")
    degrees: Counter = Counter({0: 1})
    pool = range(1, p - 1)
    for size in range(len(pool) + 1):
        for S in combinations(pool, size):
            extra = sum(2 * i - 1 for i in S)
            degrees[2 * p - 3 + extra] += 1
            degrees[2 * p - 2 + extra] += 1
    return degrees


def degrees_to_series(degrees: Counter) -> Poly:
    top = max(degrees)
    return Poly([degrees.get(k, 0) for k in range(top + 1)])


def euler_class_vanishes(n: int) -> bool:
    """Whether the mod-p Euler class of the sphere bundle is zero (even ``n`` only)."""
    if n % 2 or n < 2:
        raise DomainError(f"Euler class is only described for even n >= 2, got {n}")
    return n > 2


def cnup_modp_gysin(p: int, n: int) -> Poly:
    _check_prime(p)
    _check_arity(n)
    if not euler_class_vanishes(n):
        raise DomainError(f"nonzero Euler class for n={n}")
    base = flag_unordered_series(p)
    # Vanishing Euler class splits the Gysin sequence of the sphere bundle.
    return Poly.one() + (base - 1).shift(n + 1) + base.shift(n * p)


def cnup_modp_closed(p: int, n: int) -> Poly:
    _check_prime(p)
    _check_arity(n)
    head = Poly.one() + Poly.monomial(n * p)
    tail = (Poly.monomial(n + 1) + Poly.monomial(n * p)) * (
        Poly.monomial(2 * p - 3) + Poly.monomial(2 * p - 2)
    ) * _odd_factor(p)
    return head + tail


def closed_top_degree(p: int, n: int) -> int:
    return n * p + 2 * p - 2 + sum(2 * k - 1 for k in range(1, p - 1))


def h2p_c2_rank(p: int) -> int:
    """Rank of ``H^(2p)(C_2(u_p)^+; F_p)``; the class ``alpha_empty`` survives."""
    _check_prime(p)
    return 1
