from __future__ import annotations

import pytest

from homsplit.errors import DomainError
from homsplit.modp import (
    closed_top_degree,
    cnup_modp_closed,
    cnup_modp_gysin,
    degrees_to_series,
    euler_class_vanishes,
    flag_unordered_series,
    guerra_jana_degrees,
    h2p_c2_rank,
)
from homsplit.poly import Poly, parse

PRIMES = (2, 3, 5, 7)


def test_flag_series():
    assert flag_unordered_series(2) == parse("1 + t + t^2")
    assert flag_unordered_series(3) == parse("1 + t^3 + 2*t^4 + t^5")
    assert flag_unordered_series(5)(1) == 17


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_flag_total_rank(p):
    assert flag_unordered_series(p)(1) == 1 + 2 ** (p - 1)


def test_basis_degrees():
    assert sorted(guerra_jana_degrees(3).elements()) == [0, 3, 4, 4, 5]
    deg5 = guerra_jana_degrees(5)
    assert sum(deg5.values()) == 1 + 8 + 8
    assert min(d for d in deg5 if d) == 7
    with pytest.raises(DomainError):
        guerra_jana_degrees(2)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_basis_regenerates_series(p):
    assert degrees_to_series(guerra_jana_degrees(p)) == flag_unordered_series(p)


def test_euler_class():
    assert euler_class_vanishes(2) is False
    assert euler_class_vanishes(4) is True
    assert euler_class_vanishes(100) is True
    with pytest.raises(DomainError):
        euler_class_vanishes(3)


def test_small_cases():
    want = parse("1 + t^6 + t^7 + t^8 + t^9 + t^10")
    assert cnup_modp_gysin(2, 4) == want == cnup_modp_closed(2, 4)
    assert cnup_modp_gysin(3, 4) == parse("1 + t^8 + 2*t^9 + t^10 + t^12 + t^15 + 2*t^16 + t^17")
    assert cnup_modp_closed(3, 6) == cnup_modp_gysin(3, 6)


@pytest.mark.parametrize("p", PRIMES)
@pytest.mark.parametrize("n", [4, 6, 8, 10])
def test_closed_equals_gysin(p, n):
    closed = cnup_modp_closed(p, n)
    assert closed == cnup_modp_gysin(p, n)
    assert closed[0] == 1
    assert closed.degree == closed_top_degree(p, n)
    # The rational sphere S^(np) is a coefficientwise lower bound.
    rational = Poly.one() + Poly.monomial(n * p)
    assert all(closed[k] >= rational[k] for k in range(closed.degree + 1))


@pytest.mark.parametrize("n", [0, 2, 3, 5])
def test_uncovered_arities(n):
    with pytest.raises(DomainError):
        cnup_modp_closed(3, n)
    with pytest.raises(DomainError):
        cnup_modp_gysin(3, n)


def test_non_prime():
    with pytest.raises(DomainError):
        cnup_modp_closed(4, 4)
    with pytest.raises(DomainError):
        flag_unordered_series(1)


@pytest.mark.parametrize("p", [2, 3, 7])
def test_degree_2p_rank(p):
    assert h2p_c2_rank(p) == 1
