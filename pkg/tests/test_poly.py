from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from homsplit.poly import Poly, parse, prod

coeff = st.fractions(min_value=-20, max_value=20, max_denominator=6)
polys = st.lists(coeff, max_size=6).map(Poly)


def test_trim_and_degree():
    assert Poly([1, 2, 0, 0]).degree == 1
    assert Poly([0, 0]).degree == -1
    assert Poly.zero() == 0
    assert Poly.one() == 1


def test_render_and_parse():
    p = Poly([1, 2, 0, 0, 5])
    assert p.render() == "1 + 2*t + 5*t^4"
    assert parse(p.render()) == p
    assert parse("t^3 - 2*t").to_list() == [0, -2, 0, 1]
    assert Poly.zero().render() == "0"


def test_exact_division():
    num = Poly([1, 0, -1]) * Poly([1, 0, 0, 0, -1])
    assert num.exact_div(Poly([1, 0, -1])) == Poly([1, 0, 0, 0, -1])
    with pytest.raises(ArithmeticError):
        Poly([1, 1]).exact_div(Poly([1, 0, 1]))


def test_fraction_coefficients():
    p = Poly([1, 1]) / 2
    assert p[0] == Fraction(1, 2)
    assert not p.is_integral()
    assert p.to_list() == ["1/2", "1/2"]


def test_prod_and_shift():
    assert prod([]) == 1
    assert prod([Poly([1, 1])] * 3) == Poly([1, 3, 3, 1])
    assert Poly([1, 1]).shift(2) == Poly([0, 0, 1, 1])


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@given(polys, polys.filter(bool))
def test_divmod_identity(a, b):
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.degree < b.degree


@given(polys, st.integers(-3, 3))
def test_evaluation_is_a_homomorphism(a, x):
    assert (a * a)(x) == a(x) ** 2
