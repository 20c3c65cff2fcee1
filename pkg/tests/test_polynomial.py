from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from spinstar.polynomial import PolynomialInN as P

fractions = st.fractions(-1000, 1000, max_denominator=50)
polys = st.lists(fractions, max_size=6).map(P)


def test_zero_polynomial():
    z = P()
    assert z.degree == -1 and z == P([0, 0])
    assert z(7) == 0


def test_str_and_parse():
    p = P([0, -2, 5, -4, Fraction(3, 2)])
    assert str(p) == "-2N + 5N^2 - 4N^3 + 3/2*N^4"
    assert P.from_strings(p.to_strings()) == p


def test_float_evaluation():
    assert P([1, 2])(0.5) == pytest.approx(2.0)
    assert isinstance(P([1, 2])(3), Fraction)


@given(polys)
def test_interpolation_recovers_polynomial(p):
    points = [(n, p(n)) for n in range(1, max(p.degree, 0) + 2)]
    assert P.interpolate(points) == p


@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a - a).degree == -1


@given(polys, st.integers(-20, 20))
def test_evaluation_is_homomorphism(p, n):
    q = p * p + P.variable()
    assert q(n) == p(n) ** 2 + n


def test_power_and_division():
    n = P.variable()
    assert (n + 1) ** 2 == P([1, 2, 1])
    assert (P([2, 4]) / 2) == P([1, 2])
    assert hash(P([1, 2])) == hash(P([1, 2, 0]))
