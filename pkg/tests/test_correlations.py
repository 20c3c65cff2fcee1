import math
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from spinstar.correlations import (
    asymptotic_value,
    correlation_table,
    polynomial_from_json,
    polynomial_to_json,
    q_polynomial,
    q_value,
    r_polynomial,
    r_value,
)
from spinstar.errors import DomainError
from spinstar.oracle import trace_word
from spinstar.polynomial import PolynomialInN as P

# published closed forms
PUBLISHED = {
    "Q1": ((1, 0), P([0, F(1, 2)])),
    "Q2": ((2, 0), P([0, 0, F(1, 2)])),
    "Q3": ((3, 0), P([0, F(1, 2), F(-3, 4), F(3, 4)])),
    "Q4": ((4, 0), P([0, -2, 5, -4, F(3, 2)])),
    "R_1^1": ((1, 1), P([0, F(-1, 2), F(1, 2)])),
    "R^1_2": ((2, 1), P([0, F(1, 2), F(-5, 4), F(3, 4)])),
    "R^1_3": ((3, 1), P([0, F(-5, 2), F(23, 4), F(-19, 4), F(3, 2)])),
}


@pytest.mark.parametrize("name", PUBLISHED)
def test_published_polynomial(name):
    (a, b), expected = PUBLISHED[name]
    assert r_polynomial(a, b) == expected


def test_published_values():
    assert q_value(3, 1) == F(1, 2)
    assert r_value(1, 1, 2) == 1


@pytest.mark.parametrize("k", range(1, 9))
def test_leading_order_law(k):
    p = q_polynomial(k)
    assert p.degree == k and p.leading == F(math.factorial(k), 2**k)


def test_asymptotic_ratio():
    # [DERIVED] (50 - 7500 + 750000)/750000 from the Q3 polynomial
    assert float(q_value(3, 100)) / asymptotic_value(3, 100) == pytest.approx(742550 / 750000, rel=1e-15)


@given(st.integers(0, 5), st.integers(0, 5), st.integers(1, 40))
def test_polynomial_matches_spectral_sum(a, b, n):
    if a + b == 0:
        return
    assert r_polynomial(a, b)(n) == r_value(a, b, n)


@given(st.integers(0, 4), st.integers(0, 4), st.integers(1, 6))
def test_dense_trace_oracle(a, b, n):
    if not 0 < a + b <= 4:
        return
    assert trace_word(["pm"] * a + ["mp"] * b, n) == r_value(a, b, n)


def test_symmetry_in_a_b():
    # J+J- and J-J+ have the same spectrum up to the m -> -m reflection
    for a, b in [(1, 2), (2, 3), (0, 4)]:
        assert r_polynomial(a, b) == r_polynomial(b, a)


def test_empty_bath_and_bad_args():
    with pytest.raises(DomainError):
        r_value(2, 1, 0)
    with pytest.raises(DomainError):
        r_value(-1, 0, 3)
    with pytest.raises(DomainError):
        r_polynomial(0, 0)


def test_json_round_trip():
    data = polynomial_to_json(2, 0, q_polynomial(2))
    assert data == {"a": 2, "b": 0, "coeffs": ["0", "0", "1/2"]}
    assert polynomial_from_json(data) == (2, 0, q_polynomial(2))


def test_table():
    t = correlation_table(4)
    assert t.q(4) == PUBLISHED["Q4"][1]
