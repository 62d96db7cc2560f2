import json
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from phiseries.qseries import (
    NotAUnit, TruncatedSeries, add, euler_infinity, invert_unit, mul, one_minus_q, pochhammer, theta_h,
)


def S(*c, order=None):
    return TruncatedSeries(c, order)


def partitions(n):
    # p(n) by the standard coin-change recurrence, independent of the series code
    p = [1] + [0] * n
    for part in range(1, n + 1):
        for k in range(part, n + 1):
            p[k] += p[k - part]
    return p


def test_construction_pads_and_truncates():
    s = TruncatedSeries([1, 2, 3, 4], 2)
    assert s.coeffs == (1, 2, 3) and s.order == 2
    assert TruncatedSeries([5], 3).coeffs == (5, 0, 0, 0)
    with pytest.raises(ValueError):
        TruncatedSeries([], None)


def test_add_examples():
    assert add(S(1, -1, order=5), S(0, 1, order=5)) == TruncatedSeries.one(5)
    s = euler_infinity(5)
    assert add(TruncatedSeries.zero(5), s) == s
    assert add(s, -s) == TruncatedSeries.zero(5)


def test_mixed_orders_truncate_to_smaller():
    s = add(euler_infinity(10), euler_infinity(4))
    assert s.order == 4
    assert mul(euler_infinity(3), euler_infinity(9)).order == 3


def test_mul_examples():
    geo = TruncatedSeries([1] * 11, 10)
    assert mul(one_minus_q(10), geo) == TruncatedSeries.one(10)
    assert pochhammer(2, 3) == S(1, -1, -1, 1)


def test_h4_h3_squared_prefix():
    # expanded by hand from h4 = 1 - q + q^3 - ..., h3 = 1 - q - q^2 + q^5 + ...
    s = theta_h(4, 20) * theta_h(3, 20) ** 2
    # h3^2 = 1 - 2q - q^2 + 2q^3 + q^4 + 2q^5 + ...
    assert s.coeffs[:6] == (1, -3, 1, 4, -3, 0)


def test_invert_examples():
    assert invert_unit(one_minus_q(8)) == TruncatedSeries([1] * 9, 8)
    assert invert_unit(TruncatedSeries.one(4)) == TruncatedSeries.one(4)
    assert invert_unit(euler_infinity(10)).coeffs == tuple(partitions(10))
    assert invert_unit(S(-1, 2, 0, 1)) * S(-1, 2, 0, 1) == TruncatedSeries.one(3)


def test_not_a_unit():
    with pytest.raises(NotAUnit):
        invert_unit(S(2, 1))
    with pytest.raises(NotAUnit):
        invert_unit(S(0, 1))


def test_euler_infinity():
    s = euler_infinity(15)
    want = [0] * 16
    for k, c in ((0, 1), (1, -1), (2, -1), (5, 1), (7, 1), (12, -1), (15, -1)):
        want[k] = c
    assert list(s) == want
    assert euler_infinity(0) == TruncatedSeries.one(0)
    assert euler_infinity(30) == theta_h(3, 30)


def test_euler_against_product():
    N = 25
    prod = TruncatedSeries.one(N)
    for n in range(1, N + 1):
        prod = prod * TruncatedSeries.monomial(0, N) - prod * TruncatedSeries.monomial(n, N)
    assert prod == euler_infinity(N)


def test_pochhammer():
    assert pochhammer(0, 7) == TruncatedSeries.one(7)
    for n in (6, 7, 20):
        assert pochhammer(n, 5) == euler_infinity(5)
    with pytest.raises(ValueError):
        pochhammer(-1, 3)


def test_pochhammer_q_binomial_check():
    # (q)_n / ((q)_k (q)_{n-k}) at q -> 1 counts subsets; check via q = 1 sums
    n, k, N = 6, 2, 40
    qbin = pochhammer(n, N) * invert_unit(pochhammer(k, N)) * invert_unit(pochhammer(n - k, N))
    assert sum(qbin.coeffs) == comb(n, k)
    assert all(c == 0 for c in qbin.coeffs[k * (n - k) + 1:])


def test_theta_small_indices():
    assert theta_h(1, 12) == TruncatedSeries.zero(12)
    assert theta_h(2, 12) == TruncatedSeries.one(12)
    with pytest.raises(ValueError):
        theta_h(0, 3)


def test_theta_h4():
    want = [0] * 16
    for k, c in ((0, 1), (1, -1), (3, 1), (6, -1), (10, 1), (15, -1)):
        want[k] = c
    assert list(theta_h(4, 15)) == want


def test_theta_h3_is_euler_through_100():
    for N in (0, 1, 7, 50, 100):
        assert theta_h(3, N) == euler_infinity(N)


@pytest.mark.parametrize("b", range(3, 12))
def test_theta_starts_one_minus_q(b):
    h = theta_h(b, b + 2)
    assert h[0] == 1 and h[1] == -1
    assert all(h[k] == 0 for k in range(2, b - 1))
    assert h[b - 1] == (1 if b % 2 == 0 else -1)


def test_serialization():
    s = TruncatedSeries([1, -3, 10**30], 2)
    d = json.loads(s.to_json())
    assert d == {"order": 2, "coeffs": ["1", "-3", str(10**30)]}
    assert TruncatedSeries.from_json(s.to_json()) == s
    with pytest.raises(ValueError):
        TruncatedSeries.from_dict({"order": 3, "coeffs": ["1"]})


def test_text_and_csv():
    s = TruncatedSeries([1, -3, 3, 0, -1, 2], 5)
    assert s.to_text() == "1 - 3q + 3q^2 - q^4 + 2q^5"
    assert TruncatedSeries([0, 1], 1).to_text() == "q"
    assert TruncatedSeries.zero(2).to_text() == "0"
    assert TruncatedSeries([-1, 0, 1], 2).to_text() == "-1 + q^2"
    assert s.to_csv() == "0,1\n1,-3\n2,3\n3,0\n4,-1\n5,2\n"


def test_big_coefficients_are_exact():
    s = invert_unit(euler_infinity(400))
    assert s[400] == 6727090051741041926  # p(400), beyond 2^53
    assert s.coeffs == tuple(partitions(400))


series = st.lists(st.integers(-50, 50), min_size=1, max_size=9).map(lambda c: TruncatedSeries(c, 8))
units = st.tuples(st.sampled_from([1, -1]), st.lists(st.integers(-20, 20), max_size=8)).map(
    lambda t: TruncatedSeries([t[0]] + t[1], 8))


@settings(max_examples=80, deadline=None)
@given(series, series, series)
def test_ring_laws(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * TruncatedSeries.one(8) == a
    assert a + (-a) == TruncatedSeries.zero(8)


@settings(max_examples=80, deadline=None)
@given(units)
def test_inverse_law(u):
    assert u * invert_unit(u) == TruncatedSeries.one(8)
    assert invert_unit(invert_unit(u)) == u


@settings(max_examples=40, deadline=None)
@given(series, st.integers(0, 4))
def test_power_matches_repeated_product(a, e):
    p = TruncatedSeries.one(8)
    for _ in range(e):
        p = p * a
    assert a ** e == p
