import itertools
import json
import random

import pytest

from phiseries.identify import BadConstantTerm, IdentifyResult, identify_theta_product, verify_product
from phiseries.nahm import compute_phi
from phiseries.plane_graph import edge_connect, polygon
from phiseries.qseries import TruncatedSeries, euler_infinity, theta_h


def prod(factors, N):
    s = TruncatedSeries.one(N)
    for b in factors:
        s = s * theta_h(b, N)
    return s


def test_examples():
    s = theta_h(4, 20) * theta_h(3, 20) * theta_h(3, 20)
    r = identify_theta_product(s)
    assert r.found and r.factors == (3, 3, 4) and r.verified_order == 20
    r = identify_theta_product(TruncatedSeries.one(10))
    assert r.found and r.factors == ()


def test_bad_constant_term():
    with pytest.raises(BadConstantTerm):
        identify_theta_product(TruncatedSeries([2, 1], 1))
    with pytest.raises(BadConstantTerm):
        identify_theta_product(TruncatedSeries([-1, 1], 1))


def test_result_json():
    r = IdentifyResult("found", (3, 4), 12)
    assert json.loads(r.to_json()) == {"status": "found", "factors": [3, 4], "verified_order": 12}


def test_verify_product():
    P3, P4 = polygon(3), polygon(4)
    g = edge_connect(P3, ("v1", "v2"), P4, ("v1", "v2"))
    assert verify_product(compute_phi(g, 15), (3, 4))
    assert verify_product(euler_infinity(15), [3])
    assert not verify_product(euler_infinity(15), [4])


def test_round_trip_random_multisets():
    rng = random.Random(11)
    N = 25
    seen = {}
    trials = 0
    while trials < 200:
        k = rng.randint(0, 4)
        ms = tuple(sorted(rng.randint(3, 9) for _ in range(k)))
        s = prod(ms, N)
        # construction check: distinct multisets with equal products would be ambiguous
        if s in seen and seen[s] != ms:
            continue
        seen[s] = ms
        trials += 1
        r = identify_theta_product(s, max_factors=4, b_max=9)
        assert r.found and r.factors == ms


def test_exhaustive_against_brute_force():
    # every multiset within small bounds, plus perturbed series that match nothing
    N, F, B = 12, 3, 7
    table = {}
    for k in range(F + 1):
        for ms in itertools.combinations_with_replacement(range(3, B + 1), k):
            table.setdefault(prod(ms, N), ms)
    rng = random.Random(5)
    samples = list(table.items())
    for s, ms in samples:
        r = identify_theta_product(s, F, B)
        assert r.found and verify_product(s, r.factors) and r.factors == ms
        c = list(s.coeffs)
        c[rng.randint(2, N)] += rng.choice([-1, 1])
        t = TruncatedSeries(c, N)
        r = identify_theta_product(t, F, B)
        assert r.found == (t in table)
        if r.found:
            assert r.factors == table[t]


def test_not_found_reports_bounds():
    s = prod((3, 5, 11), 20)
    r = identify_theta_product(s, max_factors=3, b_max=10)
    assert r.status == "not_found" and (r.max_factors, r.b_max) == (3, 10)
    assert identify_theta_product(s, max_factors=3, b_max=11).factors == (3, 5, 11)
    assert not identify_theta_product(s, max_factors=2, b_max=14).found


def test_lexicographically_least_when_ambiguous_at_low_order():
    # at order 2 every h_b with b >= 4 looks like 1 - q
    s = prod((5,), 2)
    assert identify_theta_product(s).factors == (4,)
