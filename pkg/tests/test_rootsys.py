import itertools
import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from precanon.rootsys import RootSystem, RootSystemError, cartan_matrix, root_name


@pytest.fixture(scope="module")
def a3():
    return RootSystem.build("A", 3)


@pytest.fixture(scope="module")
def a4():
    return RootSystem.build("A", 4)


def test_a3_roots(a3):
    assert len(a3.positive_roots) == 6
    assert sorted(sum(r) for r in a3.positive_roots) == [1, 1, 1, 2, 2, 3]


def test_a1_and_d4():
    assert RootSystem.build("A", 1).positive_roots == ((1,),)
    d4 = RootSystem.build("D", 4)
    assert len(d4.positive_roots) == 12
    assert d4.highest_height == 5


@pytest.mark.parametrize("n", range(1, 8))
def test_type_a_counts(n):
    rs = RootSystem.build("A", n)
    assert len(rs.positive_roots) == n * (n + 1) // 2
    for i in range(1, n + 1):
        assert len(rs.roots_of_height(i)) == n - i + 1
        assert set(rs.roots_of_height_at_least(i)) == {
            r for j in range(i, n + 1) for r in rs.roots_of_height(j)}
    for r in rs.positive_roots:
        nz = [k for k, x in enumerate(r) if x]
        assert sum(r) == nz[-1] - nz[0] + 1


def test_root_order_is_height_then_lex(a4):
    keys = [(sum(r), r) for r in a4.positive_roots]
    assert keys == sorted(keys)


@pytest.mark.parametrize("family, rank", [("A", 4), ("D", 5)])
def test_height_additive(family, rank):
    rs = RootSystem.build(family, rank)
    roots = set(rs.positive_roots)
    for a, b in itertools.product(roots, repeat=2):
        s = tuple(x + y for x, y in zip(a, b))
        if s in roots:
            assert sum(s) == sum(a) + sum(b)


def test_root_to_weight(a3, a4):
    assert a3.root_to_weight((1, 1, 1)) == (1, 0, 1)
    assert a4.root_to_weight((1, 1, 1, 1)) == (1, 0, 0, 1)
    assert a4.root_to_weight((0, 1, 0, 0)) == (-1, 2, -1, 0)
    assert a4.weight_to_root((1, 0, 0, 1)) == (1, 1, 1, 1)
    assert a3.weight_to_root((1, 0, 0)) is None


def test_dominance_examples(a3):
    assert a3.dominance_leq((0, 1, 0), (1, 1, 1))
    assert a3.dominance_leq((2, 0, 1), (2, 0, 1))
    assert not a3.dominance_leq((1, 0, 0), (0, 1, 0))


def test_leq_i_examples(a3, a4):
    assert a3.leq_i((0, 1, 0), (1, 1, 1), 3) == {(1, 1, 1): 1}
    assert a3.leq_i((1, 1, 1), (1, 1, 1), 2) == {}
    lam = (2, 1, 1, 2)
    mu = tuple(l - x - y for l, x, y in zip(lam, a4.root_to_weight((1, 1, 0, 0)),
                                          a4.root_to_weight((0, 0, 1, 1))))
    assert a4.leq_i(mu, lam, 2) == {(1, 1, 0, 0): 1, (0, 0, 1, 1): 1}
    with pytest.raises(RootSystemError):
        a3.leq_i((0, 0, 0), (0, 0, 0), 4)


def test_leq_i_d4_search():
    d4 = RootSystem.build("D", 4)
    # highest root of height 5 equals itself, and two height-2 roots sum to a height-4 vector
    top = d4.roots_of_height(5)[0]
    lam = d4.root_to_weight(top)
    assert d4.leq_i((0, 0, 0, 0), lam, 5) == {top: 1}
    h2 = d4.roots_of_height(2)
    beta = tuple(x + y for x, y in zip(h2[0], h2[1]))
    got = d4.leq_i((0, 0, 0, 0), d4.root_to_weight(beta), 2)
    assert got is not None
    assert tuple(sum(c * r[k] for r, c in got.items()) for k in range(4)) == beta


def test_pairing(a3):
    for i in range(3):
        w = tuple(int(k == i) for k in range(3))
        for j in range(3):
            alpha = tuple(int(k == j) for k in range(3))
            assert a3.pairing(w, alpha) == int(i == j)
    assert a3.pairing(a3.rho, (1, 1, 1)) == 3
    a2 = RootSystem.build("A", 2)
    assert a2.pairing((0, 1), (1, 0)) == 0


def _weights(rank, lo, hi):
    return [tuple(w) for w in itertools.product(range(lo, hi + 1), repeat=rank)]


@pytest.mark.parametrize("family, rank, lo, hi", [("A", 2, -1, 3), ("A", 3, -1, 3),
                                                  ("A", 4, -1, 2), ("D", 4, -1, 2)])
def test_dominance_is_partial_order(family, rank, lo, hi):
    rs = RootSystem.build(family, rank)
    ws = _weights(rank, lo, hi)
    L = np.array([[rs.dominance_leq(a, b) for b in ws] for a in ws])
    assert L.diagonal().all()
    assert not (L & L.T & ~np.eye(len(ws), dtype=bool)).any()
    Li = L.astype(np.int64)
    assert not ((Li @ Li > 0) & ~L).any()


@pytest.mark.parametrize("rank", [2, 3, 4])
def test_leq_1_matches_dominance(rank):
    rs = RootSystem.build("A", rank)
    ws = rs.box(2)
    for mu, lam in itertools.product(ws, repeat=2):
        assert (rs.leq_i(mu, lam, 1) is not None) == rs.dominance_leq(mu, lam)


@pytest.mark.parametrize("family, rank, bound", [("A", 3, 3), ("A", 4, 2), ("D", 4, 2)])
def test_dominant_below_matches_brute_force(family, rank, bound):
    rs = RootSystem.build(family, rank)
    pool = _weights(rank, 0, 3 * bound + 2)
    for lam in rs.box(bound)[::7]:
        brute = {mu for mu in pool if rs.dominance_leq(mu, lam)}
        assert set(rs.dominant_below(lam)) == brute


def test_bad_cartan_rejected():
    with pytest.raises(RootSystemError):
        RootSystem.build("CUSTOM", cartan=((2, -1), (-2, 2)))   # not symmetric
    with pytest.raises(RootSystemError):
        RootSystem.build("CUSTOM", cartan=((2, -2), (-2, 2)))   # affine A1
    with pytest.raises(RootSystemError):
        cartan_matrix("D", 3)


def test_custom_matrix_matches_family():
    rs = RootSystem.build("CUSTOM", cartan=cartan_matrix("A", 3))
    assert rs.positive_roots == RootSystem.build("A", 3).positive_roots


def test_json(a3):
    obj = json.loads(a3.to_json())
    assert obj == {"family": "A", "rank": 3,
                   "positive_roots": [list(r) for r in a3.positive_roots]}
    assert obj["positive_roots"][0] == [0, 0, 1]


def test_root_names(a4):
    assert root_name(a4, (0, 1, 1, 0)) == "a23"
    assert root_name(a4, (1, 1, 1, 1)) == "a14"


@given(st.lists(st.integers(0, 4), min_size=3, max_size=3))
def test_scaled_height_monotone(w):
    rs = RootSystem.build("A", 3)
    lam = tuple(w)
    for mu in rs.dominant_below(lam):
        if mu != lam:
            assert rs.scaled_height(mu) < rs.scaled_height(lam)
