import itertools
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from precanon.qpoly import QPoly
from precanon.rootsys import RootSystem
from precanon.weyl import WeylGroup, WeylSizeError, dominant_rep, dominant_rep_many


def _q_int(d):
    return QPoly([1] * d)


def _product(degrees):
    out = QPoly([1])
    for d in degrees:
        out = out * _q_int(d)
    return out


@pytest.fixture(scope="module")
def groups():
    return {key: WeylGroup(RootSystem.build(*key))
            for key in [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("D", 4)]}


def test_sizes(groups):
    assert len(groups["A", 1]) == 2
    assert sorted(groups["A", 2].lengths.tolist()) == [0, 1, 1, 2, 2, 3]
    assert len(groups["A", 4]) == 120
    assert groups["A", 4].longest_length == 10
    assert len(groups["D", 4]) == 192


@pytest.mark.parametrize("key, degrees", [
    (("A", 2), [2, 3]), (("A", 3), [2, 3, 4]), (("A", 4), [2, 3, 4, 5]), (("D", 4), [2, 4, 4, 6]),
])
def test_poincare_factors(groups, key, degrees):
    assert groups[key].poincare() == _product(degrees)


def test_single_identity_and_longest(groups):
    for W in groups.values():
        assert (W.lengths == 0).sum() == 1
        assert (W.lengths == len(W.rs.positive_roots)).sum() == 1


@pytest.mark.parametrize("key", [("A", 2), ("A", 3), ("A", 4), ("D", 4)])
def test_phi_minus_size_is_length(groups, key):
    W = groups[key]
    for w in range(len(W)):
        assert len(W.phi_minus(w)) == W.lengths[w]


def test_phi_minus_examples(groups):
    W = groups["A", 2]
    assert W.phi_minus(0) == set()
    w0 = int(np.argmax(W.lengths))
    assert W.phi_minus(w0) == set(W.rs.positive_roots)
    s1 = int(W.mult[0, 0])
    assert W.phi_minus(s1) == {(1, 0)}


def test_dot_action(groups):
    W = groups["A", 2]
    s1 = int(W.mult[0, 0])
    assert W.dot_act(s1, (-2, 1)) == (0, 0)
    assert W.dot_act(0, (3, 1)) == (3, 1)
    for w in range(len(W)):
        assert W.dot_act(w, (-1, -1)) == (-1, -1)


def test_dominant_rep_examples():
    a2 = RootSystem.build("A", 2)
    rep = dominant_rep(a2, (2, 5))
    assert (rep.regular, rep.bar, rep.sign, rep.length) == (True, (2, 5), 1, 0)
    assert not dominant_rep(a2, (-1, 0)).regular
    rep = dominant_rep(a2, (-2, 1))
    assert (rep.regular, rep.bar, rep.sign, rep.length) == (True, (0, 0), -1, 1)


def test_stabilizer_poincare(groups):
    assert groups["A", 3].stabilizer_poincare((1, 2, 1)) == QPoly([1])
    assert groups["A", 2].stabilizer_poincare((0, 0)) == QPoly([1, 2, 2, 1])
    assert groups["A", 3].stabilizer_poincare((1, 0, 1)) == QPoly([1, 1])


def test_rank_cap():
    with pytest.raises(WeylSizeError):
        WeylGroup(RootSystem.build("A", 9))


weights3 = st.lists(st.integers(-8, 8), min_size=3, max_size=3).map(tuple)


@given(weights3, st.randoms(use_true_random=False))
def test_walk_independent_of_choice(lam, rnd):
    rs = RootSystem.build("A", 3)
    a = dominant_rep(rs, lam)
    b = dominant_rep(rs, lam, choose=rnd.choice)
    assert (a.regular, a.bar, a.sign) == (b.regular, b.bar, b.sign)
    assert a.length % 2 == b.length % 2


@given(weights3, st.integers(0, 2))
def test_simple_dot_flips_sign(lam, i):
    rs = RootSystem.build("A", 3)
    W = WeylGroup(rs)
    a = dominant_rep(rs, lam)
    mu = W.simple_dot(i, lam)
    b = dominant_rep(rs, mu)
    assert a.regular == b.regular
    if a.regular and mu != lam:
        assert a.bar == b.bar and a.sign == -b.sign


def test_walk_length_is_weyl_length(groups):
    W = groups["A", 3]
    lam = (2, 1, 3)
    for w in range(len(W)):
        rep = dominant_rep(W.rs, W.dot_act(w, lam))
        assert rep.bar == lam and rep.length == W.lengths[w]


@pytest.mark.parametrize("key", [("A", 3), ("D", 4)])
def test_vectorised_walk_matches(groups, key):
    rs = groups[key].rs
    rng = np.random.default_rng(0)
    ws = rng.integers(-6, 7, size=(400, rs.rank))
    regular, bar, parity = dominant_rep_many(rs, ws)
    for k, w in enumerate(ws):
        rep = dominant_rep(rs, tuple(int(x) for x in w))
        assert rep.regular == regular[k]
        if rep.regular:
            assert rep.bar == tuple(int(x) for x in bar[k])
            assert rep.length % 2 == parity[k]


@pytest.mark.parametrize("key", [("A", 2), ("A", 3)])
def test_singular_stabilizer_sign_sum(groups, key):
    W = groups[key]
    rng = random.Random(1)
    found = 0
    while found < 20:
        nu = tuple(rng.randint(-4, 4) for _ in range(W.rs.rank))
        if dominant_rep(W.rs, nu).regular:
            continue
        found += 1
        v = tuple(x + 1 for x in nu)
        stab = [w for w in range(len(W)) if W.act(w, v) == v]
        assert sum(int(W.signs[w]) for w in stab) == 0
