import itertools
import random

import pytest
from hypothesis import given, strategies as st

from precanon.kostka import Kostka
from precanon.qpoly import ONE, ZERO, QPoly
from precanon.rootsys import RootSystem


@pytest.fixture(scope="module")
def kk():
    return {key: Kostka(RootSystem.build(*key)) for key in [("A", 1), ("A", 2), ("A", 3), ("A", 4)]}


def count_decompositions(beta, roots):
    """Plain backtracking count, independent of the memoised DP."""
    if not any(beta):
        return 1
    if not roots:
        return 0
    r, rest = roots[0], roots[1:]
    total = 0
    cur = tuple(beta)
    while all(x >= 0 for x in cur):
        total += count_decompositions(cur, rest)
        cur = tuple(x - y for x, y in zip(cur, r))
    return total


def test_kostant_examples(kk):
    k = kk["A", 2]
    assert k.kostant_q((0, 0)) == ONE
    assert k.kostant_q((1, 0)) == QPoly([0, 1])
    assert k.kostant_q((1, 1)) == QPoly([0, 1, 1])
    assert k.kostant_q((-1, 2)) == ZERO


def test_kostka_examples(kk):
    assert kk["A", 2].kostka_foulkes((3, 1), (3, 1)) == ONE
    assert kk["A", 2].kostka_foulkes((1, 1), (0, 0)) == QPoly([0, 1, 1])
    assert kk["A", 1].kostka_foulkes((2,), (0,)) == QPoly([0, 1])


def test_adjoint_zero_weight_a3(kk):
    # zero weight of the adjoint of sl4 has multiplicity 3 = rank
    p = kk["A", 3].kl_entry((0, 0, 0), (1, 0, 1))
    assert p == QPoly([0, 1, 1, 1])
    assert kk["A", 3].freudenthal_mult((1, 0, 1), (0, 0, 0)) == 3


def test_kl_entry_conventions(kk):
    k = kk["A", 3]
    assert k.kl_entry((1, 1, 1), (1, 1, 1)) == ONE
    assert k.kl_entry((0, 1, 0), (1, 0, 0)) == ZERO
    assert k.kl_entry((2, 0, 0), (0, 1, 0)) == ZERO


def test_freudenthal_examples(kk):
    k = kk["A", 2]
    assert k.freudenthal_mult((2, 1), (2, 1)) == 1
    assert k.freudenthal_mult((1, 1), (0, 0)) == 2
    assert k.freudenthal_mult((1, 0), (0, 1)) == 0
    # non-dominant weights take the multiplicity of their dominant conjugate
    assert k.freudenthal_mult((1, 1), (-1, 2)) == 1


@pytest.mark.parametrize("key", [("A", 2), ("A", 3), ("A", 4)])
def test_kostant_counts_match_enumeration(kk, key):
    k = kk[key]
    roots = list(k.rs.positive_roots)
    n = k.rs.rank
    for beta in itertools.product(range(4), repeat=n):
        if sum(beta) > 8:
            continue
        assert k.kostant_q(beta)(1) == count_decompositions(beta, roots)


def test_root_order_does_not_matter():
    rs = RootSystem.build("A", 3)
    roots = list(rs.positive_roots)
    random.Random(3).shuffle(roots)
    a, b = Kostka(rs), Kostka(rs, roots=roots)
    for beta in itertools.product(range(3), repeat=3):
        assert a.kostant_q(beta) == b.kostant_q(beta)


@given(st.lists(st.integers(0, 3), min_size=3, max_size=3))
def test_kl_column_is_positive(lam):
    k = Kostka(RootSystem.build("A", 3))
    lam = tuple(lam)
    col = k.kl_column(lam)
    assert col[lam] == ONE
    for mu, p in col.items():
        assert p.is_nonneg()
        if mu != lam:
            assert p.coeffs[0] == 0
            assert p(1) == k.freudenthal_mult(lam, mu)


def test_threaded_use_is_pure():
    from concurrent.futures import ThreadPoolExecutor

    rs = RootSystem.build("A", 3)
    shared = Kostka(rs)
    pairs = [(lam, mu) for lam in rs.box(2) for mu in rs.dominant_below(lam)]
    with ThreadPoolExecutor(4) as ex:
        got = list(ex.map(lambda p: shared.kostka_foulkes(*p), pairs))
    fresh = Kostka(rs)
    assert got == [fresh.kostka_foulkes(*p) for p in pairs]
