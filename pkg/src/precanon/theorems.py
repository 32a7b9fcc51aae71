"""Finite-instance verifiers for the closed-form decompositions.

Each verifier builds an independent combinatorial prediction and compares it
with the triangular-solve ground truth from :mod:`precanon.spherical`.
"""

from __future__ import annotations

import itertools
import json
import random
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

import numpy as np

from .qpoly import ONE, ZERO, QPoly
from .rootsys import RootSystem
from .spherical import CANON, SphElement, SphericalHecke
from .tables import table_prediction
from .weyl import dominant_rep

DEG_I_CAP = 10**6


@dataclass(frozen=True)
class VerifyReport:
    claim: str
    instance: dict
    passed: bool
    lhs: Optional[str] = None
    rhs: Optional[str] = None
    # False for findings that are reported but never fail a run
    asserted: bool = True

    @property
    def status(self) -> str:
        return "Pass" if self.passed else "Fail"

    def to_json_obj(self) -> dict:
        out = {"claim": self.claim, "instance": self.instance, "status": self.status,
               "asserted": self.asserted}
        if not self.passed:
            out["lhs"] = self.lhs
            out["rhs"] = self.rhs
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":"))


def summarize(reports: Iterable[VerifyReport]) -> dict:
    counts = defaultdict(lambda: {"pass": 0, "fail": 0})
    for r in reports:
        counts[r.claim]["pass" if r.passed else "fail"] += 1
    return {"summary": {k: counts[k] for k in sorted(counts)}}


def failed(reports: Iterable[VerifyReport]) -> list:
    return [r for r in reports if r.asserted and not r.passed]


@lru_cache(maxsize=None)
def context(family: str, rank: int) -> SphericalHecke:
    return SphericalHecke(RootSystem.build(family, rank))


# --- helpers -------------------------------------------------------------

def type_a_root(rank: int, j: int, k: int) -> tuple:
    """alpha_{j,k} = alpha_j + ... + alpha_k (1-based) in simple-root coordinates."""
    return tuple(1 if j - 1 <= t <= k - 1 else 0 for t in range(rank))


def named_root(rank: int, name: str) -> tuple:
    return type_a_root(rank, int(name[1]), int(name[2]))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _scale(c, a):
    return tuple(c * x for x in a)


def _render(rs: RootSystem, terms: dict) -> str:
    return SphElement(CANON, {w: p for w, p in terms.items() if p}).pretty(rs)


def _compare(claim, instance, rs, got: dict, want: dict, asserted=True) -> VerifyReport:
    got = {w: p for w, p in got.items() if p}
    want = {w: p for w, p in want.items() if p}
    ok = got == want
    return VerifyReport(claim, instance, ok,
                        None if ok else _render(rs, got), None if ok else _render(rs, want),
                        asserted)


def _inst(H: SphericalHecke, lam, **extra) -> dict:
    d = {"family": H.rs.family, "rank": H.rs.rank, "lambda": list(lam)}
    d.update(extra)
    return d


def _require_type_a(H: SphericalHecke, rank: Optional[int] = None):
    if H.rs.family != "A" or (rank is not None and H.rs.rank != rank):
        want = f"A{rank}" if rank else "type A"
        raise ValueError(f"instance requires {want}, got {H.rs.label}")


# --- N^1 is standard; N^2 in N^1 ----------------------------------------

def verify_theorem12(H: SphericalHecke, lam) -> list:
    lam = tuple(lam)
    rs = H.rs
    n1 = H.precanonical(lam, 1)
    a = _compare("n1_is_standard", _inst(H, lam), rs, H.canon_to_std(n1).terms, {lam: ONE})
    rhs = SphElement(CANON, {})
    for mu in rs.dominant_below(lam):
        ht = sum(rs.weight_to_root(_sub(lam, mu)))
        rhs = rhs + H.precanonical(mu, 1).scale(QPoly.monomial(ht))
    b = _compare("n2_in_n1", _inst(H, lam), rs, H.precanonical(lam, 2).terms, rhs.terms)
    return [a, b]


# --- upper half in type A ----------------------------------------------------

def nhalf_levels(n: int) -> list:
    return [i for i in range(1, n + 1) if 2 * i >= n + 2]


def verify_nhalf(H: SphericalHecke, lam, i: int) -> VerifyReport:
    _require_type_a(H)
    rs = H.rs
    n = rs.rank
    if n < 2 or i not in nhalf_levels(n):
        raise ValueError(f"level {i} outside n/2+1 <= i <= n for A{n}")
    lam = tuple(lam)
    want = {}
    divisible = True
    for mu in rs.dominant_below(lam):
        if rs.leq_i(mu, lam, i) is None:
            continue
        ht = sum(rs.weight_to_root(_sub(lam, mu)))
        divisible &= ht % i == 0
        want[mu] = QPoly.monomial(ht // i)
    got = H.transition(lam, i).terms
    rep = _compare("upper_half", _inst(H, lam, i=i), rs, got, want)
    if not divisible:
        return VerifyReport(rep.claim, rep.instance, False, "height not divisible by i", rep.rhs)
    return rep


# --- A3 -------------------------------------------------------------------

def top_a3_prediction(lam) -> dict:
    """N^4 in the N^3 basis: sum over k <= min(a, c) of q^k at lam - k*alpha_13."""
    a, b, c = lam
    a13 = (1, 0, 1)
    return {_sub(lam, _scale(k, a13)): QPoly.monomial(k) for k in range(min(a, c) + 1)}


def i_lambda(rs: RootSystem, lam) -> dict:
    """mu -> set of d values over all (n, m, l) witnesses of membership in I_lam."""
    a12 = rs.root_to_weight((1, 1, 0))
    a23 = rs.root_to_weight((0, 1, 1))
    a13 = rs.root_to_weight((1, 1, 1))
    # lam - mu has root coordinates (n + l, n + m + l, m + l) and mu has
    # nonnegative root coordinates, so these bound the search
    rc = [int(x) // rs.det for x in rs.adj @ np.asarray(lam)]
    out = defaultdict(set)
    for n in range(rc[0] + 1):
        for m in range(rc[2] + 1):
            base = _sub(_sub(lam, _scale(n, a12)), _scale(m, a23))
            if rs.is_dominant(base):
                out[base].add(n + m)
            if not (base[1] == 0 and base[0] >= 0 and base[2] >= 0):
                continue
            for l in range(1, min(rc[0] - n, rc[2] - m) + 1):
                mu = _sub(base, _scale(l, a13))
                if rs.is_dominant(mu):
                    out[mu].add(n + m + 2 * l)
    return dict(out)


def _row_expected(rank: int, lam, terms) -> dict:
    out = defaultdict(lambda: ZERO)
    for coeffs, offsets in terms:
        w = tuple(lam)
        for name in offsets:
            w = _sub(w, _root_weight(rank, name))
        out[w] = out[w] + QPoly(coeffs)
    return dict(out)


@lru_cache(maxsize=None)
def _root_weight(rank: int, name: str) -> tuple:
    return RootSystem.build("A", rank).root_to_weight(named_root(rank, name))


def verify_a3(H: SphericalHecke, lam) -> list:
    _require_type_a(H, 3)
    rs = H.rs
    lam = tuple(lam)
    reps = [_compare("a3_top", _inst(H, lam), rs, H.transition(lam, 3).terms, top_a3_prediction(lam))]

    ilam = i_lambda(rs, lam)
    ambiguous = {mu: sorted(ds) for mu, ds in ilam.items() if len(ds) > 1}
    want = {mu: QPoly.monomial(min(ds)) for mu, ds in ilam.items()}
    r = _compare("a3_middle", _inst(H, lam), rs, H.transition(lam, 2).terms, want)
    if ambiguous:
        r = VerifyReport(r.claim, r.instance, False, f"ambiguous d: {ambiguous}", r.rhs)
    reps.append(r)

    bottom = {mu: QPoly.monomial(sum(rs.weight_to_root(_sub(lam, mu))))
              for mu in rs.dominant_below(lam)}
    reps.append(_compare("a3_bottom", _inst(H, lam), rs, H.transition(lam, 1).terms, bottom))

    reps.append(table_report(H, lam, 3))
    return reps


def table_report(H: SphericalHecke, lam, rank: int) -> VerifyReport:
    pred = table_prediction(rank, lam)
    claim = f"a{rank}_table"
    if pred is None:
        return VerifyReport(claim, _inst(H, lam, rows=[]), False, "no row matches", "")
    rows, terms = pred
    got = H.expand_in_precanonical(H.precanonical(lam, 2), 3).terms
    return _compare(claim, _inst(H, lam, rows=list(rows)), H.rs, got, _row_expected(rank, lam, terms))


# --- A4 admissible combinations ------------------------------------------

A4_NAMES = ("a12", "a23", "a34", "a13", "a24", "a14")
A4_HEIGHT = {"a12": 2, "a23": 2, "a34": 2, "a13": 3, "a24": 3, "a14": 4}


def a4_combinations(rs: RootSystem, lam) -> dict:
    """mu -> list of all multiplicity vectors L over the height >= 2 roots with
    lam - Sigma L = mu dominant (no admissibility filter)."""
    lam = tuple(lam)
    vecs = [rs.root_to_weight(named_root(4, nm)) for nm in A4_NAMES]
    rvecs = [np.asarray(named_root(4, nm)) * rs.det for nm in A4_NAMES]
    top = rs.adj @ np.asarray(lam)   # det * root coordinates of lam
    out = defaultdict(list)

    def go(k, rem, ls):
        if k == len(vecs):
            mu = tuple(int(x) for x in rs_sub(lam, ls, vecs))
            if rs.is_dominant(mu):
                out[mu].append(tuple(ls))
            return
        r = rvecs[k]
        c = 0
        while np.all(rem - c * r >= 0):
            go(k + 1, rem - c * r, ls + [c])
            c += 1

    go(0, top, [])
    return dict(out)


def rs_sub(lam, ls, vecs):
    w = np.asarray(lam, dtype=np.int64).copy()
    for c, v in zip(ls, vecs):
        w -= c * np.asarray(v)
    return w


def a4_nus(rs: RootSystem, lam, L) -> list:
    """nu_0..nu_3: subtract the roots with j - i = k at step k."""
    nus = [tuple(lam)]
    groups = [("a12", "a23", "a34"), ("a13", "a24"), ("a14",)]
    for grp in groups:
        w = nus[-1]
        for nm in grp:
            c = L[A4_NAMES.index(nm)]
            w = _sub(w, _scale(c, rs.root_to_weight(named_root(4, nm))))
        nus.append(w)
    return nus


def is_admissible(rs: RootSystem, lam, L) -> bool:
    nus = a4_nus(rs, lam, L)
    if not all(rs.is_dominant(nus[k]) for k in (1, 2, 3)):
        return False
    l = dict(zip(A4_NAMES, L))
    if l["a13"] and nus[1][1] != 0:
        return False
    if l["a24"] and nus[1][2] != 0:
        return False
    if l["a14"] and (nus[2][1] != 0 or nus[2][2] != 0):
        return False
    return True


def deg(L) -> int:
    return sum(c * (A4_HEIGHT[nm] - 1) for nm, c in zip(A4_NAMES, L))


def r_lambda(rs: RootSystem, lam, combos: Optional[dict] = None) -> dict:
    combos = combos if combos is not None else a4_combinations(rs, lam)
    out = {}
    for mu, Ls in combos.items():
        p = ZERO
        for L in Ls:
            if is_admissible(rs, lam, L):
                p = p + QPoly.monomial(deg(L))
        if p:
            out[mu] = p
    return out


def generating_table(roots, bound) -> np.ndarray:
    """Coefficients of prod_alpha 1/(1 - x^alpha) for exponents up to ``bound``."""
    arr = np.zeros(tuple(x + 1 for x in bound), dtype=np.int64)
    arr[(0,) * len(bound)] = 1
    for a in roots:
        base = arr.copy()
        t = 1
        while all(t * x <= b for x, b in zip(a, bound)):
            dst = tuple(slice(t * x, None) for x in a)
            src = tuple(slice(0, b + 1 - t * x) for x, b in zip(a, bound))
            arr[dst] += base[src]
            t += 1
    return arr


def verify_a4(H: SphericalHecke, lam, check_counts: bool = True) -> list:
    _require_type_a(H, 4)
    rs = H.rs
    lam = tuple(lam)
    combos = a4_combinations(rs, lam)
    reps = []
    if check_counts:
        roots = [named_root(4, nm) for nm in A4_NAMES]
        # dominant mu has nonnegative root coordinates, so lam - mu <= floor(lam)
        bound = [int(x) // rs.det for x in rs.adj @ np.asarray(lam)]
        table = generating_table(roots, bound)
        got = {mu: len(Ls) for mu, Ls in combos.items()}
        want = {}
        for mu in rs.dominant_below(lam):
            c = int(table[rs.weight_to_root(_sub(lam, mu))])
            if c:
                want[mu] = c
        ok = got == want
        reps.append(VerifyReport("a4_count", _inst(H, lam), ok,
                                 None if ok else str(sorted(got.items())),
                                 None if ok else str(sorted(want.items()))))
    reps.append(_compare("a4_middle", _inst(H, lam), rs, H.transition(lam, 2).terms,
                         r_lambda(rs, lam, combos)))
    reps.append(table_report(H, lam, 4))
    return reps


# --- positivity ------------------------------------------------------------

def positivity_scan(H: SphericalHecke, weights, levels=None) -> list:
    """One report per (lam, i): all polynomials of transition(lam, i) in N[q].

    Outside type A a failure is a finding, not an assertion.
    """
    levels = list(levels) if levels is not None else list(range(1, H.m + 1))
    asserted = H.rs.family == "A"
    out = []
    for lam in weights:
        lam = tuple(lam)
        for i in levels:
            neg = {mu: p for mu, p in H.transition(lam, i).terms.items() if not p.is_nonneg()}
            out.append(VerifyReport("positivity", _inst(H, lam, i=i), not neg,
                                    _render(H.rs, neg) if neg else None,
                                    "coefficients in N[q]" if neg else None, asserted))
    return out


def sample_weights(rs: RootSystem, bound: int, count: Optional[int], seed: int = 0) -> list:
    box = rs.box(bound)
    if count is None or count >= len(box):
        return box
    return sorted(random.Random(seed).sample(box, count))


def atomic_negativity(H: SphericalHecke, weights) -> list:
    """Negative coefficients of the canonical basis in the N^2 basis."""
    out = []
    for lam in weights:
        lam = tuple(lam)
        neg = {mu: p for mu, p in H.atomic_decomposition(lam).terms.items() if not p.is_nonneg()}
        if neg:
            out.append(VerifyReport("atomic_negative", _inst(H, lam), False,
                                    _render(H.rs, neg), "coefficients in N[q]", asserted=False))
    return out


# --- exploratory deg_i count --------------------------------------------------

def explore_deg_i(H: SphericalHecke, lam, mu, i: int) -> dict:
    """Compare P_i(lam, mu) with the full deg_i generating polynomial over roots of
    height i, 2i-1, 3i-2, ...  Report only."""
    _require_type_a(H)
    if i < 2:
        raise ValueError("explore_deg_i needs i >= 2")
    rs = H.rs
    lam, mu = tuple(lam), tuple(mu)
    beta = rs.weight_to_root(_sub(lam, mu))
    if beta is None or any(x < 0 for x in beta):
        raise ValueError(f"{mu} is not below {lam}")
    roots = [r for r in rs.positive_roots if sum(r) >= i and (sum(r) - 1) % (i - 1) == 0]
    degs = [(sum(r) - 1) // (i - 1) for r in roots]
    counts = defaultdict(int)
    seen = 0
    truncated = False

    def go(k, rem, d):
        nonlocal seen, truncated
        if truncated:
            return
        if not any(rem):
            counts[d] += 1
            seen += 1
            truncated = seen >= DEG_I_CAP
            return
        if k == len(roots):
            return
        r = roots[k]
        c = 0
        while all(x - c * y >= 0 for x, y in zip(rem, r)):
            go(k + 1, tuple(x - c * y for x, y in zip(rem, r)), d + c * degs[k])
            c += 1

    go(0, beta, 0)
    gen = QPoly(counts.get(k, 0) for k in range(max(counts, default=-1) + 1))
    p = H.transition(lam, i)[mu]
    diff = gen - p
    return {"family": rs.family, "rank": rs.rank, "lambda": list(lam), "mu": list(mu), "i": i,
            "P": p.to_json(), "generating": gen.to_json(), "combinations": seen,
            "truncated": truncated, "dominated": diff.is_nonneg()}


# --- M-operator lemmas -------------------------------------------------------

def gammas(n: int, i: int) -> list:
    return [type_a_root(n, j, j + i - 1) for j in range(1, n - i + 2)]


def gamma_set(rs: RootSystem, i: int, j: int) -> tuple:
    above = [r for r in rs.positive_roots if sum(r) > i]
    return tuple(above + gammas(rs.rank, i)[:j])


def verify_m_lemmas(H: SphericalHecke, lam, i: int) -> list:
    _require_type_a(H)
    rs = H.rs
    n = rs.rank
    if i not in nhalf_levels(n):
        raise ValueError(f"level {i} outside n/2+1 <= i <= n for A{n}")
    lam = tuple(lam)
    g = gammas(n, i)
    out = []
    for j in range(1, n - i + 2):
        lhs = H.m_op(gamma_set(rs, i, j), lam)
        prev = gamma_set(rs, i, j - 1)
        inst = _inst(H, lam, i=i, j=j)
        if lam[j + i - 2] == 0:
            rhs = H.m_op(prev, lam)
            out.append(_compare("m_lemma_zero", inst, rs, lhs.terms, rhs.terms))
            continue
        r = next((r for r in range(j, n - i + 2) if lam[r - 1] > 0), None)
        rhs = H.m_op(prev, lam)
        if r is not None:
            shift = lam
            for t in range(j, r + 1):
                shift = _sub(shift, rs.root_to_weight(g[t - 1]))
            rhs = rhs - H.m_op(prev, shift).scale(QPoly.monomial(r - j + 1))
        out.append(_compare("m_lemma_step", dict(inst, r=r), rs, lhs.terms, rhs.terms))
    return out


def reflect_roots(rs: RootSystem, k: int, roots) -> tuple:
    """s_k applied to roots in simple-root coordinates (k is 0-based)."""
    out = []
    for r in roots:
        p = sum(rs.cartan[k][j] * r[j] for j in range(rs.rank))
        out.append(tuple(x - (p if t == k else 0) for t, x in enumerate(r)))
    return tuple(out)


def simple_dot(rs: RootSystem, k: int, mu) -> tuple:
    c = mu[k] + 1
    return tuple(x - c * rs.cartan[t][k] for t, x in enumerate(mu))


def verify_reflection(H: SphericalHecke, roots, mu, k: int) -> VerifyReport:
    rs = H.rs
    lhs = H.m_op(roots, mu)
    rhs = -H.m_op(reflect_roots(rs, k, roots), simple_dot(rs, k, mu))
    inst = {"family": rs.family, "rank": rs.rank, "mu": list(mu), "k": k + 1,
            "A": [list(r) for r in roots]}
    return _compare("m_reflection", inst, rs, lhs.terms, rhs.terms)


# --- scalar oracles ------------------------------------------------------------

def _subsets(roots):
    for k in range(len(roots) + 1):
        yield from itertools.combinations(roots, k)


def mucoeff_report(H: SphericalHecke, lam) -> list:
    """sum over I in Phi>=2 with lam - Sigma_I regular of signed K = q^{ht(lam - mu)}."""
    rs = H.rs
    lam = tuple(lam)
    roots = [rs.root_to_weight(r) for r in rs.roots_of_height_at_least(2)]
    terms = _signed_reps(rs, lam, roots)
    out = []
    for mu in rs.dominant_below(lam):
        total = ZERO
        for bar, c in terms:
            if rs.dominance_leq(mu, bar):
                total = total + c * H.kostka.kostka_foulkes(bar, mu)
        ht = sum(rs.weight_to_root(_sub(lam, mu)))
        ok = total == QPoly.monomial(ht)
        out.append(VerifyReport("mucoeff", _inst(H, lam, mu=list(mu)), ok,
                                None if ok else str(total), None if ok else str(QPoly.monomial(ht))))
    return out


def mumu_report(H: SphericalHecke, lam) -> list:
    """Same sum over all of Phi+ equals delta * pi_{W^lam}(q)."""
    rs = H.rs
    lam = tuple(lam)
    roots = [rs.root_to_weight(r) for r in rs.positive_roots]
    terms = _signed_reps(rs, lam, roots)
    pi = H.weyl.stabilizer_poincare(lam)
    out = []
    for mu in rs.dominant_below(lam):
        total = ZERO
        for bar, c in terms:
            if rs.dominance_leq(mu, bar):
                total = total + c * H.kostka.kostka_foulkes(bar, mu)
        want = pi if mu == lam else ZERO
        ok = total == want
        out.append(VerifyReport("mumu", _inst(H, lam, mu=list(mu)), ok,
                                None if ok else str(total), None if ok else str(want)))
    return out


def _signed_reps(rs: RootSystem, lam, roots_w) -> list:
    """(bar, (-q)^|I| * sign) for every subset I with lam - Sigma_I regular."""
    acc = defaultdict(lambda: ZERO)
    for I in _subsets(roots_w):
        w = lam
        for a in I:
            w = _sub(w, a)
        rep = dominant_rep(rs, w)
        if rep.regular:
            acc[rep.bar] = acc[rep.bar] + QPoly.monomial(len(I), (-1) ** len(I) * rep.sign)
    return [(b, p) for b, p in acc.items() if p]


def kostka_report(H: SphericalHecke, lam) -> list:
    """K_{lam,mu} in N[q], K_{lam,lam} = 1, no constant term below lam, and K(1)
    equals the Freudenthal multiplicity."""
    lam = tuple(lam)
    out = []
    for mu in H.rs.dominant_below(lam):
        p = H.kostka.kostka_foulkes(lam, mu)
        mult = H.kostka.freudenthal_mult(lam, mu)
        problems = []
        if not p.is_nonneg():
            problems.append("negative coefficient")
        if mu == lam and p != ONE:
            problems.append("diagonal is not 1")
        if mu != lam and p.coeffs and p.coeffs[0] != 0:
            problems.append("nonzero constant term")
        if p(1) != mult:
            problems.append(f"K(1) = {p(1)} but multiplicity is {mult}")
        out.append(VerifyReport("kostka", _inst(H, lam, mu=list(mu)), not problems,
                                None if not problems else f"{p}: {'; '.join(problems)}",
                                None if not problems else str(mult)))
    return out
