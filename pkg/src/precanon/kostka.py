"""q-Kostant partition function and Kostka-Foulkes polynomials."""

from __future__ import annotations

import sys
import threading

import numpy as np

from .qpoly import ONE, ZERO, QPoly
from .rootsys import RootSystem
from .weyl import WeylGroup


class Kostka:
    """Kostka-Foulkes data for one root system.

    ``kostant_q`` memoises on ``(root index, remainder)``; insertions go through a
    lock so a shared instance behaves as a pure function under threads.
    """

    def __init__(self, rs: RootSystem, weyl: WeylGroup = None, roots=None):
        self.rs = rs
        self.weyl = weyl if weyl is not None else WeylGroup(rs)
        self.roots = tuple(roots) if roots is not None else rs.positive_roots
        self._memo = {}
        self._freud = {}
        self._lock = threading.Lock()
        self._rho_np = np.asarray(rs.rho, dtype=np.int64)
        # det * root coordinates of w(.) for every w, as a linear map on weights
        self._scaled_root_action = np.einsum("ij,wjk->wik", rs.adj, self.weyl.matrices)

    # --- Kostant partition function --------------------------------------

    def kostant_q(self, beta) -> QPoly:
        beta = tuple(int(x) for x in beta)
        if any(x < 0 for x in beta):
            return ZERO
        if sys.getrecursionlimit() < 10_000:
            sys.setrecursionlimit(10_000)
        return self._kp(len(self.roots) - 1, beta)

    def _kp(self, m: int, beta: tuple) -> QPoly:
        if not any(beta):
            return ONE
        if m < 0:
            return ZERO
        key = (m, beta)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        alpha = self.roots[m]
        total = ZERO
        k = 0
        rem = beta
        while all(x >= 0 for x in rem):
            sub = self._kp(m - 1, rem)
            if sub:
                total = total + sub.shift(k)
            k += 1
            rem = tuple(x - a for x, a in zip(rem, alpha))
        with self._lock:
            self._memo.setdefault(key, total)
        return total

    # --- Kostka-Foulkes --------------------------------------------------

    def _orbit_terms(self, lam):
        """``det * root coords of w(lam + rho)`` for all w, with signs."""
        v = np.asarray(lam, dtype=np.int64) + self._rho_np
        return self._scaled_root_action @ v

    def kostka_foulkes(self, lam, mu) -> QPoly:
        """Alternating Weyl sum of ``kostant_q(w(lam+rho) - mu - rho)``."""
        return self.kostka_foulkes_many(lam, [mu])[0]

    def kostka_foulkes_many(self, lam, mus) -> list:
        rs = self.rs
        d = rs.det
        top = self._orbit_terms(lam)
        signs = self.weyl.signs
        out = []
        for mu in mus:
            shift = rs.adj @ (np.asarray(mu, dtype=np.int64) + self._rho_np)
            diff = top - shift
            # cone test in root coordinates prunes most of W before the DP
            ok = np.all(diff >= 0, axis=1) & np.all(diff % d == 0, axis=1)
            total = ZERO
            for w in np.flatnonzero(ok):
                p = self.kostant_q(tuple(int(x) for x in diff[w] // d))
                total = total + p if signs[w] > 0 else total - p
            out.append(total)
        return out

    def kl_entry(self, mu, lam) -> QPoly:
        """Canonical-to-standard coefficient (mu, lam), i.e. K_{lam,mu} or 0."""
        if tuple(mu) == tuple(lam):
            return ONE
        if not self.rs.dominance_leq(mu, lam):
            return ZERO
        return self.kostka_foulkes(lam, mu)

    def kl_column(self, lam) -> dict:
        """All nonzero K_{lam,mu} for dominant ``mu <= lam``."""
        mus = self.rs.dominant_below(lam)
        vals = self.kostka_foulkes_many(lam, mus)
        return {mu: p for mu, p in zip(mus, vals) if p}

    # --- Freudenthal -----------------------------------------------------

    def freudenthal_mult(self, lam, mu) -> int:
        """Dimension of the ``mu`` weight space of the irreducible of highest weight ``lam``."""
        lam = tuple(lam)
        f = self._freud.get(lam)
        if f is None:
            f = self._freud[lam] = _Freudenthal(self.rs, lam)
        return f.mult(tuple(mu))


class _Freudenthal:
    # inner products are kept scaled by det so everything stays integral
    def __init__(self, rs: RootSystem, lam):
        self.rs = rs
        self.lam = lam
        self.gram = [[int(x) for x in row] for row in rs.adj]
        self.roots_w = [rs.root_to_weight(r) for r in rs.positive_roots]
        self.memo = {}
        lr = tuple(x + 1 for x in lam)
        self.top = self.form(lr, lr)

    def form(self, a, b) -> int:
        return sum(x * g * y for x, row in zip(a, self.gram) if x for g, y in zip(row, b))

    def below(self, mu) -> bool:
        return self.rs.dominance_leq(_linear_dominant(self.rs, mu), self.lam)

    def mult(self, mu) -> int:
        rep = _linear_dominant(self.rs, mu)
        if rep == self.lam:
            return 1
        hit = self.memo.get(rep)
        if hit is not None:
            return hit
        if not self.rs.dominance_leq(rep, self.lam):
            return 0
        acc = 0
        for a in self.roots_w:
            k = 1
            while True:
                nu = tuple(x + k * y for x, y in zip(rep, a))
                if not self.below(nu):
                    break
                acc += self.mult(nu) * self.form(nu, a)
                k += 1
        mr = tuple(x + 1 for x in rep)
        val, rem = divmod(2 * acc, self.top - self.form(mr, mr))
        assert rem == 0
        self.memo[rep] = val
        return val


def _linear_dominant(rs: RootSystem, mu) -> tuple:
    """Dominant element in the (linear) W-orbit of ``mu``."""
    v = list(mu)
    n = rs.rank
    while True:
        neg = next((i for i in range(n) if v[i] < 0), None)
        if neg is None:
            return tuple(v)
        c = v[neg]
        v = [x - c * rs.cartan[r][neg] for r, x in enumerate(v)]


__all__ = ["Kostka"]
