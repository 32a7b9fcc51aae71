"""The finite Weyl group as an explicit table of action matrices."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from math import factorial
from typing import Optional

import numpy as np

from .qpoly import QPoly
from .rootsys import RootSystem

DEFAULT_RANK_CAP = 8


class WeylSizeError(RuntimeError):
    pass


@dataclass(frozen=True)
class DominantRep:
    """Result of the dot-action chamber walk on a weight."""

    regular: bool
    bar: Optional[tuple] = None
    sign: int = 0
    length: int = 0


SINGULAR = DominantRep(False)


def _estimate_order(rs: RootSystem) -> int:
    if rs.family == "A":
        return factorial(rs.rank + 1)
    if rs.family == "D":
        return 2 ** (rs.rank - 1) * factorial(rs.rank)
    return -1


class WeylGroup:
    """All elements of W_f with lengths, weight-coordinate action matrices and
    the generator transition table ``mult[w, i] = index of w * s_i``."""

    def __init__(self, rs: RootSystem, rank_cap: int = DEFAULT_RANK_CAP):
        if rs.rank > rank_cap:
            raise WeylSizeError(
                f"rank {rs.rank} exceeds cap {rank_cap} (|W| ~ {_estimate_order(rs)})")
        self.rs = rs
        n = rs.rank
        C = rs.cartan_np
        gens = []
        for i in range(n):
            m = np.eye(n, dtype=np.int64)
            m[:, i] -= C[:, i]          # s_i(v) = v - v_i * alpha_i
            gens.append(m)
        self.generators = gens

        ident = np.eye(n, dtype=np.int64)
        index = {ident.tobytes(): 0}
        mats = [ident]
        lengths = [0]
        mult = [[-1] * n]
        queue = deque([0])
        while queue:
            k = queue.popleft()
            for i, g in enumerate(gens):
                m = mats[k] @ g
                key = m.tobytes()
                j = index.get(key)
                if j is None:
                    j = len(mats)
                    index[key] = j
                    mats.append(m)
                    lengths.append(lengths[k] + 1)
                    mult.append([-1] * n)
                    queue.append(j)
                mult[k][i] = j
        self.matrices = np.stack(mats)
        self.lengths = np.array(lengths, dtype=np.int64)
        self.signs = np.where(self.lengths % 2 == 0, 1, -1)
        self.mult = np.array(mult, dtype=np.int64)

    def __len__(self):
        return len(self.lengths)

    @property
    def longest_length(self) -> int:
        return int(self.lengths.max())

    def poincare(self) -> QPoly:
        counts = np.bincount(self.lengths)
        return QPoly(int(c) for c in counts)

    @cached_property
    def root_matrices(self) -> np.ndarray:
        """Action on simple-root coordinates: C^{-1} M C (integral)."""
        rs = self.rs
        C = rs.cartan_np
        out = np.einsum("ij,wjk,kl->wil", rs.adj, self.matrices, C)
        assert np.all(out % rs.det == 0)
        return out // rs.det

    # --- actions -------------------------------------------------------

    def act(self, w: int, lam) -> tuple:
        return tuple(int(x) for x in self.matrices[w] @ np.asarray(lam, dtype=np.int64))

    def dot_act(self, w: int, lam) -> tuple:
        v = np.asarray(lam, dtype=np.int64) + 1
        return tuple(int(x) for x in self.matrices[w] @ v - 1)

    def simple_dot(self, i: int, lam) -> tuple:
        return self.dot_act(self.mult[0, i], lam)

    def phi_minus(self, w: int) -> set:
        """Positive roots sent to negative roots by ``w``."""
        R = self.root_matrices[w]
        out = set()
        for r in self.rs.positive_roots:
            img = R @ np.asarray(r, dtype=np.int64)
            if np.all(img <= 0):
                out.add(r)
        return out

    def stabilizer_poincare(self, lam) -> QPoly:
        """Poincare polynomial of the parabolic subgroup fixing dominant ``lam``."""
        gens = [i for i, x in enumerate(lam) if x == 0]
        seen = {0}
        frontier = [0]
        counts = {}
        while frontier:
            nxt = []
            for k in frontier:
                counts[int(self.lengths[k])] = counts.get(int(self.lengths[k]), 0) + 1
                for i in gens:
                    j = int(self.mult[k, i])
                    if j not in seen:
                        seen.add(j)
                        nxt.append(j)
            frontier = nxt
        top = max(counts)
        return QPoly(counts.get(k, 0) for k in range(top + 1))


def dominant_rep(rs: RootSystem, lam, choose=None) -> DominantRep:
    """Chamber walk on ``lam + rho`` under the simple reflections.

    ``choose`` picks among the indices with negative pairing (default: the
    lowest); status, representative and parity do not depend on the choice.
    """
    v = [x + 1 for x in lam]
    n = rs.rank
    cols = [[rs.cartan[r][i] for r in range(n)] for i in range(n)]
    steps = 0
    while True:
        if 0 in v:
            return SINGULAR
        neg = [i for i in range(n) if v[i] < 0]
        if not neg:
            return DominantRep(True, tuple(x - 1 for x in v), -1 if steps % 2 else 1, steps)
        i = neg[0] if choose is None else choose(neg)
        c = v[i]
        v = [x - c * a for x, a in zip(v, cols[i])]
        steps += 1


def dominant_rep_many(rs: RootSystem, weights: np.ndarray):
    """Vectorised :func:`dominant_rep`.

    Returns ``(regular, bar, parity)`` arrays for an ``(N, n)`` integer array of
    weights; ``bar`` rows are only meaningful where ``regular`` is True and
    ``parity`` is the walk length mod 2.
    """
    C = rs.cartan_np
    V = np.array(weights, dtype=np.int64) + 1
    N = V.shape[0]
    regular = np.ones(N, dtype=bool)
    parity = np.zeros(N, dtype=np.int64)
    active = np.arange(N)
    cols = C.T  # cols[i] = alpha_i in weight coordinates
    while active.size:
        sub = V[active]
        sing = (sub == 0).any(axis=1)
        if sing.any():
            regular[active[sing]] = False
            active = active[~sing]
            sub = sub[~sing]
        neg = sub < 0
        has = neg.any(axis=1)
        active = active[has]
        if not active.size:
            break
        sub = sub[has]
        idx = neg[has].argmax(axis=1)
        c = sub[np.arange(active.size), idx]
        V[active] = sub - c[:, None] * cols[idx]
        parity[active] ^= 1
    return regular, V - 1, parity
