"""Simply-laced crystallographic root systems.

Weights are integer tuples in the fundamental-weight basis, roots are integer
tuples in the simple-root basis. The two only meet through
:meth:`RootSystem.root_to_weight` and :meth:`RootSystem.weight_to_root`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

Weight = tuple
Root = tuple

MAX_ROOTS = 10_000
LEQ_I_NODE_CAP = 10**7


class RootSystemError(ValueError):
    pass


def cartan_matrix(family: str, rank: int) -> tuple:
    """Cartan matrix with ``C[i][j] = <alpha_j, alpha_i^vee>``."""
    family = family.upper()
    if rank < 1:
        raise RootSystemError("rank must be >= 1")
    C = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        C[i][i] = 2
    if family == "A":
        for i in range(rank - 1):
            C[i][i + 1] = C[i + 1][i] = -1
    elif family == "D":
        if rank < 4:
            raise RootSystemError("type D needs rank >= 4")
        for i in range(rank - 2):
            C[i][i + 1] = C[i + 1][i] = -1
        C[rank - 3][rank - 1] = C[rank - 1][rank - 3] = -1
    else:
        raise RootSystemError(f"unknown family {family!r}; use A, D or a custom matrix")
    return tuple(tuple(row) for row in C)


def _inverse(C) -> list:
    n = len(C)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(C)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise RootSystemError("Cartan matrix is singular")
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [x / p for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return [row[n:] for row in M]


def solve_nonneg_integral(target: Sequence[int], vectors: Sequence[Sequence[int]]) -> Optional[tuple]:
    """Unique solution ``x`` with ``sum x_k v_k = target`` for independent vectors.

    Returns None if the solution is not a nonnegative integer vector or if no
    solution exists.
    """
    n, k = len(target), len(vectors)
    if k == 0:
        return () if all(t == 0 for t in target) else None
    A = [[Fraction(vectors[c][r]) for c in range(k)] + [Fraction(target[r])] for r in range(n)]
    row = 0
    pivots = []
    for col in range(k):
        piv = next((r for r in range(row, n) if A[r][col] != 0), None)
        if piv is None:
            raise RootSystemError("vectors are linearly dependent")
        A[row], A[piv] = A[piv], A[row]
        p = A[row][col]
        A[row] = [x / p for x in A[row]]
        for r in range(n):
            if r != row and A[r][col] != 0:
                f = A[r][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[row])]
        pivots.append(row)
        row += 1
    if any(A[r][k] != 0 for r in range(row, n)):
        return None
    sol = [A[r][k] for r in pivots]
    if any(x.denominator != 1 or x < 0 for x in sol):
        return None
    return tuple(int(x) for x in sol)


def _rank(vectors) -> int:
    if not vectors:
        return 0
    A = [[Fraction(x) for x in v] for v in vectors]
    r = 0
    for col in range(len(A[0])):
        piv = next((i for i in range(r, len(A)) if A[i][col] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(len(A)):
            if i != r and A[i][col] != 0:
                f = A[i][col] / A[r][col]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        r += 1
    return r


@dataclass(frozen=True)
class RootSystem:
    family: str
    rank: int
    cartan: tuple = field(repr=False)

    @classmethod
    def build(cls, family: str, rank: Optional[int] = None, cartan=None) -> "RootSystem":
        family = family.upper() if family else "CUSTOM"
        if cartan is None:
            if rank is None:
                raise RootSystemError("rank is required")
            cartan = cartan_matrix(family, rank)
        else:
            cartan = tuple(tuple(int(x) for x in row) for row in cartan)
            rank = len(cartan)
            family = "CUSTOM" if family not in ("A", "D") else family
        rs = cls(family, rank, cartan)
        rs._validate()
        rs.positive_roots  # runs the closure, raising for infinite type
        return rs

    def _validate(self):
        C = self.cartan
        n = self.rank
        if any(len(row) != n for row in C):
            raise RootSystemError("Cartan matrix must be square")
        for i in range(n):
            if C[i][i] != 2:
                raise RootSystemError("Cartan diagonal must be 2")
            for j in range(n):
                if i != j and C[i][j] > 0:
                    raise RootSystemError("off-diagonal Cartan entries must be <= 0")
                if C[i][j] != C[j][i]:
                    raise RootSystemError("only simply-laced (symmetric) Cartan matrices are supported")

    @property
    def label(self) -> str:
        return f"{self.family}{self.rank}"

    # --- roots -----------------------------------------------------------

    @cached_property
    def positive_roots(self) -> tuple:
        """Positive roots by closure from the simple roots, sorted by (height, lex)."""
        n = self.rank
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        found = set(simple)
        layer = list(simple)
        while layer:
            nxt = []
            for beta in layer:
                for i in range(n):
                    pair = sum(self.cartan[i][j] * beta[j] for j in range(n))
                    # alpha_i-string through beta: p - q' = <beta, alpha_i^vee>
                    p = 0
                    down = list(beta)
                    while True:
                        down[i] -= 1
                        if tuple(down) in found:
                            p += 1
                        else:
                            break
                    if p - pair > 0:
                        up = list(beta)
                        up[i] += 1
                        up = tuple(up)
                        if up not in found:
                            found.add(up)
                            nxt.append(up)
                if len(found) > MAX_ROOTS:
                    raise RootSystemError(
                        f"positive-root closure exceeded {MAX_ROOTS} roots; Cartan matrix is not of finite type")
            layer = nxt
        return tuple(sorted(found, key=lambda r: (sum(r), r)))

    @cached_property
    def root_index(self) -> dict:
        return {r: k for k, r in enumerate(self.positive_roots)}

    @property
    def highest_height(self) -> int:
        return sum(self.positive_roots[-1])

    @property
    def simple_roots(self) -> tuple:
        n = self.rank
        return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))

    def roots_of_height(self, i: int) -> tuple:
        return tuple(r for r in self.positive_roots if sum(r) == i)

    def roots_of_height_at_least(self, i: int) -> tuple:
        return tuple(r for r in self.positive_roots if sum(r) >= i)

    def is_root(self, r) -> bool:
        r = tuple(r)
        return r in self.root_index or tuple(-x for x in r) in self.root_index

    # --- coordinates -----------------------------------------------------

    @cached_property
    def cartan_np(self) -> np.ndarray:
        return np.array(self.cartan, dtype=np.int64)

    @cached_property
    def _inv(self):
        return _inverse(self.cartan)

    @cached_property
    def det(self) -> int:
        """Smallest positive integer d with d*C^{-1} integral."""
        d = 1
        for row in self._inv:
            for x in row:
                d = d * x.denominator // np.gcd(d, x.denominator)
        return int(d)

    @cached_property
    def adj(self) -> np.ndarray:
        """``det * C^{-1}`` as an integer matrix (weight -> scaled root coords)."""
        return np.array([[int(x * self.det) for x in row] for row in self._inv], dtype=np.int64)

    @cached_property
    def rho(self) -> Weight:
        return (1,) * self.rank

    @cached_property
    def zero(self) -> Weight:
        return (0,) * self.rank

    def root_to_weight(self, root) -> Weight:
        n = self.rank
        return tuple(sum(self.cartan[i][j] * root[j] for j in range(n)) for i in range(n))

    def weight_to_root(self, weight) -> Optional[Root]:
        """Simple-root coordinates of ``weight`` or None if not in the root lattice."""
        out = []
        d = self.det
        for row in self.adj:
            s = int(sum(int(a) * x for a, x in zip(row, weight)))
            if s % d:
                return None
            out.append(s // d)
        return tuple(out)

    def scaled_height(self, weight) -> int:
        """``det * <weight, rho^vee>``; strictly monotone for the dominance order."""
        return int(self.adj.sum(axis=0) @ np.asarray(weight, dtype=np.int64))

    def height(self, root) -> int:
        return sum(root)

    def pairing(self, lam, alpha) -> int:
        """``<lam, alpha^vee>`` (simply-laced: coroot coords equal root coords)."""
        return sum(l * a for l, a in zip(lam, alpha))

    @staticmethod
    def is_dominant(weight) -> bool:
        return all(x >= 0 for x in weight)

    # --- orders ----------------------------------------------------------

    def dominance_leq(self, mu, lam) -> bool:
        diff = tuple(a - b for a, b in zip(lam, mu))
        r = self.weight_to_root(diff)
        return r is not None and all(x >= 0 for x in r)

    def same_coset(self, mu, lam) -> bool:
        return self.weight_to_root(tuple(a - b for a, b in zip(lam, mu))) is not None

    def leq_i(self, mu, lam, i: int) -> Optional[dict]:
        """Decomposition of ``lam - mu`` over roots of height exactly ``i``.

        Returns a dict root -> multiplicity (empty when ``mu == lam``) or None.
        """
        if not 1 <= i <= self.highest_height:
            raise RootSystemError(f"i must be in 1..{self.highest_height}")
        beta = self.weight_to_root(tuple(a - b for a, b in zip(lam, mu)))
        if beta is None or any(x < 0 for x in beta):
            return None
        roots = self.roots_of_height(i)
        if sum(beta) % i:
            return None
        if _rank(roots) == len(roots):
            sol = solve_nonneg_integral(beta, roots)
            if sol is None:
                return None
            return {r: m for r, m in zip(roots, sol) if m}
        return _dfs_decompose(beta, roots)

    # --- dominant weights ------------------------------------------------

    def dominant_below(self, lam) -> list:
        """All dominant ``mu <= lam``; uses that dominant weights below ``lam`` are
        connected to it through dominant weights by positive-root steps."""
        lam = tuple(lam)
        roots_w = [self.root_to_weight(r) for r in self.positive_roots]
        seen = {lam}
        stack = [lam]
        while stack:
            mu = stack.pop()
            for a in roots_w:
                nu = tuple(x - y for x, y in zip(mu, a))
                if nu not in seen and all(x >= 0 for x in nu):
                    seen.add(nu)
                    stack.append(nu)
        return sorted(seen, key=lambda w: (-self.scaled_height(w), w))

    def box(self, bound: int) -> list:
        """Dominant weights with every coordinate in ``0..bound``."""
        import itertools
        return [tuple(w) for w in itertools.product(range(bound + 1), repeat=self.rank)]

    def to_json(self) -> str:
        return json.dumps({"family": self.family, "rank": self.rank,
                           "positive_roots": [list(r) for r in self.positive_roots]},
                          separators=(",", ":"))


def _dfs_decompose(beta, roots, cap: int = LEQ_I_NODE_CAP) -> Optional[dict]:
    nodes = 0
    failed = set()

    def go(k, rem):
        nonlocal nodes
        nodes += 1
        if nodes > cap:
            raise RootSystemError("leq_i search exceeded node cap")
        if all(x == 0 for x in rem):
            return {}
        if k == len(roots) or (k, rem) in failed:
            return None
        r = roots[k]
        m = min((x // y for x, y in zip(rem, r) if y > 0), default=0)
        for c in range(m, -1, -1):
            nxt = tuple(x - c * y for x, y in zip(rem, r))
            sub = go(k + 1, nxt)
            if sub is not None:
                if c:
                    sub[r] = c
                return sub
        failed.add((k, rem))
        return None

    return go(0, tuple(beta))


def root_name(rs: RootSystem, root) -> str:
    """``a13`` style name for type-A roots, otherwise the coordinate tuple."""
    nz = [k for k, x in enumerate(root) if x]
    if rs.family == "A" and all(x == 1 for x in root if x) and nz == list(range(nz[0], nz[-1] + 1)):
        return f"a{nz[0] + 1}{nz[-1] + 1}"
    return str(tuple(root))
