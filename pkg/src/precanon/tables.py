"""Closed-form decompositions of N^2 in the N^3 basis for A3 and A4, as data.

A row is a guard on the fundamental-weight coordinates of lambda plus a list of
``(coefficient, offset)`` terms, meaning ``coefficient * N^3_{lambda - offset}``.
Coefficients are q-coefficient lists; offsets are multisets of root names
(``a12`` = alpha_1 + alpha_2 and so on).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional


@dataclass(frozen=True)
class Row:
    row: int
    guard: tuple          # one of "0", "1", ">=0", ">=1", ">=2" per coordinate
    terms: tuple          # ((coeffs, (root names...)), ...)

    def matches(self, lam) -> bool:
        return all(_cond(g, x) for g, x in zip(self.guard, lam))


def _cond(g: str, x: int) -> bool:
    if g.startswith(">="):
        return x >= int(g[2:])
    return x == int(g)


def _rows(data) -> tuple:
    out = []
    for k, (guard, terms) in enumerate(data, start=1):
        out.append(Row(k, tuple(guard.split()), tuple((tuple(c), tuple(o)) for c, o in terms)))
    return tuple(out)


ONE_ = [1]
MQ = [0, -1]
MQ2 = [0, 0, -1]
PQ2 = [0, 0, 1]
PQ3 = [0, 0, 0, 1]
PQ4 = [0, 0, 0, 0, 1]
PQ5 = [0, 0, 0, 0, 0, 1]
MQ2Q3 = [0, 0, -1, -1]

A3_ROWS = _rows([
    ("0 >=1 >=1", [(ONE_, []), (MQ, ["a23"])]),
    ("0 0 >=0", [(ONE_, [])]),
    ("0 1 0", [(ONE_, [])]),
    ("0 >=2 0", [(ONE_, []), (MQ2, ["a12", "a23"])]),
    (">=1 >=1 0", [(ONE_, []), (MQ, ["a12"])]),
    (">=0 0 0", [(ONE_, [])]),
    (">=1 1 >=1", [(ONE_, []), (MQ, ["a12"]), (MQ, ["a23"])]),
    (">=1 0 >=1", [(ONE_, []), (MQ2, ["a13"])]),
])

A3_GENERIC = Row(0, (">=1", ">=2", ">=1"), ())

A4_ROWS = _rows([
    ("0 >=1 >=1 0", [(ONE_, []), (MQ, ["a23"])]),
    ("0 >=2 0 0", [(ONE_, []), (MQ2, ["a12", "a23"])]),
    ("0 >=1 >=2 >=1", [(ONE_, []), (MQ, ["a23"]), (MQ, ["a34"]), (PQ2, ["a23", "a34"])]),
    ("0 >=1 1 >=1", [(ONE_, []), (MQ, ["a23"]), (MQ, ["a34"]), (PQ3, ["a12", "a23", "a34"])]),
    ("0 >=2 0 >=1", [(ONE_, []), (MQ2, ["a24"]), (MQ2, ["a12", "a23"]), (PQ3, ["a12", "a24"])]),
    ("0 1 0 >=2", [(ONE_, []), (MQ2, ["a24"]), (PQ4, ["a24", "a14"])]),
    ("0 1 0 1", [(ONE_, []), (MQ2, ["a24"])]),
    ("0 1 0 0", [(ONE_, [])]),
    ("0 0 >=1 >=1", [(ONE_, []), (MQ, ["a34"])]),
    ("0 0 0 >=0", [(ONE_, [])]),
    (">=1 1 >=2 >=1", [(ONE_, []), (MQ, ["a12"]), (MQ, ["a23"]), (MQ, ["a34"]),
                       (PQ2, ["a12", "a34"]), (PQ2, ["a23", "a34"])]),
    (">=1 >=2 0 >=1", [(ONE_, []), (MQ, ["a12"]), (MQ2, ["a24"]), (PQ3, ["a12", "a24"])]),
    (">=1 1 0 1", [(ONE_, []), (MQ, ["a12"]), (MQ2, ["a24"])]),
    (">=1 1 0 >=2", [(ONE_, []), (MQ, ["a12"]), (MQ2, ["a24"]), (PQ4, ["a14", "a24"])]),
    (">=1 0 0 1", [(ONE_, []), (MQ2Q3, ["a14"])]),
    (">=2 0 0 >=2", [(ONE_, []), (MQ2Q3, ["a14"]), (PQ5, ["a14", "a14"])]),
    (">=1 1 1 >=1", [(ONE_, []), (MQ, ["a12"]), (MQ, ["a23"]), (MQ, ["a34"]),
                     (PQ2, ["a12", "a34"]), (PQ3, ["a12", "a23", "a34"])]),
    ("0 0 >=2 0", [(ONE_, []), (MQ2, ["a23", "a34"])]),
    (">=1 >=2 >=1 0", [(ONE_, []), (MQ, ["a23"]), (MQ, ["a12"]), (PQ2, ["a12", "a23"])]),
    (">=1 1 >=1 0", [(ONE_, []), (MQ, ["a23"]), (MQ, ["a12"]), (PQ3, ["a12", "a23", "a34"])]),
    (">=1 0 >=2 0", [(ONE_, []), (MQ2, ["a13"]), (MQ2, ["a23", "a34"]), (PQ3, ["a34", "a13"])]),
    (">=2 0 1 0", [(ONE_, []), (MQ2, ["a13"]), (PQ4, ["a13", "a14"])]),
    ("1 0 1 0", [(ONE_, []), (MQ2, ["a13"])]),
    ("0 0 1 0", [(ONE_, [])]),
    (">=1 >=1 0 0", [(ONE_, []), (MQ, ["a12"])]),
    (">=1 0 0 0", [(ONE_, [])]),
    (">=1 >=2 1 >=1", [(ONE_, []), (MQ, ["a12"]), (MQ, ["a23"]), (MQ, ["a34"]),
                       (PQ2, ["a12", "a34"]), (PQ2, ["a12", "a23"])]),
    (">=1 0 >=2 >=1", [(ONE_, []), (MQ, ["a34"]), (MQ2, ["a13"]), (PQ3, ["a13", "a34"])]),
    ("1 0 1 >=1", [(ONE_, []), (MQ, ["a34"]), (MQ2, ["a13"])]),
    (">=2 0 1 >=1", [(ONE_, []), (MQ, ["a34"]), (MQ2, ["a13"]), (PQ4, ["a13", "a14"])]),
    ("1 0 0 >=1", [(ONE_, []), (MQ2Q3, ["a14"])]),
])

A4_GENERIC = Row(0, (">=1", ">=2", ">=2", ">=1"), ())

HEIGHT_TWO = {3: ("a12", "a23"), 4: ("a12", "a23", "a34")}


def generic_terms(rank: int) -> tuple:
    """Alternating sum over subsets of the height-two roots."""
    names = HEIGHT_TWO[rank]
    out = []
    for k in range(len(names) + 1):
        for sub in combinations(names, k):
            c = [0] * k + [(-1) ** k]
            out.append((tuple(c), sub))
    return tuple(out)


def rows_for(rank: int) -> tuple:
    return {3: A3_ROWS, 4: A4_ROWS}[rank]


def matching_rows(rank: int, lam) -> list:
    return [r for r in rows_for(rank) if r.matches(lam)]


def table_prediction(rank: int, lam) -> Optional[tuple]:
    """``(row ids, terms)`` for lam; row id 0 is the generic case.

    When several rows match they must carry the same terms (up to order);
    otherwise a ValueError is raised.
    """
    hits = matching_rows(rank, lam)
    if hits:
        canon = {_normal(r.terms) for r in hits}
        if len(canon) != 1:
            raise ValueError(f"rows {[r.row for r in hits]} overlap at {lam} with different terms")
        return tuple(r.row for r in hits), hits[0].terms
    generic = {3: A3_GENERIC, 4: A4_GENERIC}[rank]
    if generic.matches(lam):
        return (0,), generic_terms(rank)
    return None


def _normal(terms) -> frozenset:
    return frozenset((c, tuple(sorted(o))) for c, o in terms)
