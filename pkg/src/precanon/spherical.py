"""Elements of the spherical Hecke algebra as weight-indexed coefficient tables.

Everything is computed in canonical (Kazhdan-Lusztig) coordinates first; the
standard and pre-canonical views are obtained by unitriangular solves.
Coefficients are polynomials in ``q = v^2``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Optional

import numpy as np

from .kostka import Kostka
from .qpoly import ONE, ZERO, QPoly, as_qpoly
from .rootsys import RootSystem
from .weyl import WeylGroup, dominant_rep, dominant_rep_many

MAX_SUBSET_ROOTS = 30


class BasisMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Basis:
    """``std``, ``canon`` or ``precanon`` with a level in ``2..m``.

    Use :meth:`SphericalHecke.basis` to get the normalised tag for a level.
    """

    kind: str
    level: Optional[int] = None

    def __str__(self):
        return f"precanon:{self.level}" if self.kind == "precanon" else self.kind


STD = Basis("std")
CANON = Basis("canon")


@dataclass(frozen=True)
class SphElement:
    basis: Basis
    terms: Mapping = field(default_factory=dict)

    @classmethod
    def build(cls, basis: Basis, terms: Mapping) -> "SphElement":
        return cls(basis, {tuple(w): as_qpoly(c) for w, c in terms.items() if as_qpoly(c)})

    def __getitem__(self, w) -> QPoly:
        return self.terms.get(tuple(w), ZERO)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def _check(self, other):
        if self.basis != other.basis:
            raise BasisMismatch(f"cannot combine {self.basis} with {other.basis}")

    def __add__(self, other: "SphElement") -> "SphElement":
        self._check(other)
        out = dict(self.terms)
        _accumulate(out, other.terms, ONE)
        return SphElement(self.basis, out)

    def __sub__(self, other: "SphElement") -> "SphElement":
        self._check(other)
        out = dict(self.terms)
        _accumulate(out, other.terms, QPoly.const(-1))
        return SphElement(self.basis, out)

    def __neg__(self):
        return SphElement(self.basis, {w: -c for w, c in self.terms.items()})

    def scale(self, c) -> "SphElement":
        c = as_qpoly(c)
        if not c:
            return SphElement(self.basis, {})
        return SphElement(self.basis, {w: p * c for w, p in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, SphElement):
            return NotImplemented
        return self.basis == other.basis and self.terms == other.terms

    def __hash__(self):
        return hash((self.basis, frozenset(self.terms.items())))

    def relabel(self, basis: Basis) -> "SphElement":
        return SphElement(basis, dict(self.terms))

    def sorted_terms(self, rs: RootSystem) -> list:
        """Terms by decreasing height of the weight (increasing ht(lam - mu)), then lex."""
        return sorted(self.terms.items(), key=lambda kv: (-rs.scaled_height(kv[0]), kv[0]))

    def to_json_obj(self, rs: RootSystem) -> dict:
        return {"basis": str(self.basis),
                "terms": [{"weight": list(w), "coeff": p.to_json()} for w, p in self.sorted_terms(rs)]}

    def to_json(self, rs: RootSystem) -> str:
        return json.dumps(self.to_json_obj(rs), separators=(",", ":"))

    def pretty(self, rs: RootSystem) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({p})*[{','.join(map(str, w))}]" for w, p in self.sorted_terms(rs))


def _accumulate(out: dict, terms: Mapping, factor: QPoly):
    for w, p in terms.items():
        v = out.get(w, ZERO) + p * factor
        if v:
            out[w] = v
        else:
            out.pop(w, None)


class SubsetSums:
    """Signed subset-sum table of a root set ``A``.

    Groups ``sum_{I subset A} (-q)^{|I|} e^{-Sigma_I}`` by the value of
    ``Sigma_I`` (in weight coordinates), so evaluating an M-operator costs one
    chamber walk per distinct sum instead of one per subset.
    """

    def __init__(self, rs: RootSystem, roots: Iterable):
        roots = [tuple(r) for r in roots]
        if len(roots) > MAX_SUBSET_ROOTS:
            raise ValueError(f"|A| = {len(roots)} > {MAX_SUBSET_ROOTS}: refusing 2^|A| enumeration")
        n = rs.rank
        sums = np.zeros((1, n), dtype=np.int64)
        coeffs = np.ones((1, 1), dtype=np.int64)
        for r in roots:
            a = np.asarray(rs.root_to_weight(r), dtype=np.int64)
            d = coeffs.shape[1]
            padded = np.zeros((coeffs.shape[0], d + 1), dtype=np.int64)
            padded[:, :d] = coeffs
            shifted = np.zeros_like(padded)
            shifted[:, 1:] = -coeffs
            allsums = np.concatenate([sums, sums + a])
            allc = np.concatenate([padded, shifted])
            uniq, inv = np.unique(allsums, axis=0, return_inverse=True)
            acc = np.zeros((uniq.shape[0], d + 1), dtype=np.int64)
            np.add.at(acc, inv.reshape(-1), allc)
            keep = acc.any(axis=1)
            sums, coeffs = uniq[keep], acc[keep]
        self.roots = tuple(roots)
        self.sums = sums
        self.coeffs = coeffs

    def __len__(self):
        return self.sums.shape[0]


class SphericalHecke:
    """Spherical Hecke algebra of one root system, with cached bases."""

    def __init__(self, rs: RootSystem, weyl: WeylGroup = None, kostka: Kostka = None):
        self.rs = rs
        self.weyl = weyl if weyl is not None else WeylGroup(rs)
        self.kostka = kostka if kostka is not None else Kostka(rs, self.weyl)
        self.m = rs.highest_height
        self._tables = {}
        self._pre = {}
        self._kl = {}

    @classmethod
    def of(cls, family: str, rank: int) -> "SphericalHecke":
        return cls(RootSystem.build(family, rank))

    # --- bases -----------------------------------------------------------

    def basis(self, i: int) -> Basis:
        """Normalised tag for the i-th pre-canonical basis."""
        if i < 1:
            raise ValueError("pre-canonical level must be >= 1")
        if i == 1:
            return STD
        if i > self.m:
            return CANON
        return Basis("precanon", i)

    def level(self, basis: Basis) -> int:
        if basis == STD:
            return 1
        if basis == CANON:
            return self.m + 1
        return basis.level

    def element(self, basis: Basis, terms: Mapping) -> SphElement:
        return SphElement.build(basis, terms)

    # --- tilde H and the M-operator ------------------------------------

    def tilde_H(self, mu) -> SphElement:
        rep = dominant_rep(self.rs, tuple(mu))
        if not rep.regular:
            return SphElement(CANON, {})
        return SphElement(CANON, {rep.bar: QPoly.const(rep.sign)})

    def subset_sums(self, roots) -> SubsetSums:
        key = tuple(sorted(tuple(r) for r in roots))
        t = self._tables.get(key)
        if t is None:
            t = self._tables[key] = SubsetSums(self.rs, key)
        return t

    def m_op(self, roots, mu) -> SphElement:
        """``sum_{I subset A} (-q)^{|I|} tilde_H(mu - Sigma_I)`` in canonical coordinates."""
        table = self.subset_sums(roots)
        weights = np.asarray(mu, dtype=np.int64)[None, :] - table.sums
        regular, bar, parity = dominant_rep_many(self.rs, weights)
        if not regular.any():
            return SphElement(CANON, {})
        bar = bar[regular]
        signed = table.coeffs[regular] * np.where(parity[regular] == 1, -1, 1)[:, None]
        uniq, inv = np.unique(bar, axis=0, return_inverse=True)
        acc = np.zeros((uniq.shape[0], signed.shape[1]), dtype=np.int64)
        np.add.at(acc, inv.reshape(-1), signed)
        terms = {}
        for w, row in zip(uniq, acc):
            if row.any():
                terms[tuple(int(x) for x in w)] = QPoly(int(x) for x in row)
        return SphElement(CANON, terms)

    # --- pre-canonical bases ---------------------------------------------

    def precanonical(self, lam, i: int) -> SphElement:
        """N^i_lam in canonical coordinates."""
        lam = tuple(lam)
        if not self.rs.is_dominant(lam):
            raise ValueError(f"{lam} is not dominant")
        b = self.basis(i)
        key = (lam, self.level(b))
        hit = self._pre.get(key)
        if hit is not None:
            return hit
        if b == CANON:
            el = SphElement(CANON, {lam: ONE})
        elif b == STD:
            raw = self.m_op(self.rs.positive_roots, lam)
            pi = self.weyl.stabilizer_poincare(lam)
            el = SphElement(CANON, {w: p.exact_div(pi) for w, p in raw.terms.items()})
        else:
            el = self.m_op(self.rs.roots_of_height_at_least(i), lam)
        if el[lam] != ONE:
            raise AssertionError(f"N^{i}_{lam} is not unitriangular: coefficient {el[lam]}")
        self._pre[key] = el
        return el

    def _eliminate(self, e: SphElement, column: Callable, basis: Basis, pick=None) -> SphElement:
        """Unitriangular solve: write ``e`` in the family ``column(mu)`` (which has
        leading coefficient 1 at ``mu``)."""
        rs = self.rs
        rest = dict(e.terms)
        out = {}
        anchor = next(iter(rest), None)
        while rest:
            if pick is None:
                mu = max(rest, key=lambda w: (rs.scaled_height(w), tuple(-x for x in w)))
            else:
                mu = pick(self._maximal(rest))
            c = rest[mu]
            out[mu] = out.get(mu, ZERO) + c
            col = column(mu)
            for w, p in col.terms.items():
                if not rs.same_coset(w, anchor):
                    raise AssertionError(f"weight {w} left the coset of {anchor}")
                v = rest.get(w, ZERO) - p * c
                if v:
                    rest[w] = v
                else:
                    rest.pop(w, None)
            if mu in rest:
                raise AssertionError(f"elimination did not clear {mu}")
        return SphElement(basis, {w: p for w, p in out.items() if p})

    def _maximal(self, terms) -> list:
        ws = sorted(terms)
        return [w for w in ws
                if not any(v != w and self.rs.dominance_leq(w, v) for v in ws)]

    def expand_in_precanonical(self, e: SphElement, i: int, pick=None) -> SphElement:
        """Coordinates of a canonical-basis element in the i-th pre-canonical basis."""
        if e.basis != CANON:
            raise BasisMismatch("expand_in_precanonical expects canonical coordinates")
        b = self.basis(i)
        if b == CANON:
            return e
        lvl = self.level(b)
        return self._eliminate(e, lambda mu: self.precanonical(mu, lvl), b, pick)

    def to_canon(self, e: SphElement) -> SphElement:
        """Canonical coordinates of an element given in any supported basis."""
        if e.basis == CANON:
            return e
        if e.basis == STD:
            return self.std_to_canon(e)
        lvl = self.level(e.basis)
        out = SphElement(CANON, {})
        for mu, c in e.terms.items():
            out = out + self.precanonical(mu, lvl).scale(c)
        return out

    def transition(self, lam, i: int, pick=None) -> SphElement:
        """P_i(lam, .): N^{i+1}_lam in the basis N^i."""
        if not 1 <= i <= self.m:
            raise ValueError(f"level i must be in 1..{self.m} (no basis above N^{self.m + 1})")
        return self.expand_in_precanonical(self.precanonical(lam, i + 1), i, pick)

    def atomic_decomposition(self, lam) -> SphElement:
        """Canonical basis element in the N-basis (= second pre-canonical basis)."""
        return self.expand_in_precanonical(SphElement(CANON, {tuple(lam): ONE}), 2)

    # --- standard basis --------------------------------------------------

    def kl_column(self, lam) -> dict:
        lam = tuple(lam)
        col = self._kl.get(lam)
        if col is None:
            col = self._kl[lam] = self.kostka.kl_column(lam)
        return col

    def canon_to_std(self, e: SphElement) -> SphElement:
        if e.basis != CANON:
            raise BasisMismatch("canon_to_std expects canonical coordinates")
        out = {}
        for lam, c in e.terms.items():
            _accumulate(out, self.kl_column(lam), c)
        return SphElement(STD, out)

    def std_to_canon(self, e: SphElement, pick=None) -> SphElement:
        if e.basis != STD:
            raise BasisMismatch("std_to_canon expects standard coordinates")
        return self._eliminate(e, lambda mu: SphElement(STD, self.kl_column(mu)), CANON, pick)

    def n_basis_std(self, lam) -> SphElement:
        """``N_lam = sum_{mu <= lam} q^{ht(lam - mu)} H_mu``."""
        lam = tuple(lam)
        terms = {}
        for mu in self.rs.dominant_below(lam):
            beta = self.rs.weight_to_root(tuple(a - b for a, b in zip(lam, mu)))
            terms[mu] = QPoly.monomial(sum(beta))
        return SphElement(STD, terms)
