"""Graded maps, syzygy modules and minimal graded free resolutions.

Twists follow the sheaf convention: a free summand R(-a) has twist -a, so a
generator of degree 2 sits at twist -2 and entry (i, j) of a graded map has
degree targetTwists[i] - sourceTwists[j].
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Sequence

from ..field import FieldSpec
from ..linalg import EchelonSpace
from ..poly import Polynomial, graded_basis
from .engine import GroebnerEngine, TermOrder


@dataclass
class GradedMap:
    """A matrix of polynomials F_source -> F_target; column j is the image of e_j."""

    field: FieldSpec
    nvars: int
    source_twists: list[int]
    target_twists: list[int]
    columns: list[dict]  # column j: {row index: Polynomial}

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.target_twists), len(self.source_twists)

    def entry(self, i: int, j: int) -> Polynomial:
        return self.columns[j].get(i) or Polynomial.zero(self.field, self.nvars)

    def entries(self) -> list[list[Polynomial]]:
        rows, cols = self.shape
        return [[self.entry(i, j) for j in range(cols)] for i in range(rows)]

    def is_degree_compatible(self) -> bool:
        for j, col in enumerate(self.columns):
            for i, p in col.items():
                if p and (not p.is_homogeneous()
                          or p.degree != self.target_twists[i] - self.source_twists[j]):
                    return False
        return True

    def has_unit_entries(self) -> bool:
        return any(p and p.degree == 0 for col in self.columns for p in col.values())

    def compose(self, other: "GradedMap") -> "GradedMap":
        """self o other (other's target is self's source)."""
        cols = []
        for col in other.columns:
            out: dict = {}
            for k, p in col.items():
                for i, q in self.columns[k].items():
                    out[i] = out[i] + q * p if i in out else q * p
            cols.append({i: p for i, p in out.items() if p})
        return GradedMap(self.field, self.nvars, list(other.source_twists), list(self.target_twists), cols)

    def is_zero(self) -> bool:
        return all(not p for col in self.columns for p in col.values())

    def evaluate(self, point: Sequence) -> list[list]:
        """Scalar matrix obtained by evaluating every entry at a point."""
        return [[self.entry(i, j).evaluate(point) for j in range(self.shape[1])]
                for i in range(self.shape[0])]

    def to_json(self):
        return {
            "sourceTwists": self.source_twists,
            "targetTwists": self.target_twists,
            "entries": [[str(p) for p in row] for row in self.entries()],
        }


class BettiTable:
    """Finitely supported map (homological index, twist) -> rank."""

    def __init__(self, data: dict | None = None):
        self.data: dict[tuple[int, int], int] = {}
        for (i, tw), r in (data or {}).items():
            if r:
                if i < 0 or r < 0:
                    raise ValueError("indices and ranks must be nonnegative")
                self.data[(i, tw)] = self.data.get((i, tw), 0) + r

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.data == other.data

    def __repr__(self):
        return f"BettiTable({self.to_json()})"

    @property
    def length(self) -> int:
        return max((i for i, _ in self.data), default=0)

    def ranks(self, i: int) -> dict[int, int]:
        return {tw: r for (k, tw), r in sorted(self.data.items(), key=lambda x: (x[0][0], -x[0][1])) if k == i}

    def total_rank(self, i: int) -> int:
        return sum(self.ranks(i).values())

    def reindexed(self, start: int, shift: int = 0) -> "BettiTable":
        """Drop indices below ``start``, renumber from 0 and add ``shift`` to all twists."""
        return BettiTable({(i - start, tw + shift): r for (i, tw), r in self.data.items() if i >= start})

    def euler_dim(self, nvars: int, t: int) -> int:
        """sum_i (-1)^i sum_tw beta_{i,tw} dim R(tw)_t."""
        total = 0
        for (i, tw), r in self.data.items():
            if t + tw >= 0:
                total += (-1) ** i * r * comb(t + tw + nvars - 1, nvars - 1)
        return total

    def to_json(self):
        return [{"index": i, "twist": tw, "rank": r}
                for (i, tw), r in sorted(self.data.items(), key=lambda x: (x[0][0], -x[0][1]))]

    @classmethod
    def from_json(cls, rows):
        return cls({(d["index"], d["twist"]): d["rank"] for d in rows})


# ---------------------------------------------------------------- internals

def _column_degree(col: dict, tw_target: Sequence[int]) -> int:
    for i, p in col.items():
        if p:
            return p.degree - tw_target[i]
    raise ValueError("zero column has no degree")


def _poly_terms_to_vec(col: dict, offset: int = 0) -> dict:
    out = {}
    for i, p in col.items():
        for m, c in p.terms.items():
            out[m + (i + offset,)] = c
    return out


def _minimal_subset(columns: list[dict], degrees: list[int], field: FieldSpec, nvars: int) -> list[int]:
    """Indices of a minimal generating subset of homogeneous module elements.

    Degree by degree, an element is kept iff it is not in the k-span of the
    degree-d part of the submodule generated by the elements kept so far.
    """
    order = sorted(range(len(columns)), key=lambda j: degrees[j])
    chosen: list[int] = []
    keyidx: dict = {}

    def encode(vec: dict) -> dict:
        out = {}
        for t, c in vec.items():
            k = keyidx.get(t)
            if k is None:
                k = keyidx[t] = len(keyidx)
            out[k] = c
        return out

    current = None
    space = None
    for j in order:
        d = degrees[j]
        if d != current:
            current = d
            space = EchelonSpace(field)
            for h in chosen:
                e = d - degrees[h]
                base = _poly_terms_to_vec(columns[h])
                for m in graded_basis(nvars, e):
                    space.add(encode({tuple(a + b for a, b in zip(t[:nvars], m)) + (t[nvars],): c
                                      for t, c in base.items()}))
        if space.add(encode(_poly_terms_to_vec(columns[j]))):
            chosen.append(j)
    return sorted(chosen, key=lambda j: (degrees[j], j))


def minimalize_columns(columns: list[dict], target_twists: Sequence[int], field: FieldSpec, nvars: int):
    """Drop zero and redundant columns; returns (columns, source twists)."""
    columns = [{i: p for i, p in c.items() if p} for c in columns]
    columns = [c for c in columns if c]
    degs = [_column_degree(c, target_twists) for c in columns]
    keep = _minimal_subset(columns, degs, field, nvars)
    return [columns[j] for j in keep], [-degs[j] for j in keep]


def kernel(phi: GradedMap, max_degree: int | None = None, minimal: bool = True) -> GradedMap:
    """Generators of the kernel of phi (the syzygy module of its columns)."""
    F = phi.field
    n = phi.nvars
    r, s = phi.shape
    if s == 0:
        return GradedMap(F, n, [], [], [])
    shifts = [-tw for tw in phi.target_twists] + [-tw for tw in phi.source_twists]
    order = TermOrder(n, shifts=shifts, kind="pot", split=r)
    gens = []
    for j, col in enumerate(phi.columns):
        v = _poly_terms_to_vec(col)
        v[(0,) * n + (r + j,)] = F.one
        gens.append(v)
    eng = GroebnerEngine(F, n, order, max_degree=max_degree)
    basis = eng.run(gens)
    cols = []
    for v in basis:
        if all(t[n] >= r for t in v):
            col: dict = {}
            for t, c in v.items():
                col.setdefault(t[n] - r, {})[t[:n]] = c
            cols.append({j: Polynomial(F, n, terms, _clean=True) for j, terms in col.items()})
    if minimal:
        cols, src = minimalize_columns(cols, phi.source_twists, F, n)
    else:
        src = [-_column_degree(c, phi.source_twists) for c in cols]
    return GradedMap(F, n, src, list(phi.source_twists), cols)


def row_map(gens: Sequence[Polynomial]) -> GradedMap:
    """The 1 x m map R^m -> R given by a list of homogeneous generators."""
    gens = list(gens)
    F, n = gens[0].field, gens[0].nvars
    cols = [{0: g} if g else {} for g in gens]
    return GradedMap(F, n, [-g.degree if g else 0 for g in gens], [0], cols)


def syzygies(gens: Sequence[Polynomial], max_degree: int | None = None) -> GradedMap:
    """Minimal generators of the first syzygy module of homogeneous generators.

    Zero generators are skipped (their unit syzygies carry no information).
    The target twists are those of the nonzero generators.
    """
    nz = [g for g in gens if g]
    if any(not g.is_homogeneous() for g in nz):
        raise ValueError("syzygies require homogeneous generators")
    return kernel(row_map(nz), max_degree=max_degree)


@dataclass
class Resolution:
    maps: list[GradedMap]
    betti: BettiTable
    complete: bool = dc_field(default=False)

    def to_json(self):
        return {"betti": self.betti.to_json(), "complete": self.complete}


def minimal_free_resolution(gens: Sequence[Polynomial], max_steps: int,
                            max_degree: int | None = None) -> Resolution:
    """Minimal graded free resolution of R/(gens) up to ``max_steps`` maps.

    Index 0 is R itself; index k is the source of the k-th differential.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    nz = [g for g in gens if g]
    if not nz:
        raise ValueError("no nonzero generators")
    if any(not g.is_homogeneous() for g in nz):
        raise ValueError("minimal_free_resolution requires homogeneous generators")
    F, n = nz[0].field, nz[0].nvars
    cols, src = minimalize_columns([{0: g} for g in nz], [0], F, n)
    d1 = GradedMap(F, n, src, [0], cols)
    if any(p.degree == 0 for c in cols for p in c.values()):
        # unit ideal: R/(1) = 0
        return Resolution([], BettiTable(), True)
    maps = [d1]
    complete = False
    while len(maps) < max_steps:
        nxt = kernel(maps[-1], max_degree=max_degree)
        if not nxt.source_twists:
            complete = True
            break
        maps.append(nxt)
    data = {(0, 0): 1}
    for k, m in enumerate(maps, start=1):
        for tw in m.source_twists:
            data[(k, tw)] = data.get((k, tw), 0) + 1
    return Resolution(maps, BettiTable(data), complete)
