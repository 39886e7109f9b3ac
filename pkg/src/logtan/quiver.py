"""Support of the principal-parts representation on P^1 x P^1 and King slopes of its subrepresentations."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator

from .errors import ScaleError

MAX_N = 12


class ClosureError(ValueError):
    """A vertex set that is not downward closed."""


@dataclass(frozen=True)
class QuiverSupport:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")

    @property
    def vertices(self) -> list[tuple[int, int]]:
        n = self.n
        return [(-n + 2 * k, -n + 2 * t) for k in range(n + 1) for t in range(n + 1) if (k, t) != (n, n)]

    def __contains__(self, v) -> bool:
        a, b = v
        n = self.n
        return (-n <= a <= n and -n <= b <= n and (a + n) % 2 == 0 and (b + n) % 2 == 0
                and (a, b) != (n, n))

    def arrows(self) -> list[tuple[tuple[int, int], tuple[int, int]]]:
        out = []
        for a, b in self.vertices:
            for w in ((a - 2, b), (a, b - 2)):
                if w in self:
                    out.append(((a, b), w))
        return out

    @property
    def c1(self) -> int:
        return sum(a + b for a, b in self.vertices)

    @property
    def rank(self) -> int:
        return len(self.vertices)

    def column_capacity(self, k: int) -> int:
        return self.n if k == self.n else self.n + 1


def build_support(n: int) -> QuiverSupport:
    return QuiverSupport(n)


@dataclass(frozen=True)
class Subrep:
    support: QuiverSupport
    members: frozenset

    @classmethod
    def from_profile(cls, q: QuiverSupport, heights: Iterable[int]) -> "Subrep":
        n = q.n
        mem = {(-n + 2 * k, -n + 2 * t) for k, h in enumerate(heights) for t in range(h)}
        return cls(q, frozenset(mem))

    @classmethod
    def generated_by(cls, q: QuiverSupport, gens: Iterable[tuple[int, int]]) -> "Subrep":
        gens = list(gens)
        for g in gens:
            if g not in q:
                raise ValueError(f"{g} is not a vertex")
        mem = {v for v in q.vertices if any(v[0] <= g[0] and v[1] <= g[1] for g in gens)}
        return cls(q, frozenset(mem))

    def profile(self) -> tuple[int, ...]:
        n = self.support.n
        return tuple(sum(1 for (a, _) in self.members if a == -n + 2 * k) for k in range(n + 1))

    def boundary(self) -> list[tuple[int, int]]:
        """Maximal members (the vertices that generate the subrepresentation)."""
        m = self.members
        return sorted(v for v in m if (v[0] + 2, v[1]) not in m and (v[0], v[1] + 2) not in m)

    @property
    def c1(self) -> int:
        return sum(a + b for a, b in self.members)

    @property
    def rank(self) -> int:
        return len(self.members)


def validate_subrep(q: QuiverSupport, members: Iterable[tuple[int, int]]) -> Subrep:
    mem = frozenset(members)
    for v in mem:
        if v not in q:
            raise ClosureError(f"{v} is not a vertex of the support")
    for a, b in sorted(mem):
        for w in ((a - 2, b), (a, b - 2)):
            if w in q and w not in mem:
                raise ClosureError(f"{(a, b)} is a member but its predecessor {w} is not")
    return Subrep(q, mem)


@dataclass(frozen=True)
class SlopeRecord:
    c1: int
    rk: int
    mu: int
    mu_reduced: int

    def to_json(self):
        return {"c1": self.c1, "rk": self.rk, "mu": self.mu, "muReducedRank": self.mu_reduced}


def reduced_rank(n: int) -> int:
    return n * n - 1


def king_slope(s: Subrep) -> SlopeRecord:
    """mu = c1(E) rk(E') - rk(E) c1(E') with E the full support.

    ``mu_reduced`` replaces rk(E) by n^2 - 1, i.e. sums -2n + (1 - n^2)(a + b)
    over the members.
    """
    s = validate_subrep(s.support, s.members)
    q = s.support
    mu = q.c1 * s.rank - q.rank * s.c1
    mu_reduced = q.c1 * s.rank - reduced_rank(q.n) * s.c1
    return SlopeRecord(s.c1, s.rank, mu, mu_reduced)


def _check_scale(n: int):
    if n > MAX_N:
        raise ScaleError(f"enumeration supports n <= {MAX_N}, got {n}")


def enumerate_profiles(q: QuiverSupport) -> Iterator[tuple[int, ...]]:
    """Nonincreasing column heights; column k holds at most column_capacity(k) vertices."""
    _check_scale(q.n)
    n = q.n
    heights = [0] * (n + 1)

    def rec(k: int, cap: int):
        if k > n:
            yield tuple(heights)
            return
        for h in range(min(cap, q.column_capacity(k)), -1, -1):
            heights[k] = h
            yield from rec(k + 1, h)

    yield from rec(0, n + 1)


def enumerate_subreps(q: QuiverSupport) -> Iterator[Subrep]:
    for prof in enumerate_profiles(q):
        yield Subrep.from_profile(q, prof)


def lattice_path_count(n: int) -> int:
    """Number of order ideals of the grid minus its top vertex, including empty and full."""
    return comb(2 * n + 2, n + 1) - 1


def order_ideal_count(elements: list, leq) -> int:
    """Count order ideals of a finite poset by memoized splitting on one element.

    ideals(P) = ideals(P minus up(x)) + ideals(P minus down(x)).
    """
    m = len(elements)
    up = [0] * m
    down = [0] * m
    for i in range(m):
        for j in range(m):
            if leq(elements[i], elements[j]):
                up[i] |= 1 << j
                down[j] |= 1 << i

    @lru_cache(maxsize=None)
    def count(mask: int) -> int:
        if not mask:
            return 1
        low = mask & -mask
        i = low.bit_length() - 1
        return count(mask & ~up[i]) + count(mask & ~down[i])

    out = count((1 << m) - 1)
    count.cache_clear()
    return out


def support_order_ideal_count(q: QuiverSupport) -> int:
    verts = sorted(q.vertices, key=lambda v: (v[0] + v[1], v))
    return order_ideal_count(verts, lambda u, v: u[0] <= v[0] and u[1] <= v[1])


@dataclass
class ScanResult:
    n: int
    count: int
    min_mu: int | None
    argmin: Subrep | None
    strictly_stable: bool
    min_mu_reduced: int | None
    argmin_reduced: Subrep | None

    def to_json(self):
        return {
            "n": self.n,
            "count": self.count,
            "minMu": self.min_mu,
            "argminBoundary": [list(v) for v in self.argmin.boundary()] if self.argmin else [],
            "strictlyStable": self.strictly_stable,
            "reducedRank": {
                "minMu": self.min_mu_reduced,
                "argminBoundary": [list(v) for v in self.argmin_reduced.boundary()] if self.argmin_reduced else [],
                "strictlyStable": self.min_mu_reduced is not None and self.min_mu_reduced > 0,
            },
        }


def semistability_scan(n: int) -> ScanResult:
    """Exhaustive minimum of mu over proper nonempty subrepresentations.

    Column sums are accumulated incrementally; ``count`` includes the empty
    and the full support.
    """
    _check_scale(n)
    q = QuiverSupport(n)
    c1E, rkE, rkP = q.c1, q.rank, reduced_rank(n)
    caps = [q.column_capacity(k) for k in range(n + 1)]
    # c1 of the lowest h vertices in column k
    col_c1 = [[h * (-n + 2 * k) + h * (-n) + h * (h - 1) for h in range(n + 2)] for k in range(n + 1)]
    best = [None, None, None, None]  # mu, profile, mu_reduced, profile
    heights = [0] * (n + 1)
    count = 0

    def rec(k: int, cap: int, size: int, c1: int):
        nonlocal count
        if k > n:
            count += 1
            if 0 < size < rkE:
                mu = c1E * size - rkE * c1
                if best[0] is None or mu < best[0]:
                    best[0], best[1] = mu, tuple(heights)
                mp = c1E * size - rkP * c1
                if best[2] is None or mp < best[2]:
                    best[2], best[3] = mp, tuple(heights)
            return
        for h in range(min(cap, caps[k]), -1, -1):
            heights[k] = h
            rec(k + 1, h, size + h, c1 + col_c1[k][h])

    rec(0, n + 1, 0, 0)
    argmin = Subrep.from_profile(q, best[1]) if best[1] else None
    argmin_r = Subrep.from_profile(q, best[3]) if best[3] else None
    return ScanResult(n, count, best[0], argmin, best[0] is not None and best[0] > 0, best[2], argmin_r)
