"""Line-bundle cohomology on T = P(O(1) + O) over P^2, Euler characteristics on S-hat, and cover arithmetic."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb


def h_p2(k: int, m: int) -> int:
    """h^k(P^2, O(m))."""
    if k == 0:
        return comb(m + 2, 2) if m >= 0 else 0
    if k == 2:
        return comb(-m - 1, 2) if m <= -3 else 0
    return 0


@dataclass(frozen=True)
class CohomVector:
    dims: tuple[int, int, int, int]

    def __getitem__(self, k: int) -> int:
        return self.dims[k] if 0 <= k < len(self.dims) else 0

    @property
    def euler(self) -> int:
        return sum((-1) ** k * h for k, h in enumerate(self.dims))

    def nonzero_degrees(self) -> list[int]:
        return [k for k, h in enumerate(self.dims) if h]

    def to_json(self):
        return {str(k): h for k, h in enumerate(self.dims)}


def cohomT(i: int, j: int, shifted_indexing: bool = False) -> CohomVector:
    """h^k(T, O_T(i h + j l)) for k = 0..3.

    For i <= -2 the summands come from R^1 of the projection, so they land in
    cohomological degree k = 1 + (degree on P^2). ``shifted_indexing`` places
    them at k = (degree on P^2) - 1 instead, which drops the h^0 summands and
    is not compatible with Riemann-Roch; it exists only for comparison.
    """
    dims = [0, 0, 0, 0]
    if i >= 0:
        for k in range(4):
            dims[k] = sum(h_p2(k, j + u) for u in range(i + 1))
    elif i <= -2:
        shift = -1 if shifted_indexing else 1
        for k in range(4):
            src = k - shift
            if 0 <= src <= 2:
                dims[k] = sum(h_p2(src, j + u) for u in range(i + 1, 0))
    return CohomVector(tuple(dims))


def chiT(i: int, j: int) -> int:
    return cohomT(i, j).euler


def eulerS_four_term(n: int, i: int, j: int) -> int:
    """Alternating sum over 0 -> O_T((1-n)l - h) + O_T(l - h) -> O_T(l) + O_T -> O_S(h) -> 0 twisted by i h + j l.

    Kept for comparison: for n >= 3 it disagrees with Riemann-Roch on the
    blown-up plane (e.g. it gives 2 for chi(O_S) at n = 3).
    """
    return (chiT(i, j + 1) + chiT(i, j)
            - chiT(i - 1, j + 1 - n) - chiT(i - 1, j + 1))


def eulerS_h_twist(n: int, i: int, j: int) -> int:
    """chi(O_S(h + i h + j l)) with S the divisor of class h + (n-1) l in T.

    Uses 0 -> O_T((1-n) l) -> O_T(h) -> O_S(h) -> 0.
    """
    return chiT(i + 1, j) - chiT(i, j + 1 - n)


def eulerS_riemann_roch(n: int, i: int, j: int) -> int:
    """Same number from Riemann-Roch on P^2 blown up at n(n-1) points, h = n l - e."""
    a = (1 + i) * n + j
    b = 1 + i
    pts = n * (n - 1)
    d2 = a * a - b * b * pts
    dk = -3 * a + b * pts
    return 1 + (d2 - dk) // 2


@dataclass(frozen=True)
class CoverSolution:
    x: int
    y: int

    @property
    def nontrivial(self) -> bool:
        return self.x != 0

    def to_json(self):
        out = {"x": self.x, "y": self.y, "nontrivial": self.nontrivial}
        if not self.nontrivial:
            out["flag"] = "locally-free class, excluded by context"
        return out


@dataclass(frozen=True)
class CoverSolutionSet:
    n: int
    solutions: tuple[CoverSolution, ...]
    window: tuple[int, int]

    @property
    def nontrivial(self) -> set[tuple[int, int]]:
        return {(s.x, s.y) for s in self.solutions if s.nontrivial}

    def to_json(self):
        return {"n": self.n, "solutions": [s.to_json() for s in self.solutions]}


def cover_solutions(n: int, window: int | None = None) -> CoverSolutionSet:
    """Integer (x, y) with y >= 0, y >= (1-n) x and x C(n,2) + y n = C(n,2).

    The constraints force -1 <= x <= 1; the scan covers a wider window so the
    bound is checked rather than assumed.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    w = window if window is not None else n + 2
    b = comb(n, 2)
    sols = []
    for x in range(-w, w + 1):
        num = b - x * b
        if num % n:
            continue
        y = num // n
        if y >= 0 and y >= (1 - n) * x:
            sols.append(CoverSolution(x, y))
    return CoverSolutionSet(n, tuple(sols), (-w, w))
