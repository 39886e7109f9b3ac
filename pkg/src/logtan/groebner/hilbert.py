"""Hilbert functions, Hilbert series numerators and Hilbert polynomials."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from ..poly import graded_basis, graded_basis_size


def _minimalize_monomials(gens: Sequence[tuple]) -> list[tuple]:
    gens = sorted(set(gens), key=sum)
    out: list[tuple] = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(m, g)) for m in out):
            out.append(g)
    return out


def _poly_sub(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]


def _shift(a: list[int], k: int) -> list[int]:
    return [0] * k + a


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _trim(a: list[int]) -> list[int]:
    while len(a) > 1 and a[-1] == 0:
        a = a[:-1]
    return a


def hilbert_numerator(monomials: Sequence[tuple], nvars: int) -> list[int]:
    """K(t) with HS_{R/I}(t) = K(t) / (1-t)^nvars for the monomial ideal I.

    Pivot recursion: K(I) = K(I + (x)) + t * K(I : x) for a variable x that
    occurs in at least two minimal generators; pairwise coprime generators
    give the product of (1 - t^deg).
    """
    gens = _minimalize_monomials(monomials)
    if any(sum(g) == 0 for g in gens):
        return [0]
    return _trim(_numerator(tuple(gens), nvars))


def _numerator(gens: tuple, nvars: int) -> list[int]:
    if not gens:
        return [1]
    counts = [0] * nvars
    for g in gens:
        for i, e in enumerate(g):
            if e:
                counts[i] += 1
    i = max(range(nvars), key=lambda k: counts[k])
    if counts[i] <= 1:
        out = [1]
        for g in gens:
            out = _poly_mul(out, _poly_sub([1], _shift([1], sum(g))))
        return out
    x = tuple(1 if k == i else 0 for k in range(nvars))
    plus_x = _minimalize_monomials([g for g in gens if g[i] == 0] + [x])
    colon_x = _minimalize_monomials([tuple(e - 1 if k == i and e > 0 else e for k, e in enumerate(g))
                                     for g in gens])
    a = _numerator(tuple(plus_x), nvars)
    b = _numerator(tuple(colon_x), nvars) if all(sum(g) for g in colon_x) else [0]
    n = max(len(a), len(b) + 1)
    return [(a[k] if k < len(a) else 0) + (b[k - 1] if 0 < k <= len(b) else 0) for k in range(n)]


def reduce_numerator(num: list[int], nvars: int) -> tuple[list[int], int]:
    """Cancel (1-t) factors: returns (Q, d) with HS = Q(t)/(1-t)^d and Q(1) != 0."""
    if all(c == 0 for c in num):
        return [0], 0
    q = list(num)
    d = nvars
    while d > 0 and sum(q) == 0:
        # divide by (1 - t): synthetic division
        out = []
        acc = 0
        for c in q[:-1]:
            acc += c
            out.append(acc)
        q = _trim(out) if out else [0]
        d -= 1
    return q, d


@dataclass
class HilbertFn:
    """dim_k (R/I)_t for 0 <= t <= max_degree, plus the Hilbert polynomial.

    ``numerator``/``krull_dim`` describe the series Q(t)/(1-t)^krull_dim; the
    polynomial coefficients (in powers of t, lowest first) agree with
    ``values`` for every degree >= ``regularity_bound``.
    """

    values: dict[int, int]
    numerator: list[int] = field(default_factory=lambda: [1])
    krull_dim: int = 0
    poly_coeffs: list[Fraction] = field(default_factory=list)
    regularity_bound: int = 0

    def __getitem__(self, t: int) -> int:
        return self.values.get(t, 0) if t >= 0 else 0

    def as_list(self) -> list[int]:
        return [self.values[t] for t in sorted(self.values)]

    @property
    def degree(self) -> int:
        return sum(self.numerator) if self.krull_dim else sum(self.numerator)

    def polynomial_value(self, t: int) -> Fraction:
        return sum((c * t**k for k, c in enumerate(self.poly_coeffs)), Fraction(0))

    def to_json(self):
        return [{"degree": t, "dim": self.values[t]} for t in sorted(self.values)]


def series_value(q: list[int], d: int, t: int) -> int:
    """Coefficient of t^t in Q(t)/(1-t)^d."""
    if d == 0:
        return q[t] if 0 <= t < len(q) else 0
    return sum(c * comb(t - i + d - 1, d - 1) for i, c in enumerate(q) if t - i >= 0)


def hilbert_polynomial_coeffs(q: list[int], d: int) -> list[Fraction]:
    """Coefficients of sum_i q_i * C(t - i + d - 1, d - 1) as a polynomial in t."""
    if d == 0:
        return []
    total = [Fraction(0)] * d
    for i, c in enumerate(q):
        if not c:
            continue
        # C(t - i + d - 1, d - 1) = prod_{k=1}^{d-1} (t - i + k) / (d-1)!
        poly = [Fraction(1)]
        for k in range(1, d):
            a = Fraction(k - i)
            new = [Fraction(0)] * (len(poly) + 1)
            for j, x in enumerate(poly):
                new[j] += x * a
                new[j + 1] += x
            poly = new
        fact = 1
        for k in range(1, d):
            fact *= k
        for j, x in enumerate(poly):
            total[j] += c * x / fact
    while total and total[-1] == 0:
        total.pop()
    return total


def standard_monomial_counts(leading: Sequence[tuple], nvars: int, max_degree: int) -> dict[int, int]:
    """Count monomials of each degree outside the monomial ideal (explicit enumeration)."""
    lead = _minimalize_monomials(leading)
    out = {}
    for t in range(max_degree + 1):
        count = 0
        for m in graded_basis(nvars, t):
            if not any(all(a <= b for a, b in zip(g, m)) for g in lead):
                count += 1
        out[t] = count
    return out


def hilbert_from_leading(leading: Sequence[tuple], nvars: int, max_degree: int) -> HilbertFn:
    num = hilbert_numerator(leading, nvars)
    q, d = reduce_numerator(num, nvars)
    values = standard_monomial_counts(leading, nvars, max_degree)
    coeffs = hilbert_polynomial_coeffs(q, d) if any(q) else []
    reg = max(0, len(q) - d)
    return HilbertFn(values=values, numerator=q, krull_dim=d, poly_coeffs=coeffs, regularity_bound=reg)


def binomial_dim(nvars: int, t: int) -> int:
    return graded_basis_size(nvars, t)
