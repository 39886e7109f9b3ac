"""Ideals of k[x_0..x_{n-1}] with cached Groebner bases, colon ideals and saturation."""
from __future__ import annotations

from typing import Iterable, Sequence

from ..field import FieldSpec
from ..linalg import ExactMatrix, rank
from ..poly import Polynomial, graded_basis, graded_basis_size, mono_mul
from .engine import GroebnerEngine, TermOrder, normal_form as _vec_normal_form
from .hilbert import HilbertFn, hilbert_from_leading, reduce_numerator, hilbert_numerator


def _to_vec(f: Polynomial) -> dict:
    return {m + (0,): c for m, c in f.terms.items()}


def _from_vec(v: dict, field: FieldSpec, nvars: int) -> Polynomial:
    return Polynomial(field, nvars, {t[:nvars]: c for t, c in v.items()}, _clean=True)


class Ideal:
    """An ideal given by generators; the reduced grevlex Groebner basis is computed lazily."""

    def __init__(self, gens: Iterable[Polynomial], nvars: int | None = None,
                 field: FieldSpec | None = None, *, max_degree: int | None = None):
        gens = list(gens)
        if gens:
            nvars = gens[0].nvars if nvars is None else nvars
            field = gens[0].field if field is None else field
        if nvars is None or field is None:
            raise ValueError("an ideal without generators needs nvars and field")
        for g in gens:
            if g.nvars != nvars or g.field != field:
                raise ValueError("generators live in different rings")
        self.nvars = nvars
        self.field = field
        self.generators = [g for g in gens if g]
        self.max_degree = max_degree
        self._gb: list[Polynomial] | None = None

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.generators]})"

    @property
    def homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def _like(self, gens) -> "Ideal":
        return Ideal(gens, self.nvars, self.field, max_degree=self.max_degree)

    # Groebner basis ------------------------------------------------------

    def groebner_basis(self) -> list[Polynomial]:
        if self._gb is None:
            order = TermOrder(self.nvars)
            eng = GroebnerEngine(self.field, self.nvars, order, product_criterion=True,
                                 max_degree=self.max_degree)
            basis = eng.run([_to_vec(g) for g in self.generators])
            self._gb = [_from_vec(v, self.field, self.nvars) for v in basis]
        return self._gb

    def leading_monomials(self) -> list[tuple]:
        return [g.leading_monomial() for g in self.groebner_basis()]

    def normal_form(self, f: Polynomial) -> Polynomial:
        gb = self.groebner_basis()
        order = TermOrder(self.nvars)
        r = _vec_normal_form(_to_vec(f), [_to_vec(g) for g in gb], self.field, self.nvars, order)
        return _from_vec(r, self.field, self.nvars)

    def contains(self, f: Polynomial) -> bool:
        return not self.normal_form(f)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.generators)

    def equals(self, other: "Ideal") -> bool:
        return self.contains_ideal(other) and other.contains_ideal(self)

    def is_unit(self) -> bool:
        return any(sum(m) == 0 for m in self.leading_monomials())

    # numerical invariants ------------------------------------------------

    def _require_homogeneous(self):
        if not self.homogeneous:
            raise ValueError("operation requires a homogeneous ideal")

    def dim_deg(self) -> tuple[int, int]:
        """(projective dimension of V(I), degree); (-1, 0) for an irrelevant or unit ideal."""
        self._require_homogeneous()
        num = hilbert_numerator(self.leading_monomials(), self.nvars)
        q, d = reduce_numerator(num, self.nvars)
        if d == 0:
            return -1, 0
        return d - 1, sum(q)

    def hilbert_function(self, max_degree: int) -> HilbertFn:
        self._require_homogeneous()
        return hilbert_from_leading(self.leading_monomials(), self.nvars, max_degree)

    def hilbert_function_dense(self, max_degree: int) -> dict[int, int]:
        """dim (R/I)_t from the rank of the degree-t generator multiplication matrix."""
        self._require_homogeneous()
        out = {}
        for t in range(max_degree + 1):
            basis = graded_basis(self.nvars, t)
            index = {m: i for i, m in enumerate(basis)}
            rows = []
            for g in self.generators:
                for m in graded_basis(self.nvars, t - g.degree):
                    row = [0] * len(basis)
                    for u, c in g.terms.items():
                        row[index[mono_mul(u, m)]] = c
                    rows.append(row)
            r = rank(ExactMatrix.from_rows(self.field, rows, len(basis))) if rows else 0
            out[t] = graded_basis_size(self.nvars, t) - r
        return out

    def graded_piece_dim(self, t: int) -> int:
        """dim_k I_t."""
        return graded_basis_size(self.nvars, t) - self.hilbert_function(t)[t]


# ------------------------------------------------------------ module-level API

def groebner_basis(i: Ideal) -> Ideal:
    out = i._like(i.groebner_basis())
    out._gb = list(i.groebner_basis())
    return out


def normal_form(f: Polynomial, i: Ideal) -> Polynomial:
    return i.normal_form(f)


def dim_deg(i: Ideal) -> tuple[int, int]:
    return i.dim_deg()


def hilbert_function(i: Ideal, max_degree: int) -> HilbertFn:
    return i.hilbert_function(max_degree)


def exact_divide(g: Polynomial, f: Polynomial) -> Polynomial:
    """g / f, assuming f divides g; raises ValueError otherwise."""
    F = g.field
    q = Polynomial.zero(F, g.nvars)
    lm = f.leading_monomial()
    inv = F.inv(f.leading_coefficient())
    r = g
    while r:
        m = r.leading_monomial()
        if any(a < b for a, b in zip(m, lm)):
            raise ValueError("not an exact division")
        t = Polynomial.monomial(F, g.nvars, tuple(a - b for a, b in zip(m, lm)),
                                F.reduce(r.leading_coefficient() * inv))
        q = q + t
        r = r - t * f
    return q


def intersect(i: Ideal, j: Ideal) -> Ideal:
    """I cap J by eliminating t from t*I + (1-t)*J."""
    n = i.nvars
    F = i.field
    order = TermOrder(n + 1, kind="elim")

    def lift(f: Polynomial, with_t: int, minus: bool = False) -> dict:
        out: dict = {}
        for m, c in f.terms.items():
            if with_t in (0, 2):
                out[(0,) + m + (0,)] = F.reduce(out.get((0,) + m + (0,), 0) + c)
            if with_t in (1, 2):
                key = (1,) + m + (0,)
                out[key] = F.reduce(out.get(key, 0) + (F.neg(c) if minus else c))
        return {k: v for k, v in out.items() if v}

    gens = [lift(f, 1) for f in i.generators]
    gens += [lift(f, 2, minus=True) for f in j.generators]
    eng = GroebnerEngine(F, n + 1, order)
    basis = eng.run(gens)
    keep = []
    for v in basis:
        if all(t[0] == 0 for t in v):
            keep.append(Polynomial(F, n, {t[1:n + 1]: c for t, c in v.items()}, _clean=True))
    return i._like(keep)


def colon_poly(i: Ideal, f: Polynomial) -> Ideal:
    """I : f = (I cap (f)) / f."""
    if not f:
        return i._like([Polynomial.constant(i.field, i.nvars, 1)])
    inter = intersect(i, i._like([f]))
    return i._like([exact_divide(g, f) for g in inter.generators])


def colon(i: Ideal, j: Ideal) -> Ideal:
    """I : J as the intersection of I : g over the generators g of J."""
    gens = [g for g in j.generators if g]
    if not gens:
        return i._like([Polynomial.constant(i.field, i.nvars, 1)])
    out = colon_poly(i, gens[0])
    for g in gens[1:]:
        out = intersect(out, colon_poly(i, g))
    return reduce_generators(out)


def reduce_generators(i: Ideal) -> Ideal:
    """Replace the generators by the reduced Groebner basis (canonical form)."""
    out = i._like(i.groebner_basis())
    out._gb = list(i.groebner_basis())
    return out


def saturate(i: Ideal, j: Ideal, max_iter: int = 64) -> Ideal:
    """I : J^infinity by iterating colon ideals until the chain stabilizes."""
    cur = reduce_generators(i)
    for _ in range(max_iter):
        nxt = colon(cur, j)
        if cur.contains_ideal(nxt):
            return cur
        cur = nxt
    raise RuntimeError("saturation did not stabilize")


def irrelevant_ideal(nvars: int, field: FieldSpec) -> Ideal:
    return Ideal([Polynomial.var(field, nvars, k) for k in range(nvars)], nvars, field)


def power_of_ideal(i: Ideal, k: int) -> Ideal:
    """Generators of I^k (products of k generators, deduplicated)."""
    if k == 0:
        return i._like([Polynomial.constant(i.field, i.nvars, 1)])
    cur = list(i.generators)
    for _ in range(k - 1):
        seen = {}
        for a in cur:
            for b in i.generators:
                p = (a * b).monic()
                seen[tuple(sorted(p.terms.items()))] = p
        cur = list(seen.values())
    return i._like(cur)
