"""Buchberger engine for submodules of free modules over k[x_0..x_{n-1}].

A vector is a dict mapping a flat term ``(e_0, ..., e_{n-1}, comp)`` to a
nonzero coefficient; ideals are the rank-one case with ``comp == 0``.
Term orders are given as *min-keys*: a smaller key means a larger term, so a
heap pops leading terms first and an ascending sort lists terms in
decreasing order.
"""
from __future__ import annotations

import heapq
from typing import Callable, Sequence

from ..field import FieldSpec

Term = tuple
Vector = dict


class DegreeBoundExceeded(RuntimeError):
    """Raised when a computation needs a degree above the configured cap."""


# ------------------------------------------------------------------ orders

class TermOrder:
    """A module term order with per-component degree shifts.

    ``kind``:
      * ``"top"`` graded reverse lexicographic, ties broken by component
        (lower index is larger);
      * ``"pot"`` components ``< split`` dominate all others; within each
        block the ``"top"`` rule applies (elimination of the tracking block);
      * ``"elim"`` the first variable dominates (block order), grevlex on the
        remaining variables; rank one only.
    """

    def __init__(self, nvars: int, shifts: Sequence[int] = (0,), kind: str = "top", split: int | None = None):
        self.nvars = nvars
        self.shifts = tuple(shifts)
        self.kind = kind
        self.split = split
        self._cache: dict = {}
        n = nvars
        sh = self.shifts
        if kind == "top":
            def key(t):
                return (-(sum(t[:n]) + sh[t[n]]),) + t[n - 1::-1] + (t[n],)
        elif kind == "pot":
            def key(t):
                c = t[n]
                return (0 if c < split else 1, -(sum(t[:n]) + sh[c])) + t[n - 1::-1] + (c,)
        elif kind == "elim":
            def key(t):
                return (-t[0], -sum(t[1:n])) + t[n - 1:0:-1] + (t[n],)
        else:
            raise ValueError(kind)
        self._raw = key

    def key(self, t: Term):
        k = self._cache.get(t)
        if k is None:
            k = self._raw(t)
            self._cache[t] = k
        return k

    def degree(self, t: Term) -> int:
        return sum(t[:self.nvars]) + self.shifts[t[self.nvars]]


# --------------------------------------------------------------- helpers

def leading_term(v: Vector, order: TermOrder) -> Term:
    return min(v, key=order.key)


def sorted_terms(v: Vector, order: TermOrder):
    return sorted(v.items(), key=lambda it: order.key(it[0]))


def vector_degree(v: Vector, order: TermOrder) -> int:
    return max((order.degree(t) for t in v), default=-1)


def make_monic(v: Vector, field: FieldSpec, order: TermOrder) -> Vector:
    if not v:
        return v
    lt = leading_term(v, order)
    inv = field.inv(v[lt])
    if inv == 1:
        return dict(v)
    red = field.reduce
    return {t: red(c * inv) for t, c in v.items()}


class _Elem:
    __slots__ = ("vec", "lt", "lexp", "comp", "tail", "sugar", "active")

    def __init__(self, vec, lt, tail, sugar, n):
        self.vec = vec
        self.lt = lt
        self.lexp = lt[:n]
        self.comp = lt[n]
        self.tail = tail
        self.sugar = sugar
        self.active = True


class GroebnerEngine:
    """Buchberger's algorithm with Gebauer-Moeller pair elimination and sugar selection."""

    def __init__(self, field: FieldSpec, nvars: int, order: TermOrder, *,
                 product_criterion: bool = False, max_degree: int | None = None):
        self.field = field
        self.n = nvars
        self.order = order
        self.product_criterion = product_criterion
        self.max_degree = max_degree
        self.elems: list[_Elem] = []
        self.by_comp: dict[int, list[_Elem]] = {}
        self.stats = {"pairs": 0, "zero_reductions": 0, "skipped": 0}

    # reduction ----------------------------------------------------------

    def _find_reducer(self, t: Term):
        n = self.n
        for e in self.by_comp.get(t[n], ()):
            le = e.lexp
            ok = True
            for i in range(n):
                if le[i] > t[i]:
                    ok = False
                    break
            if ok:
                return e
        return None

    def reduce(self, v: Vector, full: bool = True) -> Vector:
        """Remainder of v on division by the current elements."""
        if not v:
            return {}
        F = self.field
        p = F.p
        key = self.order.key
        n = self.n
        f = dict(v)
        heap = [(key(t), t) for t in f]
        heapq.heapify(heap)
        rem: Vector = {}
        while heap:
            _, t = heapq.heappop(heap)
            c = f.get(t)
            if c is None:
                continue
            r = self._find_reducer(t)
            if r is None:
                del f[t]
                rem[t] = c
                if not full:
                    rem.update(f)
                    return rem
                continue
            del f[t]
            mult = tuple(t[i] - r.lexp[i] for i in range(n)) + (0,)
            if p is not None:
                for u, a in r.tail:
                    w = tuple(x + y for x, y in zip(u, mult))
                    old = f.get(w)
                    if old is None:
                        f[w] = (-c * a) % p
                        heapq.heappush(heap, (key(w), w))
                    else:
                        x = (old - c * a) % p
                        if x:
                            f[w] = x
                        else:
                            del f[w]
            else:
                for u, a in r.tail:
                    w = tuple(x + y for x, y in zip(u, mult))
                    old = f.get(w)
                    if old is None:
                        f[w] = -c * a
                        heapq.heappush(heap, (key(w), w))
                    else:
                        x = old - c * a
                        if x:
                            f[w] = x
                        else:
                            del f[w]
        return rem

    # basis maintenance ---------------------------------------------------

    def _make_elem(self, vec: Vector, sugar: int) -> _Elem:
        vec = make_monic(vec, self.field, self.order)
        items = sorted_terms(vec, self.order)
        lt = items[0][0]
        return _Elem(vec, lt, items[1:], sugar, self.n)

    def _insert(self, e: _Elem):
        self.elems.append(e)
        self.by_comp.setdefault(e.comp, []).append(e)

    def _lcm(self, a: _Elem, b: _Elem) -> Term:
        return tuple(max(x, y) for x, y in zip(a.lexp, b.lexp)) + (a.comp,)

    def _pair_sugar(self, a: _Elem, b: _Elem, lcm: Term) -> int:
        ld = sum(lcm[:self.n])
        return max(a.sugar + ld - sum(a.lexp), b.sugar + ld - sum(b.lexp))

    def _divides_term(self, a: Term, b: Term) -> bool:
        return a[self.n] == b[self.n] and all(x <= y for x, y in zip(a[:self.n], b[:self.n]))

    def _update(self, pairs: list, h: _Elem):
        """Gebauer-Moeller update of the pair list when adding h."""
        n = self.n
        hl = h.lt
        # B-criterion on old pairs
        kept = []
        for pr in pairs:
            _, _, lcm, a, b = pr
            if (self._divides_term(hl, lcm)
                    and self._lcm(a, h) != lcm and self._lcm(b, h) != lcm):
                self.stats["skipped"] += 1
                continue
            kept.append(pr)
        # new pairs
        cands = []
        for g in self.by_comp.get(h.comp, ()):
            if g is h or not g.active:
                continue
            lcm = self._lcm(g, h)
            coprime = all(x == 0 or y == 0 for x, y in zip(g.lexp, hl[:n]))
            cands.append((lcm, g, coprime))
        # M-criterion: drop pairs whose lcm is properly divisible by another new lcm
        survivors = []
        for i, (lcm, g, cop) in enumerate(cands):
            dominated = False
            for j, (l2, _, _) in enumerate(cands):
                if j != i and l2 != lcm and self._divides_term(l2, lcm):
                    dominated = True
                    break
            if dominated:
                self.stats["skipped"] += 1
            else:
                survivors.append((lcm, g, cop))
        # F-criterion: one pair per lcm class; product criterion kills the class
        classes: dict = {}
        for lcm, g, cop in survivors:
            classes.setdefault(lcm, []).append((g, cop))
        for lcm, members in classes.items():
            if self.product_criterion and any(cop for _, cop in members):
                self.stats["skipped"] += len(members)
                continue
            g = members[0][0]
            self.stats["skipped"] += len(members) - 1
            kept.append((self._pair_sugar(g, h, lcm), self.order.key(lcm), lcm, g, h))
        # elements whose leading term is a multiple of h's no longer spawn pairs
        for g in self.by_comp.get(h.comp, ()):
            if g is not h and g.active and self._divides_term(hl, g.lt):
                g.active = False
        return kept

    def _spoly(self, a: _Elem, b: _Elem, lcm: Term) -> Vector:
        F = self.field
        red = F.reduce
        n = self.n
        ma = tuple(lcm[i] - a.lexp[i] for i in range(n)) + (0,)
        mb = tuple(lcm[i] - b.lexp[i] for i in range(n)) + (0,)
        out: Vector = {}
        for u, c in a.tail:
            w = tuple(x + y for x, y in zip(u, ma))
            out[w] = red(out.get(w, 0) + c)
        for u, c in b.tail:
            w = tuple(x + y for x, y in zip(u, mb))
            v = red(out.get(w, 0) - c)
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return {t: c for t, c in out.items() if c}

    # main loop ------------------------------------------------------------

    def run(self, gens: Sequence[Vector]) -> list[Vector]:
        queue = []  # items: (sugar, key, tag, payload)
        counter = 0
        for g in gens:
            g = {t: c for t, c in g.items() if c}
            if not g:
                continue
            deg = vector_degree(g, self.order)
            lt = leading_term(g, self.order)
            queue.append((deg, self.order.key(lt), counter, None, None, g))
            counter += 1
        pairs: list = []
        while queue or pairs:
            # choose the smallest (sugar, lcm) among generators and pairs
            best_q = min(range(len(queue)), key=lambda i: queue[i][:3]) if queue else None
            best_p = min(range(len(pairs)), key=lambda i: pairs[i][:2]) if pairs else None
            use_queue = best_p is None or (best_q is not None and queue[best_q][:2] <= pairs[best_p][:2])
            if use_queue:
                sugar, _, _, _, _, vec = queue.pop(best_q)
            else:
                sugar, _, lcm, a, b = pairs.pop(best_p)
                self.stats["pairs"] += 1
                vec = self._spoly(a, b, lcm)
            if self.max_degree is not None and sugar > self.max_degree:
                raise DegreeBoundExceeded(
                    f"degree {sugar} exceeds the configured cap {self.max_degree}")
            h = self.reduce(vec, full=True)
            if not h:
                if not use_queue:
                    self.stats["zero_reductions"] += 1
                continue
            e = self._make_elem(h, max(sugar, vector_degree(h, self.order)))
            pairs = self._update(pairs, e)
            self._insert(e)
        return self.reduced_basis()

    def reduced_basis(self) -> list[Vector]:
        """Interreduce the current elements into the reduced Groebner basis."""
        elems = sorted(self.elems, key=lambda e: self.order.key(e.lt), reverse=True)
        minimal: list[_Elem] = []
        for e in elems:  # ascending terms: divisors come first
            if not any(self._divides_term(m.lt, e.lt) for m in minimal):
                minimal.append(e)
        self.elems = []
        self.by_comp = {}
        for e in minimal:
            self._insert(e)
        out = []
        for e in minimal:
            # reduce tail by the other minimal elements
            others = [m for m in minimal if m is not e]
            saved = self.by_comp
            self.by_comp = {}
            for m in others:
                self.by_comp.setdefault(m.comp, []).append(m)
            tail = self.reduce(dict(e.tail), full=True)
            self.by_comp = saved
            vec = dict(tail)
            vec[e.lt] = self.field.one
            out.append(vec)
        self.elems = []
        self.by_comp = {}
        for v in out:
            self._insert(self._make_elem(v, vector_degree(v, self.order)))
        out.sort(key=lambda v: self.order.key(leading_term(v, self.order)), reverse=True)
        return out


def normal_form(v: Vector, basis: Sequence[Vector], field: FieldSpec, nvars: int, order: TermOrder) -> Vector:
    eng = GroebnerEngine(field, nvars, order)
    for b in basis:
        eng._insert(eng._make_elem(b, vector_degree(b, order)))
    return eng.reduce(v, full=True)


def s_pairs_reduce_to_zero(basis: Sequence[Vector], field: FieldSpec, nvars: int, order: TermOrder) -> bool:
    """Buchberger criterion checked on every pair, without any elimination criteria."""
    eng = GroebnerEngine(field, nvars, order)
    for b in basis:
        eng._insert(eng._make_elem(b, vector_degree(b, order)))
    es = eng.elems
    for i in range(len(es)):
        for j in range(i + 1, len(es)):
            if es[i].comp != es[j].comp:
                continue
            lcm = eng._lcm(es[i], es[j])
            if eng.reduce(eng._spoly(es[i], es[j], lcm)):
                return False
    return True
