"""Independent reference computations used only by the tests.

Nothing here imports the engine: sympy supplies Groebner bases and ranks,
the rest is brute force.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

import sympy

from logtan.poly import Polynomial


def to_sympy(f: Polynomial):
    xs = sympy.symbols(f"x0:{f.nvars}")
    expr = sympy.Integer(0)
    for m, c in f.terms.items():
        c = sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sympy.Integer(c)
        term = c
        for x, e in zip(xs, m):
            term *= x ** e
        expr += term
    return expr, xs


def sympy_groebner(gens: list[Polynomial]):
    nv = gens[0].nvars
    xs = sympy.symbols(f"x0:{nv}")
    exprs = [to_sympy(g)[0] for g in gens]
    p = gens[0].field.p
    kw = {"modulus": p} if p else {}
    return sympy.groebner(exprs, *xs, order="grevlex", **kw), xs


def sympy_hilbert(gens: list[Polynomial], top: int) -> list[int]:
    """Standard-monomial counts from a sympy Groebner basis."""
    gb, xs = sympy_groebner(gens)
    nv = len(xs)
    lead = [sympy.Poly(g, *xs).monoms(order="grevlex")[0] for g in gb.exprs]
    out = []
    for t in range(top + 1):
        cnt = 0
        for m in _monos(nv, t):
            if not any(all(a <= b for a, b in zip(l, m)) for l in lead):
                cnt += 1
        out.append(cnt)
    return out


def _monos(nv: int, t: int):
    if nv == 1:
        yield (t,)
        return
    for a in range(t + 1):
        for rest in _monos(nv - 1, t - a):
            yield (a,) + rest


def fraction_rank(rows: list[list]) -> int:
    """Plain Gaussian elimination over Fraction."""
    m = [[Fraction(x) for x in r] for r in rows]
    rk, col = 0, 0
    ncols = len(m[0]) if m else 0
    while rk < len(m) and col < ncols:
        piv = next((i for i in range(rk, len(m)) if m[i][col]), None)
        if piv is None:
            col += 1
            continue
        m[rk], m[piv] = m[piv], m[rk]
        for i in range(len(m)):
            if i != rk and m[i][col]:
                f = m[i][col] / m[rk][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rk])]
        rk += 1
        col += 1
    return rk


def modp_rank(rows: list[list[int]], p: int) -> int:
    m = [[x % p for x in r] for r in rows]
    rk, col = 0, 0
    ncols = len(m[0]) if m else 0
    while rk < len(m) and col < ncols:
        piv = next((i for i in range(rk, len(m)) if m[i][col]), None)
        if piv is None:
            col += 1
            continue
        m[rk], m[piv] = m[piv], m[rk]
        inv = pow(m[rk][col], -1, p)
        m[rk] = [a * inv % p for a in m[rk]]
        for i in range(len(m)):
            if i != rk and m[i][col]:
                f = m[i][col]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[rk])]
        rk += 1
        col += 1
    return rk


def grid_vertices(n: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(-n, n + 1, 2) for b in range(-n, n + 1, 2) if (a, b) != (n, n)]


def powerset_order_ideals(n: int) -> list[frozenset]:
    verts = grid_vertices(n)
    vs = set(verts)
    out = []
    for bits in product((0, 1), repeat=len(verts)):
        s = {v for v, b in zip(verts, bits) if b}
        if all(w not in vs or w in s for (a, b) in s for w in ((a - 2, b), (a, b - 2))):
            out.append(frozenset(s))
    return out


def brute_mu(n: int, s) -> int:
    verts = grid_vertices(n)
    c1 = sum(a + b for a, b in verts)
    return c1 * len(s) - len(verts) * sum(a + b for a, b in s)


def brute_cover(n: int, window: int = 50) -> set[tuple[int, int]]:
    b = n * (n - 1) // 2
    return {(x, y) for x in range(-window, window + 1) for y in range(0, 10 * window)
            if y >= (1 - n) * x and x * b + y * n == b}


def koszul_count(k: int, r: int) -> int:
    return len(list(combinations(range(r), k)))
