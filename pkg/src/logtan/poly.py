"""Exact multivariate polynomials over a FieldSpec.

Monomials are exponent tuples. The canonical term order is graded reverse
lexicographic with x0 > x1 > ... > x_{n-1}.
"""
from __future__ import annotations

from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Mapping, Sequence

from .field import FieldSpec

Monomial = tuple


def grevlex_key(m: Monomial):
    """Sort key; larger key means larger monomial in grevlex."""
    return (sum(m), tuple(-e for e in reversed(m)))


def graded_basis(nvars: int, degree: int) -> list[Monomial]:
    """All monomials of the given total degree, in decreasing grevlex order.

    Negative degree gives the empty list.
    """
    if degree < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(key=grevlex_key, reverse=True)
    return out


def graded_basis_size(nvars: int, degree: int) -> int:
    return comb(degree + nvars - 1, nvars - 1) if degree >= 0 else 0


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


class Polynomial:
    """Immutable polynomial; ``terms`` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("field", "nvars", "terms", "_hash")

    def __init__(self, field: FieldSpec, nvars: int, terms: Mapping[Monomial, object] | None = None,
                 _clean: bool = False):
        if nvars < 1:
            raise ValueError("need at least one variable")
        self.field = field
        self.nvars = nvars
        if _clean:
            self.terms = dict(terms)
        else:
            t = {}
            for m, c in (terms or {}).items():
                m = tuple(m)
                if len(m) != nvars or any(e < 0 for e in m):
                    raise ValueError(f"bad exponent vector {m}")
                c = field(c) if not isinstance(c, int) or field.p is None else c % field.p
                if c:
                    t[m] = field.reduce(t.get(m, field.zero) + c)
                    if not t[m]:
                        del t[m]
            self.terms = t
        self._hash = None

    # constructors -------------------------------------------------------

    @classmethod
    def zero(cls, field, nvars):
        return cls(field, nvars, {}, _clean=True)

    @classmethod
    def constant(cls, field, nvars, c):
        c = field(c)
        return cls(field, nvars, {(0,) * nvars: c} if c else {}, _clean=True)

    @classmethod
    def var(cls, field, nvars, i, power=1):
        if not 0 <= i < nvars:
            raise IndexError(f"variable x{i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = power
        return cls(field, nvars, {tuple(e): field.one}, _clean=True)

    @classmethod
    def monomial(cls, field, nvars, m, c=1):
        return cls(field, nvars, {tuple(m): c})

    @classmethod
    def linear_form(cls, field, coeffs: Sequence):
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            c = field(c)
            if c:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = c
        return cls(field, n, terms, _clean=True)

    # basic properties ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def leading_monomial(self) -> Monomial:
        return max(self.terms, key=grevlex_key)

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def coefficient(self, m: Monomial):
        return self.terms.get(tuple(m), self.field.zero)

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial(self.field, self.nvars, {m: c for m, c in self.terms.items() if sum(m) == d},
                          _clean=True)

    # arithmetic ---------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.field, self.nvars, other)
        if other.field != self.field or other.nvars != self.nvars:
            raise ValueError("polynomials live in different rings")
        return other

    def __add__(self, other):
        other = self._check(other)
        red = self.field.reduce
        t = dict(self.terms)
        for m, c in other.terms.items():
            v = red(t.get(m, 0) + c)
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return Polynomial(self.field, self.nvars, t, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        neg = self.field.neg
        return Polynomial(self.field, self.nvars, {m: neg(c) for m, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def scale(self, c) -> "Polynomial":
        c = self.field(c)
        if not c:
            return Polynomial.zero(self.field, self.nvars)
        red = self.field.reduce
        return Polynomial(self.field, self.nvars, {m: red(v * c) for m, v in self.terms.items()}, _clean=True)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._check(other)
        red = self.field.reduce
        t: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                t[m] = t.get(m, 0) + c1 * c2
        t = {m: v for m, v in ((m, red(v)) for m, v in t.items()) if v}
        return Polynomial(self.field, self.nvars, t, _clean=True)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.field, self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.field == other.field and self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.nvars, frozenset(self.terms.items())))
        return self._hash

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.field.inv(self.leading_coefficient()))

    # calculus and evaluation --------------------------------------------

    def differentiate(self, i: int) -> "Polynomial":
        return differentiate(self, i)

    def evaluate(self, point: Sequence):
        return evaluate(self, point)

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Compose with the ring map x_i -> images[i] (all images in one target ring)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        target = images[0]
        out = Polynomial.zero(target.field, target.nvars)
        cache: dict = {}

        def power(i, e):
            key = (i, e)
            if key not in cache:
                cache[key] = images[i] ** e
            return cache[key]

        for m, c in self.terms.items():
            term = Polynomial.constant(target.field, target.nvars, target.field(self.field.to_fraction(c)))
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            out = out + term
        return out

    def change_field(self, field: FieldSpec) -> "Polynomial":
        return Polynomial(field, self.nvars, {m: field(self.field.to_fraction(c)) for m, c in self.terms.items()})

    # text ----------------------------------------------------------------

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({self.field}, {self.nvars}, {format_polynomial(self)!r})"


def differentiate(f: Polynomial, i: int) -> Polynomial:
    if not 0 <= i < f.nvars:
        raise IndexError(f"variable x{i} out of range for {f.nvars} variables")
    red = f.field.reduce
    t = {}
    for m, c in f.terms.items():
        e = m[i]
        if e:
            v = red(c * e)
            if v:
                mm = list(m)
                mm[i] = e - 1
                t[tuple(mm)] = v
    return Polynomial(f.field, f.nvars, t, _clean=True)


def gradient(f: Polynomial) -> list[Polynomial]:
    return [differentiate(f, i) for i in range(f.nvars)]


def evaluate(f: Polynomial, point: Sequence):
    if len(point) != f.nvars:
        raise ValueError(f"point has {len(point)} coordinates, need {f.nvars}")
    F = f.field
    pt = [F(x) for x in point]
    red = F.reduce
    total = F.zero
    for m, c in f.terms.items():
        v = c
        for x, e in zip(pt, m):
            if e:
                v = red(v * x**e) if F.p is None else v * pow(x, e, F.p) % F.p
        total = red(total + v)
    return total


def format_polynomial(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    parts = []
    for k, (m, c) in enumerate(f.sorted_terms()):
        q = f.field.to_fraction(c)
        neg = q < 0
        q = -q if neg else q
        factors = [f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(m) if e]
        coeff = str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
        if factors and coeff == "1":
            body = "*".join(factors)
        else:
            body = "*".join([coeff] + factors)
        if k == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte offset {offset}")
        self.offset = offset


def parse_polynomial(text: str, nvars: int, field: FieldSpec) -> Polynomial:
    """Parse the canonical text form, e.g. ``"x0^2*x1 - 3/2*x2^3"``.

    Grammar::

        poly   := ['+'|'-'] term (('+'|'-') term)*
        term   := [coeff] ('*'? factor)+ | coeff
        factor := 'x' index ('^' exponent)?
        coeff  := integer | integer '/' integer

    Whitespace is ignored. A sign before the first term is accepted so that
    the printer's output always parses back.
    """
    data = text.encode("utf-8")
    pos = 0
    n = len(data)

    def skip():
        nonlocal pos
        while pos < n and data[pos] in b" \t\r\n":
            pos += 1

    def peek():
        skip()
        return data[pos:pos + 1].decode() if pos < n else ""

    def integer(what):
        nonlocal pos
        skip()
        start = pos
        while pos < n and 48 <= data[pos] <= 57:
            pos += 1
        if start == pos:
            raise PolynomialSyntaxError(f"expected {what}", start)
        return int(data[start:pos])

    def factor(exps):
        nonlocal pos
        skip()
        if peek() != "x":
            raise PolynomialSyntaxError("expected variable 'x'", pos)
        pos += 1
        at = pos
        idx = integer("variable index")
        if idx >= nvars:
            raise PolynomialSyntaxError(f"variable index {idx} out of range for {nvars} variables", at)
        e = 1
        if peek() == "^":
            pos += 1
            e = integer("exponent")
        exps[idx] += e

    def term():
        nonlocal pos
        exps = [0] * nvars
        coeff = field.one
        have_coeff = False
        if peek().isdigit():
            at = pos
            num = integer("coefficient")
            den = 1
            if peek() == "/":
                pos += 1
                at = pos
                den = integer("denominator")
                if den == 0:
                    raise PolynomialSyntaxError("division by zero in coefficient", at)
            try:
                coeff = field(f"{num}/{den}")
            except ZeroDivisionError:
                raise PolynomialSyntaxError(f"denominator {den} vanishes in {field}", at) from None
            have_coeff = True
        nfactors = 0
        while True:
            c = peek()
            if c == "*":
                pos += 1
                factor(exps)
                nfactors += 1
            elif c == "x":
                factor(exps)
                nfactors += 1
            else:
                break
        if not have_coeff and not nfactors:
            raise PolynomialSyntaxError("expected a term", pos)
        return tuple(exps), coeff

    red = field.reduce
    terms: dict = {}
    sign = 1
    c = peek()
    if c in ("+", "-"):
        sign = -1 if c == "-" else 1
        pos += 1
    while True:
        m, coeff = term()
        if sign < 0:
            coeff = field.neg(coeff)
        v = red(terms.get(m, field.zero) + coeff)
        if v:
            terms[m] = v
        else:
            terms.pop(m, None)
        c = peek()
        if c == "":
            break
        if c not in ("+", "-"):
            raise PolynomialSyntaxError(f"unexpected character {c!r}", pos)
        sign = -1 if c == "-" else 1
        pos += 1
    return Polynomial(field, nvars, terms, _clean=True)


def linear_combination(field, nvars, coeffs: Iterable, polys: Iterable[Polynomial]) -> Polynomial:
    out = Polynomial.zero(field, nvars)
    for c, p in zip(coeffs, polys):
        if c:
            out = out + p.scale(c)
    return out
