"""Exact dense linear algebra over QQ and GF(p).

Prime fields use vectorized Gauss-Jordan elimination on int64 arrays
(p < 2**31 keeps every product below 2**63). Rationals use fraction-free
Bareiss elimination on integer rows.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .field import FieldSpec


@dataclass
class ExactMatrix:
    field: FieldSpec
    rows: int
    cols: int
    entries: list = dc_field(default_factory=list)  # dense row-major

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(f"expected {self.rows * self.cols} entries, got {len(self.entries)}")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence], cols: int | None = None):
        rows = [list(r) for r in rows]
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        flat = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            flat.extend(field(x) for x in r)
        return cls(field, len(rows), ncols, flat)

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, rows, cols, [field.zero] * (rows * cols))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def __setitem__(self, ij, v):
        i, j = ij
        self.entries[i * self.cols + j] = self.field(v)

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self):
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.field, self.cols, self.rows,
                           [self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)])

    def apply(self, v: Sequence):
        red = self.field.reduce
        out = []
        for i in range(self.rows):
            s = self.field.zero
            for a, b in zip(self.row(i), v):
                if a and b:
                    s = s + a * b
            out.append(red(s))
        return out


# ----------------------------------------------------------------- GF(p)

def _rref_mod_p(a: np.ndarray, p: int):
    """In-place reduced row echelon form mod p; returns (matrix, pivot columns)."""
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        others = np.nonzero(col)[0]
        if others.size:
            a[others] = (a[others] - np.outer(col[others], a[r]) % p) % p
        pivots.append(c)
        r += 1
    return a, pivots


def _as_array(m: ExactMatrix) -> np.ndarray:
    return np.array(m.entries, dtype=np.int64).reshape(m.rows, m.cols)


# -------------------------------------------------------------------- QQ

def _integer_rows(m: ExactMatrix):
    out = []
    for i in range(m.rows):
        r = m.row(i)
        den = 1
        for x in r:
            den = lcm(den, x.denominator)
        out.append([int(x * den) for x in r])
    return out


def bareiss_echelon(rows: list[list[int]], ncols: int):
    """Fraction-free row echelon form; returns (echelon rows, pivot columns)."""
    a = [list(r) for r in rows]
    nrows = len(a)
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        k = next((i for i in range(r, nrows) if a[i][c]), None)
        if k is None:
            continue
        a[r], a[k] = a[k], a[r]
        piv = a[r][c]
        for i in range(r + 1, nrows):
            f = a[i][c]
            ai = a[i]
            ar = a[r]
            for j in range(c, ncols):
                ai[j] = (piv * ai[j] - f * ar[j]) // prev
        prev = piv
        pivots.append(c)
        r += 1
    return a[:r], pivots


def _rref_rational(m: ExactMatrix):
    ech, pivots = bareiss_echelon(_integer_rows(m), m.cols)
    rows = [[Fraction(x) for x in r] for r in ech]
    # back substitution to reduced form
    for i in range(len(rows) - 1, -1, -1):
        c = pivots[i]
        inv = 1 / rows[i][c]
        rows[i] = [x * inv for x in rows[i]]
        for k in range(i):
            f = rows[k][c]
            if f:
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[i])]
    return rows, pivots


# ---------------------------------------------------------------- public

def rref(m: ExactMatrix):
    """Reduced row echelon form as (list of nonzero rows, pivot columns)."""
    if m.rows == 0 or m.cols == 0:
        return [], []
    if m.field.p is not None:
        a, pivots = _rref_mod_p(_as_array(m), m.field.p)
        return [list(map(int, a[i])) for i in range(len(pivots))], pivots
    return _rref_rational(m)


def rank(m: ExactMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    if m.field.p is not None:
        return len(_rref_mod_p(_as_array(m), m.field.p)[1])
    return len(bareiss_echelon(_integer_rows(m), m.cols)[1])


def rank_and_kernel(m: ExactMatrix):
    """Rank and a right-kernel basis in reduced echelon normal form.

    Each kernel vector has a 1 at its own free column and 0 at every other
    free column, so the basis is canonical.
    """
    F = m.field
    rows, pivots = rref(m)
    pivset = set(pivots)
    free = [c for c in range(m.cols) if c not in pivset]
    kernel = []
    for fc in free:
        v = [F.zero] * m.cols
        v[fc] = F.one
        for r, pc in zip(rows, pivots):
            if r[fc]:
                v[pc] = F.neg(F(r[fc]))
        kernel.append(v)
    return len(pivots), kernel


class EchelonSpace:
    """Incrementally built subspace of F^n held as sparse echelon rows.

    Vectors are dicts index -> nonzero coefficient. Used for degree-by-degree
    span and membership questions where the ambient space is large but the
    vectors are sparse.
    """

    def __init__(self, field: FieldSpec):
        self.field = field
        self.rows: dict = {}  # pivot index -> row dict with row[pivot] == 1

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: dict) -> dict:
        F = self.field
        red = F.reduce
        v = dict(v)
        # pivots are processed in increasing order; a row only has entries >= its pivot
        while v:
            todo = sorted(k for k in v if k in self.rows)
            if not todo:
                break
            k = todo[0]
            c = v[k]
            for j, a in self.rows[k].items():
                x = red(v.get(j, 0) - c * a)
                if x:
                    v[j] = x
                else:
                    v.pop(j, None)
        return v

    def add(self, v: dict) -> bool:
        """Insert v; returns False when v was already in the span."""
        v = self.reduce(v)
        if not v:
            return False
        k = min(v)
        inv = self.field.inv(v[k])
        red = self.field.reduce
        row = {j: red(a * inv) for j, a in v.items()}
        self.rows[k] = row
        return True

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)
