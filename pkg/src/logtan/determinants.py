"""Generic and symmetric determinantal hypersurfaces: resolutions, sections, Artinian reductions."""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Sequence

from .errors import DegenerateSampleError, ScaleError
from .field import FieldSpec
from .groebner import BettiTable, Ideal, minimal_free_resolution
from .groebner.syzygy import GradedMap
from .linalg import ExactMatrix, rank, rank_and_kernel
from .poly import Polynomial, format_polynomial, graded_basis

GENERIC = "generic"
SYMMETRIC = "symmetric"
MAX_RESOLUTION_N = 4


# ----------------------------------------------------------------- minors

def minors(matrix: Sequence[Sequence[Polynomial]], k: int) -> dict:
    """All k x k minors keyed by (row tuple, column tuple); Laplace expansion with memoization."""
    memo: dict = {}

    def minor(rows: tuple, cols: tuple) -> Polynomial:
        key = (rows, cols)
        if key in memo:
            return memo[key]
        if len(rows) == 1:
            out = matrix[rows[0]][cols[0]]
        else:
            out = None
            r0, rest = rows[0], rows[1:]
            for j, c in enumerate(cols):
                a = matrix[r0][c]
                if not a:
                    continue
                t = a * minor(rest, cols[:j] + cols[j + 1:])
                if j % 2:
                    t = -t
                out = t if out is None else out + t
            if out is None:
                out = matrix[r0][cols[0]] * 0
        memo[key] = out
        return out

    n_rows, n_cols = len(matrix), len(matrix[0])
    return {(r, c): minor(r, c) for r in combinations(range(n_rows), k) for c in combinations(range(n_cols), k)}


def determinant(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    n = len(matrix)
    return minors(matrix, n)[(tuple(range(n)), tuple(range(n)))]


def cofactor(matrix, i: int, j: int) -> Polynomial:
    n = len(matrix)
    sub = [[matrix[a][b] for b in range(n) if b != j] for a in range(n) if a != i]
    m = determinant(sub) if sub else Polynomial.constant(matrix[0][0].field, matrix[0][0].nvars, 1)
    return -m if (i + j) % 2 else m


# -------------------------------------------------------------- instances

@dataclass
class DetInstance:
    n: int
    flavor: str
    field: FieldSpec
    nvars: int
    matrix: list[list[Polynomial]]
    F: Polynomial
    variables: dict  # variable index -> (i, j) entry position, i <= j for symmetric

    @property
    def partials(self) -> list[Polynomial]:
        return [self.F.differentiate(k) for k in range(self.nvars)]


def symmetric_index(n: int) -> dict:
    idx = {}
    for i in range(n):
        for j in range(i, n):
            idx[(i, j)] = len(idx)
    return idx


def build_determinant(n: int, flavor: str, field: FieldSpec) -> DetInstance:
    if n < 2:
        raise ValueError("n must be at least 2")
    if flavor == GENERIC:
        nv = n * n
        var = {i * n + j: (i, j) for i in range(n) for j in range(n)}
        M = [[Polynomial.var(field, nv, i * n + j) for j in range(n)] for i in range(n)]
    elif flavor == SYMMETRIC:
        if field.characteristic == 2:
            raise ValueError("symmetric determinants need characteristic different from 2")
        idx = symmetric_index(n)
        nv = len(idx)
        var = {k: ij for ij, k in idx.items()}
        M = [[Polynomial.var(field, nv, idx[(min(i, j), max(i, j))]) for j in range(n)] for i in range(n)]
    else:
        raise ValueError(f"unknown flavor {flavor!r}")
    inst = DetInstance(n, flavor, field, nv, M, determinant(M), var)
    check_partials_are_minors(inst)
    return inst


def check_partials_are_minors(inst: DetInstance) -> None:
    """dF/dx_ij equals the (i,j) cofactor, doubled on symmetric off-diagonal entries."""
    for k, (i, j) in inst.variables.items():
        expected = cofactor(inst.matrix, i, j)
        if inst.flavor == SYMMETRIC and i != j:
            expected = expected * 2
        if inst.F.differentiate(k) != expected:
            raise AssertionError(f"partial {k} differs from the cofactor at {(i, j)}")


# ------------------------------------------------------------ resolutions

def expected_module_betti(n: int, flavor: str) -> BettiTable:
    """Betti table of T_D as a graded module (generators of the syzygy module at index 0)."""
    if flavor == GENERIC:
        return BettiTable({(0, -n): 2 * (n * n - 1), (1, -n - 1): n * n, (2, -2 * n): 1})
    return BettiTable({(0, -n): n * n - 1, (1, -n - 1): comb(n, 2)})


@dataclass
class ResolutionCheck:
    computed: BettiTable
    expected: BettiTable
    match: bool
    shift: int
    maps: list[GradedMap] = dc_field(default_factory=list, repr=False)

    def to_json(self):
        return {
            "moduleComputed": self.computed.to_json(),
            "moduleExpected": self.expected.to_json(),
            "sheafComputed": self.computed.reindexed(0, self.shift).to_json(),
            "sheafExpected": self.expected.reindexed(0, self.shift).to_json(),
            "match": self.match,
        }


def resolution_check(inst: DetInstance) -> ResolutionCheck:
    if inst.n > MAX_RESOLUTION_N:
        raise ScaleError(f"resolution check supports n <= {MAX_RESOLUTION_N}, got {inst.n}")
    res = minimal_free_resolution(inst.partials, max_steps=inst.nvars + 1, max_degree=4 * inst.n + 2)
    computed = res.betti.reindexed(2)
    expected = expected_module_betti(inst.n, inst.flavor)
    return ResolutionCheck(computed, expected, computed == expected, inst.n - 1, res.maps)


@lru_cache(maxsize=8)
def presentation_matrix(n: int, field: FieldSpec) -> GradedMap:
    """The map n^2 R(-n-1) -> 2(n^2-1) R(-n) presenting T_D for the generic determinant."""
    chk = resolution_check(build_determinant(n, GENERIC, field))
    return chk.maps[2]


# ------------------------------------------------------ semigeneric sections

def _random_linear_form(field: FieldSpec, nvars: int, rng: random.Random, support: Sequence[int]):
    coeffs = [field.zero] * nvars
    for k in support:
        coeffs[k] = field.random_element(rng)
    return Polynomial.linear_form(field, coeffs)


@dataclass
class SemigenericSection:
    n: int
    seed: int
    field: FieldSpec
    M0: list[list[Polynomial]]
    ML: list[list[Polynomial]]
    retries: int
    certificate: dict

    def to_json(self):
        return {
            "n": self.n, "seed": self.seed, "field": self.field.to_json(), "retries": self.retries,
            "M0": [[format_polynomial(p) for p in row] for row in self.M0],
            "certificate": self.certificate,
        }


def _plane_ring(p: Polynomial) -> Polynomial:
    """Drop x0 from a polynomial that does not involve it."""
    return Polynomial(p.field, p.nvars - 1, {m[1:]: c for m, c in p.terms.items()}, _clean=True)


def section_certificate(M0: Sequence[Sequence[Polynomial]]) -> dict:
    """det M0 and det M1 must meet in n(n-1) reduced points of the plane."""
    n = len(M0)
    g0 = _plane_ring(determinant(M0))
    M1 = [row[1:] for row in M0[1:]]
    g1 = _plane_ring(determinant(M1))
    cert = {"expectedLength": n * (n - 1)}
    if not g0 or not g1:
        cert.update(dimension=None, length=None, reduced=False, passed=False)
        return cert
    dim, length = Ideal([g0, g1]).dim_deg()
    cert.update(dimension=dim, length=length)
    if (dim, length) != (0, n * (n - 1)):
        cert.update(reduced=False, passed=False)
        return cert
    # Jacobian criterion: no point where the two curves meet non-transversally
    jac = [[g.differentiate(k) for k in range(3)] for g in (g0, g1)]
    gens = [g0, g1] + [jac[0][a] * jac[1][b] - jac[0][b] * jac[1][a] for a, b in combinations(range(3), 2)]
    reduced = Ideal(gens).dim_deg()[0] == -1
    cert.update(reduced=reduced, passed=reduced)
    return cert


def semigeneric_section(n: int, seed: int, field: FieldSpec, max_retries: int = 25) -> SemigenericSection:
    if n < 2:
        raise ValueError("n must be at least 2")
    rng = random.Random(seed)
    cert: dict = {}
    for attempt in range(max_retries + 1):
        M0 = [[_random_linear_form(field, 4, rng, (1, 2, 3)) for _ in range(n)] for _ in range(n)]
        cert = section_certificate(M0)
        if cert["passed"]:
            x0 = Polynomial.var(field, 4, 0)
            ML = [[M0[i][j] + x0 if (i, j) == (0, 0) else M0[i][j] for j in range(n)] for i in range(n)]
            return SemigenericSection(n, seed, field, M0, ML, attempt, cert)
    raise DegenerateSampleError(f"no certified section after {max_retries} retries", cert)


def propn2_target(n: int, field: FieldSpec) -> Ideal:
    """x0 * m0^(n-2) + m0^(n-1) with m0 = (x1, x2, x3)."""
    gens = []
    for m in graded_basis(3, n - 2):
        gens.append(Polynomial.monomial(field, 4, (1,) + m))
    for m in graded_basis(3, n - 1):
        gens.append(Polynomial.monomial(field, 4, (0,) + m))
    return Ideal(gens, 4, field)


def in_propn2_target(m: tuple, n: int) -> bool:
    rest = sum(m[1:])
    return rest >= n - 1 or (m[0] >= 1 and rest >= n - 2)


def minors_ideal(matrix, k: int, max_degree: int | None = None) -> Ideal:
    ms = [p for p in minors(matrix, k).values() if p]
    f = matrix[0][0].field
    nv = matrix[0][0].nvars
    return Ideal(ms, nv, f, max_degree=max_degree)


@dataclass
class Propn2Result:
    equal: bool
    containment: bool
    lhs_hf: object
    rhs_hf: object

    def to_json(self):
        return {"equal": self.equal, "containment": self.containment,
                "lhsHF": self.lhs_hf.to_json(), "rhsHF": self.rhs_hf.to_json()}


def propn2_check(sec: SemigenericSection) -> Propn2Result:
    n = sec.n
    IL = minors_ideal(sec.ML, n - 1, max_degree=2 * n + 2)
    target = propn2_target(n, sec.field)
    containment = all(in_propn2_target(m, n) for g in IL.generators for m in g.terms)
    equal = IL.contains_ideal(target) and target.contains_ideal(IL)
    top = n + 1
    return Propn2Result(equal, containment, IL.hilbert_function(top), target.hilbert_function(top))


# ------------------------------------------------------- Artinian reductions

def multiplication_rank(ideal: Ideal, g: Polynomial, t_from: int) -> tuple[int, int, int]:
    """(dim A_t, dim A_{t+deg g}, rank of .g) in standard-monomial coset bases of A = R/I."""
    lead = ideal.leading_monomials()

    def standard(t):
        return [m for m in graded_basis(ideal.nvars, t)
                if not any(all(a <= b for a, b in zip(u, m)) for u in lead)]

    src = standard(t_from)
    t_to = t_from + g.degree
    tgt = standard(t_to)
    index = {m: k for k, m in enumerate(tgt)}
    rows = []
    for m in src:
        nf = ideal.normal_form(g * Polynomial.monomial(ideal.field, ideal.nvars, m))
        row = [ideal.field.zero] * len(tgt)
        for u, c in nf.terms.items():
            row[index[u]] = c
        rows.append(row)
    r = rank(ExactMatrix.from_rows(ideal.field, rows, len(tgt))) if rows and tgt else 0
    return len(src), len(tgt), r


@dataclass
class LefschetzResult:
    n: int
    mode: str
    seed: int | None
    hf: object
    dim_from: int
    dim_to: int
    rank: int
    iso: bool
    retries: int = 0
    multiplier: str = ""

    @property
    def dims_ok(self) -> bool:
        c = comb(self.n, 3)
        return self.dim_from == c and self.dim_to == c

    def to_json(self):
        return {"n": self.n, "mode": self.mode, "seed": self.seed, "hf": self.hf.to_json(),
                "dimFrom": self.dim_from, "dimTo": self.dim_to, "rank": self.rank, "iso": self.iso,
                "expectedDim": comb(self.n, 3), "retries": self.retries, "multiplier": self.multiplier}


def random_section_ideal(n: int, rng: random.Random, field: FieldSpec) -> Ideal:
    """Submaximal minors of the generic matrix restricted to a random P^3."""
    M = [[_random_linear_form(field, 4, rng, range(4)) for _ in range(n)] for _ in range(n)]
    return minors_ideal(M, n - 1, max_degree=2 * n + 2)


def artinian_lefschetz_check(n: int, mode: str = "semigeneric", seed: int = 0,
                             field: FieldSpec | None = None, max_retries: int = 10) -> LefschetzResult:
    """Multiplication by x0^2 (semigeneric) or by a random quadric (random) from A_{n-3} to A_{n-1}."""
    if n < 3:
        raise ValueError("n must be at least 3")
    field = field or FieldSpec.prime()
    if mode == "semigeneric":
        sec = semigeneric_section(n, seed, field)
        ideal = minors_ideal(sec.ML, n - 1, max_degree=2 * n + 2)
        g = Polynomial.var(field, 4, 0) ** 2
        retries = sec.retries
    elif mode == "random":
        rng = random.Random(seed)
        for retries in range(max_retries + 1):
            ideal = random_section_ideal(n, rng, field)
            if ideal.dim_deg()[0] == -1:
                break
        else:
            raise DegenerateSampleError("no Artinian section found")
        g = Polynomial(field, 4, {m: field.random_element(rng) for m in graded_basis(4, 2)})
    else:
        raise ValueError(f"unknown mode {mode!r}")
    dim_from, dim_to, r = multiplication_rank(ideal, g, n - 3)
    hf = ideal.hilbert_function(2 * n - 2)
    return LefschetzResult(n, mode, seed, hf, dim_from, dim_to, r,
                           r == comb(n, 3) and dim_from == dim_to == comb(n, 3),
                           retries, format_polynomial(g))


# ----------------------------------------------------- restriction vanishing

@dataclass
class RestrictionResult:
    n: int
    flavor: str
    seed: int
    hf: object
    vanishes_from: int | None
    passed: bool
    retries: int = 0
    detail: dict = dc_field(default_factory=dict)

    def to_json(self):
        return {"n": self.n, "flavor": self.flavor, "seed": self.seed, "hf": self.hf.to_json(),
                "vanishesFrom": self.vanishes_from, "pass": self.passed, "retries": self.retries, **self.detail}


def restriction_vanishing(inst: DetInstance, seed: int = 0, max_retries: int = 10) -> RestrictionResult:
    if inst.flavor == GENERIC:
        lef = artinian_lefschetz_check(inst.n, "semigeneric", seed, inst.field) if inst.n >= 3 else None
        if lef is None:
            raise ValueError("the generic restriction check needs n >= 3")
        return RestrictionResult(inst.n, GENERIC, seed, lef.hf, None, lef.iso, lef.retries,
                                 {"lefschetz": lef.to_json()})
    rng = random.Random(seed)
    F = inst.field
    for retries in range(max_retries + 1):
        images = [_random_linear_form(F, 3, rng, range(3)) for _ in range(inst.nvars)]
        coeffs = [[p.coefficient(m) for m in graded_basis(3, 1)] for p in images]
        if rank(ExactMatrix.from_rows(F, coeffs, 3)) == 3:
            break
    else:
        raise DegenerateSampleError("no nondegenerate plane found")
    gens = [p.substitute(images) for p in inst.partials]
    ideal = Ideal([g for g in gens if g], 3, F)
    hf = ideal.hilbert_function(inst.n + 1)
    zero = [t for t in range(inst.n + 2) if hf[t] == 0]
    vanishes_from = zero[0] if zero else None
    passed = hf[inst.n - 1] == 0
    return RestrictionResult(inst.n, SYMMETRIC, seed, hf, vanishes_from, passed, retries)


# -------------------------------------------------------------- fiber ranks

def _random_invertible(n: int, rng: random.Random, field: FieldSpec) -> list[list]:
    while True:
        m = [[field.random_element(rng) for _ in range(n)] for _ in range(n)]
        if rank(ExactMatrix.from_rows(field, m, n)) == n:
            return m


def _matmul(a, b, field: FieldSpec):
    n = len(a)
    red = field.reduce
    return [[red(sum(a[i][k] * b[k][j] for k in range(n))) for j in range(n)] for i in range(n)]


def random_rank_matrix(n: int, r: int, rng: random.Random, field: FieldSpec) -> list[list]:
    """P * diag(1,..,1,0,..,0) * Q with r ones and P, Q random invertible."""
    P = _random_invertible(n, rng, field)
    Q = _random_invertible(n, rng, field)
    D = [[field.one if i == j and i < r else field.zero for j in range(n)] for i in range(n)]
    return _matmul(_matmul(P, D, field), Q, field)


def commuting_scalar_kernel_dim(a: list[list], field: FieldSpec) -> int:
    """dim {(b, lam, mu) : a b = lam I, b a = mu I}."""
    n = len(a)
    nb = n * n
    rows = []
    for i in range(n):
        for j in range(n):
            # (ab)_ij - lam delta_ij
            row = [field.zero] * (nb + 2)
            for k in range(n):
                row[k * n + j] = a[i][k]
            if i == j:
                row[nb] = field.neg(field.one)
            rows.append(row)
            # (ba)_ij - mu delta_ij
            row = [field.zero] * (nb + 2)
            for k in range(n):
                row[i * n + k] = field.reduce(row[i * n + k] + a[k][j])
            if i == j:
                row[nb + 1] = field.neg(field.one)
            rows.append(row)
    _, ker = rank_and_kernel(ExactMatrix.from_rows(field, rows, nb + 2))
    return len(ker)


@dataclass
class FiberRankResult:
    n: int
    k: int
    kernel_dims: list[int]
    expected: int
    passed: bool
    phi_fiber_dims: list[int] = dc_field(default_factory=list)
    phi_expected: int | None = None

    def to_json(self):
        out = {"n": self.n, "k": self.k, "kernelDims": self.kernel_dims, "expected": self.expected,
               "pass": self.passed}
        if self.phi_expected is not None:
            out["phiFiberDims"] = self.phi_fiber_dims
            out["phiExpected"] = self.phi_expected
        return out


def fiber_rank_check(n: int, k: int, trials: int, field: FieldSpec, seed: int = 0,
                     with_phi: bool | None = None) -> FiberRankResult:
    if not 0 <= k <= n - 1:
        raise ValueError(f"k must lie in 0..{n - 1}")
    if trials < 1:
        raise ValueError("need at least one trial")
    if with_phi is None:
        with_phi = n in (2, 3) and k >= 1
    rng = random.Random(seed * 1000003 + n * 101 + k)
    expected = 1 if k == 0 else k * k
    phi = presentation_matrix(n, field) if with_phi else None
    dims, phi_dims = [], []
    for _ in range(trials):
        a = random_rank_matrix(n, n - k, rng, field)
        dims.append(commuting_scalar_kernel_dim(a, field))
        if phi is not None:
            point = [a[i][j] for i in range(n) for j in range(n)]
            ev = phi.evaluate(point)
            r = rank(ExactMatrix.from_rows(field, ev, len(ev[0])))
            phi_dims.append(len(ev) - r)
    phi_expected = n * n + k * k - 2 if phi is not None else None
    passed = all(d == expected for d in dims) and all(d == phi_expected for d in phi_dims)
    return FiberRankResult(n, k, dims, expected, passed, phi_dims, phi_expected)
