"""Jacobian data of a hypersurface and sufficient criteria for stability of T_D."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any

from .groebner import Ideal, irrelevant_ideal, saturate
from .linalg import EchelonSpace, ExactMatrix, rank, rank_and_kernel
from .poly import Polynomial, format_polynomial, graded_basis, mono_mul

VERDICTS = ("SlopeStable", "NotSemistable", "Inconclusive", "SmoothClassical")
CRITERIA = ("CorollaryB", "TheoremC", "ConeObstruction", "Smooth", "None")


class SmoothHypersurfaceError(ValueError):
    pass


@dataclass
class HypersurfaceData:
    F: Polynomial
    d: int
    N: int
    partials: list[Polynomial]
    jacobian: Ideal
    sing_dim: int
    sing_deg: int | None = None
    jacobian_degree: int = 0
    _saturation: Ideal | None = dc_field(default=None, repr=False)

    @property
    def field(self):
        return self.F.field

    @property
    def nvars(self) -> int:
        return self.N + 1

    def saturation(self) -> Ideal:
        if self._saturation is None:
            self._saturation = saturate(self.jacobian, irrelevant_ideal(self.nvars, self.field))
        return self._saturation


def jacobian_data(F: Polynomial, max_degree: int | None = None) -> HypersurfaceData:
    if not F or not F.is_homogeneous():
        raise ValueError("F must be a nonzero homogeneous form")
    d = F.degree
    if d < 2:
        raise ValueError("F must have degree at least 2")
    partials = [F.differentiate(i) for i in range(F.nvars)]
    if not any(partials):
        raise ValueError(f"all partial derivatives vanish in characteristic {F.field.characteristic}")
    J = Ideal(partials, F.nvars, F.field, max_degree=max_degree)
    s, deg = J.dim_deg()
    h = HypersurfaceData(F, d, F.nvars - 1, partials, J, s, jacobian_degree=deg)
    if s == 0:
        h.sing_deg = h.saturation().dim_deg()[1]
    return h


# ----------------------------------------------------------- graded kernels

def _syzygy_matrix(h: HypersurfaceData, t: int):
    """Matrix of (a_i) -> sum a_i dF/dx_i from (R_t)^{N+1} to R_{t+d-1}."""
    n = h.nvars
    src = graded_basis(n, t)
    tgt = graded_basis(n, t + h.d - 1)
    index = {m: k for k, m in enumerate(tgt)}
    cols = [(i, m) for i in range(n) for m in src]
    F = h.field
    entries = [F.zero] * (len(tgt) * len(cols))
    ncols = len(cols)
    for j, (i, m) in enumerate(cols):
        for u, c in h.partials[i].terms.items():
            entries[index[mono_mul(u, m)] * ncols + j] = c
    return ExactMatrix(F, len(tgt), ncols, entries), cols


def log_sections_dim(h: HypersurfaceData, t: int) -> int:
    """dim H^0(T_D(t)): degree-t syzygies of the partials. Zero for t < 0."""
    if t < 0:
        return 0
    m, cols = _syzygy_matrix(h, t)
    return len(cols) - rank(m)


def log_sections_basis(h: HypersurfaceData, t: int) -> list[list[Polynomial]]:
    """A basis of the degree-t syzygies, each as a vector of N+1 polynomials."""
    if t < 0:
        return []
    m, cols = _syzygy_matrix(h, t)
    _, ker = rank_and_kernel(m)
    F = h.field
    out = []
    for v in ker:
        comps = [dict() for _ in range(h.nvars)]
        for (i, mono), c in zip(cols, v):
            if c:
                comps[i][mono] = c
        out.append([Polynomial(F, h.nvars, c, _clean=True) for c in comps])
    return out


def min_syzygy_degree(h: HypersurfaceData) -> int:
    if sum(1 for p in h.partials if p) < 2:
        raise ValueError("need at least two nonzero partials")
    for t in range(h.d):
        if log_sections_dim(h, t) > 0:
            return t
    raise AssertionError("Koszul syzygies exist in degree d-1")


def _partials_coefficients(h: HypersurfaceData):
    basis = graded_basis(h.nvars, h.d - 1)
    rows = [[p.coefficient(m) for p in h.partials] for m in basis]
    return ExactMatrix.from_rows(h.field, rows, h.nvars)


def trivial_summand_count(h: HypersurfaceData) -> int:
    return h.nvars - rank(_partials_coefficients(h))


def partials_dependency(h: HypersurfaceData) -> list | None:
    """A nonzero vector c with sum c_i dF/dx_i = 0, or None."""
    _, ker = rank_and_kernel(_partials_coefficients(h))
    return ker[0] if ker else None


# ---------------------------------------------------------------- verdict

@dataclass
class StabilityReport:
    verdict: str
    criterion: str
    d: int
    N: int
    s: int
    q: int | None
    r: int
    sing_deg: int | None = None
    bound: int | None = None
    witness: Any = None
    rungs: list[dict] = dc_field(default_factory=list)
    notes: list[str] = dc_field(default_factory=list)

    def to_json(self):
        out = {"verdict": self.verdict, "criterion": self.criterion, "d": self.d, "N": self.N,
               "s": self.s, "q": self.q, "r": self.r}
        if self.sing_deg is not None:
            out["singDeg"] = self.sing_deg
        if self.bound is not None:
            out["bound"] = self.bound
        if self.witness is not None:
            out["witness"] = self.witness
        out["rungs"] = self.rungs
        if self.notes:
            out["notes"] = self.notes
        return out


def length_bound(d: int, q: int, N: int) -> int:
    return (d - q - 1) * (d - 1) ** (N - 1)


def stability_check(h: HypersurfaceData) -> StabilityReport:
    """Decision ladder; a failed sufficient criterion never yields instability.

    Rungs: trivial summands, smoothness, then for isolated singularities the
    length bound, then vanishing of H^0(T_D(q)).
    """
    F = h.field
    d, N, s = h.d, h.N, h.sing_dim
    nonzero = sum(1 for p in h.partials if p)
    r = min_syzygy_degree(h) if nonzero >= 2 else 0
    rep = StabilityReport("Inconclusive", "None", d, N, s, None, r, sing_deg=h.sing_deg)

    r0 = trivial_summand_count(h)
    rep.rungs.append({"rung": "ConeObstruction", "trivialSummands": r0, "holds": r0 > 0})
    if r0 > 0:
        dep = partials_dependency(h)
        rep.verdict, rep.criterion = "NotSemistable", "ConeObstruction"
        rep.witness = {"dependency": [F.format(c) for c in dep]}
        return rep

    rep.rungs.append({"rung": "Smooth", "holds": s == -1})
    if s == -1:
        rep.verdict, rep.criterion = "SmoothClassical", "Smooth"
        return rep

    if s > N - 2:
        rep.notes.append(f"singular locus of dimension {s} > N-2 lies outside the criteria's hypotheses")
        return rep

    q = (d - 1) * (s + 1) // N
    rep.q = q
    if s == 0:
        rep.bound = length_bound(d, q, N)
        dpw = length_bound(d, r, N)
        rep.rungs.append({"rung": "DuPlessisWall", "lowerBound": dpw, "holds": dpw <= h.sing_deg})
        holds = h.sing_deg < rep.bound
        rep.rungs.append({"rung": "TheoremC", "singDeg": h.sing_deg, "bound": rep.bound, "holds": holds})
        if holds:
            rep.verdict, rep.criterion = "SlopeStable", "TheoremC"
            return rep

    h0 = log_sections_dim(h, q)
    rep.rungs.append({"rung": "CorollaryB", "h0": h0, "holds": h0 == 0})
    if h0 == 0:
        rep.verdict, rep.criterion = "SlopeStable", "CorollaryB"
        return rep
    rep.witness = {"syzygies": [[format_polynomial(p) for p in v] for v in log_sections_basis(h, r)[:1]]}
    return rep


# --------------------------------------------------- the module J^sat / J

def saturation_quotient_dim(h: HypersurfaceData, t: int) -> int:
    """dim (J^sat / J)_t."""
    if h.sing_dim < 0:
        raise SmoothHypersurfaceError("identification requires D singular")
    if t < 0:
        return 0
    return h.jacobian.hilbert_function(t)[t] - h.saturation().hilbert_function(t)[t]


def _nf_vector(ideal: Ideal, f: Polynomial, index: dict) -> dict:
    r = ideal.normal_form(f)
    return {index[m]: c for m, c in r.terms.items()}


def _graded_span(ideal: Ideal, t: int) -> list[Polynomial]:
    """Monomial multiples of the Groebner basis spanning I_t."""
    out = []
    for g in ideal.groebner_basis():
        for m in graded_basis(ideal.nvars, t - g.degree):
            out.append(g * Polynomial.monomial(g.field, g.nvars, m))
    return out


def quotient_coset_basis(h: HypersurfaceData, t: int) -> list[Polynomial]:
    """Normal forms mod J spanning (J^sat / J)_t, linearly independent."""
    if h.sing_dim < 0:
        raise SmoothHypersurfaceError("identification requires D singular")
    J = h.jacobian
    index = {m: k for k, m in enumerate(graded_basis(h.nvars, t))}
    space = EchelonSpace(h.field)
    out = []
    for f in _graded_span(h.saturation(), t):
        nf = J.normal_form(f)
        if nf and space.add({index[m]: c for m, c in nf.terms.items()}):
            out.append(nf)
    return out


def mult_map_rank(h: HypersurfaceData, g: Polynomial, t_from: int) -> int:
    """Rank of multiplication by g from (J^sat/J)_t to (J^sat/J)_{t+deg g}."""
    if h.sing_dim < 0:
        raise SmoothHypersurfaceError("identification requires D singular")
    if not g:
        return 0
    if not g.is_homogeneous():
        raise ValueError("g must be homogeneous")
    basis = quotient_coset_basis(h, t_from)
    t_to = t_from + g.degree
    index = {m: k for k, m in enumerate(graded_basis(h.nvars, t_to))}
    space = EchelonSpace(h.field)
    for b in basis:
        space.add(_nf_vector(h.jacobian, b * g, index))
    return len(space)
