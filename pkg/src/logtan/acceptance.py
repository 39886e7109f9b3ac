"""The acceptance battery shared by ``logtan selftest`` and the test suite."""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Callable, Sequence

from .determinants import (GENERIC, SYMMETRIC, artinian_lefschetz_check, build_determinant,
                           fiber_rank_check, minors_ideal, propn2_check, resolution_check,
                           restriction_vanishing, semigeneric_section)
from .field import GF31, QQ, FieldSpec
from .geometry import cover_solutions
from .groebner import Ideal, minimal_free_resolution, s_pairs_reduce_to_zero
from .groebner.engine import TermOrder
from .groebner.ideal import _to_vec
from .poly import Polynomial, graded_basis, graded_basis_size, parse_polynomial
from .quiver import QuiverSupport, lattice_path_count, semistability_scan, support_order_ideal_count
from .stability import jacobian_data, stability_check

DEFAULT_SEED = 1


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: dict = dc_field(default_factory=dict)

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d} {self.title}"

    def to_json(self):
        return {"criterion": self.number, "title": self.title, "pass": self.passed, "detail": self.detail}


# ------------------------------------------------------------- criteria

def criterion_1(seed: int = DEFAULT_SEED) -> CriterionResult:
    detail, ok = {}, True
    for n in (2, 3):
        chk = resolution_check(build_determinant(n, GENERIC, GF31))
        detail[f"n={n}"] = chk.to_json()
        ok &= chk.match
    return CriterionResult(1, "generic determinant Betti tables (n = 2, 3)", ok, detail)


def criterion_2(seed: int = DEFAULT_SEED) -> CriterionResult:
    detail, ok = {}, True
    for n in (2, 3):
        chk = resolution_check(build_determinant(n, SYMMETRIC, GF31))
        r0, r1 = chk.computed.ranks(0), chk.computed.ranks(1)
        gap = (len(r0) == len(r1) == 1) and (next(iter(r0)) - next(iter(r1)) == 1)
        ranks = (chk.computed.total_rank(0), chk.computed.total_rank(1))
        good = chk.match and gap and ranks == (n * n - 1, comb(n, 2))
        detail[f"n={n}"] = {**chk.to_json(), "ranks": list(ranks), "twistGap1": gap}
        ok &= good
    return CriterionResult(2, "symmetric determinant Betti tables (n = 2, 3)", ok, detail)


def criterion_3(seed: int = DEFAULT_SEED) -> CriterionResult:
    detail, ok = {}, True
    for n, F in ((2, GF31), (3, GF31), (4, GF31), (3, QQ)):
        sec = semigeneric_section(n, seed, F)
        res = propn2_check(sec)
        detail[f"n={n},{F}"] = {"equal": res.equal, "containment": res.containment, "retries": sec.retries}
        ok &= res.equal and res.containment
    return CriterionResult(3, "semigeneric minors ideal equals x0*m0^(n-2) + m0^(n-1)", ok, detail)


def criterion_4(seed: int = DEFAULT_SEED) -> CriterionResult:
    detail, ok = {}, True
    for n in (3, 4, 5):
        lef = artinian_lefschetz_check(n, "semigeneric", seed, GF31)
        detail[f"semigeneric n={n}"] = {"dimFrom": lef.dim_from, "dimTo": lef.dim_to, "rank": lef.rank,
                                         "iso": lef.iso}
        ok &= lef.iso and lef.dims_ok
    for n in (3, 4):
        isos = [artinian_lefschetz_check(n, "random", seed * 1000 + s, GF31).iso for s in range(10)]
        detail[f"random n={n}"] = {"isoCount": sum(isos), "seeds": 10}
        ok &= sum(isos) >= 9
    return CriterionResult(4, "Artinian reduction dimensions and quadratic Lefschetz maps", ok, detail)


def criterion_5(seed: int = DEFAULT_SEED) -> CriterionResult:
    detail, ok = {}, True
    for n in range(2, 6):
        res = restriction_vanishing(build_determinant(n, SYMMETRIC, GF31), seed)
        detail[f"n={n}"] = {"hf": res.hf.as_list(), "vanishesFrom": res.vanishes_from, "pass": res.passed}
        ok &= res.passed
    return CriterionResult(5, "symmetric restriction to a plane vanishes from degree n-1", ok, detail)


def criterion_6(seed: int = DEFAULT_SEED) -> CriterionResult:
    detail, ok = {}, True
    for n in range(1, 11):
        scan = semistability_scan(n)
        independent = support_order_ideal_count(QuiverSupport(n))
        good = scan.strictly_stable and scan.count == independent == lattice_path_count(n)
        detail[f"n={n}"] = {"count": scan.count, "independentCount": independent, "minMu": scan.min_mu,
                            "strictlyStable": scan.strictly_stable}
        ok &= good
    return CriterionResult(6, "exhaustive King-slope scan of the principal-parts quiver (n = 1..10)", ok, detail)


def criterion_7(seed: int = DEFAULT_SEED) -> CriterionResult:
    detail, ok = {}, True
    for n in (2, 3):
        for k in range(n):
            res = fiber_rank_check(n, k, 20, GF31, seed)
            detail[f"n={n},k={k}"] = {"kernelDims": sorted(set(res.kernel_dims)), "expected": res.expected,
                                      "phiFiberDims": sorted(set(res.phi_fiber_dims)),
                                      "phiExpected": res.phi_expected}
            ok &= res.passed
    return CriterionResult(7, "fiber-rank stratification of the determinant", ok, detail)


def criterion_8(seed: int = DEFAULT_SEED) -> CriterionResult:
    bad = [n for n in range(3, 21) if cover_solutions(n).nontrivial != {(1, 0), (-1, n - 1)}]
    return CriterionResult(8, "cover arithmetic: nontrivial solutions are (1,0) and (-1,n-1)", not bad,
                           {"failures": bad})


STABILITY_CORPUS = [
    # (label, polynomial, nvars, expected verdict, expected criterion, extra expectations)
    ("Fermat quartic surface", "x0^4 + x1^4 + x2^4 + x3^4", 4, "SmoothClassical", "Smooth", {}),
    ("x0*x1^3 + x2^4 + x3^4", "x0*x1^3 + x2^4 + x3^4", 4, "Inconclusive", "None",
     {"q": 1, "r": 1, "singDeg": 18, "bound": 18}),
    ("x0*x1^2 + x2^3 + x3^3", "x0*x1^2 + x2^3 + x3^3", 4, None, None, {"r": 1}),
    ("x0*x1^4 + x2^5 + x3^5", "x0*x1^4 + x2^5 + x3^5", 4, None, None, {"r": 1}),
    ("cone x0^2 + x1^2", "x0^2 + x1^2", 4, "NotSemistable", "ConeObstruction", {}),
    ("nodal cubic surface", "x0*x1*x3 + x0*x2^2 + x1^3 + x2^3 + x3^3", 4, "SlopeStable", "TheoremC",
     {"q": 0, "singDeg": 1, "bound": 8}),
]


def criterion_9(seed: int = DEFAULT_SEED) -> CriterionResult:
    detail, ok = {}, True
    for label, text, nv, verdict, crit, extra in STABILITY_CORPUS:
        for F in (QQ, GF31):
            rep = stability_check(jacobian_data(parse_polynomial(text, nv, F))).to_json()
            good = (verdict is None or rep["verdict"] == verdict) and (crit is None or rep["criterion"] == crit)
            good &= all(rep.get(k) == v for k, v in extra.items())
            detail[f"{label} over {F}"] = {k: rep.get(k) for k in ("verdict", "criterion", "q", "r", "singDeg",
                                                                   "bound")}
            ok &= good
    return CriterionResult(9, "stability criteria regression corpus", ok, detail)


# ------------------------------------------------------ engine properties

def _dense_degree_cap(nvars: int, cap: int = 1200, top: int = 8) -> int:
    t = 0
    while t < top and graded_basis_size(nvars, t + 1) <= cap:
        t += 1
    return t


def engine_properties(gens: Sequence[Polynomial], max_degree: int | None = None) -> dict:
    """Property checks on one homogeneous ideal; every value is a boolean."""
    gens = [g for g in gens if g]
    I = Ideal(gens)
    nv, F = I.nvars, I.field
    gb = I.groebner_basis()
    out = {"buchberger": s_pairs_reduce_to_zero([_to_vec(g) for g in gb], F, nv, TermOrder(nv))}
    out["generatorsReduce"] = all(not I.normal_form(g) for g in gens)
    res = minimal_free_resolution(gens, nv + 1)
    maps = res.maps
    out["resolutionComplete"] = res.complete
    out["syzygyAnnihilation"] = len(maps) < 2 or maps[0].compose(maps[1]).is_zero()
    out["exactness"] = all(a.compose(b).is_zero() for a, b in zip(maps, maps[1:]))
    out["minimality"] = not any(m.has_unit_entries() for m in maps[1:])
    out["degreeCompatible"] = all(m.is_degree_compatible() for m in maps)
    top = _dense_degree_cap(nv) if max_degree is None else max_degree
    hf = I.hilbert_function(top)
    dense = I.hilbert_function_dense(top)
    out["hilbertAgreement"] = all(hf[t] == dense[t] for t in range(top + 1))
    out["eulerCharacteristic"] = all(res.betti.euler_dim(nv, t) == hf[t] for t in range(top + 1))
    return out


def random_homogeneous_ideal(rng: random.Random, field: FieldSpec) -> list[Polynomial]:
    nv = rng.randint(2, 4)
    gens = []
    for _ in range(rng.randint(1, 4)):
        d = rng.randint(1, 3)
        terms = {}
        basis = graded_basis(nv, d)
        for m in rng.sample(basis, min(len(basis), rng.randint(1, 4))):
            terms[m] = field.random_element(rng, nonzero=True)
        gens.append(Polynomial(field, nv, terms))
    return gens


def suite_instances(seed: int = DEFAULT_SEED) -> list[tuple[str, list[Polynomial]]]:
    out = []
    for n, fl in ((2, GENERIC), (3, GENERIC), (2, SYMMETRIC), (3, SYMMETRIC)):
        out.append((f"{fl} n={n} partials", build_determinant(n, fl, GF31).partials))
    for n in (2, 3, 4):
        sec = semigeneric_section(n, seed, GF31)
        out.append((f"semigeneric minors n={n}", minors_ideal(sec.ML, n - 1).generators))
    for label, text, nv, *_ in STABILITY_CORPUS:
        f = parse_polynomial(text, nv, GF31)
        out.append((f"jacobian of {label}", [f.differentiate(i) for i in range(nv)]))
    return out


def criterion_10(seed: int = DEFAULT_SEED, random_count: int = 100) -> CriterionResult:
    failures = {}
    instances = suite_instances(seed)
    rng = random.Random(seed)
    for k in range(random_count):
        instances.append((f"random ideal #{k}", random_homogeneous_ideal(rng, GF31)))
    for label, gens in instances:
        props = engine_properties(gens)
        bad = [k for k, v in props.items() if not v]
        if bad:
            failures[label] = bad
    return CriterionResult(10, "engine property suites on suite instances and random ideals", not failures,
                           {"instances": len(instances), "failures": failures})


CRITERIA: dict[int, Callable[..., CriterionResult]] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
    6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10,
}


def run_battery(seed: int = DEFAULT_SEED, only: Sequence[int] | None = None) -> list[CriterionResult]:
    return [CRITERIA[k](seed) for k in sorted(only or CRITERIA)]
