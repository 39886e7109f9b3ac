from __future__ import annotations

from itertools import product
from math import comb

import pytest
import sympy

from logtan import GF31, QQ, FieldSpec, parse_polynomial
from logtan.determinants import (GENERIC, SYMMETRIC, DegenerateSampleError, ScaleError, artinian_lefschetz_check,
                                 build_determinant, commuting_scalar_kernel_dim, fiber_rank_check,
                                 minors_ideal, propn2_check, propn2_target, resolution_check,
                                 restriction_vanishing, semigeneric_section)
from logtan.groebner import BettiTable
from oracles import to_sympy


def betti(rows):
    return BettiTable({(i, tw): r for i, tw, r in rows})


# -- instances

def test_two_by_two_instances():
    assert build_determinant(2, GENERIC, QQ).F == parse_polynomial("x0*x3 - x1*x2", 4, QQ)
    assert build_determinant(2, SYMMETRIC, QQ).F == parse_polynomial("x0*x2 - x1^2", 3, QQ)


@pytest.mark.parametrize("flavor", [GENERIC, SYMMETRIC])
def test_partials_are_cofactors_by_sympy(flavor):
    inst = build_determinant(3, flavor, QQ)
    expr, xs = to_sympy(inst.F)
    M = sympy.Matrix(3, 3, lambda i, j: to_sympy(inst.matrix[i][j])[0])
    assert sympy.expand(M.det() - expr) == 0
    for k, (i, j) in inst.variables.items():
        cof = M.cofactor(i, j) * (2 if flavor == SYMMETRIC and i != j else 1)
        assert sympy.expand(sympy.diff(expr, xs[k]) - cof) == 0
    assert inst.F.degree == 3 and inst.nvars == (9 if flavor == GENERIC else 6)


def test_symmetric_rejects_characteristic_two():
    with pytest.raises(ValueError):
        build_determinant(2, SYMMETRIC, FieldSpec(2))


# -- resolutions

@pytest.mark.parametrize("n, flavor, module", [
    (2, GENERIC, [(0, -2, 6), (1, -3, 4), (2, -4, 1)]),
    (3, GENERIC, [(0, -3, 16), (1, -4, 9), (2, -6, 1)]),
    (2, SYMMETRIC, [(0, -2, 3), (1, -3, 1)]),
    (3, SYMMETRIC, [(0, -3, 8), (1, -4, 3)]),
    (4, GENERIC, [(0, -4, 30), (1, -5, 16), (2, -8, 1)]),
])
def test_resolution_tables(n, flavor, module):
    chk = resolution_check(build_determinant(n, flavor, GF31))
    assert chk.match and chk.computed == betti(module)


def test_symmetric_sheaf_normalization():
    chk = resolution_check(build_determinant(3, SYMMETRIC, GF31))
    sheaf = chk.computed.reindexed(0, chk.shift)
    assert sheaf.ranks(0) == {-1: 8} and sheaf.ranks(1) == {-2: 3}


def test_resolution_scale_cap():
    with pytest.raises(ScaleError):
        resolution_check(build_determinant(5, GENERIC, GF31))


# -- semigeneric sections

def test_semigeneric_certificate_n3():
    sec = semigeneric_section(3, 1, GF31)
    assert sec.certificate["passed"] and sec.certificate["length"] == 6
    diff = [[sec.ML[i][j] - sec.M0[i][j] for j in range(3)] for i in range(3)]
    x0 = parse_polynomial("x0", 4, GF31)
    assert diff[0][0] == x0 and all(not diff[i][j] for i in range(3) for j in range(3) if (i, j) != (0, 0))
    assert all(m[0] == 0 for row in sec.M0 for e in row for m in e.terms)


@pytest.mark.parametrize("seed", [0, 1, 7])
def test_semigeneric_certificate_n2(seed):
    assert semigeneric_section(2, seed, GF31).certificate["length"] == 2


def test_semigeneric_is_deterministic():
    a = semigeneric_section(3, 11, GF31).to_json()
    assert a == semigeneric_section(3, 11, GF31).to_json()


def test_tiny_field_is_deterministic():
    F3 = FieldSpec(3)

    def outcome():
        try:
            return semigeneric_section(4, 2, F3, max_retries=6).to_json()
        except DegenerateSampleError as e:
            return ("error", str(e), repr(e.certificate))
    assert outcome() == outcome()


def test_propn2_n2_spans_linear_forms():
    sec = semigeneric_section(2, 1, GF31)
    res = propn2_check(sec)
    assert res.equal and res.lhs_hf.as_list()[:2] == [1, 0]


def test_propn2_n3_degree_two_piece():
    res = propn2_check(semigeneric_section(3, 1, GF31))
    assert res.equal and res.containment
    assert comb(5, 3) - res.lhs_hf[2] == 9
    assert comb(5, 3) - res.rhs_hf[2] == 9


@pytest.mark.parametrize("field", [GF31, QQ])
def test_propn2_n3_both_fields(field):
    assert propn2_check(semigeneric_section(3, 1, field)).equal


def test_propn2_n4():
    res = propn2_check(semigeneric_section(4, 1, GF31))
    assert res.equal and res.containment


def test_target_ideal_generators():
    assert len(propn2_target(3, GF31).generators) == 3 + 6


# -- Artinian reductions

def test_lefschetz_n3():
    lef = artinian_lefschetz_check(3, "semigeneric", 1, GF31)
    assert (lef.dim_from, lef.dim_to, lef.rank, lef.iso) == (1, 1, 1, True)
    # x0 is never killed here, so the tail is constant rather than zero
    assert lef.hf.as_list()[:4] == [1, 4, 1, 1]


@pytest.mark.parametrize("seed", range(3))
def test_general_section_hilbert_function_n3(seed):
    lef = artinian_lefschetz_check(3, "random", seed, GF31)
    assert lef.hf.as_list()[:5] == [1, 4, 1, 0, 0]


def test_lefschetz_n4():
    lef = artinian_lefschetz_check(4, "semigeneric", 1, GF31)
    assert (lef.dim_from, lef.dim_to, lef.iso) == (4, 4, True)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_reduction_agrees_with_polynomial_ring_in_low_degree(n):
    lef = artinian_lefschetz_check(n, "semigeneric", 1, GF31)
    assert all(lef.hf[t] == comb(t + 3, 3) for t in range(n - 1))
    assert lef.hf[n - 1] == comb(n + 2, 3) - n * n == comb(n, 3)


def test_random_quadric_n3():
    assert sum(artinian_lefschetz_check(3, "random", s, GF31).iso for s in range(10)) >= 9


# -- restriction vanishing

def test_restriction_symmetric_n3():
    res = restriction_vanishing(build_determinant(3, SYMMETRIC, GF31), 1)
    assert res.hf.as_list()[:3] == [1, 3, 0] and res.vanishes_from == 2 and res.passed


def test_restriction_symmetric_n2():
    res = restriction_vanishing(build_determinant(2, SYMMETRIC, GF31), 1)
    assert res.hf.as_list()[:2] == [1, 0] and res.passed


def test_restriction_generic_n3():
    assert restriction_vanishing(build_determinant(3, GENERIC, GF31), 1).passed


# -- fiber ranks

GF5 = FieldSpec(5)


def brute_kernel_dim(a, p):
    """log_p of the number of (b, lam, mu) with a b = lam I and b a = mu I."""
    n = len(a)
    count = 0
    for vals in product(range(p), repeat=n * n + 2):
        b = [vals[i * n:(i + 1) * n] for i in range(n)]
        lam, mu = vals[-2:]
        ok = all(sum(a[i][k] * b[k][j] for k in range(n)) % p == (lam if i == j else 0)
                 and sum(b[i][k] * a[k][j] for k in range(n)) % p == (mu if i == j else 0)
                 for i in range(n) for j in range(n))
        count += ok
    d = 0
    while p ** d < count:
        d += 1
    assert p ** d == count
    return d


@pytest.mark.parametrize("a", [[[1, 0], [0, 1]], [[1, 0], [0, 0]], [[0, 0], [0, 0]], [[1, 2], [3, 4]]])
def test_kernel_dim_against_enumeration(a):
    assert commuting_scalar_kernel_dim(a, GF5) == brute_kernel_dim(a, 5)


def test_fiber_n3_k2():
    res = fiber_rank_check(3, 2, 5, GF31, 1)
    assert set(res.kernel_dims) == {4} and set(res.phi_fiber_dims) == {11} and res.passed


@pytest.mark.parametrize("n", [2, 3, 4])
def test_fiber_monotone(n):
    dims = [max(fiber_rank_check(n, k, 3, GF31, 1, with_phi=False).kernel_dims) for k in range(n)]
    assert dims == sorted(dims)


def test_fiber_bad_k():
    with pytest.raises(ValueError):
        fiber_rank_check(3, 3, 1, GF31)


def test_minors_ideal_of_identity_like_matrix():
    inst = build_determinant(2, GENERIC, GF31)
    assert len(minors_ideal(inst.matrix, 1).generators) == 4
