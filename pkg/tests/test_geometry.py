from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from logtan.geometry import (chiT, cohomT, cover_solutions, eulerS_four_term, eulerS_h_twist,
                             eulerS_riemann_roch, h_p2)
from oracles import brute_cover


def test_cohomT_examples():
    assert cohomT(0, 0).dims == (1, 0, 0, 0)
    assert all(cohomT(-1, j).dims == (0, 0, 0, 0) for j in range(-6, 7))
    assert cohomT(1, 0).dims == (4, 0, 0, 0)


def test_p2_serre_duality():
    for m in range(-8, 8):
        assert h_p2(2, m) == h_p2(0, -3 - m)


def test_alternative_indexing_is_a_shift_by_two():
    for i in range(-5, 4):
        for j in range(-6, 6):
            a, b = cohomT(i, j), cohomT(i, j, shifted_indexing=True)
            if i >= -1:
                assert a == b
            else:
                assert b.dims == a.dims[2:] + (0, 0)


def test_default_indexing_matches_riemann_roch_on_t():
    # chi(O_T(ih + jl)) = sum over the pushforward, with R^1 entering negatively
    def rr(i, j):
        chi2 = lambda m: (m + 1) * (m + 2) // 2
        if i >= 0:
            return sum(chi2(j + u) for u in range(i + 1))
        return -sum(chi2(j + u) for u in range(i + 1, 0))
    for i in range(-6, 5):
        for j in range(-8, 8):
            assert chiT(i, j) == rr(i, j)


def test_leray_shift_for_very_negative_i():
    # O_T(-3h): R^1 pi_* is O(-1) + O(-2) on P^2 pushed, so everything vanishes;
    # O_T(-3h - 3l) has h^3 from h^2(P^2, O(-4)) + h^2(P^2, O(-5)).
    assert cohomT(-3, 0).dims == (0, 0, 0, 0)
    assert cohomT(-3, -3).dims == (0, 0, 0, h_p2(2, -5) + h_p2(2, -4))


@pytest.mark.parametrize("n, i, j, value", [(2, -1, 0, 1), (3, -1, 0, 1), (3, 0, 0, 4)])
def test_euler_on_blown_up_plane(n, i, j, value):
    assert eulerS_h_twist(n, i, j) == value == eulerS_riemann_roch(n, i, j)


def test_four_term_variant_disagrees_for_n3():
    assert eulerS_four_term(2, -1, 0) == 1
    assert eulerS_four_term(3, -1, 0) == 2


@given(st.integers(2, 8), st.integers(-6, 6), st.integers(-10, 10))
def test_divisor_route_matches_riemann_roch(n, i, j):
    assert eulerS_h_twist(n, i, j) == eulerS_riemann_roch(n, i, j)


@given(st.integers(-6, 3), st.integers(-6, 3))
def test_chi_is_a_cubic_polynomial(i0, j0):
    I, J = sympy.symbols("i j")
    mons = [I ** a * J ** b for a in range(4) for b in range(4 - a)]
    cs = sympy.symbols(f"c0:{len(mons)}")
    poly = sum(c * m for c, m in zip(cs, mons))
    eqs = [poly.subs({I: i0 + a, J: j0 + b}) - chiT(i0 + a, j0 + b) for a in range(5) for b in range(5)]
    sol = sympy.solve(eqs, cs, dict=True)
    assert sol, "grid values are not a cubic"
    fitted = poly.subs(sol[0])
    for a, b in [(-9, 4), (7, -8), (10, 10), (-12, -12)]:
        assert Fraction(str(fitted.subs({I: a, J: b}))) == chiT(a, b)


@given(st.integers(-6, 6), st.integers(-10, 10))
def test_single_nonzero_degree_when_summands_share_sign(i, j):
    if i >= 0:
        twists = [j + u for u in range(i + 1)]
    elif i <= -2:
        twists = [j + u for u in range(i + 1, 0)]
    else:
        twists = []
    if all(t >= 0 for t in twists) or all(t <= -3 for t in twists):
        assert len(cohomT(i, j).nonzero_degrees()) <= 1


@pytest.mark.parametrize("n", [3, 4, 6])
def test_cover_examples(n):
    sols = cover_solutions(n)
    assert sols.nontrivial == {(1, 0), (-1, n - 1)}
    raw = {(s.x, s.y) for s in sols.solutions}
    if n == 3:
        assert (0, 1) in raw
    if n % 2 == 0:
        assert len(raw) == 2


def test_cover_flags_locally_free_solution():
    out = cover_solutions(5).to_json()
    flagged = [s for s in out["solutions"] if not s["nontrivial"]]
    assert flagged == [{"x": 0, "y": 2, "nontrivial": False, "flag": "locally-free class, excluded by context"}]


@pytest.mark.parametrize("n", range(3, 21))
def test_cover_against_wide_scan(n):
    sols = cover_solutions(n, window=50)
    assert {(s.x, s.y) for s in sols.solutions} == brute_cover(n)
    assert len(sols.nontrivial) == 2


def test_cover_rejects_small_n():
    with pytest.raises(ValueError):
        cover_solutions(2)
