from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from logtan.errors import ScaleError
from logtan.quiver import (MAX_N, ClosureError, QuiverSupport, Subrep, build_support, enumerate_subreps,
                           king_slope, lattice_path_count, semistability_scan, support_order_ideal_count,
                           validate_subrep)
from oracles import brute_mu, grid_vertices, powerset_order_ideals

EXAMPLE_7 = [(7, -7), (1, -3), (-1, -1), (-3, 3)]


def test_support_n1():
    q = build_support(1)
    assert set(q.vertices) == {(1, -1), (-1, 1), (-1, -1)}
    assert (q.c1, q.rank) == (-2, 3)


def test_support_n3():
    q = build_support(3)
    assert (q.rank, q.c1) == (15, -6)


@pytest.mark.parametrize("n", range(1, 8))
def test_support_matches_grid_oracle(n):
    q = build_support(n)
    assert sorted(q.vertices) == sorted(grid_vertices(n))
    assert q.rank == (n + 1) ** 2 - 1 and q.c1 == -2 * n
    for (a, b), (c, e) in q.arrows():
        assert (c, e) in ((a - 2, b), (a, b - 2))


def test_example_subrep_n7():
    q = build_support(7)
    s = Subrep.generated_by(q, EXAMPLE_7)
    assert s.boundary() == sorted(EXAMPLE_7)
    validate_subrep(q, s.members)
    assert any(t.members == s.members for t in enumerate_subreps(q))
    scan = semistability_scan(7)
    assert king_slope(s).mu >= scan.min_mu > 0


def test_slope_of_full_and_empty():
    for n in range(1, 6):
        q = build_support(n)
        assert king_slope(Subrep(q, frozenset(q.vertices))).mu == 0
        assert king_slope(Subrep(q, frozenset())).mu == 0


def test_slope_of_bottom_vertex_n3():
    q = build_support(3)
    assert king_slope(Subrep(q, frozenset({(-3, -3)}))).mu == 84


def test_closure_violation_names_vertices():
    q = build_support(2)
    with pytest.raises(ClosureError, match=r"\(0, -2\)"):
        king_slope(Subrep(q, frozenset({(0, -2)})))
    with pytest.raises(ClosureError):
        validate_subrep(q, [(2, 2)])


@pytest.mark.parametrize("n", [1, 2])
def test_enumeration_matches_powerset(n):
    brute = set(powerset_order_ideals(n))
    assert len(grid_vertices(n)) == (n + 1) ** 2 - 1
    assert {s.members for s in enumerate_subreps(build_support(n))} == brute
    scan = semistability_scan(n)
    proper = [s for s in brute if 0 < len(s) < len(grid_vertices(n))]
    assert scan.min_mu == min(brute_mu(n, s) for s in proper)
    assert scan.count == len(brute)


def test_counts_agree_through_max_n():
    for n in range(1, MAX_N + 1):
        q = QuiverSupport(n)
        assert semistability_scan(n).count == support_order_ideal_count(q) == lattice_path_count(n)


def test_scale_guard():
    with pytest.raises(ScaleError):
        semistability_scan(MAX_N + 1)


@pytest.mark.parametrize("n", [3, 5, 10])
def test_strict_stability(n):
    scan = semistability_scan(n)
    assert scan.strictly_stable and scan.min_mu > 0
    assert king_slope(scan.argmin).mu == scan.min_mu


def test_reduced_rank_mode_is_reported():
    vals = {n: semistability_scan(n).to_json()["reducedRank"] for n in range(1, 6)}
    assert [vals[n]["minMu"] for n in (1, 2, 3)] == [-4, -10, -4]
    assert not any(vals[n]["strictlyStable"] for n in (1, 2, 3))
    assert vals[4]["strictlyStable"] and vals[5]["strictlyStable"]


subreps = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.integers(0, 10 ** 6), min_size=1, max_size=3).map(
        lambda seeds: (n, seeds)))


@given(subreps)
def test_reflection_and_additivity(data):
    n, seeds = data
    q = build_support(n)
    rng = random.Random(seeds[0])
    gens = rng.sample(q.vertices, min(len(seeds), q.rank))
    s = Subrep.generated_by(q, gens)
    refl = Subrep(q, frozenset((b, a) for a, b in s.members))
    validate_subrep(q, refl.members)
    rec = king_slope(s)
    assert rec.mu == king_slope(refl).mu
    assert rec.mu == q.c1 * len(s.members) - q.rank * sum(a + b for a, b in s.members)
    assert rec.mu == brute_mu(n, s.members)


@given(st.integers(1, 3), st.integers(0, 2 ** 15 - 1))
def test_validator_accepts_exactly_enumerated_sets(n, mask):
    q = build_support(n)
    verts = q.vertices
    subset = frozenset(v for k, v in enumerate(verts) if mask >> k & 1)
    enumerated = {s.members for s in enumerate_subreps(q)}
    try:
        validate_subrep(q, subset)
        accepted = True
    except ClosureError:
        accepted = False
    assert accepted == (subset in enumerated)


def test_json_report():
    out = semistability_scan(5).to_json()
    assert out["strictlyStable"] is True and out["count"] == lattice_path_count(5)
    assert out["argminBoundary"]
