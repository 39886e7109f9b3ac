from __future__ import annotations

import random

from hypothesis import given, strategies as st

from logtan import GF31, QQ, FieldSpec
from logtan.linalg import EchelonSpace, ExactMatrix, rank, rank_and_kernel
from oracles import fraction_rank, modp_rank

P1, P2 = 1_000_003, 998_244_353


def test_identity_rank():
    r, ker = rank_and_kernel(ExactMatrix.from_rows(QQ, [[1, 0], [0, 1]]))
    assert r == 2 and ker == []


def test_zero_row_kernel():
    r, ker = rank_and_kernel(ExactMatrix.from_rows(GF31, [[0, 0, 0]]))
    assert r == 0 and len(ker) == 3


matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices, st.sampled_from([QQ, GF31]))
def test_rank_nullity_and_annihilation(rows, field):
    m = ExactMatrix.from_rows(field, rows)
    r, ker = rank_and_kernel(m)
    assert r + len(ker) == m.cols
    for v in ker:
        assert all(x == 0 for x in m.apply(v))


@given(matrices)
def test_rank_of_transpose_mod_p(rows):
    m = ExactMatrix.from_rows(GF31, rows)
    assert rank(m) == rank(m.transpose())


@given(matrices)
def test_rational_rank_matches_oracle_and_two_primes(rows):
    r = rank(ExactMatrix.from_rows(QQ, rows))
    assert r == fraction_rank(rows)
    assert r == rank(ExactMatrix.from_rows(FieldSpec(P1), rows)) == modp_rank(rows, P1)
    assert r == rank(ExactMatrix.from_rows(FieldSpec(P2), rows))


def test_kernel_is_canonical():
    rng = random.Random(5)
    rows = [[rng.randint(-5, 5) for _ in range(7)] for _ in range(4)]
    a = rank_and_kernel(ExactMatrix.from_rows(QQ, rows))
    b = rank_and_kernel(ExactMatrix.from_rows(QQ, [rows[2], rows[0], rows[3], rows[1]]))
    assert a == b


def test_echelon_space():
    sp = EchelonSpace(QQ)
    assert sp.add({0: 1, 1: 2})
    assert sp.add({1: 1})
    assert not sp.add({0: 3, 1: 1})
    assert sp.contains({0: 5})
    assert not sp.contains({2: 1})
    assert len(sp) == 2
