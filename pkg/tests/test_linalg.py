import random

import flint
from hypothesis import given, settings, strategies as st

from tatelab import linalg
from tatelab.scalars import Field

Q = Field(0)
FP = Field(10007)


def _rand_rows(rng, field, m, n, density=0.5, span=4):
    return [[field(rng.randint(-span, span)) if rng.random() < density else field.zero for _ in range(n)]
            for _ in range(m)]


def _sparse(rows):
    return [{j: v for j, v in enumerate(r) if v != 0} for r in rows]


matrices = st.tuples(st.integers(0, 6), st.integers(0, 8), st.integers(0, 10**6))


@given(matrices)
@settings(max_examples=80, deadline=None)
def test_flint_rref_matches_multimodular(shape):
    m, n, seed = shape
    rows = _rand_rows(random.Random(seed), Q, m, n)
    piv, block, free = linalg.rref(Q, rows, n)
    piv2, block2 = linalg.rref_multimodular(rows, n)
    assert piv == piv2
    assert block == block2 or not free


@given(matrices)
@settings(max_examples=80, deadline=None)
def test_sparse_kernel_matches_dense(shape):
    m, n, seed = shape
    for field in (Q, FP):
        rows = _rand_rows(random.Random(seed), field, m, n, density=0.35)
        if m and n:
            dense = linalg.kernel_of(linalg.from_rows(field, rows, n), field)
        else:
            dense = ([{j: field.one} for j in range(n)], list(range(n)))
        assert linalg.sparse_kernel(field, _sparse(rows), n) == dense


@given(matrices)
@settings(max_examples=80, deadline=None)
def test_kernel_vectors_are_killed_and_rank_nullity(shape):
    m, n, seed = shape
    rows = _rand_rows(random.Random(seed), Q, m, n)
    vecs, free = linalg.kernel(Q, rows, n)
    r = linalg.rank(Q, rows, n)
    assert len(vecs) == n - r
    for v in vecs:
        for row in rows:
            assert sum((a * b for a, b in zip(row, v)), Q.zero) == 0


@given(matrices)
@settings(max_examples=60, deadline=None)
def test_sparse_pivots_give_rank(shape):
    m, n, seed = shape
    rows = _rand_rows(random.Random(seed), Q, m, n, density=0.3)
    assert len(linalg.sparse_pivots(Q, _sparse(rows), n)) == linalg.rank(Q, rows, n)
    assert sorted(linalg.sparse_rref(Q, _sparse(rows), n)) == linalg.rref(Q, rows, n)[0]


def test_modular_rank_is_lower_bound():
    # 2^62-ish prime divides nothing here, so the bound is attained
    rows = [[Q(1), Q(2)], [Q(2), Q(4)], [Q(0), Q(flint.fmpq(1, 3))]]
    M = linalg.from_rows(Q, rows, 2)
    assert linalg.modular_rank_of(M, Q) == 2 == linalg.rank_of(M, Q)


def test_rank_shortcut_with_known_bound():
    rows = [[Q(1), Q(0), Q(1)], [Q(0), Q(1), Q(1)]]
    assert linalg.rank(Q, rows, 3, at_most=2) == 2


def test_rref_rows_and_transpose():
    rows = [[Q(2), Q(4)], [Q(1), Q(3)]]
    R, piv = linalg.rref_rows(Q, rows, 2)
    assert piv == [0, 1] and R == [[Q(1), Q(0)], [Q(0), Q(1)]]
    assert linalg.transpose(rows, 2) == [[Q(2), Q(1)], [Q(4), Q(3)]]


def test_kernel_of_empty_and_zero():
    vecs, free = linalg.kernel(Q, [], 3)
    assert free == [0, 1, 2] and len(vecs) == 3
    vecs, free = linalg.kernel(Q, [[Q(0), Q(0)]], 2)
    assert free == [0, 1]
