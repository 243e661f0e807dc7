from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simplexcoh.exact_linalg import (
    IntMatrix,
    SubspaceBasis,
    intersect_dim,
    nullspace,
    projection_dim,
    rank,
    reduced_echelon,
    restrict_to_zero_block,
    sum_dim,
)


def gauss_rank(rows):
    """Textbook Fraction Gaussian elimination, kept independent of the library."""
    m = [[Fraction(v) for v in r] for r in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


def matrices(max_rows=7, max_cols=7, lo=-3, hi=3):
    return st.integers(1, max_rows).flatmap(
        lambda nr: st.integers(1, max_cols).flatmap(
            lambda nc: st.lists(
                st.lists(st.integers(lo, hi), min_size=nc, max_size=nc), min_size=nr, max_size=nr
            )
        )
    )


@given(matrices())
def test_rank_matches_oracle(rows):
    assert rank(IntMatrix.from_rows(rows)) == gauss_rank(rows)


@given(matrices())
def test_rank_of_transpose(rows):
    m = IntMatrix.from_rows(rows)
    assert rank(m) == rank(m.transpose())


@given(matrices())
def test_rank_nullity(rows):
    m = IntMatrix.from_rows(rows)
    ns = nullspace(m)
    assert rank(m) + ns.dim == m.ncols
    for v in ns:
        assert not any(m.apply(v))
        first = next(x for x in v if x)
        assert first > 0


@given(matrices(), st.integers(-5, 5))
def test_duplicate_and_negated_rows_do_not_change_rank(rows, k):
    base = rank(IntMatrix.from_rows(rows))
    extra = rows + [[-x for x in rows[0]], [k * x for x in rows[-1]]]
    assert rank(IntMatrix.from_rows(extra)) == base


@given(matrices(max_rows=5, max_cols=6), matrices(max_rows=5, max_cols=6))
@settings(max_examples=60)
def test_dimension_identity(a_rows, b_rows):
    n = min(len(a_rows[0]), len(b_rows[0]))
    a = SubspaceBasis.span(n, [r[:n] for r in a_rows])
    b = SubspaceBasis.span(n, [r[:n] for r in b_rows])
    assert sum_dim(a, b) + intersect_dim(a, b) == a.dim + b.dim
    assert max(a.dim, b.dim) <= sum_dim(a, b) <= n


def test_reduced_echelon_is_integral_and_reduced():
    ech, pivots = reduced_echelon(IntMatrix.from_rows([[2, 4, 6], [1, 1, 1], [3, 5, 7]]))
    assert pivots == [0, 1]
    for row, c in zip(ech, pivots):
        assert row[c] > 0
        for other, c2 in zip(ech, pivots):
            if other is not row:
                assert other[c] == 0


def test_nullspace_small_example():
    ns = nullspace(IntMatrix.from_rows([[1, 1, 0], [0, 0, 1]]))
    assert ns.vectors == ((1, -1, 0),)
    assert nullspace(IntMatrix.identity(3)).dim == 0
    assert nullspace(IntMatrix.zeros(2, 3)).dim == 3


def test_zero_and_identity_rank():
    assert rank(IntMatrix.zeros(4, 5)) == 0
    assert rank(IntMatrix.identity(6)) == 6


def test_contains():
    s = SubspaceBasis.span(3, [(1, 2, 3)])
    assert s.contains((2, 4, 6))
    assert not s.contains((1, 0, 0))


def test_restrict_and_project():
    s = SubspaceBasis.span(4, [(1, 0, 1, 0), (0, 1, 1, 0), (0, 0, 0, 1)])
    r = restrict_to_zero_block(s, [2])
    assert r.dim == 2
    assert all(v[2] == 0 for v in r)
    assert r.contains((1, -1, 0, 0))
    assert projection_dim(s, [0, 1]) == 2
    assert projection_dim(s, [2]) == 1
    assert projection_dim(s, []) == 0
    with pytest.raises(ValueError):
        projection_dim(s, [4])


def test_ambient_mismatch_raises():
    with pytest.raises(ValueError):
        sum_dim(SubspaceBasis.span(3, [(1, 0, 0)]), SubspaceBasis.span(4, [(1, 0, 0, 0)]))
    with pytest.raises(ValueError):
        IntMatrix.from_rows([[1, 2], [3]])
