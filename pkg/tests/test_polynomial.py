from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from simplexcoh.polynomial import (
    VARIABLES,
    MultiPoly,
    PolyMatrix,
    embed_matrix,
    matrix_mul,
    permute_factors,
    restrict_matrix,
    symbols,
    weighted_partial_trace,
)

a, b, c, a2, b2, c2 = symbols()

small_ints = st.integers(-4, 4)


def int_matrix(nfactors):
    dim = 1 << nfactors
    return st.lists(st.lists(small_ints, min_size=dim, max_size=dim), min_size=dim, max_size=dim)


def polys():
    terms = st.dictionaries(
        st.tuples(*[st.integers(0, 2)] * 6), st.fractions(max_denominator=5).filter(lambda f: abs(f) < 10), max_size=4
    )
    return terms.map(MultiPoly)


@given(polys(), polys(), polys())
def test_ring_laws(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == MultiPoly()


@given(polys())
def test_string_roundtrip(p):
    assert MultiPoly.parse(str(p)) == p


@given(polys(), st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_evaluate_is_homomorphism(p, pt):
    point = dict(zip(VARIABLES, pt))
    q = p * p + p
    assert q.evaluate(point) == p.evaluate(point) * p.evaluate(point) + p.evaluate(point)
    assert p.evaluate(point).is_constant()


def test_formatting():
    assert str(b**2 * a2 * c2 - b**2 * b2**2) == "1 * b^2 a' c' - 1 * b^2 b'^2"
    assert str(MultiPoly()) == "0"
    assert str(MultiPoly.const(Fraction(-3, 2))) == "-3/2"
    with pytest.raises(ValueError):
        MultiPoly.parse("1 * q")


@given(int_matrix(2), int_matrix(2))
def test_matmul_matches_numpy(x, y):
    px, py = PolyMatrix(x), PolyMatrix(y)
    assert np.array_equal((px @ py).to_float(), np.array(x) @ np.array(y))
    assert matrix_mul(px, py) == px @ py


@given(int_matrix(2))
def test_embed_matches_kron(x):
    m = PolyMatrix(x)
    eye = np.eye(2)
    arr = np.array(x, dtype=float)
    assert np.array_equal(embed_matrix(m, (1, 2), 3).to_float(), np.kron(arr, eye))
    assert np.array_equal(embed_matrix(m, (2, 3), 3).to_float(), np.kron(eye, arr))
    assert restrict_matrix(embed_matrix(m, (1, 3), 3), (1, 3)) == m


@given(int_matrix(3), st.sampled_from([1, 2, 3]), st.lists(small_ints, min_size=4, max_size=4))
def test_partial_trace_matches_einsum(x, k, wflat):
    w = [wflat[:2], wflat[2:]]
    # Tr_k(W_k X) with W_k = w on factor k, written with einsum on a 2x2x2 reshape.
    t = np.array(x, dtype=float).reshape([2] * 6)
    idx_out = list("abc")
    idx_in = list("def")
    idx_out[k - 1] = "u"
    idx_in[k - 1] = "t"
    keep_out = "".join(ch for n, ch in enumerate("abc") if n != k - 1)
    keep_in = "".join(ch for n, ch in enumerate("def") if n != k - 1)
    expected = np.einsum(f"tu,{''.join(idx_out)}{''.join(idx_in)}->{keep_out}{keep_in}", np.array(w, float), t)
    got = weighted_partial_trace(PolyMatrix(x), k, w).to_float()
    assert np.array_equal(got, expected.reshape(4, 4))


def test_partial_trace_of_product_with_identity():
    x = PolyMatrix([[a, b], [c, a2]])
    assert weighted_partial_trace(embed_matrix(x, (2,), 2), 1, [[1, 0], [0, 1]]) == x.scalar_mul(2)


@given(int_matrix(3))
def test_permute_factors(x):
    arr = np.array(x, dtype=float).reshape([2] * 6)
    got = permute_factors(PolyMatrix(x), (3, 1, 2)).to_float()
    assert np.array_equal(got, arr.transpose(2, 0, 1, 5, 3, 4).reshape(8, 8))


def test_entry_list_roundtrip():
    m = PolyMatrix([[a * b, 0], [MultiPoly.const(3), c2]])
    assert PolyMatrix.from_entry_list(2, m.entry_list()) == m
    assert m.entry_list()[0] == (1, 1, "1 * a b")


def test_symmetry_helpers():
    m = PolyMatrix([[a, b], [b, c]])
    assert m.is_symmetric()
    assert not PolyMatrix([[a, b], [c, a]]).is_symmetric()
    assert m.nonzero_pattern() == frozenset({(0, 0), (0, 1), (1, 0), (1, 1)})
    with pytest.raises(ValueError):
        PolyMatrix([[a, b, c]])
