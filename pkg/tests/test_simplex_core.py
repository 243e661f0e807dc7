import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from simplexcoh.simplex_core import (
    FACTOR_POSITIONS,
    SetMap,
    apply_embedded,
    catalog_matrix,
    hietarinta_catalog,
    lhs_trajectory,
    linear_map_from_matrix,
    pack4,
    pack_state,
    parse_matrix_text,
    resolve_matrix,
    rhs_trajectory,
    unpack4,
    unpack_state,
    verify_set_fse,
)

IDENTITY4 = [[int(i == j) for j in range(4)] for i in range(4)]
SWAP12 = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
SHEAR = [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]

states = st.integers(0, 1023)
quads = st.integers(0, 15)


def _oracle_side(m, bits, order):
    """List-based evaluation of one side of the equation, independent of bit packing."""
    s = list(bits)
    args = []
    for label in order:
        idx = [p - 1 for p in FACTOR_POSITIONS[label]]
        inp = [s[i] for i in idx]
        args.append(tuple(inp))
        out = [sum(m[r][c] * inp[c] for c in range(4)) % 2 for r in range(4)]
        for i, v in zip(idx, out):
            s[i] = v
    return s, args


def test_identity_matrix_gives_identity_map():
    assert linear_map_from_matrix(IDENTITY4) == SetMap.identity()


def test_a1_reads_rows():
    r = linear_map_from_matrix(catalog_matrix("A1"))
    assert r.apply((0, 1, 0, 0)) == (1, 0, 0, 0)
    # x' = y + t, y' = x + z, z' = t, t' = z
    for x, y, z, t in itertools.product((0, 1), repeat=4):
        assert r.apply((x, y, z, t)) == ((y + t) % 2, (x + z) % 2, t, z)


def test_a1_all_ones():
    assert linear_map_from_matrix(catalog_matrix("A1")).apply((1, 1, 1, 1)) == (0, 0, 1, 1)


def test_rejects_non_binary_matrix():
    with pytest.raises(ValueError):
        linear_map_from_matrix([[2, 0, 0, 0]] + IDENTITY4[1:])
    with pytest.raises(ValueError):
        linear_map_from_matrix(IDENTITY4[:3])


@given(quads, quads)
def test_linear_maps_are_additive(u, v):
    for _, m in hietarinta_catalog():
        r = linear_map_from_matrix(m)
        assert r(u ^ v) == r(u) ^ r(v)


@given(states)
def test_pack_roundtrip(s):
    assert pack_state(unpack_state(s)) == s


def test_apply_embedded_identity():
    for s in (0, 5, 1023, 512):
        assert apply_embedded(SetMap.identity(), (2, 5, 8, 9), s) == s


def test_apply_embedded_swap():
    swap = linear_map_from_matrix(SWAP12)
    s = pack_state((0, 1, 0, 0, 0, 0, 0, 0, 0, 0))
    assert unpack_state(apply_embedded(swap, (1, 2, 3, 4), s)) == (1, 0, 0, 0, 0, 0, 0, 0, 0, 0)


def test_apply_embedded_a1_at_4790():
    r = linear_map_from_matrix(catalog_matrix("A1"))
    bits = [1, 0, 1, 0, 1, 1, 1, 1, 0, 0]  # slots 4, 7, 9, 10 hold (0, 1, 0, 0)
    out = list(unpack_state(apply_embedded(r, (4, 7, 9, 10), pack_state(bits))))
    expected = list(bits)
    expected[3], expected[6], expected[8], expected[9] = 1, 0, 0, 0
    assert out == expected


@given(states)
def test_disjoint_embeddings_commute(s):
    r = linear_map_from_matrix(catalog_matrix("A2"))
    u = linear_map_from_matrix(catalog_matrix("A3T"))
    p, q = (1, 2, 3, 4), (5, 6, 8, 9)
    assert apply_embedded(r, p, apply_embedded(u, q, s)) == apply_embedded(u, q, apply_embedded(r, p, s))


@given(states)
def test_identity_trajectories(s):
    ident = SetMap.identity()
    end, args = lhs_trajectory(ident, s)
    assert end == s
    bits = unpack_state(s)
    assert args == [pack4([bits[p - 1] for p in FACTOR_POSITIONS[lab]]) for lab in "VUTSR"]
    end, args = rhs_trajectory(ident, s)
    assert end == s
    assert args == [pack4([bits[p - 1] for p in FACTOR_POSITIONS[lab]]) for lab in "RSTUV"]


def test_zero_state_is_fixed_by_linear_maps():
    for _, m in hietarinta_catalog():
        r = linear_map_from_matrix(m)
        assert lhs_trajectory(r, 0) == (0, [0] * 5)
        assert rhs_trajectory(r, 0) == (0, [0] * 5)


def test_a1_trajectories_from_e1():
    r = linear_map_from_matrix(catalog_matrix("A1"))
    e1 = pack_state((1, 0, 0, 0, 0, 0, 0, 0, 0, 0))
    # Frozen from the list-based oracle above.
    end, args = lhs_trajectory(r, e1)
    assert unpack_state(end) == (0, 0, 0, 0, 1, 0, 0, 0, 0, 0)
    assert [unpack4(a) for a in args] == [(0, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0), (1, 0, 0, 0), (0, 0, 0, 0)]
    end, args = rhs_trajectory(r, e1)
    assert unpack_state(end) == (0, 0, 0, 0, 1, 0, 0, 0, 0, 0)
    assert [unpack4(a) for a in args] == [(1, 0, 0, 0), (0, 0, 0, 0), (1, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0)]


@given(states)
def test_trajectories_match_oracle(s):
    m = catalog_matrix("A3")
    r = linear_map_from_matrix(m)
    bits = unpack_state(s)
    for fn, order in ((lhs_trajectory, "VUTSR"), (rhs_trajectory, "RSTUV")):
        end, args = fn(r, s)
        o_end, o_args = _oracle_side(m, bits, order)
        assert unpack_state(end) == tuple(o_end)
        assert [unpack4(a) for a in args] == o_args


def test_each_position_used_twice():
    counts = {p: 0 for p in range(1, 11)}
    for positions in FACTOR_POSITIONS.values():
        for p in positions:
            counts[p] += 1
    assert set(counts.values()) == {2}


def test_identity_satisfies_fse():
    assert verify_set_fse(SetMap.identity()).holds


def test_catalog_satisfies_fse(catalog_entry):
    name, r = catalog_entry
    assert verify_set_fse(r).holds, name


def test_swap12_fixture():
    # Exhaustive oracle run: no mismatching state.
    assert verify_set_fse(linear_map_from_matrix(SWAP12)).holds


def test_shear_counterexample():
    # Oracle: 512 mismatching states, the smallest is slot 5 set (integer 32).
    verdict = verify_set_fse(linear_map_from_matrix(SHEAR))
    assert not verdict.holds
    assert verdict.counterexample == 32
    mism = sum(
        _oracle_side(SHEAR, unpack_state(s), "VUTSR")[0] != _oracle_side(SHEAR, unpack_state(s), "RSTUV")[0]
        for s in range(1024)
    )
    assert mism == 512


def test_catalog_contents():
    cat = dict(hietarinta_catalog())
    assert len(cat) == 8
    assert cat["A1"][0] == (0, 1, 0, 1)
    for name in ("A1", "A2", "A3", "A4"):
        t = cat[name + "T"]
        assert all(t[i][j] == cat[name][j][i] for i in range(4) for j in range(4))


def test_catalog_lookup_case_insensitive():
    assert catalog_matrix("a3t") == catalog_matrix("A3T")
    with pytest.raises(KeyError):
        catalog_matrix("A5")


def test_matrix_file_format(tmp_path):
    path = tmp_path / "a1.txt"
    path.write_text("0101\n1010\n0001\n0010\n")
    assert resolve_matrix(str(path)) == catalog_matrix("A1")
    with pytest.raises(ValueError):
        parse_matrix_text("0101\n1010\n0001\n")
    with pytest.raises(ValueError):
        parse_matrix_text("0102\n1010\n0001\n0010\n")
