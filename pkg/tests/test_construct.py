from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ringlab.construct import construct, normalize_spec, parse_shorthand, spec_name, spec_order
from ringlab.errors import OrderLimitExceeded, UnsupportedSpec
from ringlab.ring import find_unity, ring_predicates


def matmul(X, Y, q):
    k = len(X)
    return [[sum(X[i][t] * Y[t][j] for t in range(k)) % q for j in range(k)] for i in range(k)]


def test_row_ring_encoding(E2):
    # (a, b) -> 2a + b for [[a, b], [0, 0]]
    mats = {2 * a + b: [[a, b], [0, 0]] for a in range(2) for b in range(2)}
    for x, y in itertools.product(range(4), repeat=2):
        prod = matmul(mats[x], mats[y], 2)
        assert E2.mul[x][y] == 2 * prod[0][0] + prod[0][1]
        s = [[(mats[x][i][j] + mats[y][i][j]) % 2 for j in range(2)] for i in range(2)]
        assert E2.add[x][y] == 2 * s[0][0] + s[0][1]
    assert not ring_predicates(E2).commutative


def test_upper_triangular_encoding(T2):
    mats = {4 * a + 2 * b + c: [[a, b], [0, c]] for a in range(2) for b in range(2) for c in range(2)}
    for x, y in itertools.product(range(8), repeat=2):
        p = matmul(mats[x], mats[y], 2)
        assert T2.mul[x][y] == 4 * p[0][0] + 2 * p[0][1] + p[1][1]
    assert find_unity(T2) == 5


def test_zn_and_products():
    Z6 = construct({"zn": 6})
    assert ring_predicates(Z6).commutative and find_unity(Z6) == 1
    P = construct(parse_shorthand("prod:(z2,z3)"))
    for a, b, c, d in itertools.product(range(2), range(3), range(2), range(3)):
        x, y = 3 * a + b, 3 * c + d
        assert P.mul[x][y] == 3 * (a * c % 2) + (b * d % 3)
        assert P.add[x][y] == 3 * ((a + c) % 2) + (b + d) % 3


def test_full_matrix_ring_over_z2():
    M = construct(parse_shorthand("mat2:z2"))
    assert M.order == 16 and find_unity(M) == 0b1001


def test_strictly_upper_is_nilpotent():
    N = construct(parse_shorthand("sut3:z2"))
    assert N.order == 8
    assert all(N.mul[x][N.mul[y][z]] == 0 for x in N.elements for y in N.elements for z in N.elements)


def test_shorthand_forms_agree():
    assert parse_shorthand("zn:6") == parse_shorthand("z6") == {"zn": 6}
    assert parse_shorthand("row:z2") == {"row_ring": {"zn": 2}}
    assert parse_shorthand("prod:( ut2:z2 , z3 )") == {
        "product": [{"upper_triangular": {"base": {"zn": 2}, "k": 2}}, {"zn": 3}]
    }


@pytest.mark.parametrize("bad", ["", "q7", "prod:(z2", "prod:(z2,z3", "z2junk", "mat:z2"])
def test_bad_shorthand(bad):
    with pytest.raises(UnsupportedSpec):
        parse_shorthand(bad)


@pytest.mark.parametrize("bad", [{"zn": 0}, {"zn": True}, {"product": [{"zn": 2}]}, {"matrix": {"base": {"zn": 2}}}, {"nope": 1}, 7])
def test_bad_spec_objects(bad):
    with pytest.raises(UnsupportedSpec):
        normalize_spec(bad)


def test_order_cap():
    with pytest.raises(OrderLimitExceeded):
        construct(parse_shorthand("mat2:z3"), max_order=64)


base = st.sampled_from([{"zn": n} for n in (1, 2, 3, 4)])
specs = st.recursive(
    base,
    lambda inner: st.one_of(
        st.builds(lambda a, b: {"product": [a, b]}, inner, inner),
        st.builds(lambda a: {"row_ring": a}, inner),
        st.builds(lambda a, k: {"upper_triangular": {"base": a, "k": k}}, inner, st.integers(1, 2)),
        st.builds(lambda a, k: {"strictly_upper": {"base": a, "k": k}}, inner, st.integers(1, 3)),
    ),
    max_leaves=3,
)


@settings(max_examples=80, deadline=None)
@given(specs)
def test_spec_name_round_trips(spec):
    assert parse_shorthand(spec_name(spec)) == normalize_spec(spec)


@settings(max_examples=40, deadline=None)
@given(specs)
def test_constructed_order_matches_prediction(spec):
    n = spec_order(spec)
    if n > 256:
        with pytest.raises(OrderLimitExceeded):
            construct(spec, max_order=256)
        return
    R = construct(spec, max_order=256)  # axioms re-verified inside
    assert R.order == n and R.name == spec_name(spec)
