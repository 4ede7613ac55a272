from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from schreierkit.schreier import enum_key, is_prefix, powerset
from schreierkit.spaces import NORMS, SparseVec, SpreadCodec, biorth_tree, spread_code

GROUND6 = tuple(range(2, 8))

vectors = st.dictionaries(
    st.integers(1, 12),
    st.fractions(min_value=-5, max_value=5, max_denominator=7),
    max_size=6,
).map(SparseVec.from_dict)


def e(n):
    return SparseVec.unit(n)


def test_norm_examples():
    assert (e(2) - e(5)).norm("l1") == 2
    assert (e(2) - e(5)).norm("summing") == 1
    assert (e(2) - e(5)).norm("sup") == 1
    for kind in NORMS:
        assert SparseVec().norm(kind) == 0
    with pytest.raises(ValueError):
        e(1).norm("l2")


def test_canonical_storage():
    v = SparseVec(((3, F(1)), (2, F(2)), (3, F(-1))))
    assert v.items == ((2, F(2)),)
    assert v.support == (2,)
    assert v[7] == 0
    assert SparseVec.from_json(v.to_json()) == v
    assert v.to_json() == {"2": "2"}
    with pytest.raises(ValueError):
        SparseVec(((0, F(1)),))


def test_dot():
    assert (e(2) + e(3) * 2).dot(e(3) * 3) == 6


@given(vectors, vectors, st.fractions(min_value=-3, max_value=3, max_denominator=5))
def test_norm_axioms(u, v, c):
    for kind in NORMS:
        assert (u + v).norm(kind) <= u.norm(kind) + v.norm(kind)
        assert (u * c).norm(kind) == abs(c) * u.norm(kind)
        assert (u.norm(kind) == 0) == (not u)
    assert u.norm("summing") <= u.norm("l1")
    assert u.norm("sup") <= u.norm("l1")


def test_spread_code_conditions():
    codec = SpreadCodec(GROUND6)
    subsets = list(powerset(GROUND6))
    assert spread_code((), codec) == ()
    coded = {A: spread_code(A, codec) for A in subsets}
    for A in subsets:
        # a spread of A
        assert all(x <= y for x, y in zip(A, coded[A]))
        assert list(coded[A]) == sorted(set(coded[A]))
    for A, B in combinations(subsets, 2):
        for X, Y in ((A, B), (B, A)):
            if is_prefix(X, Y) and X != Y:
                assert is_prefix(coded[X], coded[Y]) and coded[X] != coded[Y]
            # tails past the common prefix are disjoint
            k = 0
            while k < min(len(X), len(Y)) and X[k] == Y[k]:
                k += 1
            assert not set(coded[X][k:]) & set(coded[Y][k:])


def test_codes_are_fresh_and_increasing():
    codec = SpreadCodec(GROUND6)
    order = sorted((A for A in powerset(GROUND6) if A), key=enum_key)
    codes = [codec.code(A) for A in order]
    assert codes == sorted(set(codes))
    assert codec.to_json()["ground"] == list(GROUND6)
    with pytest.raises(ValueError):
        codec.code((1,))
    with pytest.raises(ValueError):
        SpreadCodec(range(1, 30))


def test_biorthogonality_is_prefix_indicator():
    codec = SpreadCodec(GROUND6)
    subsets = list(powerset(GROUND6))
    trees = {A: biorth_tree(A, codec) for A in subsets}
    for A in subsets:
        if not A:
            continue
        zstar = trees[A][1]
        assert zstar.dot(trees[A][0]) == 1
        for B in subsets:
            assert zstar.dot(trees[B][0]) == (1 if is_prefix(A, B) else 0)


def test_empty_tree_vectors():
    z, zstar = biorth_tree((), SpreadCodec(GROUND6))
    assert not z and not zstar
