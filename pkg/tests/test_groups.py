import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from orbitframe.errors import GroupMismatch, NotAGroup
from orbitframe.groups import (build_cyclic, build_dihedral, build_direct_product, from_cayley_table, inverse,
                               multiply)


def assert_group_axioms(G):
    c = G.cayley
    n = G.order
    for row in c:
        assert sorted(row) == list(range(n))
    for col in c.T:
        assert sorted(col) == list(range(n))
    for i in range(n):
        for j in range(n):
            assert np.all(c[c[i, j], :] == c[i, c[j, :]])
    e = G.identity
    assert np.all(c[e] == np.arange(n)) and np.all(c[:, e] == np.arange(n))
    for i in range(n):
        assert c[i, G.inverses[i]] == e == c[G.inverses[i], i]


def test_z2_from_table():
    G = from_cayley_table([[0, 1], [1, 0]])
    assert G.identity == 0
    assert list(G.inverses) == [0, 1]


def test_z3_from_table_matches_builder():
    assert from_cayley_table([[0, 1, 2], [1, 2, 0], [2, 0, 1]]) == build_cyclic(3)


@pytest.mark.parametrize("table, reason", [
    ([[0, 1], [1, 1]], "Latin"),
    ([[0, 1, 2], [1, 0, 2], [2, 2, 0]], "Latin"),
    ([[0, 1], [2, 0]], "range"),
    ([[0, 1, 2]], "square"),
])
def test_malformed_tables(table, reason):
    with pytest.raises(NotAGroup):
        from_cayley_table(table)


def test_non_associative_latin_square():
    # a loop of order 5 that is not a group
    t = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(NotAGroup, match="associativ"):
        from_cayley_table(t)


def test_cyclic_small_cases():
    assert build_cyclic(1).order == 1
    assert build_cyclic(2) == from_cayley_table([[0, 1], [1, 0]])
    G = build_cyclic(12)
    assert G.element_order(1) == 12


def test_dihedral_relations():
    G = build_dihedral(3)
    e, a, a2, b, ab, a2b = range(6)
    assert G.labels == ("e", "a", "a2", "b", "ab", "a2b")
    assert G.mul(b, a) == a2b
    assert G.mul(b, b) == e
    assert G.mul(a, b) == ab
    assert G.power(a, 3) == e
    assert G.inv(a) == a2
    assert build_dihedral(4).order == 8 and build_dihedral(4).element_order(1) == 4


def test_direct_products():
    V = build_direct_product(build_cyclic(2), build_cyclic(2))
    assert [V.element_order(x) for x in range(1, 4)] == [2, 2, 2]
    P = build_direct_product(build_cyclic(2), build_cyclic(3))
    assert P.order == 6 and P.is_abelian() and not build_dihedral(3).is_abelian()
    G = build_dihedral(3)
    T = build_direct_product(build_cyclic(1), G)
    assert np.array_equal(T.cayley, G.cayley)


def test_element_handles():
    G = build_cyclic(3)
    x, y = G.element(1), G.element(2)
    assert int(multiply(x, y)) == 0
    D = build_dihedral(3)
    assert int(inverse(D.element(1))) == 2
    assert int(inverse(D.element(D.identity))) == D.identity
    with pytest.raises(GroupMismatch):
        multiply(x, D.element(1))


@pytest.mark.parametrize("G", [build_cyclic(7), build_dihedral(5), build_direct_product(build_dihedral(3), build_cyclic(4))],
                         ids=["Z7", "D5", "D3xZ4"])
def test_constructed_groups_satisfy_axioms(G):
    assert_group_axioms(G)
    for x in range(G.order):
        assert G.inv(G.inv(x)) == x
        assert G.mul(x, G.inv(x)) == G.identity


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 64))
def test_cyclic_abelian(n):
    G = build_cyclic(n)
    assert G.is_abelian()
    assert np.array_equal(G.cayley, (np.arange(n)[:, None] + np.arange(n)[None, :]) % n)


@settings(max_examples=10, deadline=None)
@given(st.integers(3, 12))
def test_dihedral_non_abelian(m):
    G = build_dihedral(m)
    assert not G.is_abelian()
    assert_group_axioms(G)
    a, b = 1, m
    assert G.mul(b, a) == G.mul(G.power(a, m - 1), b)
