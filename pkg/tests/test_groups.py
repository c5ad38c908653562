from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from wallres.groups import (GroupAxiomError, SizeCapError, abelian_group, cyclic_group,
                            dihedral_group, direct_product, elementary_abelian_group,
                            elementary_abelian_subgroups, group_from_cayley,
                            group_from_permutations, index_p_normal_subgroups,
                            is_isomorphic_small, quaternion_group, quotient, sylow_subgroup,
                            symmetric_group)

SMALL = {
    "Z2^2": lambda: elementary_abelian_group(2, 2),
    "Z4": lambda: cyclic_group(4),
    "D8": lambda: dihedral_group(4),
    "Q8": quaternion_group,
    "Z2xZ4": lambda: abelian_group(2, 4),
    "S3": lambda: symmetric_group(3),
    "S4": lambda: symmetric_group(4),
    "Z6": lambda: cyclic_group(6),
    "Z3^2": lambda: elementary_abelian_group(3, 2),
}


def is_closed(S):
    G = S.parent
    els = set(S.elements)
    return (G.identity in els and all(G.inv(a) in els for a in els)
            and all(G.mul(a, b) in els for a in els for b in els))


def test_cayley_examples():
    assert group_from_cayley([[0]]).order == 1
    V = group_from_cayley([[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]])
    assert V.order == 4 and all(V.inv(g) == g for g in range(4))
    # a Latin square with identity 0 that is not associative
    bad = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(GroupAxiomError, match="associativ"):
        group_from_cayley(bad)


def test_permutation_examples():
    assert group_from_permutations([[1, 2, 3, 0]]).order == 4
    D = group_from_permutations([[1, 2, 3, 0], [0, 3, 2, 1]])
    assert D.order == 8 and not D.is_abelian()
    assert group_from_permutations([]).order == 1
    with pytest.raises(SizeCapError):
        group_from_permutations([[1, 2, 3, 4, 5, 6, 0], [1, 0, 2, 3, 4, 5, 6]], cap=100)


def test_index_p_normal_subgroups():
    subs = index_p_normal_subgroups(elementary_abelian_group(2, 2), 2)
    assert len(subs) == 3 and all(S.order == 2 for S in subs)
    subs = index_p_normal_subgroups(cyclic_group(4), 2)
    assert len(subs) == 1 and subs[0].order == 2
    assert index_p_normal_subgroups(cyclic_group(4), 3) == []
    # D8 has three index-2 subgroups; Q8 likewise
    assert len(index_p_normal_subgroups(dihedral_group(4), 2)) == 3
    assert len(index_p_normal_subgroups(quaternion_group(), 2)) == 3


def test_elementary_abelian_examples():
    ranks = sorted(r for _, r in elementary_abelian_subgroups(elementary_abelian_group(2, 2), 2))
    assert ranks == [0, 1, 1, 1, 2]
    assert sorted(r for _, r in elementary_abelian_subgroups(cyclic_group(4), 2)) == [0, 1]
    assert max(r for _, r in elementary_abelian_subgroups(dihedral_group(4), 2)) == 2
    assert max(r for _, r in elementary_abelian_subgroups(quaternion_group(), 2)) == 1


def test_sylow_examples():
    assert sylow_subgroup(symmetric_group(4), 3).order == 3
    assert sylow_subgroup(symmetric_group(4), 2).order == 8
    assert sylow_subgroup(cyclic_group(9), 2).order == 1
    assert sylow_subgroup(symmetric_group(3), 2).order == 2


def test_quotient_examples():
    G = cyclic_group(4)
    Q, pi = quotient(G, G.full())
    assert Q.order == 1
    Q, pi = quotient(G, G.trivial())
    assert is_isomorphic_small(Q, G)
    Q, pi = quotient(G, G.subgroup([0, 2]))
    assert Q.order == 2
    S3 = symmetric_group(3)
    nonnormal = sylow_subgroup(S3, 2)
    with pytest.raises(ValueError):
        quotient(S3, nonnormal)


def test_isomorphism_examples():
    assert is_isomorphic_small(direct_product(cyclic_group(2), cyclic_group(2)),
                               elementary_abelian_group(2, 2))
    assert is_isomorphic_small(direct_product(cyclic_group(2), cyclic_group(3)), cyclic_group(6))
    assert not is_isomorphic_small(cyclic_group(4), elementary_abelian_group(2, 2))
    assert not is_isomorphic_small(dihedral_group(4), quaternion_group())


@pytest.mark.parametrize("name", sorted(SMALL))
def test_enumerations_are_subgroups_and_conjugation_closed(name):
    G = SMALL[name]()
    for p in (2, 3):
        found = elementary_abelian_subgroups(G, p)
        keys = {S.elements for S, _ in found}
        for S, r in found:
            assert is_closed(S) and G.order % S.order == 0 and S.order == p ** r
            for g in range(G.order):
                assert S.conjugate(g).elements in keys
        for S in index_p_normal_subgroups(G, p):
            assert is_closed(S) and S.is_normal() and S.index == p
        P = sylow_subgroup(G, p)
        assert is_closed(P)
        assert G.order % P.order == 0 and (G.order // P.order) % p != 0


@pytest.mark.parametrize("name", sorted(SMALL))
def test_quotient_preimages(name):
    G = SMALL[name]()
    for N in index_p_normal_subgroups(G, 2) + [G.trivial(), G.full()]:
        Q, pi = quotient(G, N)
        assert Q.order * N.order == G.order
        assert pi.preimage(Q.full()).elements == G.full().elements
        assert pi.preimage(Q.trivial()).elements == N.elements


@given(st.lists(st.integers(1, 5), min_size=1, max_size=3))
def test_abelian_orders_and_lagrange(orders):
    G = abelian_group(*orders)
    assert G.order == int(np.prod(orders)) and G.is_abelian()
    for g in range(G.order):
        assert G.order % int(G.element_orders[g]) == 0
