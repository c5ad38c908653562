from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from wallres import linalg as la
from wallres.bockstein import (BocksteinError, ExtClassRep, NonVanishingClass, YonedaSequence,
                               bockstein_datum, bockstein_sequence, ext_class, is_zero_class,
                               prop41_pipeline, rank_formula, serre_search, splice)
from wallres.gmodules import (ModuleHom, extend_from_generators, free_module, restrict,
                              trivial_module)
from wallres.groups import (abelian_group, cyclic_group, dihedral_group, elementary_abelian_group,
                            index_p_normal_subgroups, quaternion_group)
from wallres.resolutions import ComplexityFunction, resolve
from wallres.samples import random_module


def _seqs(G, M):
    return [bockstein_sequence(bockstein_datum(G, L), M) for L in index_p_normal_subgroups(G, M.p)]


def test_datum_invariants():
    G = dihedral_group(4)
    for L in index_p_normal_subgroups(G, 2):
        d = bockstein_datum(G, L)
        assert d.x not in L.elements
        assert d.zeta.kernel().elements == L.elements
        assert d.zeta.is_surjective() and d.zeta.target.order == 2
    with pytest.raises(BocksteinError):
        bockstein_datum(G, G.trivial())


@pytest.mark.parametrize("p", [2, 3, 5])
def test_cyclic_sequence_shape(p):
    G = cyclic_group(p)
    k = trivial_module(G, p)
    seq = bockstein_sequence(bockstein_datum(G, G.trivial()), k)
    assert seq.degree == 2 and [X.dim for X in seq.terms] == [p, p]
    assert seq.is_exact()
    # multiplication by x - 1 has rank p - 1; norm map and augmentation are rank one
    assert seq.maps[0].rank() == p - 1 and seq.iota.rank() == 1 and seq.pi.rank() == 1
    c = ext_class(seq, resolve(k, 3))
    assert is_zero_class(c) is None


def test_padding_dimensions():
    G = cyclic_group(4)
    L = index_p_normal_subgroups(G, 2)[0]
    M = trivial_module(G, 2)
    assert [X.dim for X in bockstein_sequence(bockstein_datum(G, L), M).terms] == [2, 2]
    N = trivial_module(L.as_group(), 2, 3)
    seq = bockstein_sequence(bockstein_datum(G, L), M, padding=N)
    assert [X.dim for X in seq.terms] == [8, 8] and seq.is_exact()
    with pytest.raises(BocksteinError):
        bockstein_sequence(bockstein_datum(G, L), M, padding=trivial_module(G, 2))


def test_invertible_characteristic_class_vanishes():
    G = cyclic_group(2)
    k = trivial_module(G, 3)
    seq = bockstein_sequence(bockstein_datum(G, G.trivial()), k)
    assert seq.is_exact()
    P = resolve(k, 3, "greedy")
    assert is_zero_class(ext_class(seq, P)) is not None


def test_splice_examples():
    G = elementary_abelian_group(2, 2)
    k = trivial_module(G, 2)
    a, b, c = _seqs(G, k)
    one = splice([a])
    assert one.degree == 2 and [m.matrix.tolist() for m in one.maps] == [m.matrix.tolist() for m in a.maps]
    ab = splice([a, b])
    assert ab.degree == 4 and len(ab.terms) == 4 and ab.is_exact()
    assert [d.L.elements for d, _ in ab.provenance] == [a.provenance[0][0].L.elements,
                                                         b.provenance[0][0].L.elements]
    other = _seqs(cyclic_group(4), trivial_module(cyclic_group(4), 2))[0]
    with pytest.raises(BocksteinError):
        splice([a, other])


def test_trivial_extension_is_zero_class():
    G = dihedral_group(4)
    M = trivial_module(G, 2, 2)
    I = ModuleHom(M, M, la.identity(2))
    Z = ModuleHom(M, M, la.zeros(2, 2))
    seq = YonedaSequence(M, [M, M], [Z], I, I)
    assert seq.is_exact()
    c = ext_class(seq, resolve(M, 3))
    assert c.degree == 2 and c.check_cocycle()
    assert is_zero_class(c) is not None


def test_zero_and_synthesized_coboundaries():
    G = abelian_group(2, 4)
    k = trivial_module(G, 2)
    P = resolve(k, 5)
    zero = ExtClassRep(3, ModuleHom(P.modules[3], k, la.zeros(1, P.modules[3].dim)), P)
    h = is_zero_class(zero)
    assert h is not None and not h.matrix.any()
    rng = np.random.default_rng(7)
    for n in (1, 2, 3, 4):
        h0 = extend_from_generators(P.modules[n - 1], k,
                                    rng.integers(0, 2, size=(1, P.modules[n - 1].rank)))
        c = ExtClassRep(n, ModuleHom(P.modules[n], k, la.matmul(h0.matrix, P.d(n).matrix, 2)), P)
        h = is_zero_class(c)
        assert h is not None
        assert np.array_equal(la.matmul(h.matrix, P.d(n).matrix, 2), c.cocycle.matrix)


def test_ext_class_needs_long_enough_resolution():
    G = elementary_abelian_group(2, 2)
    k = trivial_module(G, 2)
    seq = splice(_seqs(G, k)[:2])
    with pytest.raises(BocksteinError):
        ext_class(seq, resolve(k, 3))


@pytest.mark.parametrize("G", [elementary_abelian_group(2, 2), elementary_abelian_group(3, 2)],
                         ids=["Z2^2", "Z3^2"])
def test_elementary_abelian_products_never_vanish(G):
    p = 2 if G.order == 4 else 3
    k = trivial_module(G, p)
    seqs = _seqs(G, k)
    P = resolve(k, 7)
    for m in (1, 2, 3):
        for combo in itertools.product(range(len(seqs)), repeat=m):
            S = splice([seqs[i] for i in combo])
            assert is_zero_class(ext_class(S, P)) is None, combo


@pytest.mark.parametrize("G", [cyclic_group(4), quaternion_group(), dihedral_group(4),
                               abelian_group(2, 4)], ids=["Z4", "Q8", "D8", "Z2xZ4"])
@given(seed=st.integers(0, 10**6))
def test_bockstein_sequences_exact_and_lift_independent(G, seed):
    rng = np.random.default_rng(seed)
    M = random_module(G, 2, rng, 3)
    seqs = _seqs(G, M)
    i, j = rng.integers(len(seqs), size=2)
    S = splice([seqs[i], seqs[j]])
    assert S.is_exact()
    P = resolve(M, 5)
    c1, c2 = ext_class(S, P, seed=None), ext_class(S, P, seed=seed)
    diff = ExtClassRep(4, ModuleHom(P.modules[4], M,
                                    np.remainder(c1.cocycle.matrix - c2.cocycle.matrix, 2)), P)
    assert is_zero_class(diff) is not None


def test_serre_search_examples():
    Z4 = cyclic_group(4)
    w = serre_search(Z4, trivial_module(Z4, 2), 4)
    assert w is not None and w.m == 1 and [L.elements for L in w.subgroups] == [(0, 2)]
    assert serre_search(elementary_abelian_group(2, 2),
                        trivial_module(elementary_abelian_group(2, 2), 2), 3) is None
    Q = quaternion_group()
    w = serre_search(Q, trivial_module(Q, 2), 4)
    assert w is not None and w.m == 2
    assert w.to_json()["m"] == 2
    with pytest.raises(BocksteinError):
        serre_search(cyclic_group(6), trivial_module(cyclic_group(6), 2), 2)


def test_rank_formula_m1():
    assert [rank_formula([[3] * 10], n) for n in range(5)] == [6] * 5
    d1, d2 = list(range(1, 12)), list(range(2, 13))
    assert rank_formula([d1, d2], 0) == d1[3] + d1[2] + d2[1] + d2[0]


def test_prop41_on_z4():
    G = cyclic_group(4)
    k = trivial_module(G, 2)
    w = serre_search(G, k, 4)
    res = prop41_pipeline(G, k, w.subgroups, f=ComplexityFunction.polynomial(0), length=8)
    assert res.resolution.is_exact() and res.rank_formula_check
    assert res.resolution.ranks == res.expected_ranks == [2] * 9
    assert res.verdict.holds and res.verdict.d == 2
    assert res.resolution.module.dim == 1 + res.N.dim
    assert res.wall.certificate["d_squared_zero"]


def test_prop41_free_module_and_non_vanishing():
    G = cyclic_group(4)
    L = index_p_normal_subgroups(G, 2)[0]
    F = free_module(G, 2, 1)
    res = prop41_pipeline(G, F, [L], length=5)
    assert res.rank_formula_check and res.resolution.is_exact()
    V = elementary_abelian_group(2, 2)
    with pytest.raises(NonVanishingClass):
        prop41_pipeline(V, trivial_module(V, 2), [index_p_normal_subgroups(V, 2)[0]], length=3)


def test_prop41_with_columns_and_padding():
    Q = quaternion_group()
    k = trivial_module(Q, 2)
    w = serre_search(Q, k, 4)
    cols = [resolve(restrict(k, L), 8 + 3) for L in w.subgroups]
    res = prop41_pipeline(Q, k, w.subgroups, column_resolutions=cols, length=6)
    assert res.rank_formula_check and res.resolution.is_exact()
    assert res.resolution.ranks == [4] * 7
