from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from wallres import linalg as la
from wallres.bockstein import bockstein_datum, bockstein_sequence
from wallres.gmodules import (ModuleHom, cyclic_submodule, direct_sum, free_module,
                              quotient_module, regular_module, trivial_module)
from wallres.groups import (abelian_group, cyclic_group, dihedral_group, elementary_abelian_group,
                            index_p_normal_subgroups, quaternion_group, symmetric_group)
from wallres.resolutions import ChainComplex, homology_dims, resolve
from wallres.samples import random_complex, random_short_exact
from wallres.wall import WallError, build_wall, check_short_exact, two_of_three

# (group, p) pairs small enough for quick randomized totalization
POOL = [
    (lambda: cyclic_group(2), 2),
    (lambda: cyclic_group(4), 2),
    (lambda: elementary_abelian_group(2, 2), 2),
    (lambda: dihedral_group(4), 2),
    (lambda: cyclic_group(3), 3),
    (lambda: symmetric_group(3), 2),
    (lambda: cyclic_group(6), 3),
]


def _strategy(G, p):
    return "minimal" if G.is_p_group(p) else "greedy"


def _wall(C, NT):
    G, p = C.modules[0].group, C.modules[0].p
    cols = [resolve(M, max(NT - i, 0), _strategy(G, p)) for i, M in enumerate(C.modules)]
    return build_wall(C, cols, length=NT)


def test_zero_differentials_give_shifted_columns():
    G = elementary_abelian_group(2, 2)
    mods = [trivial_module(G, 2), trivial_module(G, 2, 2), trivial_module(G, 2)]
    zeros = [ModuleHom(mods[i], mods[i - 1], la.zeros(mods[i - 1].dim, mods[i].dim))
             for i in (1, 2)]
    C = ChainComplex(mods, zeros)
    W = _wall(C, 4)
    cert = W.certificate
    assert cert["homology_match"] and cert["pi_quasi_isomorphism"]
    assert cert["homology_total"] == [1, 2, 1, 0]
    # no correction maps beyond the column differentials
    assert all(not A.any() for (i, j, k), A in W.maps.items() if k >= 1)
    col = [n + 1 for n in range(5)]
    assert W.ranks == [col[n] + 2 * (col[n - 1] if n >= 1 else 0) + (col[n - 2] if n >= 2 else 0)
                       for n in range(5)]


def test_single_module_is_its_resolution():
    G = dihedral_group(4)
    M = trivial_module(G, 2)
    R = resolve(M, 5)
    W = build_wall(ChainComplex([M], []), [R])
    assert W.ranks == R.ranks
    assert np.array_equal(W.projection[0].matrix, R.augmentation.matrix)
    for n in range(1, 6):
        assert np.array_equal(W.total.d(n).matrix, R.d(n).matrix)


def test_bockstein_interior_wall():
    G = cyclic_group(4)
    L = index_p_normal_subgroups(G, 2)[0]
    seq = bockstein_sequence(bockstein_datum(G, L), trivial_module(G, 2))
    W = _wall(seq.interior(), 6)
    cert = W.certificate
    assert cert["d_squared_zero"] and cert["pi_chain_map"] and cert["pi_quasi_isomorphism"]
    assert cert["homology_total"][:3] == [1, 1, 0]


def test_column_mismatch_rejected():
    G = cyclic_group(2)
    k = trivial_module(G, 2)
    with pytest.raises(WallError):
        build_wall(ChainComplex([k], []), [resolve(regular_module(G, 2), 3)])


@pytest.mark.parametrize("idx", range(len(POOL)))
@given(seed=st.integers(0, 10**6), base=st.integers(1, 3))
def test_random_wall_invariants(idx, seed, base):
    G, p = POOL[idx][0](), POOL[idx][1]
    rng = np.random.default_rng(seed)
    C = random_complex(G, p, base, rng, 5)
    NT = base + 2
    W = _wall(C, NT)
    cert = W.certificate
    assert cert["d_squared_zero"] and cert["pi_chain_map"]
    assert cert["homology_match"] and cert["pi_quasi_isomorphism"]
    for n, blocks in enumerate(W.blocks):
        assert W.ranks[n] == sum(W.columns[i].ranks[j] for i, j in blocks)


def test_check_short_exact_rejects():
    G = cyclic_group(2)
    k = trivial_module(G, 2)
    kG = regular_module(G, 2)
    f = ModuleHom(k, kG, np.array([[1], [1]]))
    g = ModuleHom(kG, k, np.array([[1, 0]]), check=False)
    with pytest.raises(WallError):
        check_short_exact(f, g)
    check_short_exact(f, ModuleHom(kG, k, np.array([[1, 1]])))


def test_two_of_three_examples():
    G = cyclic_group(2)
    k = trivial_module(G, 2)
    kG = regular_module(G, 2)
    f = ModuleHom(k, kG, np.array([[1], [1]]))
    g = ModuleHom(kG, k, np.array([[1, 1]]))
    R1, R2 = resolve(k, 6), resolve(kG, 6)
    R3 = two_of_three(f, g, {1: R1, 2: R2})
    assert R3.is_exact() and R3.ranks == [1] * 7

    # split sequence: horseshoe adds ranks
    D = dihedral_group(4)
    A, B = trivial_module(D, 2), regular_module(D, 2)
    S = direct_sum(A, B)
    inc = ModuleHom(A, S, np.vstack([la.identity(1), la.zeros(8, 1)]))
    prj = ModuleHom(S, B, np.hstack([la.zeros(8, 1), la.identity(8)]))
    RA, RB = resolve(A, 5), resolve(B, 5)
    H = two_of_three(inc, prj, {1: RA, 3: RB})
    assert H.ranks == [a + b for a, b in zip(RA.ranks, RB.ranks)] and H.is_exact()

    # M2 free, M3 arbitrary: M1 gets the shifted M3 ranks
    M2 = free_module(G, 2, 1)
    M1, f = cyclic_submodule(M2, np.array([1, 1]))
    M3, g = quotient_module(M2, f.matrix)
    R3, R2 = resolve(M3, 6), resolve(M2, 6)
    R1 = two_of_three(f, g, {2: R2, 3: R3})
    assert R1.is_exact()
    assert R1.ranks[1:] == R3.ranks[2:len(R1.ranks) + 1]


def test_two_of_three_needs_two_known():
    G = cyclic_group(2)
    k = trivial_module(G, 2)
    kG = regular_module(G, 2)
    f = ModuleHom(k, kG, np.array([[1], [1]]))
    g = ModuleHom(kG, k, np.array([[1, 1]]))
    with pytest.raises(WallError):
        two_of_three(f, g, {1: resolve(k, 3)})


@pytest.mark.parametrize("idx", range(len(POOL)))
@given(seed=st.integers(0, 10**6))
def test_two_of_three_rank_bookkeeping(idx, seed):
    G, p = POOL[idx][0](), POOL[idx][1]
    strat = _strategy(G, p)
    N = 4
    rng = np.random.default_rng(seed)
    f, g = random_short_exact(G, p, rng, 4)
    R = {i: resolve(M, N, strat) for i, M in ((1, f.source), (2, f.target), (3, g.target))}
    h = two_of_three(f, g, {1: R[1], 3: R[3]})
    assert h.is_exact() and h.ranks == [a + b for a, b in zip(R[1].ranks, R[3].ranks)]
    t = two_of_three(f, g, {1: R[1], 2: R[2]})
    assert t.is_exact()
    assert t.ranks == [R[2].ranks[n] + (R[1].ranks[n - 1] if n else 0) for n in range(len(t.ranks))]
    o = two_of_three(f, g, {2: R[2], 3: R[3]})
    assert o.is_exact()
    assert o.ranks[0] == R[3].ranks[1] + R[2].ranks[0] - R[3].ranks[0]
    assert o.ranks[1:] == [R[3].ranks[n + 1] + R[2].ranks[n] for n in range(1, len(o.ranks))]
