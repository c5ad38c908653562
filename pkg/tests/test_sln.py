from __future__ import annotations

import pytest

from wallres.groups import SizeCapError
from wallres.sln import crt_check, diagonal_sign_subgroup, sl_group, verify_rank_bound


@pytest.mark.parametrize("m,order", [(2, 6), (3, 24), (4, 48), (5, 120), (6, 144)])
def test_sl2_orders(m, order):
    # |SL(2, Z_m)| = m^3 prod_{q | m} (1 - q^-2)
    assert sl_group(2, m).group.order == order


def test_sl1_trivial_and_cap():
    assert sl_group(1, 7).group.order == 1
    with pytest.raises(SizeCapError):
        sl_group(3, 3)


def test_matrix_labels_multiply():
    S = sl_group(2, 3)
    G = S.group
    for a in range(0, G.order, 5):
        for b in range(0, G.order, 7):
            assert ((S.matrix(a) @ S.matrix(b)) % 3).tolist() == S.matrix(G.mul(a, b)).tolist()


def test_crt():
    r = crt_check(2, 2, 3)
    assert r["isomorphic"] and r["order_pq"] == 144 == r["order_p"] * r["order_q"]
    assert crt_check(1, 2, 3)["isomorphic"]
    with pytest.raises(ValueError):
        crt_check(2, 3, 3)


@pytest.mark.parametrize("p", [3, 5])
def test_rank_bound(p):
    r = verify_rank_bound(2, p, 2)
    assert r["max_rank"] == 1 and r["holds"]
    with pytest.raises(ValueError):
        verify_rank_bound(2, p, p)


def test_rank_bound_odd_r():
    assert verify_rank_bound(2, 5, 3)["max_rank"] == 1


def test_diagonal_sign_subgroup():
    S, E, r = diagonal_sign_subgroup(2, 3)
    assert r == 1 and sorted(S.labels[e] for e in E.elements) == [(1, 0, 0, 1), (2, 0, 0, 2)]
    S, E, r = diagonal_sign_subgroup(1, 3)
    assert r == 0 and E.order == 1
    with pytest.raises(ValueError):
        diagonal_sign_subgroup(2, 4)
