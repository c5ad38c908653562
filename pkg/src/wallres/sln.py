"""Brute-force special linear groups over ``Z_m`` for tiny ``n`` and ``m``:
enumeration, the Chinese-remainder splitting, elementary abelian rank
scans and the even-sign diagonal subgroup."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .groups import (DEFAULT_ORDER_CAP, Group, GroupHom, SizeCapError, Subgroup, direct_product,
                     elementary_abelian_subgroups)
from .linalg import is_prime

__all__ = ["SLGroupDatum", "sl_group", "crt_check", "verify_rank_bound", "diagonal_sign_subgroup"]


def _det(A: np.ndarray) -> int:
    # exact integer determinant by cofactor expansion (n <= 3 in practice)
    n = A.shape[0]
    if n == 0:
        return 1
    if n == 1:
        return int(A[0, 0])
    if n == 2:
        return int(A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0])
    total = 0
    for j in range(n):
        if A[0, j]:
            minor = np.delete(np.delete(A, 0, axis=0), j, axis=1)
            total += (-1) ** j * int(A[0, j]) * _det(minor)
    return total


@dataclass
class SLGroupDatum:
    n: int
    m: int
    group: Group
    labels: list            # element index -> flattened matrix tuple
    index: dict             # flattened matrix tuple -> element index

    def matrix(self, g: int) -> np.ndarray:
        return np.array(self.labels[g], dtype=np.int64).reshape(self.n, self.n)


def sl_group(n: int, m: int, cap: int = DEFAULT_ORDER_CAP) -> SLGroupDatum:
    """``SL(n, Z_m)`` by enumerating all ``n x n`` matrices mod ``m``."""
    if n < 1 or m < 2:
        raise ValueError("need n >= 1 and m >= 2")
    mats = []
    for entries in itertools.product(range(m), repeat=n * n):
        A = np.array(entries, dtype=np.int64).reshape(n, n)
        if _det(A) % m == 1 % m:
            mats.append(entries)
            if len(mats) > cap:
                raise SizeCapError(f"|SL({n}, Z_{m})| exceeds the cap {cap}")
    ident = tuple(int(i == j) for i in range(n) for j in range(n))
    mats.remove(ident)
    mats.insert(0, ident)
    index = {A: i for i, A in enumerate(mats)}
    arr = np.array(mats, dtype=np.int64).reshape(len(mats), n, n)
    table = np.empty((len(mats), len(mats)), dtype=np.int64)
    for a in range(len(mats)):
        prods = np.remainder(np.einsum("ij,bjk->bik", arr[a], arr), m)
        for b in range(len(mats)):
            table[a, b] = index[tuple(prods[b].ravel().tolist())]
    G = Group(table, labels=mats)
    return SLGroupDatum(n, m, G, mats, index)


def crt_check(n: int, p: int, q: int, cap: int = DEFAULT_ORDER_CAP) -> dict:
    """Reduction mod ``p`` and mod ``q`` as a map ``SL(n, Z_pq) -> SL(n, Z_p) x SL(n, Z_q)``."""
    if p == q:
        raise ValueError("p and q must differ")
    if not (is_prime(p) and is_prime(q)):
        raise ValueError("p and q must be prime")
    big = sl_group(n, p * q, cap)
    Sp, Sq = sl_group(n, p, cap), sl_group(n, q, cap)
    prod = direct_product(Sp.group, Sq.group, cap)
    images = []
    for A in big.labels:
        a = Sp.index[tuple(x % p for x in A)]
        b = Sq.index[tuple(x % q for x in A)]
        images.append(a * Sq.group.order + b)
    phi = GroupHom(big.group, prod, images)      # checks multiplicativity
    return {"n": n, "p": p, "q": q, "order_pq": big.group.order, "order_p": Sp.group.order,
            "order_q": Sq.group.order, "homomorphism": True,
            "bijective": phi.is_isomorphism(), "isomorphic": phi.is_isomorphism()}


def verify_rank_bound(n: int, p: int, r: int, cap: int = DEFAULT_ORDER_CAP) -> dict:
    """Largest rank of an elementary abelian ``r``-subgroup of ``SL(n, Z_p)``."""
    if not (is_prime(p) and is_prime(r)):
        raise ValueError("p and r must be prime")
    if r == p:
        raise ValueError("r must differ from p")
    S = sl_group(n, p, cap)
    ranks = [k for _, k in elementary_abelian_subgroups(S.group, r)]
    max_rank = max(ranks, default=0)
    return {"n": n, "p": p, "r": r, "order": S.group.order, "max_rank": max_rank,
            "bound": n - 1, "holds": max_rank <= n - 1}


def diagonal_sign_subgroup(n: int, m: int, cap: int = DEFAULT_ORDER_CAP
                           ) -> tuple[SLGroupDatum, Subgroup, int]:
    """Diagonal matrices with entries ``+-1`` and an even number of ``-1``s.

    Returns the ambient datum, the subgroup and its rank (``n - 1``).
    """
    if m % 2 == 0 or m < 3:
        raise ValueError("m must be odd and at least 3 so that 1 != -1 mod m")
    S = sl_group(n, m, cap)
    els = []
    for signs in itertools.product((0, 1), repeat=n):
        if sum(signs) % 2:
            continue
        D = np.zeros((n, n), dtype=np.int64)
        for i, e in enumerate(signs):
            D[i, i] = (-1) ** e % m
        els.append(S.index[tuple(D.ravel().tolist())])
    E = S.group.subgroup(els)
    G = S.group
    order = E.order
    rank = order.bit_length() - 1
    elementary = (order == 2 ** rank and all(G.mul(a, a) == G.identity for a in E.elements)
                  and all(G.mul(a, b) == G.mul(b, a) for a in E.elements for b in E.elements))
    if not elementary or rank != n - 1:
        raise AssertionError("diagonal sign subgroup is not elementary abelian of rank n-1")
    return S, E, rank
