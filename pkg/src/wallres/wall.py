"""Wall's totalization of column resolutions over a finite base complex,
and the two-out-of-three construction for short exact sequences.

Given ``C_L -> ... -> C_0`` and resolutions ``F^{i*} -> C_i``, the total
complex has ``T_n = (+)_{i+j=n} F^{ij}`` and differential ``sum_k d_k`` with
``d_k: F^{ij} -> F^{i-k, j+k-1}``.  ``d_0`` is the column differential,
``d_1 = (-1)^j g^{ij}`` for a lift ``g`` of ``C_i -> C_{i-1}``, and each
``d_k`` (``k >= 2``) solves ``d_0 d_k + d_k d_0 = -sum_{a+b=k} d_a d_b``.
The signs of the corrections come out of the solver; ``d^2 = 0`` is
checked afterwards rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import linalg as la
from .gmodules import (FreeModule, GModule, ModuleHom, extend_from_generators, free_basis,
                       submodule)
from .resolutions import (ChainComplex, Resolution, ResolutionError, homology_dims,
                          homotopy_to_zero, lift_chain_map)

__all__ = [
    "WallComplex",
    "WallError",
    "build_wall",
    "two_of_three",
    "horseshoe",
    "check_short_exact",
]


class WallError(ValueError):
    pass


@dataclass
class WallComplex:
    """The total complex ``T`` with its level maps and projection to the base."""

    base: ChainComplex
    columns: list
    total: ChainComplex
    maps: dict
    blocks: list
    projection: list
    certificate: dict = field(default_factory=dict)

    @property
    def length(self) -> int:
        return self.total.length

    @property
    def ranks(self) -> list[int]:
        return [F.rank for F in self.total.modules]

    def block_slice(self, n: int, i: int) -> slice:
        """Coordinates of ``F^{i, n-i}`` inside ``T_n``."""
        start = 0
        for (bi, bj) in self.blocks[n]:
            F = self.columns[bi].modules[bj]
            if bi == i:
                return slice(start, start + F.dim)
            start += F.dim
        raise KeyError((n, i))

    def to_json(self, include_matrices: bool = True) -> dict:
        levels = []
        for (i, j, k), A in sorted(self.maps.items()):
            entry = {"i": i, "j": j, "k": k, "shape": list(A.shape)}
            if include_matrices:
                entry["matrix"] = A.tolist()
            levels.append(entry)
        return {"ranks": self.ranks, "blocks": [[list(b) for b in bl] for bl in self.blocks],
                "levels": levels, "certificate": self.certificate}


def _same_module(A: GModule, B: GModule) -> bool:
    if A is B:
        return True
    if A.group != B.group or A.p != B.p or A.dim != B.dim:
        return False
    return all(np.array_equal(A.act(s), B.act(s)) for s in A.group.generators)


def _check_columns(C: ChainComplex, columns: Sequence[Resolution]):
    if len(columns) != len(C.modules):
        raise WallError(f"need {len(C.modules)} column resolutions, got {len(columns)}")
    for i, (M, R) in enumerate(zip(C.modules, columns)):
        if not _same_module(M, R.module):
            raise WallError(f"column {i} does not resolve base degree {i}")


def build_wall(C: ChainComplex, columns: Sequence[Resolution], length: Optional[int] = None,
               certify: bool = True) -> WallComplex:
    """Totalize ``columns`` over ``C`` up to total degree ``length``.

    ``length`` defaults to the largest degree every column supports
    (``min_i(len F^{i*} + i)``).  Homology of ``T`` is compared with that of
    ``C`` in degrees below ``length``; the top degree of a truncated total
    complex carries spurious cycles.
    """
    _check_columns(C, columns)
    L = C.length
    p = columns[0].p
    avail = min(R.length + i for i, R in enumerate(columns))
    NT = avail if length is None else length
    if NT > avail:
        raise WallError(f"columns support total degree {avail}, requested {NT}")

    maps: dict[tuple[int, int, int], np.ndarray] = {}
    for i, R in enumerate(columns):
        for j in range(1, NT - i + 1):
            maps[(i, j, 0)] = R.d(j).matrix
    for i in range(1, min(L, NT) + 1):
        g = lift_chain_map(C.d(i), columns[i], columns[i - 1], length=NT - i)
        for j, gj in enumerate(g):
            maps[(i, j, 1)] = gj.matrix if j % 2 == 0 else np.remainder(-gj.matrix, p)

    for k in range(2, min(L, NT) + 1):
        for i in range(k, min(L, NT) + 1):
            src, tgt = columns[i], columns[i - k]
            phi = []
            for j in range(0, NT - i + 1):
                E = la.zeros(tgt.modules[j + k - 2].dim, src.modules[j].dim)
                for b in range(1, k):
                    E = E + la.matmul(maps[(i - b, j + b - 1, k - b)], maps[(i, j, b)], p)
                phi.append(ModuleHom(src.modules[j], tgt.modules[j + k - 2],
                                     np.remainder(-E, p), check=False))
            try:
                hs = homotopy_to_zero(phi, src, tgt, shift=k - 2)
            except ResolutionError as exc:
                raise WallError(f"level {k} correction at column {i} failed: {exc}") from exc
            for j, h in enumerate(hs):
                maps[(i, j, k)] = h.matrix

    blocks = [[(i, n - i) for i in range(0, min(L, n) + 1)] for n in range(NT + 1)]
    modules = []
    for n in range(NT + 1):
        r = sum(columns[i].modules[j].rank for i, j in blocks[n])
        modules.append(FreeModule(C.modules[0].group, p, r))
    diffs = []
    for n in range(1, NT + 1):
        rows = [columns[i].modules[j].dim for i, j in blocks[n - 1]]
        cols = [columns[i].modules[j].dim for i, j in blocks[n]]
        pos = {b: t for t, b in enumerate(blocks[n - 1])}
        grid = [[None] * len(blocks[n]) for _ in blocks[n - 1]]
        for s, (i, j) in enumerate(blocks[n]):
            for k in range(0, i + 1):
                A = maps.get((i, j, k))
                if A is not None:
                    grid[pos[(i - k, j + k - 1)]][s] = A
        diffs.append(ModuleHom(modules[n], modules[n - 1], la.block_matrix(grid, rows, cols),
                               check=False))
    total = ChainComplex(modules, diffs, check=False)

    projection = []
    for n in range(min(L, NT) + 1):
        P = la.zeros(C.modules[n].dim, modules[n].dim)
        cols = [columns[i].modules[j].dim for i, j in blocks[n]]
        start = sum(cols[:n])
        P[:, start:start + cols[n]] = columns[n].augmentation.matrix
        projection.append(ModuleHom(modules[n], C.modules[n], P, check=False))

    W = WallComplex(C, list(columns), total, maps, blocks, projection)
    if certify:
        W.certificate = certify_wall(W)
    return W


def certify_wall(W: WallComplex) -> dict:
    """Check ``d^2 = 0``, that ``pi`` is a chain map and that it is a
    quasi-isomorphism below the top degree.  Raises on ``d^2 != 0``."""
    T, C = W.total, W.base
    p = W.columns[0].p
    try:
        T.check_d_squared()
    except ResolutionError as exc:
        raise WallError(f"total differential does not square to zero: {exc}") from exc
    chain = True
    for n in range(1, len(W.projection)):
        lhs = la.matmul(C.d(n).matrix, W.projection[n].matrix, p)
        rhs = la.matmul(W.projection[n - 1].matrix, T.d(n).matrix, p)
        chain &= bool(np.array_equal(lhs, rhs))
    NT = T.length
    hT = homology_dims(T)[:NT]
    hC = homology_dims(C) + [0] * max(0, NT - len(C.modules))
    hC = hC[:NT]
    quasi = hT == hC and _pi_surjective_on_homology(W, NT)
    return {"d_squared_zero": True, "pi_chain_map": chain, "homology_total": hT,
            "homology_base": hC, "homology_match": hT == hC, "pi_quasi_isomorphism": quasi,
            "compared_degrees": NT}


def _pi_surjective_on_homology(W: WallComplex, NT: int) -> bool:
    T, C = W.total, W.base
    p = W.columns[0].p
    for n in range(min(len(W.projection), NT)):
        Mn = C.modules[n]
        ZC = la.kernel_basis(C.d(n).matrix, p) if n >= 1 else la.identity(Mn.dim)
        if ZC.shape[1] == 0:
            continue
        BC = C.d(n + 1).matrix if n + 1 <= C.length else la.zeros(Mn.dim, 0)
        ZT = la.kernel_basis(T.d(n).matrix, p) if n >= 1 else la.identity(T.modules[0].dim)
        img = la.matmul(W.projection[n].matrix, ZT, p)
        if la.rank(np.hstack([img, BC]), p) != ZC.shape[1]:
            return False
    return True


# --------------------------------------------------------- two of three
def check_short_exact(f: ModuleHom, g: ModuleHom):
    """Raise unless ``0 -> M1 -f-> M2 -g-> M3 -> 0`` is exact."""
    p = f.p
    if f.target is not g.source and not _same_module(f.target, g.source):
        raise WallError("maps are not composable")
    if np.any(la.matmul(g.matrix, f.matrix, p)):
        raise WallError("g f != 0")
    rf, rg = f.rank(), g.rank()
    if rf != f.source.dim:
        raise WallError("first map is not injective")
    if rg != g.target.dim:
        raise WallError("second map is not surjective")
    if f.target.dim - rg != rf:
        raise WallError("sequence is not exact in the middle")


def horseshoe(f: ModuleHom, g: ModuleHom, P1: Resolution, P3: Resolution) -> Resolution:
    """Resolution of ``M2`` with terms ``P1_n (+) P3_n``."""
    p = f.p
    N = min(P1.length, P3.length)
    M2 = f.target
    G = M2.group
    gens3 = P3.modules[0].generator_columns(P3.augmentation.matrix)
    theta = la.solve_many(g.matrix, gens3, p)
    theta = extend_from_generators(P3.modules[0], M2, theta).matrix
    F = [FreeModule(G, p, P1.modules[n].rank + P3.modules[n].rank) for n in range(N + 1)]
    eps = ModuleHom(F[0], M2, np.hstack([la.matmul(f.matrix, P1.augmentation.matrix, p), theta]),
                    check=False)
    diffs = []
    sigma_prev = None
    for n in range(1, N + 1):
        d3g = P3.modules[n].generator_columns(P3.d(n).matrix)
        if n == 1:
            rhs = np.remainder(-la.matmul(theta, d3g, p), p)
            y = la.solve_many(f.matrix, rhs, p)
            X = la.solve_many(P1.augmentation.matrix, y, p) if y is not None else None
        else:
            rhs = np.remainder(-la.matmul(sigma_prev, d3g, p), p)
            X = la.solve_many(P1.d(n - 1).matrix, rhs, p)
        if X is None:
            raise WallError(f"horseshoe correction fails in degree {n}")
        sigma = extend_from_generators(P3.modules[n], P1.modules[n - 1], X).matrix
        A = la.block_matrix([[P1.d(n).matrix, sigma], [None, P3.d(n).matrix]],
                            [P1.modules[n - 1].dim, P3.modules[n - 1].dim],
                            [P1.modules[n].dim, P3.modules[n].dim])
        diffs.append(ModuleHom(F[n], F[n - 1], A, check=False))
        sigma_prev = sigma
    return Resolution(M2, F, diffs, eps, certify=True)


def _two_term(f: ModuleHom) -> ChainComplex:
    return ChainComplex([f.target, f.source], [f], check=False)


def two_of_three(f: ModuleHom, g: ModuleHom, known: dict, length: Optional[int] = None,
                 seed: int = 0) -> Resolution:
    """Resolution of the missing module of ``0 -> M1 -> M2 -> M3 -> 0``.

    ``known`` maps two of the positions ``1, 2, 3`` to resolutions.
    """
    check_short_exact(f, g)
    have = set(known)
    if len(have) != 2 or not have <= {1, 2, 3}:
        raise WallError("exactly two of the positions 1, 2, 3 must be given")
    p = f.p
    if have == {1, 3}:
        return horseshoe(f, g, known[1], known[3])

    if have == {1, 2}:
        # T_n = P2_n (+) P1_{n-1} resolves coker f = M3
        W = build_wall(_two_term(f), [known[2], known[1]], length=length)
        T = W.total
        eps = ModuleHom(T.modules[0], g.target, la.matmul(g.matrix, W.projection[0].matrix, p),
                        check=False)
        return Resolution(g.target, T.modules, T.differentials, eps, certify=True)

    # have == {2, 3}: T has homology ker g = M1 in degree 1; split T_1 = T_1' (+) T_0
    P2, P3 = known[2], known[3]
    NT = min(P3.length, P2.length + 1) if length is None else length + 1
    W = build_wall(_two_term(g), [P3, P2], length=NT)
    T = W.total
    D1 = T.d(1).matrix
    K, free = la.kernel_basis(D1, p, return_free=True)
    T1p, inc = submodule(T.modules[1], K, coords=_selection(K, free))
    fb = free_basis(T1p, seed=seed)
    if fb is None:
        raise WallError("kernel of T_1 -> T_0 has no free basis (projective but not free?)")
    F0, iso = fb
    iso_amb = la.matmul(K, iso.matrix, p)                     # F0 -> T_1
    # augmentation F0 -> M1: pi_1 lands in ker g = f(M1)
    img = la.matmul(W.projection[1].matrix, iso_amb, p)
    aug = la.solve_many(f.matrix, img, p)
    if aug is None:
        raise WallError("projection does not land in the image of M1")
    eps = ModuleHom(F0, f.source, aug, check=False)
    modules = [F0] + T.modules[2:]
    diffs = []
    if T.length >= 2:
        D2 = T.d(2).matrix                                    # lands in ker D1
        coords = la.solve_many(iso_amb, D2, p)
        if coords is None:
            raise WallError("image of T_2 is not inside the split kernel")
        diffs.append(ModuleHom(modules[1], F0, coords, check=False))
        diffs.extend(T.differentials[2:])
    return Resolution(f.source, modules, diffs, eps, certify=True)


def _selection(K: np.ndarray, free: np.ndarray) -> np.ndarray:
    L = la.zeros(K.shape[1], K.shape[0])
    L[np.arange(free.size), free] = 1
    return L
