"""Seeded generators of small random modules, complexes and short exact
sequences, used by the property tests and the demo scripts."""

from __future__ import annotations

import numpy as np

from . import linalg as la
from .gmodules import (GModule, ModuleHom, cyclic_submodule, direct_sum, hom_space, kernel,
                       permutation_module, quotient_module, regular_module, trivial_module,
                       zero_module)
from .groups import Group
from .resolutions import ChainComplex

__all__ = ["random_module", "random_hom", "random_complex", "random_short_exact"]


def _random_piece(G: Group, p: int, rng: np.random.Generator, budget: int) -> GModule | None:
    choices = ["trivial"]
    if G.order <= budget:
        choices.append("regular")
    cyc = []
    for g in range(G.order):
        H = G.generated([g])
        if H.index <= budget:
            cyc.append(H)
    if cyc:
        choices += ["permutation", "cyclic"]
    kind = choices[rng.integers(len(choices))]
    if kind == "trivial":
        return trivial_module(G, p)
    if kind == "regular":
        return regular_module(G, p)
    H = cyc[rng.integers(len(cyc))]
    P = permutation_module(H, p)
    if kind == "permutation":
        return P
    v = rng.integers(0, p, size=P.dim)
    if not v.any():
        v[0] = 1
    return cyclic_submodule(P, v)[0]


def random_module(G: Group, p: int, rng: np.random.Generator, max_dim: int = 8) -> GModule:
    """A direct sum of trivial, permutation, regular and cyclic pieces."""
    target = int(rng.integers(1, max_dim + 1))
    M = None
    while M is None or M.dim < target:
        budget = target - (0 if M is None else M.dim)
        piece = _random_piece(G, p, rng, budget)
        if piece.dim > budget:
            break
        M = piece if M is None else direct_sum(M, piece)
    return M if M is not None else trivial_module(G, p)


def random_hom(M: GModule, N: GModule, rng: np.random.Generator) -> ModuleHom:
    basis = hom_space(M, N) if M.dim and N.dim else []
    A = la.zeros(N.dim, M.dim)
    for h in basis:
        A = A + int(rng.integers(M.p)) * h.matrix
    return ModuleHom(M, N, np.remainder(A, M.p), check=False)


def random_complex(G: Group, p: int, length: int, rng: np.random.Generator,
                   max_dim: int = 8) -> ChainComplex:
    """``C_length -> ... -> C_0`` with each ``d_i`` a random map into ``ker d_{i-1}``."""
    mods = [random_module(G, p, rng, max_dim) for _ in range(length + 1)]
    diffs = []
    for i in range(1, length + 1):
        if i == 1:
            diffs.append(random_hom(mods[1], mods[0], rng))
            continue
        K, inc = kernel(diffs[-1])
        h = random_hom(mods[i], K, rng)
        diffs.append(ModuleHom(mods[i], mods[i - 1], la.matmul(inc.matrix, h.matrix, p),
                               check=False))
    return ChainComplex(mods, diffs)


def random_short_exact(G: Group, p: int, rng: np.random.Generator, max_dim: int = 8):
    """``(f, g)`` for ``0 -> M1 -> M2 -> M3 -> 0`` with ``M1`` a cyclic submodule."""
    M2 = random_module(G, p, rng, max_dim)
    v = rng.integers(0, p, size=M2.dim)
    if not v.any():
        v[rng.integers(M2.dim)] = 1
    M1, f = cyclic_submodule(M2, v)
    M3, g = quotient_module(M2, f.matrix)
    return f, g
