"""Finite-dimensional kG-modules over GF(p) and the functors between them.

Vectors are columns and modules are left modules: ``act(g)`` is the matrix
of ``g`` and ``act(g) @ act(h) == act(g*h)``.  A :class:`ModuleHom` from
``M`` to ``N`` is a ``N.dim x M.dim`` matrix commuting with the actions.

Free modules use the basis ``e_{c,g}`` (copy ``c``, group element ``g``) at
index ``c * |G| + g`` with ``h . e_{c,g} = e_{c,hg}``; their action
matrices are permutations and are never stored.
"""

from __future__ import annotations

from functools import cached_property
from typing import Callable, Optional, Sequence

import numpy as np

from . import linalg as la
from .groups import Group, Subgroup

__all__ = [
    "GModule",
    "FreeModule",
    "ModuleHom",
    "ModuleError",
    "trivial_module",
    "regular_module",
    "free_module",
    "module_from_generators",
    "restrict",
    "restrict_free",
    "induce",
    "induce_hom",
    "induce_free",
    "direct_sum",
    "direct_sum_hom",
    "tensor_over_k",
    "submodule",
    "kernel",
    "image",
    "quotient_module",
    "cyclic_submodule",
    "permutation_module",
    "hom_space",
    "extend_from_generators",
    "free_hom_precompose_matrix",
    "is_projective",
    "free_basis",
    "sylow_transfer_maps",
    "zero_module",
]


class ModuleError(ValueError):
    """Representation axioms or equivariance fail."""


class GModule:
    """A representation of ``group`` on ``GF(p)^dim``.

    Either an explicit ``(|G|, dim, dim)`` action array or a callable
    ``g -> matrix`` is given; the callable form keeps large modules lazy.
    """

    def __init__(self, group: Group, p: int, dim: int, action=None,
                 act: Optional[Callable[[int], np.ndarray]] = None, check: bool = True):
        self.group = group
        self.p = int(p)
        self.field = la.PrimeField(self.p)
        self.dim = int(dim)
        if action is not None:
            arr = np.remainder(np.asarray(action, dtype=np.int64), self.p)
            if arr.shape != (group.order, self.dim, self.dim):
                raise ModuleError(f"action array has shape {arr.shape}, expected "
                                  f"{(group.order, self.dim, self.dim)}")
            self._action = arr
            self._act = None
        else:
            if act is None:
                raise ModuleError("either action or act must be given")
            self._action = None
            self._act = act
        if check:
            self.validate()

    # ------------------------------------------------------------ actions
    def act(self, g: int) -> np.ndarray:
        if self._action is not None:
            return self._action[g]
        return self._act(g)

    def act_on(self, g: int, V: np.ndarray) -> np.ndarray:
        """``act(g) @ V``."""
        return la.matmul(self.act(g), V, self.p)

    def act_right(self, g: int, A: np.ndarray) -> np.ndarray:
        """``A @ act(g)``."""
        return la.matmul(A, self.act(g), self.p)

    @property
    def action(self) -> np.ndarray:
        if self._action is None:
            n, d = self.group.order, self.dim
            arr = np.empty((n, d, d), dtype=np.int64)
            for g in range(n):
                arr[g] = self.act(g)
            self._action = arr
        return self._action

    def validate(self):
        G = self.group
        d = self.dim
        if not np.array_equal(self.act(G.identity), la.identity(d)):
            raise ModuleError("identity does not act as the identity matrix")
        for s in G.generators:
            As = self.act(s)
            for g in range(G.order):
                lhs = self.act(G.mul(g, s))
                rhs = la.matmul(self.act(g), As, self.p)
                if not np.array_equal(lhs, rhs):
                    raise ModuleError(f"action not multiplicative at ({g}, {s})")

    # ------------------------------------------------------------ helpers
    def same_ring(self, other: "GModule") -> bool:
        return self.group == other.group and self.p == other.p

    def radical_basis(self) -> np.ndarray:
        """Basis of ``I.M``, the span of all ``(g - 1) v`` (generators suffice)."""
        d = self.dim
        if d == 0 or not self.group.generators:
            return la.zeros(d, 0)
        I = la.identity(d)
        blocks = [np.remainder(self.act(s) - I, self.p) for s in self.group.generators]
        return la.image_basis(np.hstack(blocks), self.p)

    def fixed_points(self) -> np.ndarray:
        d = self.dim
        if not self.group.generators:
            return la.identity(d)
        I = la.identity(d)
        A = np.vstack([np.remainder(self.act(s) - I, self.p) for s in self.group.generators])
        return la.kernel_basis(A, self.p)

    def is_trivial_action(self) -> bool:
        I = la.identity(self.dim)
        return all(np.array_equal(self.act(s), I) for s in self.group.generators)

    def __repr__(self):
        return f"{type(self).__name__}(|G|={self.group.order}, p={self.p}, dim={self.dim})"

    def to_json(self) -> dict:
        return {"p": self.p, "dim": self.dim,
                "action": {str(s): self.act(s).tolist() for s in self.group.generators}}


class FreeModule(GModule):
    """``rank`` copies of the regular representation in the standard basis."""

    def __init__(self, group: Group, p: int, rank: int):
        self.rank = int(rank)
        super().__init__(group, p, self.rank * group.order, act=self._perm_matrix, check=False)

    @cached_property
    def _left_perm(self) -> np.ndarray:
        # _left_perm[g, (c,h)] = index of (c, g*h)
        n = self.group.order
        base = self.group.cayley  # base[g, h] = g*h
        offs = (np.arange(self.rank) * n)[None, :, None]
        return (offs + base[:, None, :]).reshape(n, self.rank * n)

    def _perm_matrix(self, g: int) -> np.ndarray:
        d = self.dim
        M = la.zeros(d, d)
        M[self._left_perm[g], np.arange(d)] = 1
        return M

    def act_on(self, g: int, V: np.ndarray) -> np.ndarray:
        V = np.asarray(V)
        out = np.empty_like(V)
        out[self._left_perm[g]] = V
        return out

    def act_right(self, g: int, A: np.ndarray) -> np.ndarray:
        return np.asarray(A)[:, self._left_perm[g]]

    def generator_index(self, c: int) -> int:
        return c * self.group.order + self.group.identity

    def generator_columns(self, M: np.ndarray) -> np.ndarray:
        """Columns of ``M`` at the free generators ``e_{c,1}``."""
        return np.asarray(M)[:, [self.generator_index(c) for c in range(self.rank)]]

    def __repr__(self):
        return f"FreeModule(|G|={self.group.order}, p={self.p}, rank={self.rank})"


class ModuleHom:
    """A kG-linear map ``source -> target``."""

    def __init__(self, source: GModule, target: GModule, matrix, check: bool = True):
        if not source.same_ring(target):
            raise ModuleError("source and target live over different group rings")
        self.source = source
        self.target = target
        self.matrix = la.as_matrix(matrix, source.p, shape=(target.dim, source.dim))
        if check:
            self.validate()

    @property
    def p(self) -> int:
        return self.source.p

    def validate(self):
        for s in self.source.group.generators:
            lhs = self.source.act_right(s, self.matrix)
            rhs = self.target.act_on(s, self.matrix)
            if not np.array_equal(np.remainder(lhs, self.p), np.remainder(rhs, self.p)):
                raise ModuleError(f"map does not commute with the action of {s}")

    def is_equivariant(self) -> bool:
        try:
            self.validate()
        except ModuleError:
            return False
        return True

    def __matmul__(self, other: "ModuleHom") -> "ModuleHom":
        if other.target is not self.source and other.target.dim != self.source.dim:
            raise ModuleError("composition of incompatible maps")
        return ModuleHom(other.source, self.target,
                         la.matmul(self.matrix, other.matrix, self.p), check=False)

    def __add__(self, other: "ModuleHom") -> "ModuleHom":
        return ModuleHom(self.source, self.target,
                         np.remainder(self.matrix + other.matrix, self.p), check=False)

    def scale(self, c: int) -> "ModuleHom":
        return ModuleHom(self.source, self.target, np.remainder(c * self.matrix, self.p), check=False)

    def rank(self) -> int:
        return la.rank(self.matrix, self.p)

    def is_zero(self) -> bool:
        return not np.any(self.matrix)

    def __repr__(self):
        return f"ModuleHom({self.source.dim} -> {self.target.dim})"


# ---------------------------------------------------------------- builders
def zero_module(G: Group, p: int) -> GModule:
    return GModule(G, p, 0, action=np.zeros((G.order, 0, 0), dtype=np.int64), check=False)


def trivial_module(G: Group, p: int, dim: int = 1) -> GModule:
    I = la.identity(dim)
    return GModule(G, p, dim, action=np.broadcast_to(I, (G.order, dim, dim)).copy(), check=False)


def regular_module(G: Group, p: int) -> FreeModule:
    return FreeModule(G, p, 1)


def free_module(G: Group, p: int, r: int) -> FreeModule:
    return FreeModule(G, p, r)


def _expand_from_generators(G: Group, p: int, gen_mats: dict) -> np.ndarray:
    """Action on every element by BFS over words in the given generators."""
    d = next(iter(gen_mats.values())).shape[0]
    action = np.zeros((G.order, d, d), dtype=np.int64)
    known = np.zeros(G.order, dtype=bool)
    action[G.identity] = la.identity(d)
    known[G.identity] = True
    queue = [G.identity]
    for x in queue:
        for s, A in gen_mats.items():
            y = G.mul(x, s)
            if not known[y]:
                action[y] = la.matmul(action[x], A, p)
                known[y] = True
                queue.append(y)
    if not known.all():
        raise ModuleError("given elements do not generate the group")
    return action


def module_from_generators(G: Group, p: int, gen_mats: dict, check: bool = True) -> GModule:
    """Module from matrices on a generating set, expanded and validated."""
    gen_mats = {int(s): la.as_matrix(A, p) for s, A in gen_mats.items()}
    if not gen_mats:
        if G.order != 1:
            raise ModuleError("no generator matrices for a nontrivial group")
        return trivial_module(G, p, 0)
    d = next(iter(gen_mats.values())).shape[0]
    for s, A in gen_mats.items():
        if A.shape != (d, d):
            raise ModuleError(f"matrix for generator {s} has shape {A.shape}, expected {(d, d)}")
    if d == 0:
        return zero_module(G, p)
    action = _expand_from_generators(G, p, gen_mats)
    M = GModule(G, p, d, action=action, check=False)
    if check:
        # every relation of G must hold: check all products against the table
        for s in G.generators:
            for g in range(G.order):
                if not np.array_equal(M.act(G.mul(g, s)), la.matmul(M.act(g), M.act(s), p)):
                    raise ModuleError(f"generator matrices violate a relation at ({g}, {s})")
        for s, A in gen_mats.items():
            if not np.array_equal(M.act(s), A):
                raise ModuleError(f"generator matrices violate a relation at generator {s}")
    return M


# ---------------------------------------------------------------- functors
def restrict(M: GModule, H: Subgroup) -> GModule:
    if H.parent != M.group:
        raise ModuleError("H is not a subgroup of the module's group")
    els = H.elements
    if M._action is not None:
        return GModule(H.as_group(), M.p, M.dim, action=M._action[list(els)], check=False)
    return GModule(H.as_group(), M.p, M.dim, act=lambda i: M.act(els[i]), check=False)


def restrict_free(F: FreeModule, H: Subgroup) -> tuple[FreeModule, np.ndarray]:
    """Restriction of a free module: free of rank ``r [G:H]`` over ``H``.

    Returns the free module ``F_H`` and the matrix ``P`` of the
    isomorphism ``F_H -> res F``: the generator ``(c, i)`` of ``F_H`` goes
    to ``e_{c, u_i}`` where ``u_i = t_i^{-1}`` runs over right coset
    representatives (inverses of the left transversal).
    """
    G = F.group
    T = [G.inv(t) for t in H.left_transversal]
    m = H.order
    FH = FreeModule(H.as_group(), F.p, F.rank * len(T))
    P = la.zeros(F.dim, FH.dim)
    for c in range(F.rank):
        for i, t in enumerate(T):
            for j, h in enumerate(H.elements):
                P[c * G.order + G.mul(h, t), (c * len(T) + i) * m + j] = 1
    return FH, P


def _coset_action(H: Subgroup):
    """``perm[g, i]`` = coset index of ``g t_i`` and ``tw[g, i]`` the local H element."""
    G = H.parent
    T = H.left_transversal
    cos = H.coset_of
    s = len(T)
    perm = np.empty((G.order, s), dtype=np.int64)
    tw = np.empty((G.order, s), dtype=np.int64)
    for g in range(G.order):
        for i, t in enumerate(T):
            gt = G.mul(g, t)
            j = int(cos[gt])
            perm[g, i] = j
            tw[g, i] = H.local(G.mul(G.inv(T[j]), gt))
    return perm, tw


def induce(M: GModule, H: Subgroup) -> GModule:
    """``Ind_H^G M`` with basis ``t_i (x) m_j`` at index ``i * dim M + j``.

    ``M`` must be a module over ``H.as_group()``; ``t_i`` runs over the
    ascending left transversal of ``H``.
    """
    if M.group != H.as_group():
        raise ModuleError("module is not over the given subgroup")
    perm, tw = _coset_action(H)
    s = perm.shape[1]
    d = M.dim

    def act(g):
        A = la.zeros(s * d, s * d)
        for i in range(s):
            j = perm[g, i]
            A[j * d:(j + 1) * d, i * d:(i + 1) * d] = M.act(int(tw[g, i]))
        return A

    out = GModule(H.parent, M.p, s * d, act=act, check=False)
    if s * d <= 256:
        out.action  # materialise small modules
    return out


def induce_hom(f: ModuleHom, H: Subgroup, source: Optional[GModule] = None,
               target: Optional[GModule] = None) -> ModuleHom:
    """``Ind(f)``: block diagonal over cosets."""
    s = H.index
    src = source if source is not None else induce(f.source, H)
    tgt = target if target is not None else induce(f.target, H)
    return ModuleHom(src, tgt, np.kron(la.identity(s), f.matrix), check=False)


def induce_free(F: FreeModule, H: Subgroup) -> tuple[FreeModule, np.ndarray]:
    """``Ind_H^G`` of a free ``H``-module as a free ``G``-module.

    Returns ``F_G`` (same rank) and the permutation matrix ``Q`` with
    ``Q @ v`` carrying coordinates on ``induce(F, H)`` to the standard
    basis of ``F_G``; ``t_i (x) e_{c,h} -> e_{c, t_i h}``.
    """
    G = H.parent
    T = H.left_transversal
    m = H.order
    r = F.rank
    FG = FreeModule(G, F.p, r)
    Q = la.zeros(FG.dim, len(T) * r * m)
    for i, t in enumerate(T):
        for c in range(r):
            for j, h in enumerate(H.elements):
                Q[c * G.order + G.mul(t, h), i * r * m + c * m + j] = 1
    return FG, Q


def direct_sum(M: GModule, N: GModule) -> GModule:
    if not M.same_ring(N):
        raise ModuleError("direct sum of modules over different rings")
    dm, dn = M.dim, N.dim

    def act(g):
        return la.block_matrix([[M.act(g), None], [None, N.act(g)]], [dm, dn], [dm, dn])

    out = GModule(M.group, M.p, dm + dn, act=act, check=False)
    if dm + dn <= 256:
        out.action
    return out


def direct_sum_hom(f: ModuleHom, g: ModuleHom, source: GModule = None,
                   target: GModule = None) -> ModuleHom:
    src = source if source is not None else direct_sum(f.source, g.source)
    tgt = target if target is not None else direct_sum(f.target, g.target)
    A = la.block_matrix([[f.matrix, None], [None, g.matrix]],
                        [f.target.dim, g.target.dim], [f.source.dim, g.source.dim])
    return ModuleHom(src, tgt, A, check=False)


def tensor_over_k(M: GModule, N: GModule) -> GModule:
    """``M (x)_k N`` with the diagonal action, Kronecker basis ordering."""
    if not M.same_ring(N):
        raise ModuleError("tensor product of modules over different rings")
    p = M.p
    return GModule(M.group, p, M.dim * N.dim,
                   action=np.stack([np.remainder(np.kron(M.act(g), N.act(g)), p)
                                    for g in range(M.group.order)]),
                   check=False)


# ------------------------------------------------------ sub and kernel
def submodule(M: GModule, basis: np.ndarray, coords: Optional[np.ndarray] = None
              ) -> tuple[GModule, ModuleHom]:
    """The submodule spanned by the (independent, G-stable) columns of ``basis``.

    ``coords`` is a left inverse of ``basis``; computed if not supplied.
    Returns the module and its inclusion.
    """
    p = M.p
    B = la.as_matrix(basis, p, shape=(M.dim, -1)) if np.asarray(basis).size else la.zeros(M.dim, 0)
    k = B.shape[1]
    L = coords if coords is not None else la.left_inverse(B, p)

    def act(g):
        return la.matmul(L, M.act_on(g, B), p)

    K = GModule(M.group, p, k, act=act, check=False)
    if k <= 128:
        K.action
    return K, ModuleHom(K, M, B, check=False)


def kernel(f: ModuleHom) -> tuple[GModule, ModuleHom]:
    K, free = la.kernel_basis(f.matrix, f.p, return_free=True)
    # a canonical kernel basis is the identity on its free rows
    L = la.zeros(K.shape[1], K.shape[0])
    L[np.arange(free.size), free] = 1
    return submodule(f.source, K, coords=L)


def image(f: ModuleHom) -> tuple[GModule, ModuleHom]:
    B = la.image_basis(f.matrix, f.p)
    return submodule(f.target, B)


def quotient_module(M: GModule, basis: np.ndarray) -> tuple[GModule, ModuleHom]:
    """``M / span(basis)`` (the span must be G-stable) and the projection."""
    p = M.p
    B = la.as_matrix(basis, p, shape=(M.dim, -1)) if np.asarray(basis).size else la.zeros(M.dim, 0)
    E = _complement_columns(B, M.dim, p)
    k = B.shape[1]
    # rows k.. of [B | E]^{-1} read off quotient coordinates
    proj = la.inverse(np.hstack([B, E]), p)[k:]
    act_mats = np.stack([la.matmul(proj, M.act_on(g, E), p) for g in range(M.group.order)]) \
        if E.shape[1] else np.zeros((M.group.order, 0, 0), dtype=np.int64)
    Q = GModule(M.group, p, E.shape[1], action=act_mats, check=False)
    return Q, ModuleHom(M, Q, proj, check=False)


def cyclic_submodule(M: GModule, v: np.ndarray) -> tuple[GModule, ModuleHom]:
    """The submodule ``kG . v``."""
    p = M.p
    v = la.as_matrix(v, p, shape=(M.dim, 1))
    orbit = np.hstack([M.act_on(g, v) for g in range(M.group.order)])
    return submodule(M, la.image_basis(orbit, p))


def permutation_module(H: Subgroup, p: int) -> GModule:
    """``k[G/H]``, the induced trivial module."""
    return induce(trivial_module(H.as_group(), p), H)


# ---------------------------------------------------------------- hom spaces
def hom_space(M: GModule, N: GModule) -> list[ModuleHom]:
    """Basis of ``Hom_kG(M, N)`` by solving ``X A_M(s) = A_N(s) X`` for generators."""
    if not M.same_ring(N):
        raise ModuleError("hom space between modules over different rings")
    p = M.p
    m, n = M.dim, N.dim
    if m == 0 or n == 0:
        return []
    gens = M.group.generators
    if not gens:
        basis = [la.zeros(n, m) for _ in range(n * m)]
        for idx, B in enumerate(basis):
            B.flat[idx] = 1
        return [ModuleHom(M, N, B, check=False) for B in basis]
    # vec(X A) = (A^T kron I) vec(X), vec(A X) = (I kron A) vec(X), column-major vec
    rows = []
    for s in gens:
        A = M.act(s)
        B = N.act(s)
        rows.append(np.remainder(np.kron(A.T, la.identity(n)) - np.kron(la.identity(m), B), p))
    K = la.kernel_basis(np.vstack(rows), p)
    return [ModuleHom(M, N, K[:, j].reshape(m, n).T, check=False) for j in range(K.shape[1])]


def extend_from_generators(F: FreeModule, N: GModule, images: np.ndarray) -> ModuleHom:
    """The unique kG-map ``F -> N`` sending ``e_{c,1}`` to column ``c`` of ``images``."""
    p = F.p
    images = la.as_matrix(images, p, shape=(N.dim, F.rank)) if F.rank else la.zeros(N.dim, 0)
    G = F.group
    n = G.order
    A = la.zeros(N.dim, F.dim)
    if F.rank == 0 or N.dim == 0:
        return ModuleHom(F, N, A, check=False)
    cols = np.arange(F.rank) * n
    for g in range(n):
        A[:, cols + g] = N.act_on(g, images)
    return ModuleHom(F, N, A, check=False)


def free_hom_precompose_matrix(F: FreeModule, N: GModule, V: np.ndarray) -> np.ndarray:
    """Matrix of ``y -> h_y @ V`` where ``h_y: F -> N`` has generator images ``y``.

    ``y`` is the column-major flattening of the ``N.dim x F.rank`` image
    matrix (generator ``c`` occupies rows ``c*N.dim .. (c+1)*N.dim``); the
    output is the column-major flattening of ``h_y @ V``.
    """
    p = F.p
    d = N.dim
    n = F.group.order
    V = np.asarray(V)
    k = V.shape[1]
    out = la.zeros(d * k, d * F.rank)
    if d == 0 or k == 0 or F.rank == 0:
        return out
    Vr = V.reshape(F.rank, n, k)  # Vr[c, g, z]
    for g in range(n):
        Ag = N.act(g)
        # contribution sum_c Vr[c,g,z] * Ag y_c
        coeff = Vr[:, g, :]  # (rank, k)
        if not np.any(coeff):
            continue
        out += np.kron(coeff.T, Ag)
    return np.remainder(out, p)


# ----------------------------------------------------------- projectivity
def _trace_matrix(M: GModule) -> np.ndarray:
    """Matrix of ``phi -> sum_g g phi g^{-1}`` on column-major ``vec(phi)``."""
    p = M.p
    d = M.dim
    G = M.group
    T = la.zeros(d * d, d * d)
    for g in range(G.order):
        A = M.act(g)
        Ainv = M.act(G.inv(g))
        T = np.remainder(T + np.kron(Ainv.T, A), p)
    return T


def is_projective(M: GModule) -> Optional[ModuleHom]:
    """Splitting certificate ``s: M -> F`` of the counit ``F -> M``, or None.

    ``F`` is ``kG (x) M`` with ``G`` acting on the left factor only (free of
    rank ``dim M``) and the counit sends ``e_g (x) v`` to ``g v``.  Every
    kG-map ``M -> F`` has the form ``m -> sum_g e_g (x) phi(g^{-1} m)`` for
    a k-linear ``phi``, and the counit composite is then the averaged map
    ``sum_g g phi g^{-1}``; a splitting exists iff the identity is such an
    average.
    """
    p = M.p
    d = M.dim
    G = M.group
    F = FreeModule(G, p, d)
    if d == 0:
        return ModuleHom(M, F, la.zeros(0, 0), check=False)
    T = _trace_matrix(M)
    phi = la.solve(T, la.identity(d).reshape(-1, order="F"), p)
    if phi is None:
        return None
    phi = phi.reshape(d, d, order="F")
    n = G.order
    S = la.zeros(F.dim, d)
    # F basis (c, g) <-> e_g (x) b_c, at index c*n + g
    for g in range(n):
        block = la.matmul(phi, M.act(G.inv(g)), p)  # rows c
        S[np.arange(d) * n + g, :] = block
    s = ModuleHom(M, F, S, check=False)
    return s


def counit(M: GModule) -> ModuleHom:
    """``kG (x) M -> M``, ``e_g (x) b_c -> g b_c`` (the generic free cover)."""
    F = FreeModule(M.group, M.p, M.dim)
    return extend_from_generators(F, M, la.identity(M.dim))


def free_basis(M: GModule, seed: int = 0, attempts: int = 200
               ) -> Optional[tuple[FreeModule, ModuleHom]]:
    """An isomorphism ``F -> M`` from a free module, or None if none is found.

    Uses the minimal cover when ``G`` is a ``p``-group; otherwise tries
    seeded random generating tuples.
    """
    G = M.group
    p = M.p
    n = G.order
    if M.dim % n:
        return None
    r = M.dim // n
    if G.is_p_group(p):
        rad = M.radical_basis()
        if M.dim - rad.shape[1] != r:
            return None
        gens = _complement_columns(rad, M.dim, p)
        F = FreeModule(G, p, r)
        f = extend_from_generators(F, M, gens)
        return (F, f) if f.rank() == M.dim else None
    if is_projective(M) is None:
        return None
    rng = np.random.default_rng(seed)
    F = FreeModule(G, p, r)
    for _ in range(attempts):
        Y = rng.integers(0, p, size=(M.dim, r))
        f = extend_from_generators(F, M, Y)
        if f.rank() == M.dim:
            return F, f
    return None


def _complement_columns(B: np.ndarray, d: int, p: int) -> np.ndarray:
    """Standard basis vectors completing the columns of ``B`` to a basis."""
    if B.shape[1] == 0:
        return la.identity(d)
    _, piv, _ = la.rref(B.T, p)
    free = np.setdiff1d(np.arange(d), piv)
    E = la.zeros(d, free.size)
    E[free, np.arange(free.size)] = 1
    return E


def sylow_transfer_maps(M: GModule, S: Subgroup) -> tuple[ModuleHom, ModuleHom]:
    """``i: M -> Ind_S^G Res M`` and ``q: Ind_S^G Res M -> M``.

    ``i(m) = sum_t t (x) t^{-1} m`` over the transversal and
    ``q(t (x) m) = t m``, so that ``q i = [G:S] id``.
    """
    G = M.group
    if S.parent != G:
        raise ModuleError("S is not a subgroup of the module's group")
    p = M.p
    d = M.dim
    X = induce(restrict(M, S), S)
    T = S.left_transversal
    I_mat = np.vstack([M.act(G.inv(t)) for t in T]) if T else la.zeros(0, d)
    Q_mat = np.hstack([M.act(t) for t in T]) if T else la.zeros(d, 0)
    i = ModuleHom(M, X, I_mat, check=False)
    q = ModuleHom(X, M, Q_mat, check=False)
    qi = la.matmul(q.matrix, i.matrix, p)
    assert np.array_equal(qi, np.remainder(S.index * la.identity(d), p)), "q i != [G:S] id"
    return i, q
