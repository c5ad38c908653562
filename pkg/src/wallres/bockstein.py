"""Bockstein sequences, Yoneda splices, Ext-class tests, Serre search and
the Wall-complex pipeline producing a resolution of ``M (+) N`` from
resolutions over index-``p`` subgroups.

For a normal subgroup ``L`` of index ``p`` with ``xL`` generating ``G/L``,
the sequence representing the tensored Bockstein is

    0 -> M -iota-> k[G/L] (x) M -mu-> k[G/L] (x) M -pi-> M -> 0

with ``iota(m) = sum_i x^i L (x) m``, ``mu(yL (x) m) = (yxL - yL) (x) m`` and
``pi(yL (x) m) = m``.  The middle terms are carried over to
``Ind_L^G(res M (+) N)`` through ``t (x) m -> tL (x) t.m``; the padding
``N`` enters through the identity map on ``Ind_L^G N``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import linalg as la
from .gmodules import (GModule, ModuleHom, direct_sum, extend_from_generators,
                       free_hom_precompose_matrix, induce, restrict, submodule, zero_module)
from .groups import Group, GroupHom, Subgroup, cyclic_group, index_p_homomorphisms
from .resolutions import (ChainComplex, ComplexityFunction, GrowthVerdict, Resolution,
                          growth_verdict, homology_dims, induce_resolution, resolve)
from .wall import WallComplex, build_wall

__all__ = [
    "BocksteinDatum",
    "YonedaSequence",
    "ExtClassRep",
    "SerreWitness",
    "Prop41Result",
    "BocksteinError",
    "NonVanishingClass",
    "bockstein_datum",
    "bockstein_sequence",
    "splice",
    "ext_class",
    "is_zero_class",
    "serre_search",
    "prop41_pipeline",
    "rank_formula",
]


class BocksteinError(ValueError):
    pass


class NonVanishingClass(BocksteinError):
    """The spliced product is a nonzero Ext class; the pipeline does not apply."""


# --------------------------------------------------------------- datum
@dataclass(frozen=True)
class BocksteinDatum:
    """A normal subgroup ``L`` of index ``p``, a generator ``xL`` of ``G/L``
    and ``zeta: G -> Z_p`` with ``zeta(x^a l) = a``."""

    group: Group
    L: Subgroup
    x: int
    zeta: GroupHom

    @property
    def p(self) -> int:
        return self.zeta.target.order

    def to_json(self) -> dict:
        return {"subgroup": list(self.L.elements), "x": self.x}


def bockstein_datum(G: Group, L: Subgroup, x: Optional[int] = None) -> BocksteinDatum:
    if L.parent != G:
        raise BocksteinError("L is not a subgroup of G")
    p = L.index
    from .linalg import is_prime
    if not is_prime(p):
        raise BocksteinError(f"index {p} of L is not prime")
    if not L.is_normal():
        raise BocksteinError("L is not normal")
    if x is None:
        x = next(g for g in range(G.order) if g not in L)
    elif x in L:
        raise BocksteinError("x lies in L")
    images = np.empty(G.order, dtype=np.int64)
    xa = G.identity
    for a in range(p):
        for l in L.elements:
            images[G.mul(xa, l)] = a
        xa = G.mul(xa, x)
    zeta = GroupHom(G, cyclic_group(p), images)
    return BocksteinDatum(G, L, int(x), zeta)


# ------------------------------------------------------------ sequences
@dataclass
class YonedaSequence:
    """``0 -> M -iota-> X_{n-1} -> ... -> X_0 -pi-> M -> 0``.

    ``maps[i - 1]`` is ``X_i -> X_{i-1}``.  ``provenance`` lists the
    Bockstein data (with paddings) in splice order, rightmost first.
    """

    module: GModule
    terms: list
    maps: list
    iota: ModuleHom
    pi: ModuleHom
    provenance: list = field(default_factory=list)

    @property
    def degree(self) -> int:
        return len(self.terms)

    def interior(self) -> ChainComplex:
        return ChainComplex(self.terms, self.maps, check=False)

    def augmented(self) -> ChainComplex:
        """The whole sequence as a complex ``M, X_0, ..., X_{n-1}, M``."""
        return ChainComplex([self.module] + self.terms + [self.module],
                            [self.pi] + self.maps + [self.iota], check=False)

    def homology(self) -> list[int]:
        C = self.augmented()
        C.check_d_squared()
        return homology_dims(C)

    def is_exact(self) -> bool:
        try:
            return not any(self.homology())
        except ValueError:
            return False

    def to_json(self) -> dict:
        return {"degree": self.degree, "dims": [X.dim for X in self.terms],
                "provenance": [{"subgroup": list(d.L.elements), "x": d.x,
                                "padding_dim": 0 if N is None else N.dim}
                               for d, N in self.provenance]}


def _embed(outer_blocks: int, inner: int, offset: int, block: int) -> np.ndarray:
    """Inclusion of ``Ind A`` into ``Ind (A (+) B)`` (coordinates ``t_i (x) -``)."""
    E = la.zeros(outer_blocks * block, outer_blocks * inner)
    for i in range(outer_blocks):
        E[i * block + offset + np.arange(inner), i * inner + np.arange(inner)] = 1
    return E


def bockstein_sequence(datum: BocksteinDatum, M: GModule,
                       padding: Optional[GModule] = None, check: bool = True) -> YonedaSequence:
    """The degree-2 sequence for ``beta_L^M`` with middle terms
    ``Ind_L^G(res M (+) padding)``."""
    G, L, p = datum.group, datum.L, M.p
    if M.group != G:
        raise BocksteinError("module is not over the datum's group")
    q = datum.p
    d = M.dim
    T = L.left_transversal
    zeta = datum.zeta.images
    # Psi: Ind(res M) -> k[G/L] (x) M, t_i (x) m -> x^{zeta(t_i)} L (x) t_i m
    Psi = la.zeros(q * d, q * d)
    for i, t in enumerate(T):
        a = int(zeta[t])
        Psi[a * d:(a + 1) * d, i * d:(i + 1) * d] = M.act(t)
    Psi_inv = la.inverse(Psi, p)
    S = np.roll(la.identity(q), 1, axis=0)            # x^a L -> x^{a+1} L
    iota = np.kron(np.ones((q, 1), dtype=np.int64), la.identity(d))
    mu = np.remainder(np.kron(S - la.identity(q), la.identity(d)), p)
    pi = np.kron(np.ones((1, q), dtype=np.int64), la.identity(d))
    iota_i = la.matmul(Psi_inv, iota, p)
    mu_i = la.matmul(la.matmul(Psi_inv, mu, p), Psi, p)
    pi_i = la.matmul(pi, Psi, p)

    resM = restrict(M, L)
    if padding is None:
        X = induce(resM, L)
    else:
        if padding.group != L.as_group():
            raise BocksteinError("padding must be a module over the subgroup L")
        e = padding.dim
        X = induce(direct_sum(resM, padding), L)
        EM = _embed(q, d, 0, d + e)
        EN = _embed(q, e, d, d + e)
        iota_i = la.matmul(EM, iota_i, p)
        mu_i = np.remainder(la.matmul(la.matmul(EM, mu_i, p), EM.T, p) + EN @ EN.T, p)
        pi_i = la.matmul(pi_i, EM.T, p)
    seq = YonedaSequence(M, [X, X], [ModuleHom(X, X, mu_i, check=check)],
                         ModuleHom(M, X, iota_i, check=check),
                         ModuleHom(X, M, pi_i, check=check), [(datum, padding)])
    if check and not seq.is_exact():
        raise BocksteinError("Bockstein sequence is not exact")
    return seq


def splice(sequences: Sequence[YonedaSequence], check: bool = True) -> YonedaSequence:
    """Concatenate sequences; the first listed is the rightmost factor.

    The seam map from the ``X_0`` of a later sequence to the top term of
    the previous one is ``iota_prev . pi_next``.
    """
    if not sequences:
        raise BocksteinError("nothing to splice")
    M = sequences[0].module
    terms = list(sequences[0].terms)
    maps = list(sequences[0].maps)
    prov = list(sequences[0].provenance)
    iota = sequences[0].iota
    for S in sequences[1:]:
        if S.module is not M and not (S.module.dim == M.dim and S.module.group == M.group and all(
                np.array_equal(S.module.act(g), M.act(g)) for g in M.group.generators)):
            raise BocksteinError("end modules of spliced sequences differ")
        seam = ModuleHom(S.terms[0], terms[-1], la.matmul(iota.matrix, S.pi.matrix, M.p),
                         check=False)
        maps.append(seam)
        maps.extend(S.maps)
        terms.extend(S.terms)
        prov.extend(S.provenance)
        iota = S.iota
    out = YonedaSequence(M, terms, maps, iota, sequences[0].pi, prov)
    if check and not out.is_exact():
        raise BocksteinError("spliced sequence is not exact")
    return out


# --------------------------------------------------------- Ext classes
@dataclass
class ExtClassRep:
    """A cocycle ``P_n -> M`` on a fixed resolution ``P`` of ``M``."""

    degree: int
    cocycle: ModuleHom
    resolution: Resolution
    lift: list = field(default_factory=list)

    def check_cocycle(self) -> bool:
        n = self.degree
        if n + 1 > self.resolution.length:
            return True
        return not np.any(la.matmul(self.cocycle.matrix, self.resolution.d(n + 1).matrix,
                                    self.cocycle.p))


def _solve_gen(A: np.ndarray, B: np.ndarray, p: int, rng) -> Optional[np.ndarray]:
    X = la.solve_many(A, B, p)
    if X is None or rng is None:
        return X
    K = la.kernel_basis(A, p)
    if K.shape[1]:
        X = np.remainder(X + la.matmul(K, rng.integers(0, p, size=(K.shape[1], X.shape[1])), p), p)
    return X


def ext_class(seq: YonedaSequence, P: Resolution, seed: Optional[int] = None) -> ExtClassRep:
    """Comparison map from ``P`` into the sequence, read off in degree ``n``.

    With ``seed`` the lift is randomised by adding kernel vectors at every
    step (the class does not change).
    """
    n = seq.degree
    p = P.p
    if P.length < n:
        raise BocksteinError(f"resolution of length {P.length} too short for degree {n}")
    rng = None if seed is None else np.random.default_rng(seed)
    F0 = P.modules[0]
    X = _solve_gen(seq.pi.matrix, F0.generator_columns(P.augmentation.matrix), p, rng)
    if X is None:
        raise BocksteinError("comparison lift fails in degree 0")
    lift = [extend_from_generators(F0, seq.terms[0], X)]
    for j in range(1, n):
        Fj = P.modules[j]
        rhs = la.matmul(lift[-1].matrix, Fj.generator_columns(P.d(j).matrix), p)
        X = _solve_gen(seq.maps[j - 1].matrix, rhs, p, rng)
        if X is None:
            raise BocksteinError(f"comparison lift fails in degree {j}")
        lift.append(extend_from_generators(Fj, seq.terms[j], X))
    Fn = P.modules[n]
    rhs = la.matmul(lift[-1].matrix, Fn.generator_columns(P.d(n).matrix), p)
    c = la.solve_many(seq.iota.matrix, rhs, p)
    if c is None:
        raise BocksteinError("comparison lift fails in the top degree")
    rep = ExtClassRep(n, extend_from_generators(Fn, seq.module, c), P, lift)
    if not rep.check_cocycle():
        raise BocksteinError("cocycle condition fails")
    return rep


def is_zero_class(c: ExtClassRep) -> Optional[ModuleHom]:
    """``h: P_{n-1} -> M`` with ``c = h d_n``, or None when the class is nonzero."""
    n = c.degree
    P = c.resolution
    M = c.cocycle.target
    p = c.cocycle.p
    if n == 0:
        return None if np.any(c.cocycle.matrix) else ModuleHom(P.modules[0], M, la.zeros(M.dim, P.modules[0].dim), check=False)
    Fprev, Fn = P.modules[n - 1], P.modules[n]
    V = Fn.generator_columns(P.d(n).matrix)
    Phi = free_hom_precompose_matrix(Fprev, M, V)
    rhs = Fn.generator_columns(c.cocycle.matrix).reshape(-1, order="F")
    y = la.solve(Phi, rhs, p)
    if y is None:
        return None
    return extend_from_generators(Fprev, M, y.reshape((M.dim, Fprev.rank), order="F"))


# --------------------------------------------------------------- Serre
@dataclass
class SerreWitness:
    m: int
    subgroups: list
    data: list
    sequence: YonedaSequence
    ext_class: ExtClassRep
    coboundary: ModuleHom
    tried: int

    def to_json(self) -> dict:
        return {"m": self.m, "subgroups": [list(L.elements) for L in self.subgroups],
                "coboundary": self.coboundary.matrix.tolist(), "tried": self.tried}


def serre_search(G: Group, M: GModule, m_max: int = 4,
                 resolution: Optional[Resolution] = None) -> Optional[SerreWitness]:
    """First multiset ``L_1..L_m`` (increasing ``m``, then lexicographic in
    the list of index-``p`` subgroups) whose spliced Bockstein product
    vanishes on ``M``; None when ``m_max`` is exhausted."""
    p = M.p
    if M.group != G:
        raise BocksteinError("module is not over G")
    if not G.is_p_group(p):
        raise BocksteinError(f"Serre search needs a {p}-group")
    subs = [K for K, _ in index_p_homomorphisms(G, p)]
    if not subs:
        return None
    P = resolution if resolution is not None else resolve(M, 2 * m_max + 1)
    data = [bockstein_datum(G, L) for L in subs]
    seqs = [bockstein_sequence(d, M) for d in data]
    tried = 0
    for m in range(1, m_max + 1):
        for combo in itertools.combinations_with_replacement(range(len(subs)), m):
            tried += 1
            S = splice([seqs[i] for i in combo])
            c = ext_class(S, P)
            h = is_zero_class(c)
            if h is not None:
                return SerreWitness(m, [subs[i] for i in combo], [data[i] for i in combo], S, c, h,
                                    tried)
    return None


# ------------------------------------------------------ Wall pipeline
def rank_formula(column_ranks: Sequence[Sequence[int]], n: int) -> int:
    """``sum_i (d_i^{n+2(m-i)+1} + d_i^{n+2(m-i)})`` with ``i = 1..m``."""
    m = len(column_ranks)
    total = 0
    for i, d in enumerate(column_ranks, start=1):
        total += d[n + 2 * (m - i) + 1] + d[n + 2 * (m - i)]
    return total


@dataclass
class Prop41Result:
    resolution: Resolution
    N: GModule
    N_inclusion: ModuleHom
    splitting: ModuleHom
    wall: WallComplex
    sequence: YonedaSequence
    expected_ranks: list
    rank_formula_check: bool
    verdict: Optional[GrowthVerdict] = None
    syzygy_degree: int = 0

    def to_json(self) -> dict:
        m = self.sequence.degree // 2
        out = {"m": m, "subgroups": [list(d.L.elements) for d, _ in self.sequence.provenance],
               "coboundary": self.splitting.matrix.tolist(),
               "rank_formula_check": self.rank_formula_check,
               "ranks": self.resolution.ranks, "expected_ranks": self.expected_ranks,
               "N_dim": self.N.dim, "wall_certificate": self.wall.certificate,
               "exactness": self.resolution.certificate}
        if self.verdict is not None:
            out["verdict"] = self.verdict.to_json()
        return out


def prop41_pipeline(G: Group, M: GModule, subgroups: Sequence[Subgroup],
                    column_resolutions: Optional[Sequence[Resolution]] = None,
                    paddings: Optional[Sequence[Optional[GModule]]] = None,
                    f: Optional[ComplexityFunction] = None, d_max=None,
                    length: int = 8) -> Prop41Result:
    """Resolution of ``M (+) N`` from resolutions of ``res M (+) N_i`` over the ``L_i``.

    The splice of the Bockstein sequences is totalized with the induced
    column resolutions; the vanishing of the product is tested by
    extending ``Z^{2m-1} -> M`` to all of ``P^{2m-1}``, which raises
    :class:`NonVanishingClass` when impossible.  The output is
    ``P^{n+2m-1}`` in degree ``n`` with augmentation ``v -> (h v, d v)``.
    """
    m = len(subgroups)
    if m == 0:
        raise BocksteinError("need at least one subgroup")
    p = M.p
    paddings = list(paddings) if paddings is not None else [None] * m
    NT = length + 2 * m - 1
    data = [bockstein_datum(G, L) for L in subgroups]
    seqs = [bockstein_sequence(d, M, N) for d, N in zip(data, paddings)]
    S = splice(seqs)

    col_res = []
    for s, L in enumerate(subgroups):
        if column_resolutions is not None and column_resolutions[s] is not None:
            R = column_resolutions[s]
            if R.length < NT - 2 * s:
                raise BocksteinError(f"column resolution over L_{s + 1} has length {R.length}, "
                                     f"need {NT - 2 * s}")
        else:
            base = restrict(M, L)
            if paddings[s] is not None:
                base = direct_sum(base, paddings[s])
            R = resolve(base, NT - 2 * s)
        col_res.append(R)
    induced = [induce_resolution(R, L) for R, L in zip(col_res, subgroups)]
    columns = [induced[i // 2] for i in range(2 * m)]
    W = build_wall(S.interior(), columns, length=NT)
    T = W.total
    top = 2 * m - 1

    # rho: Z^{2m-1} -> M through pi and iota^{-1}
    Dtop = T.d(top).matrix
    Z = la.kernel_basis(Dtop, p)
    img = la.matmul(W.projection[top].matrix, Z, p)
    R = la.solve_many(S.iota.matrix, img, p)
    if R is None:
        raise BocksteinError("projection of cycles misses the image of M")
    Ptop = T.modules[top]
    Phi = free_hom_precompose_matrix(Ptop, M, Z)
    y = la.solve(Phi, R.reshape(-1, order="F"), p)
    if y is None:
        raise NonVanishingClass("the spliced Bockstein product does not vanish on M")
    h = extend_from_generators(Ptop, M, y.reshape((M.dim, Ptop.rank), order="F"))

    B = la.image_basis(Dtop, p)
    N, N_inc = submodule(T.modules[top - 1], B)
    coordsN = la.solve_many(B, Dtop, p)
    MN = direct_sum(M, N)
    aug = ModuleHom(Ptop, MN, np.vstack([h.matrix, coordsN]), check=False)
    res = Resolution(MN, T.modules[top:], T.differentials[top:], aug, certify=True)

    ranks = [R.ranks for R in col_res]
    expected = [rank_formula(ranks, n) for n in range(res.length + 1)]
    verdict = growth_verdict(res.ranks, f, d_max) if f is not None else None
    return Prop41Result(res, N, N_inc, h, W, S, expected, expected == res.ranks, verdict,
                        syzygy_degree=2 * m - 1)
