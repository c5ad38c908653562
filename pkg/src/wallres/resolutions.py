"""Chain complexes, free resolutions, chain-map lifting and growth verdicts.

Homological indexing throughout: ``C_n -> C_{n-1}``.  A resolution of
``M`` is a complex of free modules ``F_N -> ... -> F_0`` with an
augmentation ``F_0 -> M``; ``d(n)`` is ``F_n -> F_{n-1}`` for ``n >= 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import linalg as la
from .gmodules import FreeModule, GModule, ModuleHom, extend_from_generators, kernel, submodule

__all__ = [
    "ChainComplex",
    "Resolution",
    "ResolutionError",
    "ComplexityFunction",
    "GrowthVerdict",
    "free_cover",
    "resolve",
    "syzygy",
    "growth_verdict",
    "finite_length_verdict",
    "lift_chain_map",
    "homotopy_to_zero",
    "homology_dims",
    "induce_resolution",
    "direct_sum_resolution",
    "restrict_resolution",
    "DEFAULT_LENGTH",
]

DEFAULT_LENGTH = 10


class ResolutionError(ValueError):
    pass


class ChainComplex:
    """Modules ``C_0..C_N`` with differentials ``d_n: C_n -> C_{n-1}``."""

    def __init__(self, modules: Sequence[GModule], differentials: Sequence[ModuleHom],
                 check: bool = True):
        self.modules = list(modules)
        self.differentials = list(differentials)
        if len(self.differentials) != max(len(self.modules) - 1, 0):
            raise ResolutionError("need one differential per adjacent pair of modules")
        for n, d in enumerate(self.differentials, start=1):
            if d.source.dim != self.modules[n].dim or d.target.dim != self.modules[n - 1].dim:
                raise ResolutionError(f"differential {n} has the wrong shape")
        if check:
            self.check_d_squared()

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    def d(self, n: int) -> ModuleHom:
        return self.differentials[n - 1]

    def check_d_squared(self):
        for n in range(2, len(self.modules)):
            prod = la.matmul(self.d(n - 1).matrix, self.d(n).matrix, self.d(n).p)
            if np.any(prod):
                raise ResolutionError(f"d_{n - 1} d_{n} != 0")

    def dims(self) -> list[int]:
        return [M.dim for M in self.modules]


def homology_dims(C: ChainComplex) -> list[int]:
    """``dim ker d_n - dim im d_{n+1}`` for every degree of ``C``."""
    ranks = [0] + [d.rank() for d in C.differentials] + [0]
    return [C.modules[n].dim - ranks[n] - ranks[n + 1] for n in range(len(C.modules))]


class Resolution:
    """A free resolution ``F_N -> ... -> F_0 -> M`` truncated at length ``N``."""

    def __init__(self, module: GModule, modules: Sequence[FreeModule],
                 differentials: Sequence[ModuleHom], augmentation: ModuleHom,
                 certify: bool = True, certificate: Optional[list] = None):
        self.module = module
        self.complex = ChainComplex(modules, differentials, check=False)
        self.augmentation = augmentation
        self.kernels: dict[int, tuple[np.ndarray, np.ndarray]] = {}
        if certificate is not None:
            self.certificate = certificate
        elif certify:
            self.certificate = self.certify()
        else:
            self.certificate = None

    # -------------------------------------------------------------- access
    @property
    def modules(self) -> list[FreeModule]:
        return self.complex.modules

    @property
    def length(self) -> int:
        return self.complex.length

    @property
    def ranks(self) -> list[int]:
        return [F.rank for F in self.complex.modules]

    @property
    def p(self) -> int:
        return self.module.p

    @property
    def group(self):
        return self.module.group

    def d(self, n: int) -> ModuleHom:
        """``d(0)`` is the augmentation."""
        return self.augmentation if n == 0 else self.complex.d(n)

    def certify(self) -> list[dict]:
        """Exactness checks by rank: ``dim ker d_n == rank d_{n+1}`` below the top."""
        p = self.p
        eps = self.augmentation.matrix
        r0 = la.rank(eps, p)
        if r0 != self.module.dim:
            raise ResolutionError("augmentation is not surjective")
        if self.length >= 1 and np.any(la.matmul(eps, self.d(1).matrix, p)):
            raise ResolutionError("augmentation composed with d_1 is nonzero")
        self.complex.check_d_squared()
        ranks = [r0] + [self.d(n).rank() for n in range(1, self.length + 1)]
        cert = []
        for n in range(self.length):
            ker = self.modules[n].dim - ranks[n]
            if ker != ranks[n + 1]:
                raise ResolutionError(f"not exact at degree {n}: kernel {ker}, image {ranks[n + 1]}")
            cert.append({"degree": n, "kernel_dim": ker, "image_rank": ranks[n + 1]})
        return cert

    def is_exact(self) -> bool:
        try:
            self.certify()
        except ResolutionError:
            return False
        return True

    def truncate(self, N: int) -> "Resolution":
        if N > self.length:
            raise ResolutionError(f"cannot extend a resolution of length {self.length} to {N}")
        cert = None if self.certificate is None else self.certificate[:N]
        out = Resolution(self.module, self.modules[:N + 1], self.complex.differentials[:N],
                         self.augmentation, certify=False, certificate=cert)
        out.kernels = {k: v for k, v in self.kernels.items() if k <= N}
        return out

    def to_json(self) -> dict:
        return {"ranks": self.ranks, "length": self.length,
                "exactness": self.certificate}

    def __repr__(self):
        return f"Resolution(ranks={self.ranks})"


# ------------------------------------------------------------ free covers
def _generators_mod_radical(G, p: int, act_coords, k: int) -> np.ndarray:
    """Indices of coordinate vectors spanning ``K / I K``.

    ``act_coords(s)`` gives the action of generator ``s`` in a basis of
    ``K``; the returned standard basis indices complete ``I K``.
    """
    if k == 0:
        return np.zeros(0, dtype=np.int64)
    gens = G.generators
    if not gens:
        return np.arange(k)
    I = la.identity(k)
    # row space of the stacked (s - 1)^T, reduced one generator at a time
    basis = la.zeros(0, k)
    piv: list[int] = []
    for s in gens:
        rows = np.vstack([basis, np.remainder(act_coords(s) - I, p).T])
        R, piv, r = la.rref(rows, p)
        basis = R[:r]
    return np.setdiff1d(np.arange(k), piv)


def _greedy_generators(G, p: int, act_coords, k: int) -> np.ndarray:
    """Indices of coordinate vectors generating the whole space as a module,
    each taken only if it lies outside the submodule generated so far."""
    gens = G.generators
    mats = [np.asarray(act_coords(s)) for s in gens]
    rows: list[np.ndarray] = []          # echelon rows, rows[t] has pivot piv[t]
    piv: list[int] = []
    inv = la.PrimeField(p).inv

    def reduce(v):
        v = v.copy()
        for r, c in zip(rows, piv):
            if v[c]:
                v = np.remainder(v - v[c] * r, p)
        return v

    chosen = []
    for i in range(k):
        if len(rows) == k:
            break
        e = np.zeros(k, dtype=np.int64)
        e[i] = 1
        if not reduce(e).any():
            continue
        chosen.append(i)
        queue = [e]
        while queue and len(rows) < k:
            v = queue.pop()
            w = reduce(v)
            nz = np.flatnonzero(w)
            if nz.size == 0:
                continue
            c = int(nz[0])
            w = np.remainder(w * inv(int(w[c])), p)
            rows = [np.remainder(r - r[c] * w, p) if r[c] else r for r in rows]
            rows.append(w)
            piv.append(c)
            queue.extend(np.remainder(A @ v, p) for A in mats)
    return np.array(chosen, dtype=np.int64)


def _check_minimal_ok(M: GModule):
    if not M.group.is_p_group(M.p):
        raise ResolutionError(
            f"minimal strategy needs a {M.p}-group, got a group of order {M.group.order}")


def free_cover(M: GModule, strategy: str = "minimal") -> tuple[FreeModule, ModuleHom]:
    """A free module ``F`` with a surjection ``F -> M``.

    ``minimal`` (p-groups in characteristic p only) uses a basis of
    ``M / rad M``; ``generic`` uses every basis vector of ``M``; ``greedy``
    keeps a basis vector only when it lies outside the submodule generated by
    the earlier ones (any group, not minimal in general).
    """
    G = M.group
    p = M.p
    if strategy == "minimal":
        _check_minimal_ok(M)
        idx = _generators_mod_radical(G, p, M.act, M.dim)
        gens = la.identity(M.dim)[:, idx]
    elif strategy == "generic":
        gens = la.identity(M.dim)
    elif strategy == "greedy":
        gens = la.identity(M.dim)[:, _greedy_generators(G, p, M.act, M.dim)]
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    F = FreeModule(G, p, gens.shape[1])
    eps = extend_from_generators(F, M, gens)
    return F, eps


def resolve(M: GModule, length: int = DEFAULT_LENGTH, strategy: str = "minimal") -> Resolution:
    """Iterated free covers of kernels, up to ``F_length``.

    Exactness is certified on the fly: each ``d_n`` is written as
    ``K_{n-1} @ E_n`` with ``K_{n-1}`` a basis of ``ker d_{n-1}`` and
    ``rank E_n == dim K_{n-1}`` is recorded.
    """
    if strategy == "minimal":
        _check_minimal_ok(M)
    p = M.p
    G = M.group
    F0, eps = free_cover(M, strategy)
    modules = [F0]
    diffs: list[ModuleHom] = []
    cert = []
    K, free = la.kernel_basis(eps.matrix, p, return_free=True)
    kernels = {0: (K, free)}
    for n in range(1, length + 1):
        Fprev = modules[-1]
        k = K.shape[1]

        if strategy == "minimal":
            def coords(s, K=K, free=free, Fprev=Fprev):
                return Fprev.act_on(s, K)[free]
            idx = _generators_mod_radical(G, p, coords, k)
        elif strategy == "greedy":
            def coords(s, K=K, free=free, Fprev=Fprev):
                return Fprev.act_on(s, K)[free]
            idx = _greedy_generators(G, p, coords, k)
        else:
            idx = np.arange(k)
        Fn = FreeModule(G, p, idx.size)
        dn = extend_from_generators(Fn, Fprev, K[:, idx])
        E = dn.matrix[free]
        if n < length:
            Knew, free_new, r = _kernel_and_rank(E, p)
        else:
            r = la.rank(E, p) if E.size else 0
        if r != k:
            raise ResolutionError(f"cover at degree {n} is not onto the kernel")
        cert.append({"degree": n - 1, "kernel_dim": k, "image_rank": r})
        modules.append(Fn)
        diffs.append(dn)
        if n < length:
            K, free = Knew, free_new
            kernels[n] = (K, free)
    res = Resolution(M, modules, diffs, eps, certify=False, certificate=cert)
    res.kernels = kernels
    return res


def _kernel_and_rank(A: np.ndarray, p: int):
    K, free = la.kernel_basis(A, p, return_free=True)
    return K, free, A.shape[1] - free.size


def syzygy(M: GModule, n: int, strategy: str = "minimal",
           resolution: Optional[Resolution] = None) -> tuple[GModule, ModuleHom]:
    """``Omega^n M`` (the kernel of ``d_{n-1}``, with ``d_0`` the augmentation)
    as a module together with its inclusion into ``F_{n-1}``."""
    if n == 0:
        return M, ModuleHom(M, M, la.identity(M.dim), check=False)
    if resolution is None:
        resolution = resolve(M, n, strategy)
    if resolution.length < n - 1:
        raise ResolutionError(f"resolution of length {resolution.length} too short for syzygy {n}")
    if n - 1 in resolution.kernels:
        K, free = resolution.kernels[n - 1]
        L = la.zeros(K.shape[1], K.shape[0])
        L[np.arange(free.size), free] = 1
        return submodule(resolution.modules[n - 1], K, coords=L)
    return kernel(resolution.d(n - 1))


# ------------------------------------------------------- lifting, homotopy
def _solve_on_generators(target_map: np.ndarray, rhs: np.ndarray, p: int, what: str) -> np.ndarray:
    X = la.solve_many(target_map, rhs, p)
    if X is None:
        raise ResolutionError(what)
    return X


def lift_chain_map(g: ModuleHom, F: Resolution, F2: Resolution,
                   length: Optional[int] = None) -> list[ModuleHom]:
    """Chain map ``g^j: F_j -> F2_j`` over ``g: M -> M2``.

    ``eps2 g^0 = g eps`` and ``d2 g^j = g^{j-1} d`` hold exactly.
    """
    p = g.p
    L = min(F.length, F2.length) if length is None else length
    if L > min(F.length, F2.length):
        raise ResolutionError("resolutions too short for the requested lift")
    out: list[ModuleHom] = []
    F0 = F.modules[0]
    rhs = la.matmul(g.matrix, F0.generator_columns(F.augmentation.matrix), p)
    X = _solve_on_generators(F2.augmentation.matrix, rhs, p, "lift fails in degree 0")
    out.append(extend_from_generators(F0, F2.modules[0], X))
    for j in range(1, L + 1):
        Fj = F.modules[j]
        rhs = la.matmul(out[-1].matrix, Fj.generator_columns(F.d(j).matrix), p)
        X = _solve_on_generators(F2.d(j).matrix, rhs, p, f"lift fails in degree {j}")
        out.append(extend_from_generators(Fj, F2.modules[j], X))
    return out


def homotopy_to_zero(phi: Sequence[ModuleHom], F: Resolution, F2: Resolution,
                     shift: int = 0) -> list[ModuleHom]:
    """Maps ``h_j: F_j -> F2_{j+shift+1}`` with ``phi_j = d2 h_j + h_{j-1} d``.

    ``phi_j: F_j -> F2_{j+shift}`` must be a chain map (up to the sign
    conventions of the caller) lifting zero; for ``shift == 0`` this means
    ``eps2 phi_0 == 0``, which is checked.
    """
    if not phi:
        return []
    p = phi[0].p
    if shift == 0 and np.any(la.matmul(F2.augmentation.matrix, phi[0].matrix, p)):
        raise ResolutionError("chain map does not lift the zero map")
    hs: list[ModuleHom] = []
    for j, ph in enumerate(phi):
        Fj = F.modules[j]
        tgt_deg = j + shift + 1
        if tgt_deg > F2.length:
            raise ResolutionError(f"target resolution too short (needs degree {tgt_deg})")
        rhs = Fj.generator_columns(ph.matrix)
        if j > 0 and hs:
            rhs = np.remainder(rhs - la.matmul(hs[-1].matrix, Fj.generator_columns(F.d(j).matrix), p), p)
        X = _solve_on_generators(F2.d(tgt_deg).matrix, rhs, p,
                                 f"no homotopy in degree {j}: map is not null-homotopic")
        hs.append(extend_from_generators(Fj, F2.modules[tgt_deg], X))
    return hs


# -------------------------------------------------------- growth functions
@dataclass(frozen=True)
class ComplexityFunction:
    """A proper complexity function from one of the admitted families.

    ``poly``: ``(n+1)^a``; ``log``: ``log(n+2)``; ``exp``: ``e^n``.  The
    shifted forms keep ``f(0) > 0`` so that a rank-one ``F_0`` is bounded.
    Properness constants (``f(m+n) <= c_n f(m)`` for ``m+n >= 0``):
    ``(n+1)^a``, ``log(n+2)/log 2`` and ``e^n`` for ``n >= 0``; 1 below.
    """

    family: str
    a: int = 0

    def __post_init__(self):
        if self.family not in ("poly", "log", "exp"):
            raise ValueError(f"unknown complexity family {self.family!r}")
        if self.family == "poly" and self.a < 0:
            raise ValueError("polynomial degree must be nonnegative")

    @classmethod
    def polynomial(cls, a: int) -> "ComplexityFunction":
        return cls("poly", int(a))

    @classmethod
    def parse(cls, text: str) -> "ComplexityFunction":
        """``poly:A``, ``log`` or ``exp``."""
        if text.startswith("poly"):
            _, _, a = text.partition(":")
            return cls("poly", int(a or 0))
        return cls(text)

    def __call__(self, n: int):
        if self.family == "poly":
            return (n + 1) ** self.a
        if self.family == "log":
            return math.log(n + 2)
        return math.exp(n)

    def proper_constant(self, n: int) -> float:
        if n <= 0:
            return 1.0
        if self.family == "poly":
            return float((n + 1) ** self.a)
        if self.family == "log":
            return math.log(n + 2) / math.log(2)
        return math.exp(n)

    def check_proper(self, shifts=range(-4, 5), m_max: int = 64) -> bool:
        for n in shifts:
            c = self.proper_constant(n)
            for m in range(0, m_max + 1):
                if m + n < 0:
                    continue
                if self(m + n) > c * self(m) * (1 + 1e-12):
                    return False
        return True

    def to_json(self) -> dict:
        return {"family": self.family, "a": self.a} if self.family == "poly" else {"family": self.family}


@dataclass
class GrowthVerdict:
    """Outcome of comparing a rank prefix against ``d * f(n)``.

    Verdicts are relative to the checked prefix ``ranks[0..prefix-1]``;
    they are evidence, not a proof about the full resolution.  For the
    ``finite_length`` kind ``d`` is the length of the resolution.
    """

    holds: bool
    d: Optional[Fraction]
    prefix: int
    ranks: list = field(default_factory=list)
    f: Optional[ComplexityFunction] = None
    kind: str = "complexity"

    def to_json(self) -> dict:
        d = self.d
        if isinstance(d, Fraction):
            d = d.numerator if d.denominator == 1 else f"{d.numerator}/{d.denominator}"
        out = {"ranks": list(self.ranks), "d": d, "prefix": self.prefix, "holds": self.holds}
        if self.kind == "complexity":
            out["f"] = self.f.to_json()
        else:
            out["kind"] = self.kind
        return out


def _ceil_fraction(x: float, den: int = 10**6) -> Fraction:
    return Fraction(math.ceil(x * den - 1e-9), den)


def growth_verdict(ranks: Sequence[int], f: ComplexityFunction, d_max=None) -> GrowthVerdict:
    """Least ``d`` with ``ranks[n] <= d f(n)`` on the prefix; holds iff ``d <= d_max``."""
    ranks = [int(r) for r in ranks]
    if not ranks:
        raise ValueError("empty rank sequence")
    best = Fraction(0)
    for n, r in enumerate(ranks):
        fn = f(n)
        if fn <= 0:
            if r > 0:
                return GrowthVerdict(False, None, len(ranks), ranks, f)
            continue
        ratio = Fraction(r, fn) if isinstance(fn, int) else _ceil_fraction(r / fn)
        best = max(best, ratio)
    holds = d_max is None or best <= Fraction(d_max)
    return GrowthVerdict(holds, best if holds else None, len(ranks), ranks, f)


def finite_length_verdict(ranks: Sequence[int]) -> GrowthVerdict:
    """Holds when the prefix ends in zeros; ``d`` is the last nonzero degree."""
    ranks = [int(r) for r in ranks]
    nz = [n for n, r in enumerate(ranks) if r]
    length = nz[-1] if nz else 0
    holds = not ranks or ranks[-1] == 0 or len(ranks) == 1
    return GrowthVerdict(holds, Fraction(length) if holds else None, len(ranks), ranks,
                         None, kind="finite_length")


# ------------------------------------------------- change of group
def _perm_of(Q: np.ndarray) -> np.ndarray:
    # Q is a permutation matrix; perm[col] = row
    return np.argmax(Q, axis=0) if Q.size else np.zeros(0, dtype=np.int64)


def _conjugate_perm(A: np.ndarray, prow: np.ndarray, pcol: np.ndarray) -> np.ndarray:
    out = np.zeros_like(A)
    if A.size:
        out[np.ix_(prow, pcol)] = A
    return out


def induce_resolution(R: Resolution, H) -> Resolution:
    """``Ind_H^G`` of a resolution over ``H.as_group()``: a resolution of
    ``Ind M`` by free ``G``-modules with the same ranks."""
    from .gmodules import induce, induce_free
    s = H.index
    frees, perms = [], []
    for F in R.modules:
        FG, Q = induce_free(F, H)
        frees.append(FG)
        perms.append(_perm_of(Q))
    IM = induce(R.module, H)
    diffs = []
    for n in range(1, R.length + 1):
        A = np.kron(la.identity(s), R.d(n).matrix)
        diffs.append(ModuleHom(frees[n], frees[n - 1], _conjugate_perm(A, perms[n - 1], perms[n]),
                               check=False))
    E = np.kron(la.identity(s), R.augmentation.matrix)
    eps = ModuleHom(frees[0], IM, _conjugate_perm(E, np.arange(IM.dim), perms[0]), check=False)
    cert = None if R.certificate is None else list(R.certificate)
    return Resolution(IM, frees, diffs, eps, certify=False, certificate=cert)


def restrict_resolution(R: Resolution, H) -> Resolution:
    """A resolution over ``H`` obtained by restricting every term; ranks
    scale by ``[G:H]``."""
    from .gmodules import restrict, restrict_free
    frees, perms = [], []
    for F in R.modules:
        FH, P = restrict_free(F, H)
        frees.append(FH)
        perms.append(_perm_of(P))
    # coordinates on F_H are a permutation of those on res F
    diffs = []
    for n in range(1, R.length + 1):
        A = R.d(n).matrix[np.ix_(perms[n - 1], perms[n])]
        diffs.append(ModuleHom(frees[n], frees[n - 1], A, check=False))
    MH = restrict(R.module, H)
    eps = ModuleHom(frees[0], MH, R.augmentation.matrix[:, perms[0]], check=False)
    cert = None if R.certificate is None else list(R.certificate)
    return Resolution(MH, frees, diffs, eps, certify=False, certificate=cert)


def direct_sum_resolution(resolutions: Sequence[Resolution]) -> Resolution:
    """Block-diagonal resolution of the direct sum of the resolved modules;
    ranks add pointwise (truncated to the shortest length)."""
    from .gmodules import direct_sum
    if not resolutions:
        raise ResolutionError("empty direct sum")
    N = min(R.length for R in resolutions)
    R0 = resolutions[0]
    G, p = R0.group, R0.p
    M = R0.module
    for R in resolutions[1:]:
        M = direct_sum(M, R.module)
    frees = [FreeModule(G, p, sum(R.modules[n].rank for R in resolutions)) for n in range(N + 1)]

    def blockdiag(mats, rows, cols):
        grid = [[mats[a] if a == b else None for b in range(len(mats))] for a in range(len(mats))]
        return la.block_matrix(grid, rows, cols)

    diffs = []
    for n in range(1, N + 1):
        A = blockdiag([R.d(n).matrix for R in resolutions],
                      [R.modules[n - 1].dim for R in resolutions],
                      [R.modules[n].dim for R in resolutions])
        diffs.append(ModuleHom(frees[n], frees[n - 1], A, check=False))
    E = blockdiag([R.augmentation.matrix for R in resolutions],
                  [R.module.dim for R in resolutions], [R.modules[0].dim for R in resolutions])
    eps = ModuleHom(frees[0], M, E, check=False)
    return Resolution(M, frees, diffs, eps, certify=False,
                      certificate=_merge_certificates(resolutions, N))


def _merge_certificates(resolutions, N):
    if any(R.certificate is None for R in resolutions):
        return None
    out = []
    for n in range(N):
        out.append({"degree": n,
                    "kernel_dim": sum(R.certificate[n]["kernel_dim"] for R in resolutions),
                    "image_rank": sum(R.certificate[n]["image_rank"] for R in resolutions)})
    return out
