"""Finite groups given by Cayley tables, their subgroups and homomorphisms.

Elements are the integers ``0..n-1``; ``cayley[a, b]`` is the index of the
product ``a*b``.  Permutations compose right to left: ``(g*h)(x) = g(h(x))``.
"""

from __future__ import annotations

import itertools
from collections import deque
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from .linalg import is_prime

DEFAULT_ORDER_CAP = 200
ISOMORPHISM_CAP = 64


class GroupAxiomError(ValueError):
    """A Cayley table fails one of the group axioms."""


class SizeCapError(ValueError):
    """A construction would exceed the configured order cap."""


class Group:
    """A finite group stored as a validated Cayley table."""

    def __init__(self, cayley, generators: Optional[Sequence[int]] = None,
                 labels: Optional[Sequence] = None, check: bool = True):
        table = np.asarray(cayley, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise GroupAxiomError("Cayley table must be square")
        n = table.shape[0]
        if n == 0:
            raise GroupAxiomError("a group has at least one element")
        if table.min() < 0 or table.max() >= n:
            raise GroupAxiomError("Cayley table entries out of range")
        self.cayley = table
        self.cayley.setflags(write=False)
        self.order = n
        self.labels = list(labels) if labels is not None else None
        self.identity = self._find_identity()
        inv = np.argmax(table == self.identity, axis=1)
        if check:
            bad = np.flatnonzero(table[np.arange(n), inv] != self.identity)
            if bad.size:
                raise GroupAxiomError(f"inverse axiom fails: element {int(bad[0])} has no inverse")
            bad = np.flatnonzero(table[inv, np.arange(n)] != self.identity)
            if bad.size:
                raise GroupAxiomError(f"inverse axiom fails: element {int(bad[0])} has no left inverse")
            self._check_associative()
        self.inverse = inv
        self.inverse.setflags(write=False)
        self._generators = None if generators is None else [int(g) for g in generators]

    def _find_identity(self) -> int:
        n = self.order
        ar = np.arange(n)
        for e in range(n):
            if np.array_equal(self.cayley[e], ar) and np.array_equal(self.cayley[:, e], ar):
                return e
        raise GroupAxiomError("identity axiom fails: no two-sided identity element")

    def _check_associative(self):
        T = self.cayley
        # (a*b)*c vs a*(b*c), one slice of a at a time
        for a in range(self.order):
            left = T[T[a]]            # left[b, c] = (a*b)*c
            right = T[a][T]           # right[b, c] = a*(b*c)
            diff = np.argwhere(left != right)
            if diff.size:
                b, c = (int(x) for x in diff[0])
                raise GroupAxiomError(
                    f"associativity fails for triple ({a}, {b}, {c}): "
                    f"({a}*{b})*{c} = {int(left[b, c])} but {a}*({b}*{c}) = {int(right[b, c])}")

    # ----------------------------------------------------------------- basics
    def mul(self, a: int, b: int) -> int:
        return int(self.cayley[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        r = self.identity
        for _ in range(k):
            r = self.mul(r, a)
        return r

    @cached_property
    def element_orders(self) -> np.ndarray:
        orders = np.zeros(self.order, dtype=np.int64)
        for g in range(self.order):
            x, k = g, 1
            while x != self.identity:
                x = self.mul(x, g)
                k += 1
            orders[g] = k
        return orders

    @property
    def generators(self) -> list[int]:
        if self._generators is None:
            self._generators = self._greedy_generators()
        return list(self._generators)

    def _greedy_generators(self) -> list[int]:
        gens: list[int] = []
        span = {self.identity}
        for g in range(self.order):
            if g not in span:
                gens.append(g)
                span = set(self.closure(gens))
                if len(span) == self.order:
                    break
        return gens

    def closure(self, elements: Iterable[int]) -> list[int]:
        """Sorted elements of the subgroup generated by ``elements``."""
        gens = [int(g) for g in elements]
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = int(self.cayley[x, g])
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(seen)

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.cayley, self.cayley.T))

    def is_p_group(self, p: int) -> bool:
        n = self.order
        while n % p == 0:
            n //= p
        return n == 1

    def full(self) -> "Subgroup":
        return Subgroup(self, range(self.order), check=False)

    def trivial(self) -> "Subgroup":
        return Subgroup(self, [self.identity], check=False)

    def subgroup(self, elements: Iterable[int]) -> "Subgroup":
        return Subgroup(self, elements)

    def generated(self, elements: Iterable[int]) -> "Subgroup":
        return Subgroup(self, self.closure(elements), check=False)

    def __eq__(self, other):
        if not isinstance(other, Group):
            return NotImplemented
        return self is other or (self.order == other.order
                                 and np.array_equal(self.cayley, other.cayley))

    def __hash__(self):
        return hash((self.order, self.cayley[0].tobytes(), self.cayley[:, -1].tobytes()))

    def __repr__(self):
        return f"Group(order={self.order})"

    def to_json(self) -> dict:
        return {"order": self.order, "cayley": self.cayley.tolist()}


class Subgroup:
    """A subgroup of ``parent`` given by a sorted set of element indices."""

    def __init__(self, parent: Group, elements: Iterable[int], check: bool = True):
        self.parent = parent
        self.elements = tuple(sorted({int(e) for e in elements}))
        if check:
            self._check()
        self._index_of = {g: i for i, g in enumerate(self.elements)}

    def _check(self):
        G = self.parent
        els = set(self.elements)
        if G.identity not in els:
            raise GroupAxiomError("subgroup does not contain the identity")
        for a in self.elements:
            if G.inv(a) not in els:
                raise GroupAxiomError(f"subgroup not closed under inverse at {a}")
            for b in self.elements:
                if G.mul(a, b) not in els:
                    raise GroupAxiomError(f"subgroup not closed under product ({a}, {b})")

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    def __contains__(self, g) -> bool:
        return int(g) in self._index_of

    def local(self, g: int) -> int:
        """Position of parent element ``g`` inside :meth:`as_group`."""
        return self._index_of[int(g)]

    @cached_property
    def _group(self) -> Group:
        els = np.asarray(self.elements)
        pos = np.full(self.parent.order, -1, dtype=np.int64)
        pos[els] = np.arange(len(els))
        table = pos[self.parent.cayley[np.ix_(els, els)]]
        gens = None
        if self.parent._generators is not None and set(self.parent._generators) <= set(self.elements):
            gens = [int(pos[g]) for g in self.parent._generators]
        return Group(table, generators=gens, check=False)

    def as_group(self) -> Group:
        """The subgroup as a standalone group, elements renumbered ``0..|H|-1``."""
        return self._group

    def is_normal(self) -> bool:
        G = self.parent
        els = set(self.elements)
        for g in G.generators:
            gi = G.inv(g)
            for h in self.elements:
                if G.mul(G.mul(g, h), gi) not in els:
                    return False
        return True

    def conjugate(self, g: int) -> "Subgroup":
        G = self.parent
        gi = G.inv(g)
        return Subgroup(G, (G.mul(G.mul(g, h), gi) for h in self.elements), check=False)

    @cached_property
    def left_transversal(self) -> list[int]:
        """Minimal element of every left coset ``gH``, ascending."""
        G = self.parent
        seen = np.zeros(G.order, dtype=bool)
        reps = []
        for g in range(G.order):
            if not seen[g]:
                reps.append(g)
                seen[[G.mul(g, h) for h in self.elements]] = True
        return reps

    @cached_property
    def coset_of(self) -> np.ndarray:
        """Index into :attr:`left_transversal` of the coset containing each element."""
        G = self.parent
        out = np.empty(G.order, dtype=np.int64)
        for i, t in enumerate(self.left_transversal):
            out[[G.mul(t, h) for h in self.elements]] = i
        return out

    def issubset(self, other: "Subgroup") -> bool:
        return set(self.elements) <= set(other.elements)

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent == other.parent and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        return f"Subgroup(order={self.order}, index={self.index})"


class GroupHom:
    """A homomorphism given by the image of every source element."""

    def __init__(self, source: Group, target: Group, images: Sequence[int], check: bool = True):
        self.source = source
        self.target = target
        self.images = np.asarray(images, dtype=np.int64)
        if self.images.shape != (source.order,):
            raise ValueError("image table must list one image per source element")
        if check:
            T = target.cayley
            lhs = self.images[source.cayley]
            rhs = T[self.images[:, None], self.images[None, :]]
            bad = np.argwhere(lhs != rhs)
            if bad.size:
                a, b = (int(x) for x in bad[0])
                raise GroupAxiomError(f"not multiplicative at ({a}, {b})")

    def __call__(self, g: int) -> int:
        return int(self.images[g])

    def kernel(self) -> Subgroup:
        return Subgroup(self.source, np.flatnonzero(self.images == self.target.identity), check=False)

    def is_injective(self) -> bool:
        return len(set(self.images.tolist())) == self.source.order

    def is_surjective(self) -> bool:
        return len(set(self.images.tolist())) == self.target.order

    def is_isomorphism(self) -> bool:
        return self.source.order == self.target.order and self.is_injective()

    def preimage(self, sub: Subgroup) -> Subgroup:
        return Subgroup(self.source, [g for g in range(self.source.order) if self.images[g] in sub],
                        check=False)


# --------------------------------------------------------------- constructors
def group_from_cayley(table) -> Group:
    return Group(table)


def _perm_tuple(perm, m: int) -> tuple:
    t = tuple(int(x) for x in perm)
    if len(t) != m or sorted(t) != list(range(m)):
        raise ValueError(f"{list(perm)} is not a permutation of 0..{m - 1}")
    return t


def group_from_permutations(gens: Sequence[Sequence[int]], degree: Optional[int] = None,
                            cap: int = DEFAULT_ORDER_CAP) -> Group:
    """Closure of permutation generators, identity first, then BFS order."""
    gens = [list(g) for g in gens]
    if degree is None:
        degree = len(gens[0]) if gens else 1
    gens_t = [_perm_tuple(g, degree) for g in gens]
    ident = tuple(range(degree))
    elements = [ident]
    index = {ident: 0}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens_t:
            y = tuple(g[x[i]] for i in range(degree))
            if y not in index:
                if len(elements) >= cap:
                    raise SizeCapError(f"permutation group closure exceeds cap {cap}")
                index[y] = len(elements)
                elements.append(y)
                queue.append(y)
    n = len(elements)
    table = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            table[i, j] = index[tuple(a[b[k]] for k in range(degree))]
    gen_idx = [index[g] for g in gens_t if g != ident]
    return Group(table, generators=gen_idx, labels=elements, check=False)


def cyclic_group(n: int) -> Group:
    ar = np.arange(n)
    return Group((ar[:, None] + ar[None, :]) % n, generators=[1] if n > 1 else [], check=False)


def direct_product(G1: Group, G2: Group, cap: int = DEFAULT_ORDER_CAP) -> Group:
    """Product with element ``(a, b)`` stored at index ``a * |G2| + b``."""
    n1, n2 = G1.order, G2.order
    if n1 * n2 > cap:
        raise SizeCapError(f"direct product of order {n1 * n2} exceeds cap {cap}")
    A = G1.cayley[:, None, :, None]
    B = G2.cayley[None, :, None, :]
    table = (A * n2 + B).reshape(n1 * n2, n1 * n2)
    gens = [g * n2 + G2.identity for g in G1.generators] + [G1.identity * n2 + h for h in G2.generators]
    return Group(table, generators=gens, check=False)


def abelian_group(*orders: int) -> Group:
    G = cyclic_group(1)
    for n in orders:
        G = direct_product(G, cyclic_group(n))
    return G


def elementary_abelian_group(p: int, r: int) -> Group:
    return abelian_group(*([p] * r))


def dihedral_group(n: int) -> Group:
    """Symmetries of the ``n``-gon, order ``2n``."""
    rot = [(i + 1) % n for i in range(n)]
    ref = [(-i) % n for i in range(n)]
    return group_from_permutations([rot, ref], degree=n)


def quaternion_group() -> Group:
    # left regular action of Q8 on itself, elements 1,i,j,k,-1,-i,-j,-k
    names = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"]
    base = {("i", "j"): "k", ("j", "k"): "i", ("k", "i"): "j",
            ("j", "i"): "-k", ("k", "j"): "-i", ("i", "k"): "-j"}

    def mult(a, b):
        sa, ua = (a[0] == "-"), a.lstrip("-")
        sb, ub = (b[0] == "-"), b.lstrip("-")
        sign = sa ^ sb
        if ua == "1":
            u = ub
        elif ub == "1":
            u = ua
        elif ua == ub:
            u, sign = "1", not sign
        else:
            r = base[(ua, ub)]
            if r[0] == "-":
                sign = not sign
            u = r.lstrip("-")
        return ("-" if sign else "") + u

    idx = {nm: i for i, nm in enumerate(names)}
    table = [[idx[mult(a, b)] for b in names] for a in names]
    return Group(table, generators=[1, 2], labels=names)


def symmetric_group(m: int) -> Group:
    if m <= 1:
        return cyclic_group(1)
    cycle = list(range(1, m)) + [0]
    swap = [1, 0] + list(range(2, m))
    return group_from_permutations([cycle, swap], degree=m)


# ---------------------------------------------------------------- subgroups
def _prime_power_exponent(n: int, p: int) -> int:
    a = 0
    while n % p == 0:
        n //= p
        a += 1
    return a


def frattini_like_subgroup(G: Group, p: int) -> Subgroup:
    """Subgroup generated by all commutators and all ``p``-th powers."""
    gens = set()
    for a in range(G.order):
        gens.add(G.power(a, p))
        for b in range(G.order):
            gens.add(G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b))))
    return G.generated(sorted(gens))


def _elementary_quotient_coordinates(G: Group, p: int):
    """Coordinates of ``G -> G/Phi = (Z_p)^d`` where Phi = <[G,G], G^p>.

    Returns ``(coords, d)`` with ``coords[g]`` a length-``d`` tuple over Z_p.
    """
    Q, proj = quotient(G, frattini_like_subgroup(G, p))
    basis: list[int] = []
    span = [Q.identity]
    for q in range(Q.order):
        if q not in span:
            basis.append(q)
            span = Q.closure(basis)
    d = len(basis)
    coord_of = {}
    for v in itertools.product(range(p), repeat=d):
        x = Q.identity
        for b, k in zip(basis, v):
            x = Q.mul(x, Q.power(b, k))
        coord_of[x] = v
    return [coord_of[proj(g)] for g in range(G.order)], d


def index_p_homomorphisms(G: Group, p: int) -> list[tuple[Subgroup, np.ndarray]]:
    """Kernels of surjections ``G -> Z_p`` paired with the map as an array.

    Each surjection is normalised so that its first nonzero coordinate
    functional coefficient is 1; the list is sorted by kernel elements.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if G.order % p:
        return []
    coords, d = _elementary_quotient_coordinates(G, p)
    C = np.asarray(coords, dtype=np.int64).reshape(G.order, d)
    out = []
    for lam in itertools.product(range(p), repeat=d):
        nz = [x for x in lam if x]
        if not nz or nz[0] != 1:
            continue
        values = (C @ np.asarray(lam, dtype=np.int64)) % p
        kernel = Subgroup(G, np.flatnonzero(values == 0), check=False)
        out.append((kernel, values))
    out.sort(key=lambda kv: kv[0].elements)
    return out


def index_p_normal_subgroups(G: Group, p: int) -> list[Subgroup]:
    """All normal subgroups of index ``p`` (kernels of maps onto Z_p)."""
    return [K for K, _ in index_p_homomorphisms(G, p)]


def _elements_of_order(G: Group, p: int) -> list[int]:
    return [g for g in range(G.order) if G.element_orders[g] == p]


def elementary_abelian_subgroups(G: Group, p: int) -> list[tuple[Subgroup, int]]:
    """Every elementary abelian ``p``-subgroup with its rank, trivial included.

    Exhaustive: each subgroup of rank ``r+1`` is reached from one of rank
    ``r`` by adjoining a commuting element of order ``p``.  Sorted by rank,
    then by elements.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    T = G.cayley
    xs = _elements_of_order(G, p)
    commute = {x: {y for y in xs if T[x, y] == T[y, x]} for x in xs}
    layer = {(G.identity,)}
    found: dict[tuple, int] = {(G.identity,): 0}
    r = 0
    while layer:
        nxt = set()
        for E in layer:
            Eset = set(E)
            cands = set(xs)
            for e in E:
                if e != G.identity:
                    cands &= commute[e]
            for x in sorted(cands - Eset):
                new = tuple(sorted({T[e, G.power(x, k)] for e in E for k in range(p)}))
                if new not in found:
                    found[new] = r + 1
                    nxt.add(new)
        layer = nxt
        r += 1
    items = sorted(found.items(), key=lambda kv: (kv[1], kv[0]))
    return [(Subgroup(G, els, check=False), rank) for els, rank in items]


def maximal_elementary_abelian_subgroups(G: Group, p: int) -> list[tuple[Subgroup, int]]:
    subs = elementary_abelian_subgroups(G, p)
    out = []
    for E, r in subs:
        if not any(r2 > r and set(E.elements) < set(F.elements) for F, r2 in subs):
            out.append((E, r))
    return out


def p_rank(G: Group, p: int) -> int:
    return max(r for _, r in elementary_abelian_subgroups(G, p))


def sylow_subgroup(G: Group, p: int) -> Subgroup:
    """A Sylow ``p``-subgroup, grown greedily from the trivial group.

    Elements of ``p``-power order are tried in ascending index; any maximal
    ``p``-subgroup is Sylow, so repeated passes always reach full order.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    target = p ** _prime_power_exponent(G.order, p)
    current = [G.identity]
    pel = [g for g in range(G.order)
           if g != G.identity and _is_p_power(int(G.element_orders[g]), p)]
    changed = True
    while len(current) < target and changed:
        changed = False
        cur = set(current)
        for g in pel:
            if g in cur:
                continue
            trial = G.closure(current + [g])
            if _is_p_power(len(trial), p):
                current = trial
                cur = set(current)
                changed = True
                if len(current) == target:
                    break
    assert len(current) == target, "greedy Sylow search stalled"
    return Subgroup(G, current, check=False)


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def quotient(G: Group, N: Subgroup) -> tuple[Group, GroupHom]:
    """``G/N`` on cosets ordered by minimal representative, and the projection."""
    if N.parent != G:
        raise ValueError("N is not a subgroup of G")
    if not N.is_normal():
        raise ValueError("N is not normal in G")
    reps = N.left_transversal
    cos = N.coset_of
    k = len(reps)
    table = np.empty((k, k), dtype=np.int64)
    for i, a in enumerate(reps):
        for j, b in enumerate(reps):
            table[i, j] = cos[G.mul(a, b)]
    Q = Group(table, check=False)
    return Q, GroupHom(G, Q, cos, check=False)


def is_isomorphic_small(G1: Group, G2: Group) -> bool:
    """Exhaustive isomorphism test for groups of order at most 64."""
    if G1.order > ISOMORPHISM_CAP or G2.order > ISOMORPHISM_CAP:
        raise SizeCapError(f"isomorphism testing is capped at order {ISOMORPHISM_CAP}")
    if G1.order != G2.order:
        return False
    if sorted(G1.element_orders.tolist()) != sorted(G2.element_orders.tolist()):
        return False
    return find_isomorphism(G1, G2) is not None


def find_isomorphism(G1: Group, G2: Group) -> Optional[GroupHom]:
    gens = G1.generators
    # words: every element of G1 as (prefix element, generator) from a BFS tree
    parent: dict[int, tuple[int, int]] = {}
    order = [G1.identity]
    seen = {G1.identity}
    for x in order:
        for gi, g in enumerate(gens):
            y = G1.mul(x, g)
            if y not in seen:
                seen.add(y)
                parent[y] = (x, gi)
                order.append(y)
    o1 = G1.element_orders
    o2 = G2.element_orders
    cands = [[h for h in range(G2.order) if o2[h] == o1[g]] for g in gens]

    def attempt(imgs):
        img = np.full(G1.order, -1, dtype=np.int64)
        img[G1.identity] = G2.identity
        for y in order[1:]:
            x, gi = parent[y]
            img[y] = G2.mul(int(img[x]), imgs[gi])
        if len(set(img.tolist())) != G1.order:
            return None
        lhs = img[G1.cayley]
        rhs = G2.cayley[img[:, None], img[None, :]]
        if not np.array_equal(lhs, rhs):
            return None
        return GroupHom(G1, G2, img, check=False)

    def backtrack(i, imgs):
        if i == len(gens):
            return attempt(imgs)
        for h in cands[i]:
            if h in imgs:
                continue
            res = backtrack(i + 1, imgs + [h])
            if res is not None:
                return res
        return None

    return backtrack(0, [])
