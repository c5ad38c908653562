"""Minimal resolutions of the trivial module and how fast they grow.

Over an elementary abelian group (Z_p)^r the ranks follow C(n+r-1, r-1),
a polynomial of degree r-1.  Cyclic and quaternion groups give bounded
(periodic) ranks, and the dihedral group of order 8 grows linearly like its
Klein four-subgroups.
"""

from __future__ import annotations

from wallres import ComplexityFunction, growth_verdict, resolve, trivial_module
from wallres.serialization import named_group

# (group, p, expected polynomial degree of growth)
CASES = [("Z2", 2, 0), ("Z2^2", 2, 1), ("Z2^3", 2, 2), ("Z3^2", 3, 1), ("Z4", 2, 0),
         ("Q8", 2, 0), ("D8", 2, 1), ("Z2xZ4", 2, 1)]

for name, p, a in CASES:
    G = named_group(name)
    R = resolve(trivial_module(G, p), 8)
    v = growth_verdict(R.ranks, ComplexityFunction.polynomial(a))
    print(f"{name:6s} p={p}  ranks={R.ranks}  rank_n <= {v.d} (n+1)^{a}")
