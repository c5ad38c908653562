"""Bockstein sequences, their products, and the resolution built from a
vanishing product.

Over the Klein four-group no product of Bocksteins vanishes; over Z4 and Q8
the search finds a vanishing product, which feeds the Wall construction
over the spliced sequence and yields a resolution of k plus a padding
module whose ranks match the closed formula term by term.
"""

from __future__ import annotations

from wallres import prop41_pipeline, serre_search, trivial_module
from wallres.serialization import named_group

for name in ("Z2^2", "Z4", "Q8", "D8", "Z2xZ4"):
    G = named_group(name)
    k = trivial_module(G, 2)
    w = serre_search(G, k, m_max=3)
    if w is None:
        print(f"{name:6s} no vanishing product with m <= 3")
        continue
    subs = [list(L.elements) for L in w.subgroups]
    res = prop41_pipeline(G, k, w.subgroups, length=6)
    print(f"{name:6s} m={w.m} subgroups={subs}")
    print(f"       ranks={res.resolution.ranks} formula={res.expected_ranks} "
          f"padding dim={res.N.dim} exact={res.resolution.is_exact()}")
