"""Wall's totalization over a base complex.

Each module of a random complex C over D8 gets its own minimal resolution;
the correction maps d_k are solved level by level until the total
differential squares to zero.  The projection to C is then checked to be a
quasi-isomorphism by comparing homology dimensions.
"""

from __future__ import annotations

import numpy as np

from wallres import build_wall, homology_dims, resolve
from wallres.samples import random_complex
from wallres.serialization import named_group

G = named_group("D8")
C = random_complex(G, 2, 4, np.random.default_rng(5), max_dim=6)
print("base dims     ", C.dims())
print("base homology ", homology_dims(C))

NT = 5
cols = [resolve(M, NT - i) for i, M in enumerate(C.modules)]
W = build_wall(C, cols, length=NT)
levels = sorted({k for (_, _, k) in W.maps})
print("total ranks   ", W.ranks)
print("levels used   ", levels)
for key in ("d_squared_zero", "pi_chain_map", "homology_total", "pi_quasi_isomorphism"):
    print(f"{key:22s}", W.certificate[key])
