"""From elementary abelian subgroups up to the whole group.

main3_verify resolves k over the Sylow p-subgroup by recursive Serre
reductions (each step a Wall construction over a Bockstein splice) and then
splits k off the induced resolution with the Sylow transfer.  The log
records which step produced which resolution.
"""

from __future__ import annotations

from wallres import ComplexityFunction, main3_verify, trivial_module
from wallres.pipelines import alperin_evens_check, vfcd_bound
from wallres.serialization import named_group

for name in ("D8", "S4"):
    G = named_group(name)
    rep = main3_verify(G, trivial_module(G, 2), ComplexityFunction.polynomial(1), length=6)
    print(f"{name}: ranks {rep.resolution.ranks}, verdict holds={rep.verdict.holds} d={rep.verdict.d}")
    for step in rep.log:
        print("   ", {k: v for k, v in step.items() if k in ("step", "depth", "group_order", "m", "ranks")})

for name in ("Z2^2", "Z4", "D8", "Z2xZ4"):
    G = named_group(name)
    a = alperin_evens_check(G, trivial_module(G, 2), 10)
    print(f"{name:6s} degree over G {a['group_degree']}, max over E {a['max_subgroup_degree']}")

out = vfcd_bound(named_group("Z2^3"), trivial_module(named_group("Z2^3"), 2), length=6)
print("Z2^3: r_max", out["r_max"], "verdict", out["verdict"].to_json())
