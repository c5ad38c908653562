"""Finite quotients SL(2, Z_m) by brute force.

Reduction mod 2 and mod 3 splits SL(2, Z_6); the elementary abelian
2-subgroups of SL(2, Z_p) for odd p have rank at most 1 (only -I has order
2); and the even-sign diagonal matrices form the rank n-1 subgroup.
"""

from __future__ import annotations

from wallres.sln import crt_check, diagonal_sign_subgroup, sl_group, verify_rank_bound

for m in (2, 3, 4, 5, 6):
    print(f"|SL(2, Z_{m})| = {sl_group(2, m).group.order}")
print("CRT", crt_check(2, 2, 3))
for p in (3, 5):
    print("rank bound", verify_rank_bound(2, p, 2))
S, E, r = diagonal_sign_subgroup(2, 3)
print("sign subgroup", [S.labels[e] for e in E.elements], "rank", r)
