"""Projective resolutions over group algebras ``F_p[G]`` of finite groups:
Wall's totalization, Bockstein products and complexity-transfer pipelines,
all computed with exact linear algebra over ``GF(p)``."""

from __future__ import annotations

__version__ = "0.1.0"

from .groups import (Group, GroupHom, Subgroup, abelian_group, cyclic_group, dihedral_group,
                     direct_product, elementary_abelian_group, elementary_abelian_subgroups,
                     group_from_cayley, group_from_permutations, index_p_normal_subgroups,
                     quaternion_group, quotient, sylow_subgroup, symmetric_group)
from .gmodules import (FreeModule, GModule, ModuleHom, direct_sum, free_module, hom_space, induce,
                       is_projective, regular_module, restrict, tensor_over_k, trivial_module)
from .resolutions import (ChainComplex, ComplexityFunction, GrowthVerdict, Resolution,
                          growth_verdict, homology_dims, lift_chain_map, resolve, syzygy)
from .wall import WallComplex, build_wall, two_of_three
from .bockstein import (bockstein_datum, bockstein_sequence, ext_class, is_zero_class,
                        prop41_pipeline, serre_search, splice)
from .pipelines import (alperin_evens_check, chouinard_projectivity_check, main3_verify,
                        psylow_split, vfcd_bound)
