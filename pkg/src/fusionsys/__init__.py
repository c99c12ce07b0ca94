"""Exact computations with fusion systems over finite p-groups."""
from .burnside import BurnsideElement, PairClass, compose_classes, decompose_biset, group_as_biset, module
from .fusion import FusionSystem, fusion_of_group, generate_fusion, inner_fusion, is_saturated
from .groups import Group, Hom, Subgroup, enumerate_homs, make_group
from .idempotent import char_idempotent_iterate, char_idempotent_solve, find_M, verify_lw
from .spectra import induced_map, make_map, map_basis, reconstruct_fusion, transfer_map

__version__ = "0.1.0"
