"""Finite p-groups as multiplication tables and their enhanced power graphs."""

__version__ = "0.1.0"

from .epg import EpgGraph, adjacent, build_epg, n_G, neighborhood_size, to_dot, universal_vertices
from .groups import (
    GroupError,
    GroupTable,
    OrderCapError,
    automorphisms,
    closure,
    dihedral_group,
    direct_product,
    element_order,
    exponent,
    generalized_quaternion,
    heisenberg,
    is_cyclic,
    is_dihedral_2group,
    isomorphic,
    make_cyclic,
    modular_group,
    semidihedral_group,
    semidirect_cyclic,
)
from .groupspec import GroupSpec, parse_spec
from .presentations import Presentation, catalog_order16, parse_presentation, realize
