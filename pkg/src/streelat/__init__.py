"""s-weak order and s-Tamari lattices on s-decreasing trees."""
from .core import (
    DomainError,
    InversionSetError,
    MultiInversionSet,
    SDecreasingTree,
    WeakComposition,
    cardinality,
    inv_diff,
    inv_sum,
    inv_union,
    inversions,
    is_s_tree_inversion_set,
    transitive_closure,
    tree_from_inversions,
)
from .stamari import is_tamari, tamari_ascents, tamari_rotate
from .sweak import (
    Flavor,
    LatticeGraph,
    TreeAscent,
    build_lattice,
    enumerate_trees,
    join,
    leq,
    meet,
    rotate,
    tree_ascents,
    tree_count,
)
from .topology import (
    Ball,
    Sphere,
    classify_double_cover,
    classify_homotopy,
    edge_label,
    euler_char,
    interval,
    max_antichain,
    mobius,
    verify_lattice,
    verify_sb,
)

__all__ = [name for name in dir() if not name.startswith("_")]
