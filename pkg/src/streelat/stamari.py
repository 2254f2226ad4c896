"""s-Tamari trees, Tamari ascents and rotations."""
from __future__ import annotations

from dataclasses import dataclass

from .core import (
    LEAF,
    DomainError,
    SDecreasingTree,
    Violation,
    add_pair,
    transitive_closure,
    tree_from_inversions,
)
from .sweak import AscentKind, NotAnAscentError, TreeAscent


def tamari_violation(T: SDecreasingTree) -> Violation | None:
    """A triple ``a < b < c`` with ``#(c,a) > #(c,b)``, if one exists."""
    n = T.n
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            for c in range(b + 1, n + 1):
                if T.card(c, a) > T.card(c, b):
                    return Violation("tamari", (a, b, c))
    return None


def is_tamari(T: SDecreasingTree) -> bool:
    return tamari_violation(T) is None


@dataclass(frozen=True)
class TamariTreeView:
    """An s-decreasing tree known to be an s-Tamari tree."""

    tree: SDecreasingTree
    certified: bool = True

    @classmethod
    def certify(cls, T: SDecreasingTree) -> "TamariTreeView":
        v = tamari_violation(T)
        if v is not None:
            raise DomainError(f"not an s-Tamari tree: #({v.triple[2]},{v.triple[0]}) > "
                              f"#({v.triple[2]},{v.triple[1]})")
        return cls(T)


def _tree(T: SDecreasingTree | TamariTreeView) -> SDecreasingTree:
    if isinstance(T, TamariTreeView):
        return T.tree
    if not is_tamari(T):
        raise DomainError(f"{T!r} is not an s-Tamari tree")
    return T


def tamari_ascents(T: SDecreasingTree | TamariTreeView) -> list[TreeAscent]:
    """Pairs ``(a, b)`` with ``a`` a child of ``b`` outside its last slot."""
    T = _tree(T)
    s = T.composition
    out = []
    for b in range(1, T.n + 1):
        for j, a in enumerate(T.children[b - 1]):
            if a != LEAF and j < s(b):
                out.append(TreeAscent(a, b, AscentKind.TAMARI))
    out.sort(key=lambda asc: asc.a)
    return out


def _as_tamari(asc: TreeAscent) -> TreeAscent:
    return asc if asc.kind is AscentKind.TAMARI else TreeAscent(asc.a, asc.b, AscentKind.TAMARI)


def _check(T: SDecreasingTree, asc: TreeAscent) -> TreeAscent:
    asc = _as_tamari(asc)
    if asc not in tamari_ascents(T):
        raise NotAnAscentError(f"({asc.a},{asc.b}) is not a Tamari ascent of {T!r}")
    return asc


def tamari_rotate(T: SDecreasingTree | TamariTreeView, asc: TreeAscent) -> TamariTreeView:
    """s-Tamari rotation: inversions ``(inv(T) + (b, a))^tc``."""
    T = _tree(T)
    asc = _check(T, asc)
    Z = tree_from_inversions(transitive_closure(add_pair(T.inversions, asc.b, asc.a)))
    return TamariTreeView.certify(Z)


def tamari_rotate_by_surgery(T: SDecreasingTree | TamariTreeView, asc: TreeAscent) -> TamariTreeView:
    """s-Tamari rotation by moving ``a`` with all its non-initial subtrees.

    ``T^a_0`` takes the place of ``a`` under ``b``; ``a``, now with an empty
    first slot, becomes the first child of the bottom vertex of the left
    walk of slot ``j + 1`` of ``b``.
    """
    T = _tree(T)
    asc = _check(T, asc)
    a, b = asc.a, asc.b
    ch = [list(row) for row in T.children]
    j = T.slot_containing(b, a)
    ch[b - 1][j] = T.children[a - 1][0]
    walk = T.left_walk(b, j + 1)
    target = (walk[-1], 0) if walk else (b, j + 1)
    ch[a - 1][0] = LEAF
    ch[target[0] - 1][target[1]] = a
    return TamariTreeView.certify(SDecreasingTree(T.composition, ch))


def tamari_covers(T: SDecreasingTree | TamariTreeView) -> list[tuple[SDecreasingTree, int]]:
    """Upper covers in the s-Tamari lattice with their labels."""
    T = _tree(T)
    return [(tamari_rotate(T, asc).tree, asc.a) for asc in tamari_ascents(T)]
