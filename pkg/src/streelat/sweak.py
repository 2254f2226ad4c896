"""Tree ascents, s-tree rotations, covers, join/meet and s-weak order lattices."""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import prod

import numpy as np

from .core import (
    LEAF,
    DomainError,
    MultiInversionSet,
    SDecreasingTree,
    WeakComposition,
    add_pair,
    inv_union,
    transitive_closure,
    tree_from_inversions,
    tree_to_json,
)


class AscentKind(enum.Enum):
    WEAK = "weak"
    TAMARI = "tamari"


class Flavor(enum.Enum):
    SWEAK = "sweak"
    STAMARI = "stamari"

    @property
    def ascent_kind(self) -> AscentKind:
        return AscentKind.WEAK if self is Flavor.SWEAK else AscentKind.TAMARI


class NotAnAscentError(DomainError):
    pass


class LatticeInvariantError(RuntimeError):
    """A computed structure contradicts the lattice property."""


@dataclass(frozen=True)
class TreeAscent:
    a: int
    b: int
    kind: AscentKind = AscentKind.WEAK

    def __post_init__(self):
        if not self.a < self.b:
            raise DomainError(f"ascent ({self.a},{self.b}) needs a < b")

    @property
    def pair(self) -> tuple[int, int]:
        return (self.a, self.b)


def tree_ascents(T: SDecreasingTree) -> list[TreeAscent]:
    """Tree ascents of ``T`` read off the three defining conditions."""
    s = T.composition
    out = []
    for a in range(1, T.n):
        if s(a) > 0 and T.children[a - 1][s(a)] != LEAF:
            continue
        for b in range(a + 1, T.n + 1):
            j = T.slot_containing(b, a)
            if j is None or j >= s(b):
                continue
            if all(
                T.slot_containing(e, a) in (None, s(e)) for e in range(a + 1, b)
            ):
                out.append(TreeAscent(a, b))
    return out


def _in_right_subtree(T: SDecreasingTree, b: int, i: int, d: int) -> bool:
    """Membership of ``d`` in the ``i``-th rightmost subtree of ``b``, by cardinalities."""
    if d == b:
        return True
    block = T.slot_subtree(b, i)
    if d not in block:
        return False
    s = T.composition
    return all(T.card(e, d) == s(e) for e in block if e > d)


def tree_ascents_via_right_subtrees(T: SDecreasingTree) -> list[TreeAscent]:
    """Same set as :func:`tree_ascents`, using rightmost-subtree membership."""
    s = T.composition
    out = []
    for a in range(1, T.n):
        if s(a) > 0 and T.children[a - 1][s(a)] != LEAF:
            continue
        for b in range(a + 1, T.n + 1):
            if any(_in_right_subtree(T, b, i, a) for i in range(s(b))):
                out.append(TreeAscent(a, b))
    return out


def _check_ascent(T: SDecreasingTree, asc: TreeAscent, ascents: list[TreeAscent]) -> None:
    if asc not in ascents:
        raise NotAnAscentError(f"({asc.a},{asc.b}) is not a {asc.kind.value} ascent of {T!r}")


def rotate(T: SDecreasingTree, asc: TreeAscent) -> SDecreasingTree:
    """s-tree rotation: the tree with inversions ``(inv(T) + (b, a))^tc``."""
    _check_ascent(T, asc, tree_ascents(T))
    return tree_from_inversions(transitive_closure(add_pair(T.inversions, asc.b, asc.a)))


def rotate_by_surgery(T: SDecreasingTree, asc: TreeAscent) -> SDecreasingTree:
    """s-tree rotation performed by moving subtrees.

    ``T^a`` leaves its place (``T^a_0`` takes it), ``a`` is hung below the
    smallest vertex ``m > a`` on the left walk of slot ``j + 1`` of ``b``
    (or directly in that slot), and takes ``T^m_0`` as its last child.
    """
    _check_ascent(T, asc, tree_ascents(T))
    a, b = asc.a, asc.b
    s = T.composition
    ch = [list(row) for row in T.children]
    j = T.slot_containing(b, a)
    g, gslot = T.parent(a)
    ch[g - 1][gslot] = T.children[a - 1][0]
    bigger = [v for v in T.left_walk(b, j + 1) if v > a]
    if bigger:
        m = bigger[-1]
        target = (m, 0)
    else:
        target = (b, j + 1)
    moved = T.children[target[0] - 1][target[1]]
    new_a = list(T.children[a - 1])
    new_a[s(a)] = moved
    if s(a) > 0:
        new_a[0] = LEAF
    ch[a - 1] = new_a
    ch[target[0] - 1][target[1]] = a
    return SDecreasingTree(s, ch)


def covers(T: SDecreasingTree) -> list[tuple[SDecreasingTree, int]]:
    """Upper covers of ``T`` in s-weak order, each with its label ``a``."""
    return [(rotate(T, asc), asc.a) for asc in tree_ascents(T)]


def _same_composition(T: SDecreasingTree, Z: SDecreasingTree) -> None:
    if T.composition != Z.composition:
        raise DomainError(f"compositions differ: {T.composition} vs {Z.composition}")


def leq(T: SDecreasingTree, Z: SDecreasingTree) -> bool:
    _same_composition(T, Z)
    return T.inversions <= Z.inversions


def join(T: SDecreasingTree, Z: SDecreasingTree) -> SDecreasingTree:
    _same_composition(T, Z)
    return tree_from_inversions(transitive_closure(inv_union(T.inversions, Z.inversions)))


def meet(T: SDecreasingTree, Z: SDecreasingTree) -> SDecreasingTree:
    _same_composition(T, Z)
    L = build_lattice(T.composition, Flavor.SWEAK)
    return L.elements[L.meet(L.index(T), L.index(Z))]


def tree_count(s: WeakComposition) -> int:
    """Number of s-decreasing trees: insert ``i = n-1, ..., 1`` into any current leaf."""
    return prod(1 + sum(s.entries[i:]) for i in range(1, s.n))


def _sort_key(T: SDecreasingTree):
    return T.inversions.key


def enumerate_trees(s: WeakComposition) -> list[SDecreasingTree]:
    """All s-decreasing trees, sorted by serialized inversion set."""
    n = s.n
    out = []
    ch: list[list[int]] = [[LEAF] * (s(i) + 1) for i in range(1, n + 1)]

    def place(x: int) -> None:
        if x == 0:
            out.append(SDecreasingTree(s, ch))
            return
        # every vertex above x is already in the tree
        for v in range(n, x, -1):
            row = ch[v - 1]
            for j, c in enumerate(row):
                if c == LEAF:
                    row[j] = x
                    place(x - 1)
                    row[j] = LEAF

    place(n - 1)
    out.sort(key=_sort_key)
    return out


@dataclass(frozen=True, eq=False)
class LatticeGraph:
    composition: WeakComposition
    flavor: Flavor
    elements: tuple[SDecreasingTree, ...]
    edges: tuple[tuple[int, int, int], ...]  # (lower, upper, label)

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def _index(self) -> dict[MultiInversionSet, int]:
        return {T.inversions: i for i, T in enumerate(self.elements)}

    def index(self, T: SDecreasingTree | MultiInversionSet) -> int:
        key = T if isinstance(T, MultiInversionSet) else T.inversions
        try:
            return self._index[key]
        except KeyError:
            raise DomainError(f"{key} is not an element of this lattice") from None

    def __contains__(self, T) -> bool:
        key = T if isinstance(T, MultiInversionSet) else T.inversions
        return key in self._index

    @cached_property
    def up(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """``up[i]``: ``(upper cover, label)`` pairs."""
        out = [[] for _ in self.elements]
        for lo, hi, lab in self.edges:
            out[lo].append((hi, lab))
        return tuple(tuple(sorted(r)) for r in out)

    @cached_property
    def down(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in self.elements]
        for lo, hi, _ in self.edges:
            out[hi].append(lo)
        return tuple(tuple(sorted(r)) for r in out)

    @cached_property
    def label(self) -> dict[tuple[int, int], int]:
        return {(lo, hi): lab for lo, hi, lab in self.edges}

    @cached_property
    def inv_matrix(self) -> np.ndarray:
        """Row ``i``: multiplicity vector of element ``i``."""
        width = self.composition.n * (self.composition.n - 1) // 2
        return np.array([T.inversions.mult for T in self.elements], dtype=np.int64).reshape(
            len(self.elements), width
        )

    @cached_property
    def leq_matrix(self) -> np.ndarray:
        """``leq_matrix[i, j]`` iff element ``i`` precedes or equals ``j``."""
        M = self.inv_matrix
        out = np.all(M[:, None, :] <= M[None, :, :], axis=2)
        out.flags.writeable = False
        return out

    def leq(self, i: int, j: int) -> bool:
        return bool(self.leq_matrix[i, j])

    @property
    def bottom(self) -> int:
        return 0

    @cached_property
    def top(self) -> int:
        tops = [i for i, r in enumerate(self.up) if not r]
        if len(tops) != 1:
            raise LatticeInvariantError(f"{len(tops)} maximal elements")
        return tops[0]

    @cached_property
    def height(self) -> int:
        """Length of the longest chain."""
        best = [0] * len(self.elements)
        order = sorted(range(len(self.elements)), key=lambda i: len(self.elements[i].inversions))
        for i in order:
            for j, _ in self.up[i]:
                best[j] = max(best[j], best[i] + 1)
        return best[self.top]

    def join(self, i: int, j: int) -> int:
        """Index of the closure of the union of both inversion sets."""
        key = transitive_closure(inv_union(self.elements[i].inversions, self.elements[j].inversions))
        if key not in self._index:
            raise LatticeInvariantError(f"join of elements {i} and {j} is not in the lattice")
        return self._index[key]

    def meet(self, i: int, j: int) -> int:
        """Unique maximal common lower bound, found by searching down from ``i``."""
        lower = self.leq_matrix[:, j].tolist()
        down = self.down
        found = []
        seen = bytearray(len(self.elements))
        seen[i] = 1
        stack = [i]
        while stack:
            v = stack.pop()
            if lower[v]:
                found.append(v)
                continue
            for w in down[v]:
                if not seen[w]:
                    seen[w] = 1
                    stack.append(w)
        if len(found) == 1:
            return found[0]
        cand = np.fromiter(found, dtype=np.int64)
        maximal = cand[self.leq_matrix[np.ix_(cand, cand)].sum(axis=1) == 1]
        if len(maximal) != 1:
            raise LatticeInvariantError(
                f"elements {i} and {j} have {len(maximal)} maximal common lower bounds"
            )
        return int(maximal[0])

    def to_json(self) -> dict:
        return {
            "s": list(self.composition.entries),
            "flavor": self.flavor.value,
            "nodes": [tree_to_json(T) for T in self.elements],
            "edges": [list(e) for e in self.edges],
        }

    def node_name(self, i: int) -> str:
        return json.dumps(self.elements[i].inversions.to_triples(), separators=(",", ":"))

    def to_dot(self) -> str:
        lines = [f'digraph "{self.flavor.value}{self.composition}" {{', "  rankdir=BT;"]
        for i in range(len(self.elements)):
            lines.append(f"  {json.dumps(self.node_name(i))};")
        for lo, hi, lab in self.edges:
            lines.append(
                f"  {json.dumps(self.node_name(lo))} -> {json.dumps(self.node_name(hi))} [label={lab}];"
            )
        lines.append("}")
        return "\n".join(lines) + "\n"


@lru_cache(maxsize=64)
def build_lattice(s: WeakComposition, flavor: Flavor = Flavor.SWEAK) -> LatticeGraph:
    trees = enumerate_trees(s)
    if flavor is Flavor.STAMARI:
        from .stamari import is_tamari, tamari_covers

        trees = [T for T in trees if is_tamari(T)]
        cover_fn = tamari_covers
    else:
        cover_fn = covers
    index = {T.inversions: i for i, T in enumerate(trees)}
    edges = []
    for i, T in enumerate(trees):
        for Z, lab in cover_fn(T):
            edges.append((i, index[Z.inversions], lab))
    edges.sort()
    return LatticeGraph(s, flavor, tuple(trees), tuple(edges))
