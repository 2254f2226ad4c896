"""Independent reference lattices used to cross-check the main build.

Nothing here imports the tree, inversion or rotation code of the package.
Permutations carry their own inversion logic, binary trees their own
rotation logic, and elements are compared to the main lattices through plain
tuples of ``(y, x, multiplicity)`` triples.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Hashable

Key = tuple[tuple[int, int, int], ...]


@dataclass(frozen=True)
class Permutation:
    """One-line notation ``w(1) ... w(n)``."""

    word: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.word) != list(range(1, len(self.word) + 1)):
            raise ValueError(f"{self.word} is not a permutation")

    @property
    def n(self) -> int:
        return len(self.word)

    def inversions(self) -> frozenset[tuple[int, int]]:
        """Value pairs ``(y, x)``, ``y > x``, with ``y`` written before ``x``."""
        w = self.word
        return frozenset(
            (w[i], w[j]) for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j]
        )

    def key(self) -> Key:
        return tuple(sorted((y, x, 1) for y, x in self.inversions()))

    def avoids_231(self) -> bool:
        w = self.word
        n = len(w)
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    if w[k] < w[i] < w[j]:
                        return False
        return True

    def __str__(self):
        return "".join(map(str, self.word))


@dataclass(frozen=True)
class OracleLattice:
    """Elements plus labeled cover edges ``(lower, upper, label)``."""

    elements: tuple[Hashable, ...]
    edges: tuple[tuple[int, int, int], ...]

    def __len__(self) -> int:
        return len(self.elements)


def perm_weak_order(n: int) -> OracleLattice:
    """Weak order on ``S_n``; swapping adjacent ``x < y`` into ``y x`` is labeled ``x``."""
    if not 1 <= n <= 5:
        raise ValueError("perm_weak_order supports 1 <= n <= 5")
    elems = sorted((Permutation(p) for p in permutations(range(1, n + 1))), key=Permutation.key)
    index = {p.word: i for i, p in enumerate(elems)}
    edges = []
    for i, p in enumerate(elems):
        w = list(p.word)
        for k in range(n - 1):
            if w[k] < w[k + 1]:
                up = w[:k] + [w[k + 1], w[k]] + w[k + 2:]
                edges.append((i, index[tuple(up)], w[k]))
    return OracleLattice(tuple(elems), tuple(sorted(edges)))


# ------------------------------------------------------------ binary trees
# A binary tree is None (empty) or a pair (left, right).


def binary_trees(n: int) -> list:
    if n == 0:
        return [None]
    out = []
    for k in range(n):
        for left in binary_trees(k):
            for right in binary_trees(n - 1 - k):
                out.append((left, right))
    return out


def _size(t) -> int:
    return 0 if t is None else 1 + _size(t[0]) + _size(t[1])


def right_rotations(t) -> list:
    """Every tree obtained by one right rotation ``((A, B), C) -> (A, (B, C))``."""
    if t is None:
        return []
    left, right = t
    out = []
    if left is not None:
        A, B = left
        out.append((A, (B, right)))
    out.extend((l2, right) for l2 in right_rotations(left))
    out.extend((left, r2) for r2 in right_rotations(right))
    return out


def mirror(t):
    return None if t is None else (mirror(t[1]), mirror(t[0]))


def tree_to_permutation(t) -> Permutation:
    """Mirror ``t``, label its nodes in in-order (search-tree labels), then read
    the labels in pre-order.  Pre-order words of search trees are exactly the
    231-avoiding permutations."""

    def preorder(t, lo: int) -> list[int]:
        if t is None:
            return []
        root = lo + _size(t[0])
        return [root] + preorder(t[0], lo) + preorder(t[1], root + 1)

    return Permutation(tuple(preorder(mirror(t), 1)))


def classical_tamari(n: int) -> OracleLattice:
    """Tamari lattice on binary trees with ``n`` nodes, covers by right rotation.

    Elements are binary trees; edges are unlabeled (label 0).
    """
    if not 1 <= n <= 5:
        raise ValueError("classical_tamari supports 1 <= n <= 5")
    elems = sorted(binary_trees(n), key=lambda t: tree_to_permutation(t).key())
    index = {t: i for i, t in enumerate(elems)}
    edges = sorted({(i, index[u], 0) for i, t in enumerate(elems) for u in right_rotations(t)})
    return OracleLattice(tuple(elems), tuple(edges))


# ----------------------------------------------------- comparisons with L


def _mult_key(L, i: int) -> Key:
    return tuple(tuple(t) for t in L.elements[i].inversions.to_triples())


def labeled_edge_keys(L, labels: bool = True) -> set:
    """Edges of a main-package lattice as ``(key_lo, key_hi, label)``."""
    return {(_mult_key(L, lo), _mult_key(L, hi), lab if labels else 0) for lo, hi, lab in L.edges}


def weak_order_matches(L, n: int) -> bool:
    """``L`` (built for ``s = (1,...,1)``) equals weak order on ``S_n`` under
    permutation -> inversion set, labels included."""
    P = perm_weak_order(n)
    keys = [p.key() for p in P.elements]
    ours = {(keys[lo], keys[hi], lab) for lo, hi, lab in P.edges}
    node_match = {_mult_key(L, i) for i in range(len(L))} == set(keys)
    return node_match and ours == labeled_edge_keys(L)


def tamari_matches(L, n: int) -> bool:
    """``L`` (s-Tamari, ``s = (1,...,1)``) equals the classical Tamari lattice
    under binary tree -> 231-avoiding permutation -> inversion set."""
    C = classical_tamari(n)
    keys = [tree_to_permutation(t).key() for t in C.elements]
    ours = {(keys[lo], keys[hi], 0) for lo, hi, _ in C.edges}
    node_match = {_mult_key(L, i) for i in range(len(L))} == set(keys)
    return node_match and ours == labeled_edge_keys(L, labels=False)


def _le(x: Key, y: Key) -> bool:
    dy = {(a, b): m for a, b, m in y}
    return all(dy.get((a, b), 0) >= m for a, b, m in x)


def brute_bounds(L, i: int, j: int) -> tuple[set[int], set[int]]:
    """Minimal upper bounds and maximal lower bounds of elements ``i``, ``j``
    found by scanning every element of ``L``."""
    keys = [_mult_key(L, k) for k in range(len(L))]
    le = lambda x, y: _le(keys[x], keys[y])  # noqa: E731
    upper = [k for k in range(len(keys)) if le(i, k) and le(j, k)]
    lower = [k for k in range(len(keys)) if le(k, i) and le(k, j)]
    lub = {u for u in upper if not any(v != u and le(v, u) for v in upper)}
    glb = {u for u in lower if not any(v != u and le(u, v) for v in lower)}
    return lub, glb


def first_entry_irrelevant(L0, L3) -> bool:
    """Two lattices differing only in ``s(1)`` have the same elements and
    labeled edges once written as inversion keys."""
    same_nodes = {_mult_key(L0, i) for i in range(len(L0))} == {_mult_key(L3, i) for i in range(len(L3))}
    return same_nodes and labeled_edge_keys(L0) == labeled_edge_keys(L3)


def generate_and_filter_count(s: tuple[int, ...]) -> int:
    """Count s-decreasing trees by assigning every vertex ``x < n`` a parent
    slot ``(p, j)`` with ``p > x``, all slots distinct."""
    n = len(s)
    slots = [(p, j) for p in range(2, n + 1) for j in range(s[p - 1] + 1)]

    def count(x: int, used: frozenset) -> int:
        if x == 0:
            return 1
        return sum(count(x - 1, used | {sl}) for sl in slots if sl[0] > x and sl not in used)

    return count(n - 1, frozenset())
