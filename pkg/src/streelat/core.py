"""Weak compositions, s-decreasing trees and multi-inversion sets.

An s-decreasing tree is stored as a children table: ``children[i - 1]`` is
the tuple of the ``s(i) + 1`` child slots of vertex ``i``, each slot holding
either ``LEAF`` (0) or the label of an internal vertex.  Trees compare and
hash by their inversion set, which determines the tree uniquely.

Multi-inversion sets are dense triangular arrays over the pairs ``(y, x)``
with ``1 <= x < y <= n``, stored in lexicographic order
``(2,1), (3,1), (3,2), (4,1), ...``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, NamedTuple, Sequence

LEAF = 0


class DomainError(ValueError):
    """Input outside the domain of an operation."""


class InversionSetError(DomainError):
    """A multi-inversion set failing transitivity or planarity."""

    def __init__(self, violation: "Violation"):
        super().__init__(
            f"not an s-tree inversion set: {violation.axiom} fails on {violation.triple}"
        )
        self.violation = violation


class Violation(NamedTuple):
    axiom: str  # "transitivity" | "planarity" | "tamari"
    triple: tuple[int, int, int]  # (a, b, c) with a < b < c


def pair_index(y: int, x: int) -> int:
    return (y - 1) * (y - 2) // 2 + (x - 1)


@lru_cache(maxsize=None)
def all_pairs(n: int) -> tuple[tuple[int, int], ...]:
    return tuple((y, x) for y in range(2, n + 1) for x in range(1, y))


@dataclass(frozen=True)
class WeakComposition:
    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))
        if not self.entries:
            raise DomainError("a weak composition needs at least one entry")
        if any(e < 0 for e in self.entries):
            raise DomainError(f"negative entry in weak composition {self.entries}")

    @classmethod
    def parse(cls, text: str) -> "WeakComposition":
        """Parse ``"0,1,2"`` (brackets and spaces tolerated)."""
        body = text.strip().strip("()[]")
        try:
            entries = tuple(int(part) for part in body.split(",") if part.strip())
        except ValueError:
            raise DomainError(f"cannot parse weak composition {text!r}") from None
        return cls(entries)

    @property
    def n(self) -> int:
        return len(self.entries)

    @cached_property
    def caps(self) -> tuple[int, ...]:
        """``s(y)`` for every pair ``(y, x)`` in storage order."""
        return tuple(self.entries[y - 1] for y, _ in all_pairs(self.n))

    def __call__(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise DomainError(f"vertex {i} out of range 1..{self.n}")
        return self.entries[i - 1]

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __len__(self) -> int:
        return self.n

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.entries)) + ")"


@dataclass(frozen=True)
class MultiInversionSet:
    composition: WeakComposition
    mult: tuple[int, ...]

    def __post_init__(self):
        s = self.composition
        object.__setattr__(self, "mult", tuple(int(m) for m in self.mult))
        if len(self.mult) != s.n * (s.n - 1) // 2:
            raise DomainError("multiplicity vector has the wrong length")
        for k, (m, cap) in enumerate(zip(self.mult, s.caps)):
            if not 0 <= m <= cap:
                y, x = all_pairs(s.n)[k]
                raise DomainError(f"multiplicity of ({y},{x}) is {m}, cap is s({y})={cap}")

    @classmethod
    def empty(cls, s: WeakComposition) -> "MultiInversionSet":
        return cls(s, (0,) * (s.n * (s.n - 1) // 2))

    @classmethod
    def from_dict(cls, s: WeakComposition, d: dict) -> "MultiInversionSet":
        mult = [0] * (s.n * (s.n - 1) // 2)
        for (y, x), m in d.items():
            _check_pair(s.n, y, x)
            mult[pair_index(y, x)] = m
        return cls(s, tuple(mult))

    @classmethod
    def from_triples(cls, s: WeakComposition, triples: Iterable[Sequence[int]]) -> "MultiInversionSet":
        return cls.from_dict(s, {(y, x): m for y, x, m in triples})

    def __getitem__(self, pair: tuple[int, int]) -> int:
        y, x = pair
        _check_pair(self.composition.n, y, x)
        return self.mult[pair_index(y, x)]

    def items(self) -> Iterator[tuple[tuple[int, int], int]]:
        """Nonzero ``((y, x), multiplicity)`` pairs in lexicographic order."""
        for pair, m in zip(all_pairs(self.composition.n), self.mult):
            if m:
                yield pair, m

    def to_triples(self) -> list[list[int]]:
        return [[y, x, m] for (y, x), m in self.items()]

    def to_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.items())

    @property
    def key(self) -> tuple[tuple[int, int, int], ...]:
        """Sort key: the serialized triples, compared lexicographically."""
        return tuple((y, x, m) for (y, x), m in self.items())

    def _same(self, other: "MultiInversionSet") -> None:
        if self.composition != other.composition:
            raise DomainError(
                f"compositions differ: {self.composition} vs {other.composition}"
            )

    def __le__(self, other: "MultiInversionSet") -> bool:
        self._same(other)
        return all(a <= b for a, b in zip(self.mult, other.mult))

    def __or__(self, other: "MultiInversionSet") -> "MultiInversionSet":
        return inv_union(self, other)

    def __add__(self, other: "MultiInversionSet") -> "MultiInversionSet":
        return inv_sum(self, other)

    def __sub__(self, other: "MultiInversionSet") -> "MultiInversionSet":
        return inv_diff(self, other)

    def __len__(self) -> int:
        """Total multiplicity."""
        return sum(self.mult)

    def __str__(self) -> str:
        body = ", ".join(f"({y},{x})_{m}" for (y, x), m in self.items())
        return "{" + body + "}"


def _check_pair(n: int, y: int, x: int) -> None:
    if not 1 <= x < y <= n:
        raise DomainError(f"pair ({y},{x}) needs 1 <= x < y <= {n}")


def inv_union(I: MultiInversionSet, J: MultiInversionSet) -> MultiInversionSet:
    I._same(J)
    return MultiInversionSet(I.composition, tuple(map(max, I.mult, J.mult)))


def inv_sum(I: MultiInversionSet, J: MultiInversionSet) -> MultiInversionSet:
    I._same(J)
    s = I.composition
    return MultiInversionSet(s, tuple(min(a + b, c) for a, b, c in zip(I.mult, J.mult, s.caps)))


def inv_diff(J: MultiInversionSet, I: MultiInversionSet) -> MultiInversionSet:
    """``J - I``: pointwise difference clipped at zero."""
    J._same(I)
    return MultiInversionSet(J.composition, tuple(max(a - b, 0) for a, b in zip(J.mult, I.mult)))


def add_pair(I: MultiInversionSet, y: int, x: int) -> MultiInversionSet:
    """``I + (y, x)``."""
    return inv_sum(I, MultiInversionSet.from_dict(I.composition, {(y, x): 1}))


def transitive_closure(I: MultiInversionSet) -> MultiInversionSet:
    """Smallest transitive multi-inversion set containing ``I``.

    Repairs ``#(c,a) < #(c,b)`` whenever ``#(b,a) > 0`` by raising ``#(c,a)``,
    sweeping triples lexicographically until nothing changes.
    """
    n = I.composition.n
    m = list(I.mult)
    changed = True
    while changed:
        changed = False
        for a in range(1, n + 1):
            for b in range(a + 1, n + 1):
                if not m[pair_index(b, a)]:
                    continue
                for c in range(b + 1, n + 1):
                    cb = m[pair_index(c, b)]
                    ca = pair_index(c, a)
                    if cb > m[ca]:
                        m[ca] = cb
                        changed = True
    return MultiInversionSet(I.composition, tuple(m))


def tree_inversion_violation(I: MultiInversionSet) -> Violation | None:
    """First triple ``a < b < c`` breaking transitivity or planarity, if any."""
    s = I.composition
    n = s.n
    m = I.mult
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            ba = m[pair_index(b, a)]
            for c in range(b + 1, n + 1):
                cb = m[pair_index(c, b)]
                ca = m[pair_index(c, a)]
                if cb and ba and ca < cb:
                    return Violation("transitivity", (a, b, c))
                if ca and ba != s(b) and cb < ca:
                    return Violation("planarity", (a, b, c))
    return None


def is_s_tree_inversion_set(I: MultiInversionSet) -> bool:
    return tree_inversion_violation(I) is None


class SDecreasingTree:
    """A planar rooted tree on labels ``1..n`` decreasing towards the leaves."""

    def __init__(self, composition: WeakComposition, children: Sequence[Sequence[int]]):
        self.composition = composition
        self.children = tuple(tuple(int(c) for c in row) for row in children)
        self._validate()

    def _validate(self) -> None:
        s = self.composition
        if len(self.children) != s.n:
            raise DomainError(f"expected {s.n} children rows, got {len(self.children)}")
        seen = []
        for i, row in enumerate(self.children, start=1):
            if len(row) != s(i) + 1:
                raise DomainError(f"vertex {i} has {len(row)} slots, needs s({i})+1={s(i) + 1}")
            for c in row:
                if c != LEAF:
                    if not 1 <= c < i:
                        raise DomainError(f"vertex {i} has child {c}; labels must decrease")
                    seen.append(c)
        if sorted(seen) != list(range(1, s.n)):
            raise DomainError("every label below the root must appear exactly once as a child")

    @property
    def n(self) -> int:
        return self.composition.n

    @property
    def root(self) -> int:
        return self.n

    @cached_property
    def _parent(self) -> dict[int, tuple[int, int]]:
        """label -> (parent, slot index)."""
        out = {}
        for p, row in enumerate(self.children, start=1):
            for j, c in enumerate(row):
                if c != LEAF:
                    out[c] = (p, j)
        return out

    def parent(self, x: int) -> tuple[int, int] | None:
        return self._parent.get(x)

    @cached_property
    def _ancestor_slots(self) -> dict[int, dict[int, int]]:
        """x -> {ancestor y: slot of y whose subtree contains x}."""
        out = {}
        for x in range(1, self.n + 1):
            path = {}
            v = x
            while v in self._parent:
                p, j = self._parent[v]
                path[p] = j
                v = p
            out[x] = path
        return out

    def slot_containing(self, y: int, x: int) -> int | None:
        """``j`` with ``x`` in ``T^y_j``, or None when ``x`` is not below ``y``."""
        return self._ancestor_slots[x].get(y)

    def card(self, y: int, x: int) -> int:
        """Cardinality ``#_T(y, x)``; left/right is read at the lowest common ancestor."""
        _check_pair(self.n, y, x)
        j = self.slot_containing(y, x)
        if j is not None:
            return j
        up_x = self._ancestor_slots[x]
        up_y = self._ancestor_slots[y]
        # lowest common ancestor: the nearest ancestor of y that is also above x
        v = y
        while True:
            p, jy = self._parent[v]
            if p in up_x:
                return 0 if up_x[p] < jy else self.composition(y)
            v = p

    @cached_property
    def inversions(self) -> MultiInversionSet:
        s = self.composition
        return MultiInversionSet(s, tuple(self.card(y, x) for y, x in all_pairs(s.n)))

    def subtree(self, i: int) -> frozenset[int]:
        """Labels of ``T^i`` (including ``i``)."""
        return self._subtrees[i]

    def slot_subtree(self, i: int, j: int) -> frozenset[int]:
        """Labels of ``T^i_j``."""
        c = self.children[i - 1][j]
        return frozenset() if c == LEAF else self._subtrees[c]

    def subtree_minus_slot(self, i: int, j: int) -> frozenset[int]:
        """Labels of ``T^i \\ j``: ``T^i`` with its ``j``-th child subtree cut off."""
        return self._subtrees[i] - self.slot_subtree(i, j)

    @cached_property
    def _subtrees(self) -> dict[int, frozenset[int]]:
        out: dict[int, frozenset[int]] = {}
        for i in range(1, self.n + 1):  # children have smaller labels
            labels = {i}
            for c in self.children[i - 1]:
                if c != LEAF:
                    labels |= out[c]
            out[i] = frozenset(labels)
        return out

    def right_walk(self, i: int, j: int) -> list[int]:
        """Labels on the walk from child slot ``j`` of ``i`` down rightmost children."""
        return self._walk(self.children[i - 1][j], -1)

    def left_walk(self, i: int, j: int) -> list[int]:
        """Labels on the walk from child slot ``j`` of ``i`` down leftmost children."""
        return self._walk(self.children[i - 1][j], 0)

    def _walk(self, v: int, side: int) -> list[int]:
        out = []
        while v != LEAF:
            out.append(v)
            v = self.children[v - 1][side]
        return out

    def __eq__(self, other):
        if not isinstance(other, SDecreasingTree):
            return NotImplemented
        return self.inversions == other.inversions

    def __hash__(self):
        return hash(self.inversions)

    def bracket(self) -> str:
        """Compact nested form, e.g. ``3(2(1(.),.),.,.)``; ``.`` is a leaf."""

        def go(v: int) -> str:
            if v == LEAF:
                return "."
            return f"{v}(" + ",".join(go(c) for c in self.children[v - 1]) + ")"

        return go(self.root)

    def __repr__(self):
        return f"SDecreasingTree({self.composition}, {self.bracket()})"


def cardinality(T: SDecreasingTree, y: int, x: int) -> int:
    return T.card(y, x)


def inversions(T: SDecreasingTree) -> MultiInversionSet:
    return T.inversions


def _leaf_slots(children: list[list[int]], n: int) -> list[tuple[int, int]]:
    """Leaf positions ``(vertex, slot)`` of a partial tree, vertices ``> lowest`` only."""
    out = []
    for v in range(n, 0, -1):
        row = children[v - 1]
        if row is None:
            continue
        for j, c in enumerate(row):
            if c == LEAF:
                out.append((v, j))
    return out


def tree_from_inversions(I: MultiInversionSet) -> SDecreasingTree:
    """The unique s-decreasing tree with inversion set ``I``.

    Vertices are inserted from ``n - 1`` down to 1.  The leaf chosen for
    vertex ``x`` is the one whose position gives the prescribed cardinalities
    ``#(y, x)`` for every ``y > x``; later insertions never change those.
    """
    violation = tree_inversion_violation(I)
    if violation is not None:
        raise InversionSetError(violation)
    s = I.composition
    n = s.n
    children: list[list[int] | None] = [None] * n
    children[n - 1] = [LEAF] * (s(n) + 1)
    # ancestor slot maps of already placed vertices
    up: dict[int, dict[int, int]] = {n: {}}
    for x in range(n - 1, 0, -1):
        target = {y: I[(y, x)] for y in range(x + 1, n + 1)}
        chosen = None
        for v, j in _leaf_slots(children, n):
            path = dict(up[v])
            path[v] = j
            if all(_card_from_path(s, up, path, y) == target[y] for y in target):
                chosen = (v, j, path)
                break
        if chosen is None:  # unreachable for valid sets
            raise RuntimeError(f"no leaf realizes the cardinalities of vertex {x}")
        v, j, path = chosen
        children[v - 1][j] = x
        children[x - 1] = [LEAF] * (s(x) + 1)
        up[x] = path
    return SDecreasingTree(s, children)


def _card_from_path(s: WeakComposition, up: dict, path_x: dict[int, int], y: int) -> int:
    if y in path_x:
        return path_x[y]
    # lowest common ancestor of y and the new vertex
    best = None
    for anc, jy in _ancestors_with_slot(up, y):
        if anc in path_x:
            best = (anc, jy)
            break
    anc, jy = best
    return 0 if path_x[anc] < jy else s(y)


def _ancestors_with_slot(up: dict, y: int) -> list[tuple[int, int]]:
    """Ancestors of ``y``, nearest first, with the slot leading to ``y``."""
    return sorted(up[y].items(), key=lambda kv: kv[0])


def tree_to_json(T: SDecreasingTree) -> dict:
    return {"s": list(T.composition.entries), "inv": T.inversions.to_triples()}


def tree_from_json(data: dict | str) -> SDecreasingTree:
    if isinstance(data, str):
        data = json.loads(data)
    s = WeakComposition(tuple(data["s"]))
    return tree_from_inversions(MultiInversionSet.from_triples(s, data.get("inv", [])))


def dumps_tree(T: SDecreasingTree) -> str:
    return json.dumps(tree_to_json(T), separators=(",", ":"))
