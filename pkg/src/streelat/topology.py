"""Edge labels, intervals, Mobius function and sphere/ball classification.

All queries take a built :class:`~streelat.sweak.LatticeGraph` and element
indices (trees are accepted too and looked up).  Homotopy type is reported
through the join-of-atoms criterion; only its Euler characteristic shadow is
checked numerically.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .core import (
    DomainError,
    MultiInversionSet,
    SDecreasingTree,
    add_pair,
    all_pairs,
    inv_diff,
    inv_sum,
    inv_union,
    pair_index,
    transitive_closure,
)
from .stamari import tamari_ascents, tamari_rotate
from .sweak import (
    AscentKind,
    Flavor,
    LatticeGraph,
    TreeAscent,
    rotate,
    tree_ascents,
)

DEFAULT_HEIGHT_GUARD = 16


class HeightGuardError(DomainError):
    pass


class Shape(enum.Enum):
    DIAMOND = "diamond"
    PENTAGON = "pentagon"
    HEXAGON = "hexagon"


@dataclass(frozen=True)
class Ball:
    def __str__(self):
        return "ball"


@dataclass(frozen=True)
class Sphere:
    dim: int

    def __str__(self):
        return f"sphere({self.dim})"


Homotopy = Ball | Sphere


# ---------------------------------------------------------------- ascents


def ascents_of(T: SDecreasingTree, flavor: Flavor) -> list[TreeAscent]:
    return tree_ascents(T) if flavor is Flavor.SWEAK else tamari_ascents(T)


def rotate_along(T: SDecreasingTree, asc: TreeAscent) -> SDecreasingTree:
    if asc.kind is AscentKind.TAMARI:
        return tamari_rotate(T, asc).tree
    return rotate(T, asc)


def edge_label(T: SDecreasingTree, Z: SDecreasingTree, flavor: Flavor = Flavor.SWEAK) -> int:
    """Label ``a`` of the cover ``T -> Z``: smaller end of its ascent."""
    for asc in ascents_of(T, flavor):
        if rotate_along(T, asc) == Z:
            return asc.a
    raise DomainError(f"{Z!r} does not cover {T!r} in {flavor.value} order")


# ----------------------------------------------------- added inversion sets


@dataclass(frozen=True)
class AddedInversions:
    ascent: TreeAscent
    pairs: MultiInversionSet


def _unit_set(T: SDecreasingTree, pairs) -> MultiInversionSet:
    return MultiInversionSet.from_dict(T.composition, {p: 1 for p in pairs})


def added_inversions(T: SDecreasingTree, asc: TreeAscent) -> AddedInversions:
    """``{(b, e) : e in T^a \\ 0}``, each raised by one when rotating along ``asc``."""
    if asc not in ascents_of(T, Flavor.SWEAK if asc.kind is AscentKind.WEAK else Flavor.STAMARI):
        raise DomainError(f"({asc.a},{asc.b}) is not an ascent of {T!r}")
    below = T.subtree_minus_slot(asc.a, 0)
    return AddedInversions(asc, _unit_set(T, [(asc.b, e) for e in below]))


def f_set(T: SDecreasingTree, first: TreeAscent, second: TreeAscent) -> MultiInversionSet:
    """Correction set for ascents ``(a,b)``, ``(c,d)`` with ``a < c``.

    Nonempty only when ``b == c`` and ``a`` sits in slot 0 of ``c``; then it
    is ``{(d, e) : e in T^a \\ 0}``.
    """
    a, b = first.a, first.b
    c, d = second.a, second.b
    if not a < c:
        raise DomainError("f_set needs the ascents ordered with a < c")
    if b == c and T.slot_containing(c, a) == 0:
        return _unit_set(T, [(d, e) for e in T.subtree_minus_slot(a, 0)])
    return MultiInversionSet.empty(T.composition)


# -------------------------------------------------------------- intervals


def _ix(L: LatticeGraph, x) -> int:
    return x if isinstance(x, (int, np.integer)) else L.index(x)


def _require_leq(L: LatticeGraph, i: int, j: int) -> None:
    if not L.leq(i, j):
        raise DomainError(f"elements {i} and {j} are not comparable as bottom <= top")


def interval_elements(L: LatticeGraph, i: int, j: int) -> list[int]:
    return [int(k) for k in np.flatnonzero(L.leq_matrix[i, :] & L.leq_matrix[:, j])]


def interval_atoms(L: LatticeGraph, i: int, j: int) -> list[int]:
    return sorted(v for v, _ in L.up[i] if L.leq(v, j)) if i != j else []


def interval_height(L: LatticeGraph, i: int, j: int) -> int:
    """Length of the longest saturated chain from ``i`` to ``j``."""
    best = {i: 0}
    # total multiplicity strictly grows along covers, so this is a linear extension
    for v in sorted(interval_elements(L, i, j), key=lambda k: len(L.elements[k].inversions)):
        for w, _ in L.up[v]:
            if v in best and L.leq(w, j):
                best[w] = max(best.get(w, 0), best[v] + 1)
    return best.get(j, 0)


def saturated_chains(L: LatticeGraph, i: int, j: int, height_guard: int = DEFAULT_HEIGHT_GUARD,
                     with_nodes: bool = False) -> list:
    """Every saturated chain from ``i`` to ``j`` as a label sequence.

    With ``with_nodes`` each entry is ``(labels, nodes)``.
    """
    _require_leq(L, i, j)
    h = interval_height(L, i, j)
    if h > height_guard:
        raise HeightGuardError(f"interval height {h} exceeds the guard {height_guard}")
    col = L.leq_matrix[:, j]
    out = []

    def walk(v: int, labels: list[int], nodes: list[int]) -> None:
        if v == j:
            out.append((tuple(labels), tuple(nodes)) if with_nodes else tuple(labels))
            return
        for w, lab in L.up[v]:
            if col[w]:
                labels.append(lab)
                nodes.append(w)
                walk(w, labels, nodes)
                labels.pop()
                nodes.pop()

    walk(i, [], [i])
    return sorted(out)


# ------------------------------------------------------- Mobius and Euler


def _mobius_row(L: LatticeGraph, i: int) -> dict[int, int]:
    memo = L.__dict__.setdefault("_mobius_rows", {})
    if i in memo:
        return memo[i]
    above = [int(k) for k in np.flatnonzero(L.leq_matrix[i, :])]
    above.sort(key=lambda k: len(L.elements[k].inversions))
    mu: dict[int, int] = {}
    for w in above:
        if w == i:
            mu[w] = 1
        else:
            mu[w] = -sum(m for v, m in mu.items() if L.leq_matrix[v, w])
    memo[i] = mu
    return mu


def mobius(L: LatticeGraph, T, Z) -> int:
    """``mu(T, Z)`` by the recursion ``mu(T,Z) = -sum_{T <= W < Z} mu(T,W)``."""
    i, j = _ix(L, T), _ix(L, Z)
    _require_leq(L, i, j)
    return _mobius_row(L, i)[j]


def chain_counts(L: LatticeGraph, T, Z) -> list[int]:
    """``counts[k]``: number of ``k``-element chains in the open interval (``counts[0] = 1``)."""
    i, j = _ix(L, T), _ix(L, Z)
    _require_leq(L, i, j)
    inner = [k for k in interval_elements(L, i, j) if k not in (i, j)]
    inner.sort(key=lambda k: len(L.elements[k].inversions))
    # ending[w][k]: chains of k elements with largest element w
    ending: dict[int, list[int]] = {}
    for w in inner:
        counts = [0, 1]
        for v in inner:
            if v in ending and v != w and L.leq_matrix[v, w]:
                prev = ending[v]
                counts.extend([0] * (len(prev) + 1 - len(counts)))
                for k, c in enumerate(prev):
                    if k:
                        counts[k + 1] += c
        ending[w] = counts
    total = [1]
    for counts in ending.values():
        total.extend([0] * (len(counts) - len(total)))
        for k, c in enumerate(counts):
            if k:
                total[k] += c
    return total


def euler_char(L: LatticeGraph, T, Z) -> int:
    """Reduced Euler characteristic of the order complex of the open interval."""
    counts = chain_counts(L, T, Z)
    return -1 + sum((-1) ** (k - 1) * c for k, c in enumerate(counts) if k)


def mobius_matrix(L: LatticeGraph) -> np.ndarray:
    """All ``mu(i, j)`` at once, filled rank by rank with the defining recursion."""
    leq = L.leq_matrix
    N = len(L)
    strict = (leq & ~np.eye(N, dtype=bool)).astype(np.int64)
    ranks = np.array([len(T.inversions) for T in L.elements])
    M = np.eye(N, dtype=np.int64)
    # elements of equal total multiplicity are pairwise incomparable
    for r in sorted(set(ranks.tolist())):
        cols = np.flatnonzero(ranks == r)
        block = -(M @ strict[:, cols])
        block[~leq[:, cols]] = 0
        block[cols, np.arange(len(cols))] = 1
        M[:, cols] = block
    return M


def euler_matrix(L: LatticeGraph) -> np.ndarray:
    """All reduced Euler characteristics by counting chains via powers of ``<``."""
    leq = L.leq_matrix
    N = len(L)
    S = (leq & ~np.eye(N, dtype=bool)).astype(np.int64)
    Sf = S.astype(np.float64)
    P, Pf = S.copy(), Sf.copy()
    acc = np.zeros((N, N), dtype=np.int64)
    sign = 1
    for _ in range(N):
        P, Pf = P @ S, Pf @ Sf  # P[i, j]: chains i < w_1 < ... < w_k < j
        if not P.any():
            break
        if Pf.max() > 2.0 ** 62:
            raise OverflowError("chain counts exceed int64")
        acc += sign * P
        sign = -sign
    out = acc - 1
    # one-element intervals follow the mu(x, x) = 1 convention
    np.fill_diagonal(out, 1)
    out[~leq] = 0
    return out


# ------------------------------------------------------------- homotopy


def _ascent_added(T: SDecreasingTree, asc: TreeAscent) -> MultiInversionSet:
    return _unit_set(T, [(asc.b, e) for e in T.subtree_minus_slot(asc.a, 0)])


def classify_homotopy(L: LatticeGraph, T, Z) -> Homotopy:
    """Sphere of dimension ``l - 2`` when ``Z`` is reached by adding every
    ``A_T(a_k, b_k)`` for the ``l`` ascents ``(a_k, b_k)`` of ``T`` inverted in ``Z``
    and closing; ball otherwise."""
    i, j = _ix(L, T), _ix(L, Z)
    _require_leq(L, i, j)
    if i == j:
        raise DomainError("classify_homotopy needs a strict interval")
    Tt, Zt = L.elements[i], L.elements[j]
    diff = inv_diff(Zt.inversions, Tt.inversions)
    chosen = [asc for asc in ascents_of(Tt, L.flavor) if diff[(asc.b, asc.a)] > 0]
    acc = Tt.inversions
    for asc in chosen:
        acc = inv_sum(acc, _ascent_added(Tt, asc))
    if transitive_closure(acc) == Zt.inversions:
        return Sphere(len(chosen) - 2)
    return Ball()


# ------------------------------------------------------------ reports


@dataclass
class IntervalReport:
    bottom: int
    top: int
    elements: list[int]
    atoms: list[int]
    maximal_chains: list[tuple[int, ...]]
    mobius: int
    euler: int
    homotopy: Homotopy | None  # None for a one-element interval
    shape: Shape | None = None

    def to_json(self, L: LatticeGraph | None = None) -> dict:
        out = {
            "bottom": self.bottom,
            "top": self.top,
            "elements": self.elements,
            "atoms": self.atoms,
            "maximal_chains": [list(c) for c in self.maximal_chains],
            "mobius": self.mobius,
            "euler": self.euler,
            "homotopy": None if self.homotopy is None else (
                {"type": "sphere", "dim": self.homotopy.dim} if isinstance(self.homotopy, Sphere)
                else {"type": "ball"}
            ),
            "shape": None if self.shape is None else self.shape.value,
        }
        if L is not None:
            out["bottom_inv"] = L.elements[self.bottom].inversions.to_triples()
            out["top_inv"] = L.elements[self.top].inversions.to_triples()
        return out


def _shape_of(chains: list[tuple[int, ...]], n_elements: int) -> Shape | None:
    if len(chains) != 2:
        return None
    lengths = sorted(len(c) for c in chains)
    if n_elements != lengths[0] + lengths[1]:
        return None
    return {(2, 2): Shape.DIAMOND, (2, 3): Shape.PENTAGON, (3, 3): Shape.HEXAGON}.get(tuple(lengths))


def interval(L: LatticeGraph, T, Z, height_guard: int = DEFAULT_HEIGHT_GUARD) -> IntervalReport:
    i, j = _ix(L, T), _ix(L, Z)
    _require_leq(L, i, j)
    elems = interval_elements(L, i, j)
    atoms = interval_atoms(L, i, j)
    chains = saturated_chains(L, i, j, height_guard)
    mu = mobius(L, i, j)
    chi = euler_char(L, i, j) if i != j else 1
    homotopy = classify_homotopy(L, i, j) if i != j else None
    shape = None
    if len(atoms) == 2 and L.join(*atoms) == j:
        shape = _shape_of(chains, len(elems))
    return IntervalReport(i, j, elems, atoms, chains, mu, chi, homotopy, shape)


# ----------------------------------------------------- double covers / SB


# label sequences over {0: a, 1: c}, a < c
PATTERNS = {
    Shape.DIAMOND: {((0, 1), (1, 0))},
    Shape.PENTAGON: {((0, 1), (1, 0, 0)), ((0, 0, 1), (1, 0))},
    Shape.HEXAGON: {((0, 0, 1), (1, 0, 0))},
}


@dataclass
class DoubleCover:
    bottom: int
    join: int
    a: int
    c: int
    chains: list[tuple[int, ...]]
    n_elements: int

    @property
    def shape(self) -> Shape | None:
        return _shape_of(self.chains, self.n_elements)

    @property
    def pattern(self) -> tuple[tuple[int, ...], ...]:
        """Chains rewritten over ``{0: a, 1: c}``, sorted."""
        code = {self.a: 0, self.c: 1}
        return tuple(sorted(tuple(code.get(x, 9) for x in ch) for ch in self.chains))

    @property
    def matches_pattern(self) -> bool:
        return self.shape is not None and self.pattern in PATTERNS[self.shape]


def classify_double_cover(L: LatticeGraph, T, Z, Q,
                          height_guard: int = DEFAULT_HEIGHT_GUARD) -> DoubleCover:
    i, z, q = _ix(L, T), _ix(L, Z), _ix(L, Q)
    labels = dict(L.up[i])
    if z == q or z not in labels or q not in labels:
        raise DomainError("classify_double_cover needs two distinct upper covers of the bottom")
    j = L.join(z, q)
    chains = saturated_chains(L, i, j, height_guard)
    a, c = sorted((labels[z], labels[q]))
    return DoubleCover(i, j, a, c, chains, len(interval_elements(L, i, j)))


def verify_sb(L: LatticeGraph, height_guard: int = DEFAULT_HEIGHT_GUARD) -> dict:
    """Check the three SB conditions for every element and pair of its covers."""
    violations = []
    shapes: Counter = Counter()
    for i in range(len(L)):
        for (v, lv), (w, lw) in combinations(L.up[i], 2):
            if lv == lw:
                violations.append({"check": "sb-distinct-labels", "bottom": i, "covers": [v, w]})
                continue
            j = L.join(v, w)
            chains = saturated_chains(L, i, j, height_guard)
            for ch in chains:
                used = set(ch)
                if not {lv, lw} <= used:
                    violations.append({"check": "sb-both-labels", "bottom": i, "covers": [v, w],
                                       "chain": list(ch)})
                if used - {lv, lw}:
                    violations.append({"check": "sb-no-other-labels", "bottom": i,
                                       "covers": [v, w], "chain": list(ch)})
            shape = _shape_of(chains, len(interval_elements(L, i, j)))
            shapes[shape.value if shape else "other"] += 1
    return {"sb_pass": not violations, "violations": violations, "shapes": dict(shapes)}


# --------------------------------------------------------------- antichain


def max_antichain(L: LatticeGraph) -> int:
    """Width of the lattice: elements minus a maximum matching of ``<`` (Dilworth)."""
    N = len(L)
    strict = L.leq_matrix & ~np.eye(N, dtype=bool)
    matching = maximum_bipartite_matching(csr_matrix(strict.astype(np.int8)), perm_type="column")
    return N - int(np.count_nonzero(matching >= 0))


# ------------------------------------------------------ exhaustive checks


def _rotated_inv(I: MultiInversionSet, asc: TreeAscent) -> MultiInversionSet:
    return transitive_closure(add_pair(I, asc.b, asc.a))


def _support(I: MultiInversionSet) -> set:
    return {p for p, _ in I.items()}


class _Checker:
    """Shared caches for one lattice while running the exhaustive checks."""

    def __init__(self, L: LatticeGraph, height_guard: int):
        self.L = L
        self.guard = height_guard
        self.violations: list[dict] = []
        self._asc: dict[int, list[TreeAscent]] = {}

    def fail(self, check: str, **detail) -> None:
        self.violations.append({"check": check, **detail})

    def ascents(self, i: int) -> list[TreeAscent]:
        if i not in self._asc:
            self._asc[i] = ascents_of(self.L.elements[i], self.L.flavor)
        return self._asc[i]

    def cover_ascent(self, i: int, label: int) -> TreeAscent:
        (asc,) = [x for x in self.ascents(i) if x.a == label]
        return asc

    def step(self, i: int, asc: TreeAscent, check: str, **ctx) -> int | None:
        """Index of the rotation of element ``i`` along ``asc``, or None with a violation."""
        if asc not in self.ascents(i):
            self.fail(check, reason=f"({asc.a},{asc.b}) is not an ascent", element=i, **ctx)
            return None
        return self.L.index(_rotated_inv(self.L.elements[i].inversions, asc))

    # -- per element --------------------------------------------------

    def element(self, i: int) -> None:
        L, T = self.L, self.L.elements[i]
        ascs = self.ascents(i)
        if len({x.a for x in ascs}) != len(ascs):
            self.fail("distinct-ascent-minima", element=i)
        if L.flavor is Flavor.SWEAK:
            from .sweak import rotate_by_surgery, tree_ascents_via_right_subtrees

            if tree_ascents_via_right_subtrees(T) != ascs:
                self.fail("ascents-two-routes", element=i)
            for asc in ascs:
                if rotate_by_surgery(T, asc).inversions != _rotated_inv(T.inversions, asc):
                    self.fail("rotation-two-routes", element=i, ascent=list(asc.pair))
        else:
            from .stamari import tamari_rotate_by_surgery

            for asc in ascs:
                if tamari_rotate_by_surgery(T, asc).tree.inversions != _rotated_inv(T.inversions, asc):
                    self.fail("rotation-two-routes", element=i, ascent=list(asc.pair))
        s = T.composition
        pairs = {x.pair for x in ascs}
        for asc in ascs:
            Z = L.elements[self.L.index(_rotated_inv(T.inversions, asc))]
            if inv_diff(Z.inversions, T.inversions) != _ascent_added(T, asc):
                self.fail("added-inversions-formula", element=i, ascent=list(asc.pair))
            if L.flavor is Flavor.STAMARI or s(asc.a) > 0:
                for e in T.subtree(asc.a):
                    if e < asc.a and (e, asc.b) in pairs:
                        self.fail("no-lower-ascents", element=i, ascent=list(asc.pair), other=e)

    # -- per double cover ---------------------------------------------

    def double_cover(self, i: int, v: int, lv: int, w: int, lw: int) -> str | None:
        L = self.L
        T = L.elements[i]
        ctx = {"bottom": i, "covers": [v, w]}
        if lv == lw:
            self.fail("sb-distinct-labels", **ctx)
            return None
        j = L.join(v, w)
        chains = saturated_chains(L, i, j, self.guard)
        for ch in chains:
            if not {lv, lw} <= set(ch):
                self.fail("sb-both-labels", chain=list(ch), **ctx)
            if set(ch) - {lv, lw}:
                self.fail("sb-no-other-labels", chain=list(ch), **ctx)
        n_el = len(interval_elements(L, i, j))
        if lv > lw:
            v, lv, w, lw = w, lw, v, lv
        z, q = v, w
        dc = DoubleCover(i, j, lv, lw, chains, n_el)
        shape = dc.shape
        if not dc.matches_pattern:
            self.fail("shape-pattern", pattern=[list(p) for p in dc.pattern], **ctx)
        if sorted(interval_atoms(L, i, j)) != sorted([z, q]):
            self.fail("only-two-atoms", **ctx)

        ab, cd = self.cover_ascent(i, lv), self.cover_ascent(i, lw)
        a, b, c, d = ab.a, ab.b, cd.a, cd.b
        ab_in_q = ab in self.ascents(q)
        cd_in_z = cd in self.ascents(z)
        s = T.composition

        # the join reached from either atom by the other addition
        one = transitive_closure(add_pair(transitive_closure(add_pair(T.inversions, b, a)), d, c))
        two = transitive_closure(add_pair(transitive_closure(add_pair(T.inversions, d, c)), b, a))
        if not one == two == L.elements[j].inversions:
            self.fail("join-of-two-atoms", **ctx)

        A1, A2, F = _ascent_added(T, ab), _ascent_added(T, cd), f_set(T, ab, cd)
        S1, S2, S3 = _support(A1), _support(A2), _support(F)
        if S1 & S2 or S1 & S3 or S2 & S3:
            self.fail("added-sets-disjoint", **ctx)
        if inv_diff(L.elements[j].inversions, T.inversions) != inv_union(inv_union(A1, A2), F):
            self.fail("added-set-decomposition", **ctx)

        code = lambda *xs: tuple(0 if x == a else 1 for x in xs)  # noqa: E731
        if L.flavor is Flavor.SWEAK:
            if not (ab_in_q and cd_in_z):
                if not (b == c and s(c) > 0):
                    self.fail("stop-being-ascent", reason="needs b == c and s(c) > 0", **ctx)
                elif not ab_in_q and T.slot_containing(c, a) != 0:
                    self.fail("stop-being-ascent", reason="a not in slot 0 of c", **ctx)
                elif not cd_in_z and T.slot_containing(c, a) != s(c) - 1:
                    self.fail("stop-being-ascent", reason="a not in slot s(c)-1 of c", **ctx)
            expected = {
                (True, True): (code(a, c), code(c, a)),
                (True, False): (code(a, a, c), code(c, a)),
                (False, True): (code(a, c), code(c, a, a)),
                (False, False): (code(a, a, c), code(c, a, a)),
            }[(ab_in_q, cd_in_z)]
            if tuple(sorted(expected)) != dc.pattern:
                self.fail("case-table", **ctx)
            if not cd_in_z:
                self._chain(z, [TreeAscent(a, d), TreeAscent(c, d)], j, "pentagon-chain-through-z", ctx)
            if not ab_in_q:
                self._chain(q, [TreeAscent(a, d), TreeAscent(a, c)], j, "pentagon-chain-through-q", ctx)
        else:
            kind = AscentKind.TAMARI
            if not cd_in_z:
                self.fail("stop-being-ascent", reason="(c,d) stopped being a Tamari ascent", **ctx)
            if not ab_in_q and not (b == c and T.children[c - 1][0] == a):
                self.fail("stop-being-ascent", reason="a is not child 0 of b = c", **ctx)
            expected = (code(a, c), code(c, a)) if ab_in_q else (code(a, c), code(c, a, a))
            if tuple(sorted(expected)) != dc.pattern:
                self.fail("case-table", **ctx)
            if not ab_in_q:
                self._chain(q, [TreeAscent(a, d, kind), TreeAscent(a, c, kind)], j,
                            "pentagon-chain-through-q", ctx)
        return shape.value if shape else "other"

    def _chain(self, start: int, steps: list[TreeAscent], target: int, check: str, ctx: dict) -> None:
        cur = start
        for asc in steps:
            cur = self.step(cur, asc, check, **ctx)
            if cur is None:
                return
        if cur != target:
            self.fail(check, reason="chain does not end at the join", **ctx)

    # -- whole lattice ------------------------------------------------

    def lattice_laws(self) -> None:
        L = self.L
        N = len(L)
        leq = L.leq_matrix
        J = np.zeros((N, N), dtype=np.int32)
        M = np.zeros((N, N), dtype=np.int32)
        inv = [T.inversions for T in L.elements]
        for i in range(N):
            for j in range(i, N):
                key = transitive_closure(inv_union(inv[i], inv[j]))
                if key not in L:
                    self.fail("join-formula-not-element", pair=[i, j])
                    continue
                J[i, j] = J[j, i] = L.index(key)
                upper = np.flatnonzero(leq[i, :] & leq[j, :])
                sub = leq[np.ix_(upper, upper)]
                minimal = upper[sub.sum(axis=0) == 1]
                if minimal.tolist() != [J[i, j]]:
                    self.fail("join-equals-least-upper-bound", pair=[i, j])
                try:
                    M[i, j] = M[j, i] = L.meet(i, j)
                except Exception as exc:  # noqa: BLE001 - recorded as data
                    self.fail("meet-unique", pair=[i, j], reason=str(exc))
        idx = np.arange(N)
        if not (J[J[:, :, None], idx[None, None, :]] == J[idx[:, None, None], J[None, :, :]]).all():
            self.fail("join-associative")
        if not (M[M[:, :, None], idx[None, None, :]] == M[idx[:, None, None], M[None, :, :]]).all():
            self.fail("meet-associative")
        if not ((J[idx[:, None], M] == idx[:, None]).all() and (M[idx[:, None], J] == idx[:, None]).all()):
            self.fail("absorption")
        self.join_table = J

    def homotopy(self) -> tuple[np.ndarray, Counter]:
        """Bulk sphere/ball verdicts: ``dims[i, j]`` is the sphere dimension or ``None``."""
        L = self.L
        N = len(L)
        leq = L.leq_matrix
        X = L.inv_matrix
        mu = mobius_matrix(L)
        chi = euler_matrix(L)
        if not (mu == chi).all():
            bad = np.argwhere(mu != chi)[0].tolist()
            self.fail("mobius-equals-euler", pair=bad)
        if not np.isin(mu[leq], (-1, 0, 1)).all():
            self.fail("mobius-range")
        spheres: Counter = Counter()
        n_asc = max((len(self.ascents(i)) for i in range(N)), default=0)
        weights = 1 << np.arange(n_asc, dtype=np.int64)
        for i in range(N):
            T = L.elements[i]
            ascs = self.ascents(i)
            k = len(ascs)
            above = leq[i, :].copy()
            above[i] = False
            cols = np.array([X[:, pair_index(x.b, x.a)] > X[i, pair_index(x.b, x.a)] for x in ascs],
                            dtype=bool).reshape(k, N)
            mask = weights[:k] @ cols.astype(np.int64) if k else np.zeros(N, dtype=np.int64)
            # atoms of [i, j]: covers of i below j, in the same bit order
            atom_cols = np.zeros((k, N), dtype=bool)
            for v, lab in L.up[i]:
                bit = next(t for t, x in enumerate(ascs) if x.a == lab)
                atom_cols[bit] = leq[v, :]
            atom_mask = weights[:k] @ atom_cols.astype(np.int64) if k else np.zeros(N, dtype=np.int64)
            if (mask[above] != atom_mask[above]).any():
                self.fail("ascent-count-equals-atoms", bottom=i)
            target = np.full(1 << k, -1, dtype=np.int64)
            joined = np.full(1 << k, -1, dtype=np.int64)
            for sub in range(1, 1 << k):
                chosen = [ascs[t] for t in range(k) if sub >> t & 1]
                acc = T.inversions
                for asc in chosen:
                    acc = inv_sum(acc, _ascent_added(T, asc))
                acc = transitive_closure(acc)
                target[sub] = L.index(acc) if acc in L else -2
                u = L.elements[L.index(_rotated_inv(T.inversions, chosen[0]))].inversions
                for asc in chosen[1:]:
                    u = inv_union(u, _rotated_inv(T.inversions, asc))
                joined[sub] = L.index(transitive_closure(u))
            for j in np.flatnonzero(above):
                m = int(mask[j])
                sphere = target[m] == j
                if sphere != (joined[m] == j):
                    self.fail("sphere-criterion-vs-join-of-atoms", bottom=i, top=int(j))
                if sphere:
                    dim = bin(m).count("1") - 2
                    spheres[dim] += 1
                    if chi[i, j] != (-1) ** dim:
                        self.fail("sphere-euler", bottom=i, top=int(j), dim=dim)
                else:
                    spheres["ball"] += 1
                    if chi[i, j] != 0:
                        self.fail("ball-euler", bottom=i, top=int(j))
        self.mu = mu
        return mu, spheres

    def tamari_sublattice(self) -> None:
        """Joins and meets of s-Tamari trees taken in s-weak order stay s-Tamari."""
        L = self.L
        W = build_weak(L.composition)
        ids = [W.index(T) for T in L.elements]
        for x in range(len(ids)):
            for y in range(x + 1, len(ids)):
                jw, mw = W.join(ids[x], ids[y]), W.meet(ids[x], ids[y])  # taken in s-weak order
                if W.elements[jw] not in L or W.elements[mw] not in L:
                    self.fail("tamari-sublattice", pair=[x, y])
                    continue
                if L.index(W.elements[mw]) != L.meet(x, y):
                    self.fail("tamari-sublattice-meet", pair=[x, y])


def build_weak(s):
    from .sweak import build_lattice

    return build_lattice(s, Flavor.SWEAK)


def verify_lattice(L: LatticeGraph, height_guard: int = DEFAULT_HEIGHT_GUARD,
                   laws: bool = True) -> dict:
    """Run every structural check on ``L`` and return the verification report."""
    ck = _Checker(L, height_guard)
    for i in range(len(L)):
        ck.element(i)
    shapes: Counter = Counter()
    sb_checks = 0
    for i in range(len(L)):
        for (v, lv), (w, lw) in combinations(L.up[i], 2):
            shapes[ck.double_cover(i, v, lv, w, lw) or "other"] += 1
            sb_checks += 1
    if laws:
        ck.lattice_laws()
        if L.flavor is Flavor.STAMARI:
            ck.tamari_sublattice()
    mu, spheres = ck.homotopy()
    strict = L.leq_matrix & ~np.eye(len(L), dtype=bool)
    hist = Counter(int(x) for x in mu[strict])
    sb_fail = [v for v in ck.violations if v["check"].startswith("sb-")]
    return {
        "lattice": {
            "s": list(L.composition.entries),
            "flavor": L.flavor.value,
            "elements": len(L),
            "edges": len(L.edges),
            "height": L.height,
        },
        "sb_pass": not sb_fail,
        "violations": ck.violations,
        "double_covers": sb_checks,
        "interval_stats": {k: shapes.get(k, 0) for k in ("diamond", "pentagon", "hexagon")},
        "mobius_histogram": {k: hist.get(int(k), 0) for k in ("-1", "0", "1")},
        "spheres_by_dim": {str(d): spheres[d] for d in sorted(k for k in spheres if k != "ball")},
        "balls": spheres.get("ball", 0),
    }
