import pytest

from helpers import compositions
from streelat.core import DomainError, SDecreasingTree, WeakComposition
from streelat.stamari import (
    TamariTreeView,
    is_tamari,
    tamari_ascents,
    tamari_covers,
    tamari_rotate,
    tamari_rotate_by_surgery,
    tamari_violation,
)
from streelat.sweak import Flavor, NotAnAscentError, TreeAscent, build_lattice, enumerate_trees


def lat(text, flavor=Flavor.STAMARI):
    return build_lattice(WeakComposition.parse(text), flavor)


@pytest.mark.parametrize("text,count", [("1,1,1", 5), ("1,1,1,1", 14), ("0,0,2", 6), ("1,1,1,1,1", 42)])
def test_counts(text, count):
    assert len(lat(text)) == count


def test_violation_triple():
    s = WeakComposition((0, 2, 2))
    # 1 sits right of 2 under the root
    T = SDecreasingTree(s, [[0], [0, 0, 0], [2, 1, 0]])
    v = tamari_violation(T)
    assert v.axiom == "tamari" and v.triple == (1, 2, 3)
    with pytest.raises(DomainError):
        TamariTreeView.certify(T)
    with pytest.raises(DomainError):
        tamari_ascents(T)


def test_tamari_trees_are_label_sorted():
    for s in compositions(4, 2):
        for T in enumerate_trees(s):
            ok = all(
                T.card(c, a) <= T.card(c, b)
                for a in range(1, T.n + 1) for b in range(a + 1, T.n + 1) for c in range(b + 1, T.n + 1)
            )
            assert is_tamari(T) == ok


def test_ascents_are_parent_child_pairs():
    for s in compositions(4, 2):
        for T in filter(is_tamari, enumerate_trees(s)):
            for asc in tamari_ascents(T):
                p, j = T.parent(asc.a)
                assert p == asc.b and j < s(asc.b)


def test_rotation_routes_agree():
    for s in compositions(4, 3):
        for T in filter(is_tamari, enumerate_trees(s)):
            for asc in tamari_ascents(T):
                Z = tamari_rotate(T, asc)
                assert Z.certified and is_tamari(Z.tree)
                assert tamari_rotate_by_surgery(T, asc).tree == Z.tree


def test_rotate_rejects_non_ascent():
    s = WeakComposition((1, 1, 1))
    T = SDecreasingTree(s, [[0, 0], [1, 0], [2, 0]])
    with pytest.raises(NotAnAscentError):
        tamari_rotate(T, TreeAscent(1, 3))


def test_covers_lie_above_in_weak_order():
    for text in ("0,1,2", "1,2,1,1", "0,2,2"):
        W, L = lat(text, Flavor.SWEAK), lat(text)
        for i, T in enumerate(L.elements):
            for Z, _ in tamari_covers(T):
                assert W.leq(W.index(T), W.index(Z))


def test_sublattice_closure():
    for text in ("0,1,2", "1,1,1,1", "0,2,2", "2,1,2", "1,0,2,1"):
        W, L = lat(text, Flavor.SWEAK), lat(text)
        ids = [W.index(T) for T in L.elements]
        for x in range(len(ids)):
            for y in range(x, len(ids)):
                j, m = W.join(ids[x], ids[y]), W.meet(ids[x], ids[y])
                assert is_tamari(W.elements[j]) and is_tamari(W.elements[m])
                assert L.index(W.elements[j]) == L.join(x, y)
                assert L.index(W.elements[m]) == L.meet(x, y)


def test_no_lower_ascents_under_same_parent():
    for s in compositions(4, 3):
        for T in filter(is_tamari, enumerate_trees(s)):
            pairs = {a.pair for a in tamari_ascents(T)}
            for a, b in pairs:
                assert not any((c, b) in pairs for c in T.subtree(a) if c < a)


def test_stop_being_ascent_cases():
    for s in compositions(4, 3):
        for T in filter(is_tamari, enumerate_trees(s)):
            ascs = tamari_ascents(T)
            for x in range(len(ascs)):
                for y in range(x + 1, len(ascs)):
                    ab, cd = ascs[x], ascs[y]
                    Z, Q = tamari_rotate(T, ab).tree, tamari_rotate(T, cd).tree
                    assert cd in tamari_ascents(Z)
                    if ab not in tamari_ascents(Q):
                        assert ab.b == cd.a and T.children[cd.a - 1][0] == ab.a


def test_bottom_of_s111():
    L = lat("1,1,1")
    bottom = L.elements[L.bottom]
    assert is_tamari(bottom) and len(L.edges) == 5
    ascs = tamari_ascents(bottom)
    assert len(ascs) == 2
    added = {asc.a: set(tamari_rotate(bottom, asc).tree.inversions.items()) for asc in ascs}
    # a lone (3,1) is not planar, so the second cover adds (3,2)
    assert added == {1: {((2, 1), 1)}, 2: {((3, 2), 1)}}
    assert tamari_ascents(L.elements[L.top]) == []


def test_s111_rejects_exactly_one_tree():
    rejected = [T for T in enumerate_trees(WeakComposition((1, 1, 1))) if not is_tamari(T)]
    assert len(rejected) == 1
    assert tamari_violation(rejected[0]).triple == (1, 2, 3)
    assert tamari_violation(lat("0,2,2").elements[0]) is None
