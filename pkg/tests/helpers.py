"""Shared fixtures data: small compositions and hand-transcribed lattices."""
from itertools import product

from streelat.core import MultiInversionSet, WeakComposition


def compositions(max_n=4, max_entry=3):
    for n in range(1, max_n + 1):
        for entries in product(range(max_entry + 1), repeat=n):
            yield WeakComposition(entries)


def from_word(s, word):
    """Decode a node name such as ``"232313"``: each digit pair ``xy`` adds one to ``#(y, x)``."""
    s = WeakComposition.parse(s) if isinstance(s, str) else s
    d = {}
    for k in range(0, len(word), 2):
        x, y = int(word[k]), int(word[k + 1])
        d[(y, x)] = d.get((y, x), 0) + 1
    return MultiInversionSet.from_dict(s, d)


# (lower, upper, label); "" is the bottom.  The drawing lists one edge twice.
S012_EDGES = [
    ("", "23", 2), ("23", "2313", 1), ("", "12", 1), ("23", "2323", 2),
    ("2323", "232313", 1), ("232313", "23231313", 1), ("23231313", "max", 1),
    ("12", "1213", 1), ("1213", "121313", 1), ("1213", "121323", 2),
    ("121323", "12131323", 1), ("121313", "12131323", 2), ("12131323", "max", 2),
    ("232313", "23231313", 1), ("2313", "121323", 1), ("2313", "232313", 2),
]
S012_MAX = "1223231313"

S022_EDGES = [
    ("", "23", 2), ("23", "2313", 1), ("2313", "1223", 1), ("", "12", 1),
    ("12", "1223", 2), ("23", "2323", 2), ("2323", "232313", 1), ("2313", "232313", 2),
    ("232313", "23231313", 1), ("23231313", "2323131312", 1), ("1223", "2323131312", 2),
    ("2323131312", "max", 1), ("1223", "122312", 1), ("122312", "12131213", 1),
    ("12131213", "max", 2), ("12", "1212", 1), ("1212", "121213", 1),
    ("121213", "122312", 2), ("121213", "12121313", 1), ("12121313", "12131213", 2),
]
# node names above are handles; their inversion sets read off the drawn trees
S022_NODES = {
    "": {},
    "12": {(2, 1): 1},
    "23": {(3, 2): 1},
    "2313": {(3, 1): 1, (3, 2): 1},
    "1223": {(2, 1): 1, (3, 1): 1, (3, 2): 1},
    "1212": {(2, 1): 2},
    "2323": {(3, 2): 2},
    "232313": {(3, 1): 1, (3, 2): 2},
    "121213": {(2, 1): 2, (3, 1): 1},
    "122312": {(2, 1): 2, (3, 1): 1, (3, 2): 1},
    "12121313": {(2, 1): 2, (3, 1): 2},
    "23231313": {(3, 1): 2, (3, 2): 2},
    "12131213": {(2, 1): 2, (3, 1): 2, (3, 2): 1},
    "2323131312": {(2, 1): 1, (3, 1): 2, (3, 2): 2},
    "max": {(2, 1): 2, (3, 1): 2, (3, 2): 2},
}

# s = (0,0,2), unlabeled
S002_EDGES = [
    ("", "13"), ("13", "1313"), ("1313", "131323"), ("131323", "max"), ("max", "232313"),
    ("232313", "1323"), ("1323", "131323"), ("", "23"), ("23", "2323"), ("2323", "232313"),
    ("23", "1323"), ("1323", "13"),
]
S002_MAX = "13132323"


def decode_edges(s, edges, top=None, nodes=None):
    """Edges as ``(lower inv, upper inv[, label])``; names decode via ``nodes`` or as words."""
    s = WeakComposition.parse(s) if isinstance(s, str) else s

    def dec(name):
        if nodes is not None:
            return MultiInversionSet.from_dict(s, nodes[name])
        return from_word(s, top if name == "max" else name)

    out = set()
    for e in edges:
        lo, hi = dec(e[0]), dec(e[1])
        if lo <= hi:
            out.add((lo, hi) + tuple(e[2:]))
        else:  # undirected transcription
            out.add((hi, lo) + tuple(e[2:]))
    return out
