"""Permutations of the four vertex labels {0, 1, 2, 3}.

A permutation is a plain tuple ``p`` with ``p[i]`` the image of ``i``.
"""

from itertools import permutations

PERMS = tuple(permutations(range(4)))
PERM_INDEX = {p: i for i, p in enumerate(PERMS)}
IDENTITY = (0, 1, 2, 3)

# Edge slot e of a tetrahedron joins EDGE_VERTS[e]; opposite edges are e and 5 - e.
EDGE_VERTS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
EDGE_INDEX = {}
for _e, (_i, _j) in enumerate(EDGE_VERTS):
    EDGE_INDEX[_i, _j] = _e
    EDGE_INDEX[_j, _i] = _e

# Edges lying in face f (the face opposite vertex f).
FACE_EDGES = tuple(
    tuple(e for e, (i, j) in enumerate(EDGE_VERTS) if f not in (i, j)) for f in range(4)
)
# The two faces containing edge e.
EDGE_FACES = tuple(tuple(f for f in range(4) if f not in EDGE_VERTS[e]) for e in range(6))


def inverse(p):
    q = [0] * 4
    for i, j in enumerate(p):
        q[j] = i
    return tuple(q)


def compose(p, q):
    """Return ``p o q`` (apply ``q`` first)."""
    return (p[q[0]], p[q[1]], p[q[2]], p[q[3]])


def sign(p):
    s = 1
    for i in range(4):
        for j in range(i + 1, 4):
            if p[i] > p[j]:
                s = -s
    return s


SIGN = tuple(sign(p) for p in PERMS)
INVERSE_INDEX = tuple(PERM_INDEX[inverse(p)] for p in PERMS)


def face_perms(f, g):
    """All permutations sending face ``f`` onto face ``g`` (that is, ``p[f] == g``)."""
    return [p for p in PERMS if p[f] == g]


def to_digits(p):
    return "".join(str(i) for i in p)


def from_digits(s):
    p = tuple(int(c) for c in s)
    if sorted(p) != [0, 1, 2, 3]:
        raise ValueError(f"not a permutation of 0123: {s!r}")
    return p
