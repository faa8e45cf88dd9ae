"""Shared strategies and small oracles for the tests."""

import random
from itertools import permutations

from hypothesis import strategies as st

from lenstri import Triangulation
from lenstri.perm import EDGE_VERTS, sign

PERMS = list(permutations(range(4)))


def random_closed(n, rng, orientable=False):
    """A random closed gluing of ``n`` tetrahedra (possibly disconnected or not a manifold)."""
    faces = [(t, f) for t in range(n) for f in range(4)]
    rng.shuffle(faces)
    pairs = []
    for k in range(0, len(faces), 2):
        (t, f), (t2, f2) = faces[k], faces[k + 1]
        opts = [p for p in PERMS if p[f] == f2]
        pairs.append((t, f, t2, rng.choice(opts)))
    tri = Triangulation.from_pairs(n, pairs)
    if orientable and not naive_orientable(tri):
        return None
    return tri


@st.composite
def closed_gluings(draw, max_tets=4, connected=True):
    n = draw(st.integers(1, max_tets))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    for _ in range(200):
        tri = random_closed(n, rng)
        if not connected or tri.is_connected():
            return tri
    return random_closed(1, rng)


class UF:
    def __init__(self, n):
        self.p = list(range(n))

    def find(self, x):
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, a, b):
        self.p[self.find(a)] = self.find(b)


def naive_classes(tri):
    """Edge and vertex classes by brute union-find over slots: ``(edge degrees, vertex count)``."""
    n = tri.size
    index = {e: k for k, e in enumerate(EDGE_VERTS)}
    eu, vu = UF(6 * n), UF(4 * n)
    for t in range(n):
        for f in range(4):
            g = tri.gluings[t][f]
            if g is None:
                continue
            t2, f2, p = g
            others = [v for v in range(4) if v != f]
            for v in others:
                vu.union(4 * t + v, 4 * t2 + p[v])
            for a in others:
                for b in others:
                    if a < b:
                        x, y = sorted((p[a], p[b]))
                        eu.union(6 * t + index[a, b], 6 * t2 + index[x, y])
    sizes = {}
    for s in range(6 * n):
        r = eu.find(s)
        sizes[r] = sizes.get(r, 0) + 1
    verts = len({vu.find(s) for s in range(4 * n)})
    return sorted(sizes.values()), verts


def naive_orientable(tri):
    n = tri.size
    orient = [0] * n
    for start in range(n):
        if orient[start]:
            continue
        orient[start] = 1
        stack = [start]
        while stack:
            t = stack.pop()
            for f in range(4):
                g = tri.gluings[t][f]
                if g is None:
                    continue
                t2, _, p = g
                want = -orient[t] * sign(p)
                if orient[t2] == 0:
                    orient[t2] = want
                    stack.append(t2)
                elif orient[t2] != want:
                    return False
    return True
