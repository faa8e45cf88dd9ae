"""Layered solid tori and layered lens spaces.

A :class:`LayeredBuild` is a triangulated solid torus with one boundary
vertex, three boundary edges and two boundary faces, together with the
integer label of every edge (its image in ``H1 = Z``) and the slope triple:
the number of times the meridian meets each boundary edge.

Edge class numbers are stable under layering: layering never merges
existing classes, and the new edge always has the largest index.  In the
builds ``s_k(k)`` the edge ``e_j`` is class ``j - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

from .arith import LensSpec, euclid_steps
from .homology import edge_labels
from .perm import EDGE_VERTS, FACE_EDGES
from .skeleton import Skeleton
from .triangulation import Triangulation


def _sorted_triple(vals):
    a, b, c = sorted(vals)
    if a + b != c or a < 0:
        raise ValueError(f"{{{a}, {b}, {c}}} is not a slope triple")
    return (a, b, c)


def layer_triple(triple, x):
    """Slope triple after layering on the boundary edge of slope ``x``."""
    a, b, c = _sorted_triple(triple)
    if x == c:
        return _sorted_triple((a, b, b - a))
    if x == a:
        return _sorted_triple((b, a + b, a + 2 * b))
    if x == b:
        return _sorted_triple((a, a + b, 2 * a + b))
    raise ValueError(f"{x} is not a slope of {triple}")


def fold_lens(triple, x):
    """Lens space obtained by folding along the edge of slope ``x``."""
    a, b, c = _sorted_triple(triple)
    if x == c:
        return LensSpec(0, 1) if a == b else LensSpec(b - a, a)
    if x == a:
        y = b
    elif x == b:
        y = a
    else:
        raise ValueError(f"{x} is not a slope of {triple}")
    return LensSpec(2 * y + x, y)


@dataclass(frozen=True)
class LayeredBuild:
    tri: Triangulation
    history: tuple  # ((edge class, slope), ...) in layering order
    labels: tuple  # integer label per edge class
    triple: tuple  # sorted slope triple
    boundary: tuple  # ((edge class, slope), ...) sorted by class
    univalent: int
    base: int | None
    faces: tuple  # the two boundary faces (t, f)
    skeleton: Skeleton = field(repr=False, compare=False, default=None)

    @property
    def size(self):
        return self.tri.size

    @property
    def degrees(self):
        return self.skeleton.degrees

    def slope_of(self, edge):
        for c, x in self.boundary:
            if c == edge:
                return x
        raise ValueError(f"edge {edge} is not a boundary edge")

    def edge_with_slope(self, x):
        for c, y in self.boundary:
            if y == x:
                return c
        raise ValueError(f"no boundary edge has slope {x}; triple is {self.triple}")

    def interior_edges(self):
        return self.skeleton.interior_edges()

    def to_dict(self):
        out = self.tri.to_dict()
        out["meta"] = {
            "triple": list(self.triple),
            "labels": {str(i): v for i, v in enumerate(self.labels)},
            "history": [{"edge": c, "slope": x} for c, x in self.history],
            "boundary": {str(c): x for c, x in self.boundary},
            "univalent": self.univalent,
            "base": self.base,
        }
        return out


# builds up to this size recompute labels from homology as a check on the bookkeeping
ORACLE_LIMIT = 10


def _make(tri, history, triple, labels=None):
    sk = Skeleton(tri)
    if labels is None or tri.size <= ORACLE_LIMIT:
        # each edge is oriented so that its label is nonnegative
        homol = tuple(abs(x) for x in edge_labels(tri, sk))
        if labels is not None and tuple(labels) != homol:
            raise AssertionError(f"label bookkeeping {labels} disagrees with homology {homol}")
        labels = homol
    labels = tuple(labels)
    if len(labels) != len(sk.edges):
        raise AssertionError("one label per edge class expected")
    faces = tuple(tri.boundary_faces())
    bnd = sk.boundary_edges()
    if len(faces) != 2 or len(bnd) != 3 or len(sk.vertices) != 1 or sk.reversed_edges():
        raise AssertionError("layered build lost its one-vertex torus boundary")
    boundary = tuple((c, labels[c]) for c in bnd)
    if triple is None:
        triple = _sorted_triple(x for _, x in boundary)
    # the homology labels are an independent check on the triple bookkeeping
    if tuple(sorted(x for _, x in boundary)) != tuple(triple):
        raise AssertionError(f"slope bookkeeping {triple} disagrees with labels {boundary}")
    if triple[2] and gcd(triple[0], triple[1]) != 1:
        raise AssertionError(f"triple {triple} is not primitive")
    uni = [c for c in bnd if sk.edges[c].degree == 1]
    if len(uni) != 1:
        raise AssertionError("layered build needs exactly one univalent edge")
    base = history[0][0] if history else None
    return LayeredBuild(tri, tuple(history), labels, tuple(triple), boundary, uni[0], base, faces, sk)


def s1():
    """The one-tetrahedron solid torus: face 0 glued to face 3."""
    tri = Triangulation.from_pairs(1, [(0, 0, 0, (3, 0, 1, 2))])
    return _make(tri, [], (1, 2, 3))


def _face_slot(sk, t, f, edge):
    """The two vertices of face ``(t, f)`` spanning ``edge``, ordered along the class."""
    for e in FACE_EDGES[f]:
        if sk.edge_of_slot[6 * t + e] == edge:
            i, j = EDGE_VERTS[e]
            return (i, j) if sk.edge_sign[6 * t + e] > 0 else (j, i)
    return None


def layer_on(build, edge):
    """Glue a new tetrahedron onto the two boundary faces along boundary ``edge``."""
    sk = build.skeleton
    if edge not in dict(build.boundary):
        raise ValueError(f"edge {edge} is not a boundary edge")
    (t1, f1), (t2, f2) = build.faces
    a1 = _face_slot(sk, t1, f1, edge)
    a2 = _face_slot(sk, t2, f2, edge)
    if a1 is None or a2 is None:
        raise ValueError(f"edge {edge} is not incident to both boundary faces")
    c1 = next(v for v in range(4) if v not in (f1, *a1))
    c2 = next(v for v in range(4) if v not in (f2, *a2))
    n = build.size
    # new tetrahedron: face 3 onto the first face, face 2 onto the second, edge 0-1 onto edge
    p1 = (a1[0], a1[1], c1, f1)
    p2 = (a2[0], a2[1], f2, c2)
    tri = build.tri.with_tetrahedra(1).with_gluings([(n, 3, t1, p1), (n, 2, t2, p2)])
    x = build.slope_of(edge)
    triple = layer_triple(build.triple, x)
    # old edges keep their labels; the new edge takes the slope no old boundary edge has
    rest = list(triple)
    for c, y in build.boundary:
        if c != edge:
            rest.remove(y)
    return _make(tri, list(build.history) + [(edge, x)], triple, build.labels + (rest[0],))


def layer_on_slope(build, x):
    return layer_on(build, build.edge_with_slope(x))


def _fold_gluing(build, edge):
    sk = build.skeleton
    if edge not in dict(build.boundary):
        raise ValueError(f"edge {edge} is not a boundary edge")
    (t1, f1), (t2, f2) = build.faces
    a1 = _face_slot(sk, t1, f1, edge)
    a2 = _face_slot(sk, t2, f2, edge)
    c1 = next(v for v in range(4) if v not in (f1, *a1))
    c2 = next(v for v in range(4) if v not in (f2, *a2))
    p = [0] * 4
    p[a1[0]], p[a1[1]], p[c1], p[f1] = a2[0], a2[1], c2, f2
    return t1, f1, t2, tuple(p)


def fold(build, edge):
    """Close the book along boundary ``edge``: returns ``(triangulation, lens)``."""
    tri = build.tri.with_gluings([_fold_gluing(build, edge)])
    sk = Skeleton(tri)
    if sk.reversed_edges():
        raise ValueError(f"folding along edge {edge} identifies an edge with its reverse")
    if any(v.link != "sphere" for v in sk.vertices):
        raise ValueError(f"folding along edge {edge} does not give a manifold")
    return tri, fold_lens(build.triple, build.slope_of(edge))


def fold_on_slope(build, x):
    return fold(build, build.edge_with_slope(x))


def fold_identifications(build, edge):
    """For each edge class of the build: its class after folding and the sign relating the two."""
    tri = build.tri.with_gluings([_fold_gluing(build, edge)])
    sk2 = Skeleton(tri)
    sk = build.skeleton
    out = []
    for ec in sk.edges:
        t, e = ec.slots[0]
        s = 6 * t + e
        out.append((ec.index, sk2.edge_of_slot[s], sk.edge_sign[s] * sk2.edge_sign[s]))
    return out


def s_k(k):
    """``S_1`` layered successively on ``e_2, ..., e_k``; boundary triple ``{1, k+1, k+2}``."""
    if k < 1:
        raise ValueError("s_k needs k >= 1")
    b = s1()
    for j in range(2, k + 1):
        b = layer_on(b, j - 1)
    return b


def l_k(k):
    """Fold of ``s_k(k)`` along ``e_{k+1}``: a triangulation of ``L(k+3, 1)``."""
    if k < 1:
        raise ValueError("l_k needs k >= 1")
    return fold(s_k(k), k)


def descent(triple):
    """Triples visited going from ``triple`` down to ``{1, 2, 3}``."""
    a, b, c = _sorted_triple(triple)
    if a <= 0 or a == b or gcd(a, b) != 1:
        raise ValueError(f"minimal layered extension needs coprime 0 < p < q, got {triple}")
    path = [(a, b, c)]
    while (a, b, c) != (1, 2, 3):
        a, b, c = sorted((b - a, a, b))
        path.append((a, b, c))
    return path


@lru_cache(maxsize=8192)
def _extension(triple):
    # builds form a tree under descent, so each one is its parent plus one layer
    if triple == (1, 2, 3):
        return s1()
    a, b, _ = triple
    parent = tuple(sorted((b - a, a, b)))
    build = _extension(parent)
    x = next(v for v in build.triple if v not in triple)
    return layer_on_slope(build, x)


def minimal_layered_extension(triple):
    """The layered solid torus with boundary ``triple`` and fewest tetrahedra."""
    path = descent(triple)
    b = _extension(path[0])
    if b.triple != path[0] or b.size != len(path):
        raise AssertionError(f"replay reached {b.triple} in {b.size} steps, wanted {triple}")
    return b


def lens_parameters(L):
    """``(p, q)`` with the fold of ``{p, q, p+q}`` along ``q`` giving ``L``."""
    if L.P <= 3:
        raise ValueError(
            f"{L} is a special case; use sphere(), projective_space() or l31()"
        )
    qs = [x for x in L.equivalents() if 2 * x < L.P]
    if not qs:
        raise AssertionError(f"no parameter below half for {L}")
    p = qs[0]
    return p, L.P - 2 * p


def minimal_layered_lens(L):
    """Minimal layered triangulation of ``L``, for ``P >= 4``."""
    p, q = lens_parameters(L)
    b = minimal_layered_extension((p, q, p + q))
    tri, got = fold_on_slope(b, q)
    if got != L and got.normal_form() != L.normal_form():
        raise AssertionError(f"fold gave {got}, expected {L}")
    n = euclid_steps(L.P, L.Q) - 3
    if tri.size != n:
        raise AssertionError(f"{L}: {tri.size} tetrahedra, expected {n}")
    return tri


def sphere():
    """One-tetrahedron 3-sphere, the fold of ``S_1`` along ``e_3``."""
    return fold(s1(), 2)[0]


def projective_space():
    """Two-tetrahedron ``RP^3``: fold ``S_2`` along its slope-4 edge."""
    return fold_on_slope(s_k(2), 4)[0]


def l31():
    """Two-tetrahedron ``L(3, 1)``: layer ``S_1`` on slope 3, fold on slope 1."""
    b = layer_on_slope(s1(), 3)
    return fold_on_slope(b, 1)[0]


def special_lens(L):
    """Minimal layered triangulations of ``S^3``, ``RP^3`` and ``L(3, 1)``."""
    if L.P == 1:
        return sphere()
    if L.P == 2:
        return projective_space()
    if L.P == 3:
        return l31()
    raise ValueError(f"{L} is not a special case")


def layered_lens(L):
    return special_lens(L) if L.P <= 3 else minimal_layered_lens(L)


# boundary slopes (s+2, s+1, 1) of the first torus are matched with these slopes of the second
PAIRINGS = {
    1: lambda t: (t + 1, t + 2, 1),
    2: lambda t: (t + 1, 1, t + 2),
    3: lambda t: (1, t + 2, t + 1),
    4: lambda t: (t + 2, t + 1, 1),
    5: lambda t: (t + 2, 1, t + 1),
    6: lambda t: (1, t + 1, t + 2),
}


def expected_order(s, t, pairing):
    return {
        1: s + t + 3,
        2: (s + 1) * (t + 2) + 1,
        3: (s + 2) * (t + 1) + 1,
        4: abs(t - s),
        5: s * (t + 1) + t,
        6: (s + 1) * (t + 2) + t + 1,
    }[pairing]


def pair_solid_tori(s, t, pairing):
    """Glue ``S_s`` to ``S_t`` along their boundaries by the indexed edge pairing.

    Returns ``(triangulation, expected order of H1)``; tetrahedra ``0..s-1``
    come from ``S_s``.  Order 0 means infinite.
    """
    if not 1 <= s <= t:
        raise ValueError("pair_solid_tori needs 1 <= s <= t")
    if pairing not in PAIRINGS:
        raise ValueError(f"pairing must be 1..6, got {pairing}")
    A, B = s_k(s), s_k(t)
    match = {A.edge_with_slope(x): B.edge_with_slope(y) for x, y in zip((s + 2, s + 1, 1), PAIRINGS[pairing](t))}
    tri = A.tri.disjoint_union(B.tri)
    ska, skb = A.skeleton, B.skeleton

    def opposite_class(sk, tt, f, v):
        # class of the edge of face f opposite vertex v
        i, j = (w for w in range(4) if w not in (f, v))
        return sk.edge_class(tt, i, j)

    def face_map(fa, fb):
        (ta, f1), (tb, f2) = fa, fb
        p = [0] * 4
        p[f1] = f2
        for v in range(4):
            if v != f1:
                want = match[opposite_class(ska, ta, f1, v)]
                p[v] = next(w for w in range(4) if w != f2 and opposite_class(skb, tb, f2, w) == want)
        return ta, f1, tb + s, tuple(p)

    for fb in (B.faces, B.faces[::-1]):
        cand = tri.with_gluings([face_map(A.faces[0], fb[0]), face_map(A.faces[1], fb[1])])
        sk = Skeleton(cand)
        if not sk.reversed_edges() and all(v.link == "sphere" for v in sk.vertices):
            return cand, expected_order(s, t, pairing)
    raise ValueError(f"pairing {pairing} does not extend to a gluing of the boundary tori")


def worked_example(s):
    """``S_s`` layered on 1, s+2, s+1, 3s+4, 2s+3, 7s+10, 5s+7 and folded along 17s+24."""
    b = s_k(s)
    for x in (1, s + 2, s + 1, 3 * s + 4, 2 * s + 3, 7 * s + 10, 5 * s + 7):
        b = layer_on_slope(b, x)
    return fold_on_slope(b, 17 * s + 24)


def theorem_applies(L):
    """Whether the minimal layered triangulation of ``L`` has no more odd than even edges."""
    from .z2 import stats, z2_colorings

    if L.P % 2:
        raise ValueError("no nontrivial Z2 class")
    if L.P < 4:
        raise ValueError(f"{L}: need P >= 4")
    tri = minimal_layered_lens(L)
    (c,) = z2_colorings(tri)
    st = stats(tri, c)
    return st.even >= st.odd
