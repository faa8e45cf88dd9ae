"""Layered solid tori inside a triangulation, edge neighbourhood models and face shapes.

A layered solid torus (LST) in ``T`` is a set of tetrahedra whose induced
sub-triangulation is isomorphic to a layered build.  Every LST with more than
one tetrahedron has a unique last tetrahedron (the one carrying both boundary
faces), and removing it leaves an LST.  So all LSTs are found by starting from
single self-glued tetrahedra and repeatedly adding a tetrahedron glued to both
boundary faces, keeping the result whenever it is isomorphic to one of the
three layerings of the current build.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .layered import LayeredBuild, layer_on, s1, s_k
from .perm import EDGE_VERTS, FACE_EDGES
from .signature import canonical_signature, isomorphism, pointed_signature
from .skeleton import Skeleton
from .triangulation import Triangulation


@dataclass(frozen=True)
class LSTSubcomplex:
    tets: tuple  # sorted tetrahedron indices in T
    tri: Triangulation = field(compare=False, repr=False)
    base: int | None  # edge classes of T
    univalent: int
    boundary: tuple  # ((edge class, slope), ...) sorted by slope
    triple: tuple
    interior: tuple
    embedded: bool  # edges of the build stay distinct in T
    s_index: int | None  # m when isomorphic to S_m
    build: LayeredBuild = field(compare=False, repr=False)
    edge_map: tuple = field(compare=False, repr=False)  # build edge class -> edge class of T

    @property
    def size(self):
        return len(self.tets)

    def to_dict(self):
        return {
            "tets": list(self.tets),
            "size": self.size,
            "base": self.base,
            "univalent": self.univalent,
            "boundary": [{"edge": c, "slope": x} for c, x in self.boundary],
            "triple": list(self.triple),
            "interior": list(self.interior),
            "embedded": self.embedded,
            "s_index": self.s_index,
        }


@lru_cache(maxsize=None)
def _s_signatures(limit):
    return {canonical_signature(s_k(m).tri): m for m in range(1, limit + 1)}


def _s_index(tri):
    return _s_signatures(max(tri.size, 1)).get(canonical_signature(tri))


def _slot_class(sk, t, vmap, e):
    i, j = EDGE_VERTS[e]
    return sk.edge_class(t, vmap[i], vmap[j])


def _describe(tri, sk, tets, build):
    sub = tri.induced(tets)
    iso = isomorphism(build.tri, sub)
    if iso is None:
        raise AssertionError("LST lost its isomorphism to the build")
    tet_map, vmaps = iso
    emap = []
    for ec in build.skeleton.edges:
        bt, e = ec.slots[0]
        it = tet_map[bt]
        emap.append(_slot_class(sk, tets[it], vmaps[bt], e))
    interior = [emap[c] for c in build.skeleton.interior_edges()]
    bnd = sorted(((emap[c], x) for c, x in build.boundary), key=lambda p: (p[1], p[0]))
    embedded = len(set(emap)) == len(emap)
    return LSTSubcomplex(
        tets=tuple(tets),
        tri=sub,
        base=emap[build.base] if build.base is not None else None,
        univalent=emap[build.univalent],
        boundary=tuple(bnd),
        triple=build.triple,
        interior=tuple(sorted(interior)),
        embedded=embedded,
        s_index=_s_index(sub),
        build=build,
        edge_map=tuple(emap),
    )


def _free_faces(tri, tets):
    inside = set(tets)
    return [(t, f) for t in tets for f in range(4)
            if tri.gluings[t][f] is not None and tri.gluings[t][f][0] not in inside]


def find_lsts(tri, embedded_only=True, sk=None):
    """All layered solid tori in ``tri``, ordered by (size, tetrahedra).

    With ``embedded_only`` (the default) an LST must also keep its edges
    distinct in ``tri``; otherwise only the face structure is compared.
    """
    sk = sk or Skeleton(tri)
    seed_sig = canonical_signature(s1().tri)
    found = {}
    frontier = []
    for t in range(tri.size):
        if canonical_signature(tri.induced([t])) == seed_sig:
            key = (t,)
            found[key] = s1()
            frontier.append(key)
    while frontier:
        nxt = []
        for key in frontier:
            build = found[key]
            inside = set(key)
            faces = _free_faces(tri, key)
            # induced boundary faces that are glued outward in T
            if len(faces) != 2:
                continue
            (ta, fa), (tb, fb) = faces
            ga, gb = tri.gluings[ta][fa], tri.gluings[tb][fb]
            if ga[0] != gb[0] or ga[0] in inside:
                continue
            sigma = ga[0]
            new = tuple(sorted(inside | {sigma}))
            if new in found:
                continue
            sig = canonical_signature(tri.induced(new))
            for c, _ in build.boundary:
                cand = layer_on(build, c)
                if canonical_signature(cand.tri) == sig:
                    found[new] = cand
                    nxt.append(new)
                    break
        frontier = nxt
    out = [_describe(tri, sk, key, b) for key, b in found.items()]
    if embedded_only:
        out = [x for x in out if x.embedded]
    return sorted(out, key=lambda x: (x.size, x.tets))


def maximal_lsts(tri, lsts=None):
    """LSTs not strictly contained in another LST."""
    lsts = find_lsts(tri) if lsts is None else lsts
    sets = [set(x.tets) for x in lsts]
    return [x for x, s in zip(lsts, sets) if not any(s < o for o in sets)]


def s_maximal_lsts(tri, lsts=None):
    """LSTs isomorphic to some ``S_m`` with ``m >= 2``, not inside a larger such LST."""
    lsts = find_lsts(tri) if lsts is None else lsts
    cands = [x for x in lsts if x.s_index is not None and x.s_index >= 2]
    sets = [set(x.tets) for x in cands]
    return [x for x, s in zip(cands, sets) if not any(s < o for o in sets)]


@dataclass(frozen=True)
class IntersectionReport:
    tets: int
    faces: int
    edges: int
    vertices: int
    shared_tets: tuple = ()

    def to_dict(self):
        return {
            "tets": self.tets,
            "faces": self.faces,
            "edges": self.edges,
            "vertices": self.vertices,
            "shared_tets": list(self.shared_tets),
        }


def _cells(sk, tets):
    faces = {sk.face_class(t, f) for t in tets for f in range(4)}
    edges = {sk.edge_of_slot[6 * t + e] for t in tets for e in range(6)}
    verts = {sk.vertex_class(t, v) for t in tets for v in range(4)}
    return faces, edges, verts


def lst_intersection(tri, a, b, sk=None):
    """Numbers of tetrahedra, face, edge and vertex classes shared by two subcomplexes."""
    sk = sk or Skeleton(tri)
    ta = a.tets if hasattr(a, "tets") else tuple(a)
    tb = b.tets if hasattr(b, "tets") else tuple(b)
    fa, ea, va = _cells(sk, ta)
    fb, eb, vb = _cells(sk, tb)
    shared = tuple(sorted(set(ta) & set(tb)))
    return IntersectionReport(len(shared), len(fa & fb), len(ea & eb), len(va & vb), shared)


def lst_type(tri, lst, coloring, sk=None):
    """Type 1 or 3 of an LST under a colouring, from the parity of its longitude.

    Every edge of the build is a multiple ``label * longitude`` in homology,
    so its parity is ``label * parity(longitude)``; the tetrahedron types are
    checked against this.
    """
    from .z2 import slot_parities, tet_type

    sk = sk or Skeleton(tri)
    labels = lst.build.labels
    odd = [i for i, x in enumerate(labels) if x % 2]
    lam = coloring.parity[lst.edge_map[odd[0]]]
    for i, x in enumerate(labels):
        if coloring.parity[lst.edge_map[i]] != (x * lam) % 2:
            raise AssertionError(f"edge {lst.edge_map[i]} breaks the longitude parity rule")
    kinds = {tet_type(slot_parities(sk, coloring, t))[0] for t in lst.tets}
    want = 1 if lam else 3
    if kinds != {want}:
        raise AssertionError(f"LST tetrahedra have types {sorted(kinds)}, longitude says {want}")
    return want


@dataclass(frozen=True)
class EdgeModel:
    edge: int
    degree: int
    k: int
    tets: tuple
    complex: Triangulation = field(repr=False)
    center: int  # edge class of the central edge inside the model
    signature: str
    pointed: str
    label: str | None = None

    def to_dict(self):
        return {
            "edge": self.edge,
            "degree": self.degree,
            "k": self.k,
            "tets": list(self.tets),
            "signature": self.signature,
            "pointed": self.pointed,
            "label": self.label,
            "closed": self.complex.is_closed(),
        }


def link_complex(tri, edge, sk=None):
    """The tetrahedra around ``edge`` with only the gluings of faces that contain it.

    Returns ``(tets, complex, (t, i, j))`` with a slot of the central edge in
    the complex's numbering.
    """
    sk = sk or Skeleton(tri)
    ec = sk.edges[edge]
    tets = ec.tetrahedra

    def keep(t, f):
        return any(sk.edge_of_slot[6 * t + e] == edge for e in FACE_EDGES[f])

    X = tri.induced(tets, keep)
    t, e = ec.slots[0]
    return tets, X, (tets.index(t), *EDGE_VERTS[e])


def edge_model(tri, edge, catalog=None, sk=None):
    """The neighbourhood model of an interior edge, labelled from ``catalog`` when it matches."""
    sk = sk or Skeleton(tri)
    if not 0 <= edge < len(sk.edges):
        raise ValueError(f"no edge class {edge}")
    ec = sk.edges[edge]
    if ec.boundary:
        raise ValueError(f"edge {edge} lies on the boundary")
    tets, X, slot = link_complex(tri, edge, sk)
    skx = Skeleton(X)
    center = skx.edge_class(*slot)
    if skx.edges[center].degree != ec.degree:
        raise AssertionError("central edge changed degree in its model")
    pointed = pointed_signature(X, *slot)
    label = None
    if catalog is None:
        from .catalog import load_catalog

        catalog = load_catalog()
    for name, key in catalog.items():
        if key == pointed:
            label = name
            break
    return EdgeModel(edge, ec.degree, len(tets), tuple(tets), X, center,
                     canonical_signature(X), pointed, label)


def face_word(tri, face, sk=None):
    """Boundary word of a face: ``[(edge class, +-1), ...]`` around vertices in cyclic order."""
    sk = sk or Skeleton(tri)
    t, f = sk.faces[face].slots[0]
    a, b, c = (v for v in range(4) if v != f)
    word = []
    for x, y in ((a, b), (b, c), (c, a)):
        i, j = min(x, y), max(x, y)
        from .perm import EDGE_INDEX

        s = 6 * t + EDGE_INDEX[i, j]
        sign = sk.edge_sign[s] * (1 if x < y else -1)
        word.append((sk.edge_of_slot[s], sign))
    return word


def classify_face(tri, face, sk=None):
    """``embedded``, ``cone``, ``dunce_hat`` or ``other`` from the face's boundary word."""
    sk = sk or Skeleton(tri)
    if not 0 <= face < len(sk.faces):
        raise ValueError(f"no face class {face}")
    word = face_word(tri, face, sk)
    classes = [c for c, _ in word]
    distinct = len(set(classes))
    if distinct == 3:
        return "embedded"
    if distinct == 2:
        # the repeated letter read once forwards and once backwards: a b a^-1
        rep = next(c for c in classes if classes.count(c) == 2)
        signs = [s for c, s in word if c == rep]
        return "cone" if signs[0] != signs[1] else "other"
    signs = [s for _, s in word]
    return "dunce_hat" if len(set(signs)) == 2 else "other"
