"""Quotient skeleton of a triangulation: edge, vertex and face classes.

Edge slot ``(t, e)`` is edge ``e`` of tetrahedron ``t`` (see ``EDGE_VERTS``),
stored flat as ``6 * t + e``.  Vertex slots and face slots are ``4 * t + i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .perm import EDGE_INDEX, EDGE_VERTS, FACE_EDGES, INVERSE_INDEX, PERM_INDEX, PERMS, SIGN


# for each vertex v: (edge index, v is the lower end) over the three edges at v
_CORNER_EDGES = tuple(
    tuple((EDGE_INDEX[min(v, w), max(v, w)], v < w) for w in range(4) if w != v) for v in range(4)
)


class _ParityUF:
    """Union-find carrying the parity of each element relative to its root."""

    def __init__(self, n):
        self.parent = list(range(n))
        self.parity = [0] * n
        self.conflict = set()

    def find(self, x):
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        root = x
        # compress, accumulating parity from the top down
        acc = 0
        for y in reversed(path):
            acc ^= self.parity[y]
            self.parity[y] = acc
            self.parent[y] = root
        return root

    def union(self, a, b, par):
        ra, rb = self.find(a), self.find(b)
        pa, pb = self.parity[a] if a != ra else 0, self.parity[b] if b != rb else 0
        if ra == rb:
            if pa ^ pb != par:
                self.conflict.add(ra)
            return
        if rb < ra:
            ra, rb, pa, pb = rb, ra, pb, pa
        self.parent[rb] = ra
        self.parity[rb] = pa ^ pb ^ par
        if rb in self.conflict:
            self.conflict.discard(rb)
            self.conflict.add(ra)

    def rel(self, x):
        r = self.find(x)
        return r, (self.parity[x] if x != r else 0)


class _UF:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


@dataclass(frozen=True)
class EdgeClass:
    index: int
    slots: tuple  # (t, e) pairs, sorted
    boundary: bool
    reversed: bool
    _glue: tuple = field(default=None, repr=False, compare=False)

    @cached_property
    def embeddings(self):
        """Embeddings ``(t, (u, v, x, y))`` in order around the edge u-v, each leaving
        through face x.  Cyclic for interior edges, end to end for boundary edges,
        None if the walk is not defined."""
        if self.reversed or self._glue is None:
            return None
        return _walk(self._glue, self.slots, self.boundary)

    @property
    def cycle(self):
        if self.embeddings is None:
            return None
        return tuple((t, EDGE_INDEX[u, v]) for t, (u, v, _, _) in self.embeddings)

    @property
    def degree(self):
        return len(self.slots)

    @property
    def tetrahedra(self):
        return sorted({t for t, _ in self.slots})


@dataclass(frozen=True)
class VertexClass:
    index: int
    slots: tuple  # (t, v) pairs
    euler: int
    boundary: bool
    connected: bool = True

    @property
    def link(self):
        if not self.boundary and self.euler == 2:
            return "sphere"
        if self.boundary and self.euler == 1:
            return "disc"
        return "other"


@dataclass(frozen=True)
class FaceClass:
    index: int
    slots: tuple  # one or two (t, f) pairs
    edges: tuple  # edge classes of the three edges of the first slot, with multiplicity

    @property
    def boundary(self):
        return len(self.slots) == 1


class Skeleton:
    """Edge, vertex and face classes of a structurally sound triangulation."""

    def __init__(self, tri):
        problems = structural_problems(tri)
        if problems:
            raise ValueError("invalid gluing structure: " + "; ".join(problems[:3]))
        self.tri = tri
        n = tri.size
        glue = tri.gluings

        uf = _ParityUF(6 * n)
        vuf = _UF(4 * n)
        for t, f, t2, p in tri.pairs():
            for e in FACE_EDGES[f]:
                i, j = EDGE_VERTS[e]
                a, b = p[i], p[j]
                uf.union(6 * t + e, 6 * t2 + EDGE_INDEX[a, b], 1 if a > b else 0)
            for v in range(4):
                if v != f:
                    vuf.union(4 * t + v, 4 * t2 + p[v])

        # edges
        members = {}
        rel = [uf.rel(s) for s in range(6 * n)]
        for s, (r, _) in enumerate(rel):
            members.setdefault(r, []).append(s)
        roots = sorted(members)  # root is the smallest slot of its class
        self.edge_of_slot = [0] * (6 * n)
        self.edge_sign = [0] * (6 * n)  # +1 if the slot's i<j direction agrees with the class
        for c, r in enumerate(roots):
            for s in members[r]:
                self.edge_of_slot[s] = c
                self.edge_sign[s] = -1 if rel[s][1] else 1
        bslots = set()
        for t, f in tri.boundary_faces():
            for e in FACE_EDGES[f]:
                bslots.add(6 * t + e)
        edges = []
        for c, r in enumerate(roots):
            slots = tuple(divmod(s, 6) for s in members[r])
            rev = r in uf.conflict
            bnd = any(s in bslots for s in members[r])
            edges.append(EdgeClass(c, slots, bnd, rev, glue))
        self.edges = tuple(edges)

        # vertices
        vmembers = {}
        for s in range(4 * n):
            vmembers.setdefault(vuf.find(s), []).append(s)
        vroots = sorted(vmembers)
        self.vertex_of_slot = [0] * (4 * n)
        for c, r in enumerate(vroots):
            for s in vmembers[r]:
                self.vertex_of_slot[s] = c
        eos, esign = self.edge_of_slot, self.edge_sign
        rev_of = [e.reversed for e in edges]
        # link vertices are the ends of edge classes; a reversed edge has its two ends merged
        verts = []
        for c, r in enumerate(vroots):
            slots = tuple(divmod(s, 4) for s in vmembers[r])
            lv = set()
            for t, v in slots:
                for e, up in _CORNER_EDGES[v]:
                    s = 6 * t + e
                    k = eos[s]
                    lv.add((k, 0 if rev_of[k] else int(up != (esign[s] > 0))))
            corners = 3 * len(slots)
            bcorners = sum(1 for t, v in slots for f in range(4) if f != v and glue[t][f] is None)
            ledges = (corners - bcorners) // 2 + bcorners
            chi = len(lv) - ledges + len(slots)
            verts.append(VertexClass(c, slots, chi, bcorners > 0))
        self.vertices = tuple(verts)

        # faces
        faces = []
        self.face_of_slot = [0] * (4 * n)
        for t in range(n):
            for f in range(4):
                g = glue[t][f]
                if g is not None and (g[0], g[1]) < (t, f):
                    continue
                slots = ((t, f),) if g is None else ((t, f), (g[0], g[1]))
                ecl = tuple(self.edge_of_slot[6 * t + e] for e in FACE_EDGES[f])
                idx = len(faces)
                for a, b in slots:
                    self.face_of_slot[4 * a + b] = idx
                faces.append(FaceClass(idx, slots, ecl))
        self.faces = tuple(faces)

    # -- lookups ---------------------------------------------------------------

    def edge_class(self, t, i, j=None):
        """Class of edge slot ``(t, e)`` or of the edge joining vertices ``i, j`` of ``t``."""
        e = i if j is None else EDGE_INDEX[i, j]
        return self.edge_of_slot[6 * t + e]

    def vertex_class(self, t, v):
        return self.vertex_of_slot[4 * t + v]

    def face_class(self, t, f):
        return self.face_of_slot[4 * t + f]

    @property
    def degrees(self):
        return [e.degree for e in self.edges]

    def reversed_edges(self):
        return [e.index for e in self.edges if e.reversed]

    def boundary_edges(self):
        return [e.index for e in self.edges if e.boundary]

    def interior_edges(self):
        return [e.index for e in self.edges if not e.boundary]


def _walk(glue, slots, boundary):
    """Order the slots of one edge class by walking around the edge."""
    # embedding (t, (u, v, x, y)): the edge is u-v; we leave through face x
    def step(t, emb):
        u, v, x, y = emb
        g = glue[t][x]
        if g is None:
            return None
        t2, _, p = g
        return t2, (p[u], p[v], p[y], p[x])

    t0, e0 = slots[0]
    u, v = EDGE_VERTS[e0]
    x, y = (w for w in range(4) if w not in (u, v))
    start = (t0, (u, v, x, y))
    if boundary:
        # rewind to an end: an embedding whose entry face y is boundary
        for t, e in slots:
            u, v = EDGE_VERTS[e]
            others = [w for w in range(4) if w not in (u, v)]
            for x, y in (others, others[::-1]):
                if glue[t][y] is None:
                    start = (t, (u, v, x, y))
                    break
            else:
                continue
            break
        else:
            return None
    out = []
    cur = start
    for _ in range(len(slots)):
        t, emb = cur
        out.append(cur)
        cur = step(t, emb)
        if cur is None:
            break
    if boundary and cur is not None:
        return None
    if not boundary and cur != start:
        return None
    if sorted((t, EDGE_INDEX[u, v]) for t, (u, v, _, _) in out) != sorted(slots):
        return None
    return tuple(out)


def structural_problems(tri):
    """Gluing-table errors that make the quotient undefined."""
    out = []
    n = tri.size
    for t, row in enumerate(tri.gluings):
        for f, g in enumerate(row):
            if g is None:
                continue
            t2, f2, p = g
            pi = PERM_INDEX.get(p)
            if not (0 <= t2 < n and 0 <= f2 < 4) or pi is None:
                out.append(f"face ({t}, {f}) has a malformed target")
                continue
            if t2 == t and f2 == f:
                out.append(f"face ({t}, {f}) is glued to itself")
            if p[f] != f2:
                out.append(f"face ({t}, {f}) permutation does not carry face {f} to face {f2}")
            back = tri.gluings[t2][f2]
            if back is None or back[0] != t or back[1] != f or back[2] != PERMS[INVERSE_INDEX[pi]]:
                out.append(f"face ({t}, {f}) gluing has no matching inverse")
    return out


@dataclass
class ValidationReport:
    status: str  # "invalid", "valid-bounded" or "valid-closed-manifold"
    involution_violations: list = field(default_factory=list)
    self_gluings: list = field(default_factory=list)
    face_mismatches: list = field(default_factory=list)
    malformed: list = field(default_factory=list)
    components: int = 0
    reversed_edges: list = field(default_factory=list)
    bad_vertex_links: list = field(default_factory=list)

    @property
    def ok(self):
        return self.status != "invalid"

    @property
    def violations(self):
        return (
            len(self.involution_violations)
            + len(self.self_gluings)
            + len(self.face_mismatches)
            + len(self.malformed)
            + len(self.reversed_edges)
            + len(self.bad_vertex_links)
        )

    def to_dict(self):
        return {
            "status": self.status,
            "involution_violations": self.involution_violations,
            "self_gluings": self.self_gluings,
            "face_mismatches": self.face_mismatches,
            "malformed": self.malformed,
            "components": self.components,
            "disconnected": self.components > 1,
            "reversed_edges": self.reversed_edges,
            "bad_vertex_links": self.bad_vertex_links,
        }


def validate(tri):
    """Report every problem with ``tri`` and classify it."""
    rep = ValidationReport("invalid")
    n = tri.size
    for t, row in enumerate(tri.gluings):
        for f, g in enumerate(row):
            if g is None:
                continue
            t2, f2, p = g
            if not (0 <= t2 < n and 0 <= f2 < 4) or sorted(p) != [0, 1, 2, 3]:
                rep.malformed.append([t, f])
                continue
            if (t2, f2) == (t, f):
                rep.self_gluings.append([t, f])
            if p[f] != f2:
                rep.face_mismatches.append([t, f])
            back = tri.gluings[t2][f2]
            if back is None or back[0] != t or back[1] != f or tuple(back[2][i] for i in p) != (0, 1, 2, 3):
                rep.involution_violations.append([t, f])
    rep.components = len(tri.components())
    if rep.malformed or rep.self_gluings or rep.face_mismatches or rep.involution_violations:
        return rep
    sk = Skeleton(tri)
    rep.reversed_edges = sk.reversed_edges()
    rep.bad_vertex_links = [v.index for v in sk.vertices if v.link == "other"]
    if rep.reversed_edges or rep.bad_vertex_links:
        return rep
    rep.status = "valid-closed-manifold" if n > 0 and tri.is_closed() else "valid-bounded"
    return rep


def skeleton(tri):
    return Skeleton(tri)


def degree_census(tri, sk=None):
    """Map degree -> number of edges of that degree, for a closed one-vertex triangulation."""
    sk = sk or Skeleton(tri)
    if not tri.is_closed() or tri.size == 0:
        raise ValueError("degree census needs a closed triangulation")
    if len(sk.vertices) != 1:
        raise ValueError(f"degree census needs one vertex, found {len(sk.vertices)}")
    out = {}
    for d in sk.degrees:
        out[d] = out.get(d, 0) + 1
    return dict(sorted(out.items()))


def is_orientable(tri):
    """True iff tetrahedra can be signed so that every gluing reverses orientation."""
    return orientation(tri) is not None


def orientation(tri):
    """A consistent choice of signs per tetrahedron, or None if non-orientable."""
    orient = [0] * tri.size
    for s in range(tri.size):
        if orient[s]:
            continue
        orient[s] = 1
        stack = [s]
        while stack:
            t = stack.pop()
            for g in tri.gluings[t]:
                if g is None:
                    continue
                t2, _, p = g
                want = -orient[t] * SIGN[PERM_INDEX[p]]
                if orient[t2] == 0:
                    orient[t2] = want
                    stack.append(t2)
                elif orient[t2] != want:
                    return None
    return orient

