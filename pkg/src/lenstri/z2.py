"""Edge colourings from homomorphisms to Z2 and the dual normal surface.

A colouring assigns parity 0 (even) or 1 (odd) to each edge class so that
every face has an even number of odd edges (counted with multiplicity).
The dual surface has one vertex on each odd edge, a quadrilateral in every
tetrahedron with two opposite even edges, a triangle in every tetrahedron
whose odd edges meet at a vertex, and nothing in all-even tetrahedra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .homology import gf2_kernel, relation_rows
from .perm import EDGE_INDEX, EDGE_VERTS
from .skeleton import Skeleton, _UF


@dataclass(frozen=True)
class Z2Coloring:
    parity: tuple  # 0 even / 1 odd, per edge class

    @property
    def odd(self):
        return [i for i, p in enumerate(self.parity) if p]

    @property
    def even(self):
        return [i for i, p in enumerate(self.parity) if not p]


def _closed_one_vertex(tri, sk):
    if tri.size == 0 or not tri.is_closed():
        raise ValueError("colourings need a closed triangulation")
    if len(sk.vertices) != 1:
        raise ValueError(f"colourings need one vertex, found {len(sk.vertices)}")


def z2_colorings(tri, sk=None):
    """All nontrivial colourings, in a fixed order."""
    sk = sk or Skeleton(tri)
    _closed_one_vertex(tri, sk)
    E = len(sk.edges)
    basis = gf2_kernel(relation_rows(tri, sk), E)
    out = []
    for coeffs in product((0, 1), repeat=len(basis)):
        if not any(coeffs):
            continue
        v = [0] * E
        for c, b in zip(coeffs, basis):
            if c:
                v = [x ^ y for x, y in zip(v, b)]
        out.append(Z2Coloring(tuple(v)))
    return sorted(out, key=lambda c: c.parity)


def _check_coloring(tri, sk, c):
    if len(c.parity) != len(sk.edges):
        raise ValueError("colouring does not match the edge classes")
    if not any(c.parity):
        raise ValueError("the trivial colouring has no dual surface")
    for fc in sk.faces:
        if sum(c.parity[e] for e in fc.edges) % 2:
            raise ValueError(f"face {fc.index} has an odd number of odd edges")


def slot_parities(sk, c, t):
    return [c.parity[sk.edge_of_slot[6 * t + e]] for e in range(6)]


def tet_type(par):
    """``(type, detail)``: type 1 with the even opposite pair, type 2 with the odd vertex, type 3."""
    odd = [e for e in range(6) if par[e]]
    if not odd:
        return 3, None
    if len(odd) == 4:
        even = [e for e in range(6) if not par[e]]
        if even[0] + even[1] == 5:
            return 1, tuple(even)
    if len(odd) == 3:
        verts = [v for v in range(4) if all(v in EDGE_VERTS[e] for e in odd)]
        if len(verts) == 1:
            return 2, verts[0]
    raise ValueError(f"slot parities {par} fit no tetrahedron type")


def classify_tets(tri, c, sk=None):
    """Type 1, 2 or 3 for every tetrahedron."""
    sk = sk or Skeleton(tri)
    _check_coloring(tri, sk, c)
    return [tet_type(slot_parities(sk, c, t))[0] for t in range(tri.size)]


@dataclass
class DualSurface:
    """A polygon complex: discs with corner cycles, and glued sides.

    ``discs[d] = (tet, corners)`` where corners are the edge slots met in
    cyclic order.  ``gluings`` holds ``(d, k, d2, k2, same)``: side ``k`` of
    disc ``d`` (from corner ``k`` to ``k + 1``) is glued to side ``k2`` of
    ``d2``, traversed the same way iff ``same``.
    """

    discs: list
    gluings: list = field(default_factory=list)
    odd_edges: int | None = None

    def sides(self):
        return sum(len(c) for _, c in self.discs)

    def vertex_count(self):
        index = {}
        for d, (_, cs) in enumerate(self.discs):
            for k in range(len(cs)):
                index[d, k] = len(index)
        uf = _UF(len(index))
        for d, k, d2, k2, same in self.gluings:
            n1, n2 = len(self.discs[d][1]), len(self.discs[d2][1])
            a, b = (d, k), (d, (k + 1) % n1)
            a2, b2 = (d2, k2), (d2, (k2 + 1) % n2)
            if not same:
                a2, b2 = b2, a2
            uf.union(index[a], index[a2])
            uf.union(index[b], index[b2])
        return len({uf.find(i) for i in range(len(index))})

    def edge_count(self):
        return self.sides() - len(self.gluings)

    def euler(self):
        return self.vertex_count() - self.edge_count() + len(self.discs)

    def counts(self):
        return {
            "quads": sum(1 for _, c in self.discs if len(c) == 4),
            "triangles": sum(1 for _, c in self.discs if len(c) == 3),
            "vertices": self.vertex_count(),
            "edges": self.edge_count(),
            "faces": len(self.discs),
        }


def surface_orientability(surf):
    """Whether the discs can be oriented so that glued sides run opposite ways."""
    adj = {d: [] for d in range(len(surf.discs))}
    for d, _, d2, _, same in surf.gluings:
        s = -1 if same else 1  # required product of the two disc orientations
        adj[d].append((d2, s))
        adj[d2].append((d, s))
    orient = {}
    for s0 in adj:
        if s0 in orient:
            continue
        orient[s0] = 1
        stack = [s0]
        while stack:
            d = stack.pop()
            for d2, s in adj[d]:
                want = orient[d] * s
                if d2 not in orient:
                    orient[d2] = want
                    stack.append(d2)
                elif orient[d2] != want:
                    return False
    return True


def _disc_corners(kind, detail):
    if kind == 1:
        (i, j), (k, l) = EDGE_VERTS[detail[0]], EDGE_VERTS[detail[1]]
        return [EDGE_INDEX[i, k], EDGE_INDEX[k, j], EDGE_INDEX[j, l], EDGE_INDEX[l, i]]
    if kind == 2:
        v = detail
        a, b, c = (w for w in range(4) if w != v)
        return [EDGE_INDEX[v, a], EDGE_INDEX[v, b], EDGE_INDEX[v, c]]
    return None


def _side_face(e1, e2):
    """The face of a tetrahedron containing two edges that share a vertex."""
    verts = set(EDGE_VERTS[e1]) | set(EDGE_VERTS[e2])
    (f,) = (v for v in range(4) if v not in verts)
    return f


def dual_surface(tri, c, sk=None):
    sk = sk or Skeleton(tri)
    _check_coloring(tri, sk, c)
    discs = []
    disc_of_tet = {}
    for t in range(tri.size):
        kind, detail = tet_type(slot_parities(sk, c, t))
        corners = _disc_corners(kind, detail)
        if corners is not None:
            disc_of_tet[t] = len(discs)
            discs.append((t, corners))
    gluings = []
    seen = set()
    for d, (t, cs) in enumerate(discs):
        m = len(cs)
        for k in range(m):
            if (d, k) in seen:
                continue
            e1, e2 = cs[k], cs[(k + 1) % m]
            f = _side_face(e1, e2)
            g = tri.gluings[t][f]
            if g is None:
                continue
            t2, _, p = g
            i1 = EDGE_INDEX[p[EDGE_VERTS[e1][0]], p[EDGE_VERTS[e1][1]]]
            i2 = EDGE_INDEX[p[EDGE_VERTS[e2][0]], p[EDGE_VERTS[e2][1]]]
            d2 = disc_of_tet.get(t2)
            if d2 is None:
                raise AssertionError(f"normal arc in tetrahedron {t} has no partner in {t2}")
            cs2 = discs[d2][1]
            m2 = len(cs2)
            match = None
            for k2 in range(m2):
                a, b = cs2[k2], cs2[(k2 + 1) % m2]
                if (a, b) == (i1, i2) and _side_face(a, b) == p[f]:
                    match = (k2, True)
                elif (a, b) == (i2, i1) and _side_face(a, b) == p[f]:
                    match = (k2, False)
            if match is None:
                raise AssertionError(f"normal arcs do not match across face ({t}, {f})")
            k2, same = match
            seen.add((d, k))
            seen.add((d2, k2))
            gluings.append((d, k, d2, k2, same))
    return DualSurface(discs, gluings, sum(c.parity))


@dataclass(frozen=True)
class SurfaceStats:
    T: int
    A: int
    B: int
    C: int
    odd: int
    even: int
    even_preimages: int
    even_by_degree: dict
    chi: int
    chi_k: int

    def to_dict(self):
        return {
            "A": self.A,
            "B": self.B,
            "C": self.C,
            "odd": self.odd,
            "even": self.even,
            "even_preimages": self.even_preimages,
            "even_by_degree": {str(d): n for d, n in sorted(self.even_by_degree.items())},
            "chi": self.chi,
        }

    def eq1(self):
        """Both sides of ``2C + B = 2e - 2 + 2 chi``."""
        return 2 * self.C + self.B, 2 * self.even - 2 + 2 * self.chi


def stats(tri, c, sk=None):
    """Counts attached to a colouring; every internal identity is asserted."""
    sk = sk or Skeleton(tri)
    _closed_one_vertex(tri, sk)
    types = classify_tets(tri, c, sk)
    A, B, C = (types.count(k) for k in (1, 2, 3))
    even = [e for e in sk.edges if not c.parity[e.index]]
    odd = len(sk.edges) - len(even)
    pre = sum(e.degree for e in even)
    by_deg = {}
    for e in even:
        by_deg[e.degree] = by_deg.get(e.degree, 0) + 1
    surf = dual_surface(tri, c, sk)
    chi = surf.euler()
    if surf.vertex_count() != odd:
        raise AssertionError("dual surface should have one vertex per odd edge")
    # the even subcomplex directly: one vertex, even edges, all-even faces, all-even tetrahedra
    even_faces = sum(1 for fc in sk.faces if not any(c.parity[e] for e in fc.edges))
    if 2 * even_faces != B + 4 * C:
        raise AssertionError("all-even face count disagrees with tetrahedron types")
    chi_k = 1 - len(even) + (B + 4 * C) // 2 - C
    if chi != chi_k:
        raise AssertionError(f"surface Euler characteristic {chi} differs from the even complex {chi_k}")
    if pre != 2 * A + 3 * B + 6 * C:
        raise AssertionError("even pre-image count disagrees with tetrahedron types")
    st = SurfaceStats(tri.size, A, B, C, odd, len(even), pre, by_deg, chi, chi_k)
    lhs, rhs = st.eq1()
    if lhs != rhs:
        raise AssertionError(f"2C + B = {lhs} but 2e - 2 + 2chi = {rhs}")
    return st


def _excluded(tri):
    from .homology import homology_h1

    h = homology_h1(tri)
    return h.rank == 0 and h.torsion in ((2,), (4,))


def inequality_report(tri, c, assume_minimal=True, sk=None):
    """Evaluate both sides of the two even-edge degree inequalities."""
    sk = sk or Skeleton(tri)
    st = stats(tri, c, sk)
    tail = sum((j - 4) * n for j, n in st.even_by_degree.items() if j >= 5)
    e3 = st.even_by_degree.get(3, 0)
    general_rhs = 4 - 2 * st.T - 4 * st.chi + tail
    out = {
        "assume_minimal": bool(assume_minimal),
        "excluded": _excluded(tri),
        "e3": e3,
        "general": {"lhs": e3, "rhs": general_rhs, "slack": e3 - general_rhs, "holds": e3 >= general_rhs},
        "even_ge_odd": st.even >= st.odd,
    }
    if st.even >= st.odd:
        rhs = 2 + tail
        out["balanced"] = {"lhs": e3, "rhs": rhs, "slack": e3 - rhs, "holds": e3 >= rhs}
    else:
        out["balanced"] = None
    return out


def condition3_check(tri, c, sk=None):
    """Exactly two even edges of degree three and every other even edge of degree four."""
    sk = sk or Skeleton(tri)
    degs = [e.degree for e in sk.edges if not c.parity[e.index]]
    return degs.count(3) == 2 and all(d in (3, 4) for d in degs)
