"""Local moves: Pachner 2-3 and 3-2, and the 4-4 edge flip.

All three are instances of one operation: a set of tetrahedra whose vertices
carry names is replaced by new tetrahedra written in the same names, and the
outer faces are reattached by matching name sets.  Untouched tetrahedra keep
their relative order; new tetrahedra are appended at the end.
"""

from __future__ import annotations

from .perm import inverse
from .skeleton import Skeleton
from .triangulation import Triangulation


def _replace(tri, old, new):
    """Replace tetrahedra ``old`` (dict tet -> tuple of names per vertex) by ``new``
    (list of 4-tuples of names).  Returns ``(triangulation, kept_index_map)``."""
    glue = tri.gluings
    kept = [t for t in range(tri.size) if t not in old]
    index = {t: i for i, t in enumerate(kept)}
    base = len(kept)
    nt = base + len(new)

    # faces of new tetrahedra keyed by their name set
    new_faces = {}
    for k, names in enumerate(new):
        if len(set(names)) != 4:
            raise ValueError("new tetrahedron has repeated vertex names")
        for f in range(4):
            key = frozenset(names[i] for i in range(4) if i != f)
            new_faces.setdefault(key, []).append((base + k, f))

    table = [[None] * 4 for _ in range(nt)]
    for t in kept:
        for f, g in enumerate(glue[t]):
            if g is not None and g[0] not in old:
                table[index[t]][f] = (index[g[0]], g[1], g[2])

    def locate(key):
        spots = new_faces.get(key)
        if spots is None or len(spots) != 1:
            raise ValueError("replacement does not match the region's outer faces")
        return spots[0]

    def name_to_vertex(k):
        return {nm: i for i, nm in enumerate(new[k - base])}

    matched = set()
    for t, names in old.items():
        for f, g in enumerate(glue[t]):
            if g is not None and g[0] in old:
                t2, f2, p = g
                key = frozenset(names[i] for i in range(4) if i != f)
                key2 = frozenset(old[t2][i] for i in range(4) if i != f2)
                if key == key2:
                    continue  # internal face of the region
            key = frozenset(names[i] for i in range(4) if i != f)
            a, fa = locate(key)
            matched.add(key)
            va = name_to_vertex(a)
            # vertex of new tet a -> vertex of old tet t
            to_old = {va[names[i]]: i for i in range(4) if i != f}
            to_old[fa] = f
            if g is None:
                continue
            t2, f2, p = g
            if t2 in old:
                key2 = frozenset(old[t2][i] for i in range(4) if i != f2)
                b, fb = locate(key2)
                vb = name_to_vertex(b)
                perm = [0] * 4
                for i in range(4):
                    if i == fa:
                        perm[i] = fb
                    else:
                        perm[i] = vb[old[t2][p[to_old[i]]]]
                table[a][fa] = (b, fb, tuple(perm))
            else:
                perm = [0] * 4
                for i in range(4):
                    perm[i] = f2 if i == fa else p[to_old[i]]
                perm = tuple(perm)
                table[a][fa] = (index[t2], f2, perm)
                table[index[t2]][f2] = (a, fa, inverse(perm))

    for key, spots in new_faces.items():
        if len(spots) == 2:
            (a, fa), (b, fb) = spots
            na, nb = new[a - base], new[b - base]
            vb = {nm: i for i, nm in enumerate(nb)}
            perm = tuple(fb if i == fa else vb[na[i]] for i in range(4))
            table[a][fa] = (b, fb, perm)
            table[b][fb] = (a, fa, inverse(perm))
        elif key not in matched:
            raise ValueError("replacement leaves an unmatched face")
    return Triangulation(nt, table), index


def _cycle(tri, sk, edge_class, degree, move):
    if not 0 <= edge_class < len(sk.edges):
        raise ValueError(f"{move}: no edge class {edge_class}")
    ec = sk.edges[edge_class]
    if ec.degree != degree:
        raise ValueError(f"{move}: edge {edge_class} has degree {ec.degree}, need {degree}")
    if ec.boundary:
        raise ValueError(f"{move}: edge {edge_class} lies on the boundary")
    if len(ec.tetrahedra) != degree:
        raise ValueError(
            f"{move}: edge {edge_class} lies in only {len(ec.tetrahedra)} distinct tetrahedra, need {degree}"
        )
    if ec.embeddings is None:
        raise ValueError(f"{move}: edge {edge_class} has no consistent cycle of tetrahedra")
    return ec.embeddings


def _ring_names(embs):
    """Names each tetrahedron around an edge as (u, v, w_k, w_{k+1})."""
    d = len(embs)
    old = {}
    for k, (t, emb) in enumerate(embs):
        names = [None] * 4
        names[emb[0]] = "u"
        names[emb[1]] = "v"
        names[emb[2]] = f"w{k}"
        names[emb[3]] = f"w{(k + 1) % d}"
        old[t] = tuple(names)
    return old


def pachner_2_3(tri, face_class, sk=None):
    """Replace the two tetrahedra on either side of an interior face by three around a new edge.

    The new tetrahedra are the last three; the new edge is their edge 0-1.
    """
    sk = sk or Skeleton(tri)
    if not 0 <= face_class < len(sk.faces):
        raise ValueError(f"2-3 move: no face class {face_class}")
    fc = sk.faces[face_class]
    if fc.boundary:
        raise ValueError(f"2-3 move: face {face_class} is on the boundary")
    (a, fa), (b, fb) = fc.slots
    if a == b:
        raise ValueError(f"2-3 move: both sides of face {face_class} lie in the same tetrahedron")
    p = tri.gluings[a][fa][2]
    xs = [v for v in range(4) if v != fa]
    na = [None] * 4
    nb = [None] * 4
    na[fa] = "a"
    nb[fb] = "b"
    for k, v in enumerate(xs):
        na[v] = f"x{k}"
        nb[p[v]] = f"x{k}"
    new = [("a", "b", f"x{k}", f"x{(k + 1) % 3}") for k in range(3)]
    out, _ = _replace(tri, {a: tuple(na), b: tuple(nb)}, new)
    return out


def pachner_3_2(tri, edge_class, sk=None):
    """Replace the three tetrahedra around a degree-3 edge by two sharing a face.

    The new tetrahedra are the last two; the new face is face 0 of each.
    """
    sk = sk or Skeleton(tri)
    embs = _cycle(tri, sk, edge_class, 3, "3-2 move")
    old = _ring_names(embs)
    new = [("u", "w0", "w1", "w2"), ("v", "w0", "w1", "w2")]
    out, _ = _replace(tri, old, new)
    return out


def _flip_new(diag):
    if diag == 0:
        return [("w0", "w2", "u", "w1"), ("w0", "w2", "w1", "v"), ("w0", "w2", "v", "w3"), ("w0", "w2", "w3", "u")]
    if diag == 1:
        return [("w1", "w3", "u", "w2"), ("w1", "w3", "w2", "v"), ("w1", "w3", "v", "w0"), ("w1", "w3", "w0", "u")]
    raise ValueError(f"4-4 flip: diagonal choice must be 0 or 1, got {diag}")


def edge_flip_4_4(tri, edge_class, diag=0, sk=None):
    """Retriangulate the octahedron around a degree-4 edge along an equatorial diagonal.

    Going around the edge, ``diag`` 0 joins the equator vertex shared by the
    last and first tetrahedra to the one shared by the second and third;
    ``diag`` 1 uses the other pair.  The new axis is edge 0-1
    of the last four tetrahedra.
    """
    sk = sk or Skeleton(tri)
    new = _flip_new(diag)
    embs = _cycle(tri, sk, edge_class, 4, "4-4 flip")
    out, _ = _replace(tri, _ring_names(embs), new)
    return out


# local change in the number of slots of each octahedron edge under a flip
_FLIP_DELTA = {
    0: {("u", "w1"): -1, ("u", "w3"): -1, ("v", "w1"): -1, ("v", "w3"): -1,
        ("u", "w0"): 0, ("u", "w2"): 0, ("v", "w0"): 0, ("v", "w2"): 0},
    1: {("u", "w0"): -1, ("u", "w2"): -1, ("v", "w0"): -1, ("v", "w2"): -1,
        ("u", "w1"): 0, ("u", "w3"): 0, ("v", "w1"): 0, ("v", "w3"): 0},
}
_EQUATOR = (("w0", "w1"), ("w1", "w2"), ("w2", "w3"), ("w3", "w0"))


def flip_degree_report(tri, edge_class, diag=0):
    """Compare degree changes under a 4-4 flip with the octahedron model.

    Returns a dict with the flipped triangulation, the per-octahedron-edge
    model deltas, and per old edge class the measured and predicted change.
    """
    sk = Skeleton(tri)
    embs = _cycle(tri, sk, edge_class, 4, "4-4 flip")
    old = _ring_names(embs)
    new = _flip_new(diag)
    out, index = _replace(tri, old, new)
    sk2 = Skeleton(out)
    base = len(index)

    def old_class(a, b):
        for t, names in old.items():
            if a in names and b in names:
                return sk.edge_class(t, names.index(a), names.index(b))
        return None

    def new_class(a, b):
        for k, names in enumerate(new):
            if a in names and b in names:
                return sk2.edge_class(base + k, names.index(a), names.index(b))
        return None

    model = dict(_FLIP_DELTA[diag])
    for pair in _EQUATOR:
        model[pair] = 1
    predicted = {}
    for pair, d in model.items():
        c = old_class(*pair)
        predicted[c] = predicted.get(c, 0) + d
    predicted[edge_class] = predicted.get(edge_class, 0) - 4

    # old class -> new class through a slot outside the octahedron or a named edge
    corr = {}
    for c, ec in enumerate(sk.edges):
        targets = set()
        for t, e in ec.slots:
            if t in index:
                targets.add(sk2.edge_class(index[t], e))
        for pair in model:
            if old_class(*pair) == c:
                targets.add(new_class(*pair))
        if len(targets) > 1:
            raise AssertionError(f"edge class {c} splits under the flip")
        corr[c] = targets.pop() if targets else None

    classes = []
    for c, ec in enumerate(sk.edges):
        after = sk2.edges[corr[c]].degree if corr[c] is not None else 0
        classes.append(
            {"edge": c, "before": ec.degree, "after": after,
             "measured": after - ec.degree, "predicted": predicted.get(c, 0)}
        )
    axis = new_class(*new[0][:2])
    return {
        "triangulation": out,
        "model": {f"{a}-{b}": d for (a, b), d in sorted(model.items())},
        "classes": classes,
        "new_axis": axis,
        "new_axis_degree": sk2.edges[axis].degree,
        "distinct_octahedron_edges": len({old_class(*pr) for pr in model} | {edge_class}) == 13,
    }

