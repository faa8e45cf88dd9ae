"""Catalog of edge neighbourhood models ``X_{n;k}`` keyed by pointed signature.

A model is the link complex of an interior edge: the tetrahedra around it
glued only across faces that contain it.  Entries are either built directly
(layered pieces, the octahedron and the five-tetrahedron ball) or picked out
of two enumerations by a written characterization:

* closed census members, for the closed models with one or two tetrahedra;
* the edge-neighbourhood census below, which lists every link complex with
  ``k`` tetrahedra around an edge of degree ``n``.

Each characterization must select exactly one class; anything else is a
hard failure that reports the candidates.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from .homology import AbelianGroup, homology_h1
from .layered import layer_on, s1, s_k
from .perm import EDGE_INDEX, EDGE_VERTS, PERMS, inverse, sign
from .signature import canonical_signature, pointed_signature
from .skeleton import Skeleton
from .triangulation import Triangulation

CATALOG_FILE = "catalog.json"


class CatalogError(AssertionError):
    pass


# ---------------------------------------------------------------------------
# edge-neighbourhood census


def edge_neighbourhoods(n, k):
    """All link complexes of an interior edge of degree ``n`` meeting ``k`` tetrahedra.

    Returns ``{pointed signature: (complex, slot)}`` where ``slot`` is
    ``(t, i, j)`` on the central edge.  Only orientable complexes without
    reversed edges are kept.
    """
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    table = [[None] * 4 for _ in range(k)]
    orient = [0] * k
    orient[0] = 1
    used_slots = {(0, 0)}
    out = {}
    seen = set()

    def connect(t, emb, t2, emb2):
        """Glue face x of ``emb`` to face y of ``emb2``; returns an undo token or False."""
        u, v, x, y = emb
        u2, v2, x2, y2 = emb2
        p = [0] * 4
        p[u], p[v], p[y], p[x] = u2, v2, x2, y2
        p = tuple(p)
        cur = table[t][x]
        if cur is not None:
            return None if cur == (t2, y2, p) else False
        if table[t2][y2] is not None or (t, x) == (t2, y2):
            return False
        if orient[t2] == 0:
            orient[t2] = -orient[t] * sign(p)  # a fresh tetrahedron takes the orientation it needs
        elif orient[t] * orient[t2] * sign(p) != -1:
            return False
        table[t][x] = (t2, y2, p)
        table[t2][y2] = (t, x, inverse(p))
        return (t, x, t2, y2)

    def release(tok):
        if tok:
            t, x, t2, y2 = tok
            table[t][x] = None
            table[t2][y2] = None

    def finish():
        tri = Triangulation(k, [row[:] for row in table])
        key = tuple(tuple(r) for r in tri.gluings)
        if key in seen:
            return
        seen.add(key)
        sk = Skeleton(tri)
        if sk.reversed_edges():
            return
        c = sk.edge_class(0, 0, 1)
        ec = sk.edges[c]
        if ec.degree != n or ec.boundary:
            return
        ps = pointed_signature(tri, 0, 0, 1)
        out.setdefault(ps, (tri, (0, 0, 1)))

    def rec(i, t, emb, used):
        if i == n:
            if used != k:
                return
            tok = connect(t, emb, 0, (0, 1, 2, 3))
            if tok is False:
                return
            finish()
            release(tok)
            return
        cands = [(t2, p) for t2 in range(used) for p in PERMS]
        if used < k:
            cands.append((used, (0, 1, 2, 3)))
        # tetrahedra still to be introduced need enough remaining steps
        if k - used > n - i:
            return
        for t2, emb2 in cands:
            new = t2 == used
            slot = (t2, EDGE_INDEX[min(emb2[:2]), max(emb2[:2])])
            if slot in used_slots:
                continue
            tok = connect(t, emb, t2, emb2)
            if tok is False:
                if new:
                    orient[t2] = 0
                continue
            used_slots.add(slot)
            rec(i + 1, t2, emb2, used + (1 if new else 0))
            used_slots.discard(slot)
            release(tok)
            if new:
                orient[t2] = 0

    rec(1, 0, (0, 1, 2, 3), 1)
    return out


# ---------------------------------------------------------------------------
# features used by the characterizations


def _self_glued(tri):
    return [t for t in range(tri.size) if any(g is not None and g[0] == t for g in tri.gluings[t])]


def _slots_in(sk, c, t):
    return [e for tt, e in sk.edges[c].slots if tt == t]


def is_solid_torus_like(tri, sk=None):
    """Bounded, ``H1 = Z``, every vertex link a disc and a torus boundary."""
    sk = sk or Skeleton(tri)
    if tri.is_closed() or any(v.link != "disc" for v in sk.vertices):
        return False
    if homology_h1(tri, sk) != AbelianGroup(1, ()):
        return False
    nb = len(tri.boundary_faces())
    bverts = len({v.index for v in sk.vertices if v.boundary})
    bedges = len(sk.boundary_edges())
    return bverts - bedges + nb == 0


def _features(tri, slot):
    sk = Skeleton(tri)
    c = sk.edge_class(*slot)
    selfg = _self_glued(tri)
    per_tet = [len(_slots_in(sk, c, t)) for t in range(tri.size)]
    opposite = any(
        sorted(_slots_in(sk, c, t)) in ([0, 5], [1, 4], [2, 3]) for t in range(tri.size)
    )
    interior = [e.degree for e in sk.edges if not e.boundary]
    return {
        "closed": tri.is_closed(),
        "h1": homology_h1(tri, sk),
        "solid_torus": is_solid_torus_like(tri, sk),
        "boundary_faces": len(tri.boundary_faces()),
        "self_glued": selfg,
        "center_in_self_glued": [per_tet[t] for t in selfg],
        "per_tet": per_tet,
        "opposite_pair": opposite,
        "unique_interior": interior.count(sk.edges[c].degree) == 1,
    }


# ---------------------------------------------------------------------------
# direct constructions


def ring(d):
    """``d`` tetrahedra around a common edge 0-1, each glued to the next: a ball."""
    if d < 3:
        raise ValueError("a ring needs at least three tetrahedra")
    pairs = [(i, 2, (i + 1) % d, (0, 1, 3, 2)) for i in range(d)]
    return Triangulation.from_pairs(d, pairs)


def _build_pointed(build, edge):
    """Pointed signature of a layered build at one of its edge classes."""
    t, e = build.skeleton.edges[edge].slots[0]
    return pointed_signature(build.tri, t, *EDGE_VERTS[e])


def x2_42():
    """``S_1`` with a tetrahedron layered on its degree-3 edge; returns ``(build, centre)``."""
    b = s1()
    (c,) = [c for c, _ in b.boundary if b.skeleton.edges[c].degree == 3]
    return layer_on(b, c), c


def x1_53():
    """``X^2_{4;2}`` with a tetrahedron layered on its degree-4 boundary edge."""
    b, _ = x2_42()
    (c,) = [c for c, _ in b.boundary if b.skeleton.edges[c].degree == 4]
    return layer_on(b, c), c


def _constructed():
    out = {}
    b = s_k(2)
    (base,) = [c for c in b.interior_edges()]
    out["S_2"] = _build_pointed(b, base)
    b, c = x2_42()
    out["X^2_{4;2}"] = _build_pointed(b, c)
    b, c = x1_53()
    out["X^1_{5;3}"] = _build_pointed(b, c)
    out["X_{4;4}"] = pointed_signature(ring(4), 0, 0, 1)
    out["X_{5;5}"] = pointed_signature(ring(5), 0, 0, 1)
    return out


# ---------------------------------------------------------------------------
# characterizations of the remaining models


def _st(f):
    return f["solid_torus"]


CLOSED_RULES = {
    # label: (tetrahedra, degree, predicate on (features, census member))
    "X^0_{4;1}": (1, 4, lambda f: f["h1"] == AbelianGroup()),
    "X^1_{4;1}": (1, 4, lambda f: f["h1"] == AbelianGroup(0, (4,))),
    "X_{5;1}": (1, 5, lambda f: f["h1"] == AbelianGroup()),
    "X^0_{4;2}": (2, 4, lambda f: f["h1"] == AbelianGroup(0, (8,)) and f["per_tet"] == [2, 2]),
    "X^1_{4;2}": (2, 4, lambda f: f["h1"] == AbelianGroup(0, (2, 2))),
    "X^0_{5;2}": (2, 5, lambda f: f["h1"] == AbelianGroup(0, (3,))),
    "X^1_{5;2}": (2, 5, lambda f: f["h1"] == AbelianGroup(0, (7,)) and f["unique_interior"]),
}

BOUNDED_RULES = {
    # label: (degree, k, predicate)
    "X^0_{4;3}": (4, 3, lambda f: _st(f) and f["center_in_self_glued"] == [2]),
    "X^1_{4;3}": (4, 3, lambda f: _st(f) and not f["self_glued"] and f["opposite_pair"]),
    "X^0_{5;3}": (5, 3, lambda f: _st(f) and f["center_in_self_glued"] == [3] and f["boundary_faces"] == 4),
    "X^2_{5;3}": (5, 3, lambda f: _st(f) and f["boundary_faces"] == 4 and f["unique_interior"]),
    "X^0_{5;4}": (5, 4, lambda f: _st(f) and f["center_in_self_glued"] == [2]),
    "X^1_{5;4}": (5, 4, lambda f: _st(f) and not f["self_glued"] and f["opposite_pair"]),
}

# labels whose characterization excludes earlier entries by isomorphism
EXCLUDE = {"X^2_{5;3}": ("X^0_{5;3}", "X^1_{5;3}")}


def _closed_candidates(tets, degree, rule, censuses):
    from .lst import link_complex

    found = {}
    for m in censuses[tets].members:
        tri = m.triangulation()
        sk = Skeleton(tri)
        for ec in sk.edges:
            if ec.degree != degree:
                continue
            _, X, slot = link_complex(tri, ec.index, sk)
            if not rule(_features(X, slot)):
                continue
            found.setdefault(pointed_signature(X, *slot), []).append(m.sig)
    return found


def _one(label, cands):
    if len(cands) != 1:
        raise CatalogError(f"{label}: characterization matches {len(cands)} classes: {sorted(cands)}")
    return next(iter(cands))


def build_catalog(censuses=None):
    """Regenerate the catalog ``label -> pointed signature`` from scratch."""
    from .census import CensusConfig, enumerate_census

    if censuses is None:
        censuses = {n: enumerate_census(CensusConfig(n, require_one_vertex=False)) for n in (1, 2)}
    cat = _constructed()
    hoods = {}
    for label, (tets, degree, rule) in CLOSED_RULES.items():
        cands = _closed_candidates(tets, degree, rule, censuses)
        key = _one(label, cands)
        hoods.setdefault((degree, tets), edge_neighbourhoods(degree, tets))
        if key not in hoods[degree, tets]:
            raise CatalogError(f"{label}: census model missing from the neighbourhood census")
        cat[label] = key
    for label, (degree, k, rule) in BOUNDED_RULES.items():
        if (degree, k) not in hoods:
            hoods[degree, k] = edge_neighbourhoods(degree, k)
        banned = {cat[x] for x in EXCLUDE.get(label, ())}
        cands = {ps for ps, (X, slot) in hoods[degree, k].items()
                 if ps not in banned and rule(_features(X, slot))}
        cat[label] = _one(label, cands)
    # the direct constructions must show up among the enumerated neighbourhoods too
    for label, (degree, k) in {"S_2": (3, 2), "X^2_{4;2}": (4, 2), "X^1_{5;3}": (5, 3),
                               "X_{4;4}": (4, 4), "X_{5;5}": (5, 5)}.items():
        if (degree, k) not in hoods:
            hoods[degree, k] = edge_neighbourhoods(degree, k)
        if cat[label] not in hoods[degree, k]:
            raise CatalogError(f"{label}: construction not found among neighbourhoods ({degree}, {k})")
    if len(set(cat.values())) != len(cat):
        raise CatalogError("two labels share a model")
    return dict(sorted(cat.items()))


@lru_cache(maxsize=1)
def _stored():
    text = resources.files("lenstri").joinpath(CATALOG_FILE).read_text()
    return json.loads(text)


def load_catalog():
    """The persisted catalog shipped with the package."""
    return dict(_stored())


def write_catalog(path, cat=None):
    cat = build_catalog() if cat is None else cat
    with open(path, "w") as fh:
        json.dump(cat, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return cat


def model_triangulation(label, cat=None):
    """The model complex of a catalog entry (canonical labelling)."""
    from .signature import from_signature

    cat = cat or load_catalog()
    return from_signature(cat[label].rsplit(":", 1)[0])
