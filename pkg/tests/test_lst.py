from functools import lru_cache
from itertools import combinations

import pytest

from lenstri import (
    LensSpec,
    Skeleton,
    canonical_signature,
    census,
    classify_face,
    edge_model,
    find_lsts,
    l_k,
    layer_on,
    lst_intersection,
    lst_type,
    maximal_lsts,
    minimal_layered_lens,
    pair_solid_tori,
    s1,
    s_k,
    s_maximal_lsts,
    z2_colorings,
)
from lenstri.lst import face_word, link_complex

ORACLE_MAX = 8


@lru_cache(maxsize=None)
def build_signatures():
    """Signatures of every layered build, by size, up to ORACLE_MAX tetrahedra."""
    level = {canonical_signature(s1().tri): s1()}
    out = {1: set(level)}
    for n in range(2, ORACLE_MAX + 1):
        nxt = {}
        for b in level.values():
            for c, _ in b.boundary:
                x = layer_on(b, c)
                nxt.setdefault(canonical_signature(x.tri), x)
        out[n] = set(nxt)
        level = nxt
    return out


def oracle_lsts(tri):
    sigs = build_signatures()
    found = []
    for k in range(1, tri.size + 1):
        for sub in combinations(range(tri.size), k):
            if canonical_signature(tri.induced(list(sub))) in sigs[k]:
                found.append(sub)
    return found


def oracle_corpus():
    out = [("l_%d" % k, l_k(k)[0]) for k in range(1, 9)]
    for p, q in ((9, 2), (11, 3), (13, 5), (17, 5), (19, 7), (26, 5), (29, 8), (34, 13)):
        tri = minimal_layered_lens(LensSpec(p, q))
        if tri.size <= ORACLE_MAX:
            out.append((f"L({p},{q})", tri))
    for s in (1, 2, 3):
        for t in range(s, 4):
            for k in range(1, 7):
                out.append((f"pair {s} {t} {k}", pair_solid_tori(s, t, k)[0]))
    for n in (1, 2, 3):
        out += [(m.sig, m.triangulation()) for m in census(n).members]
    return out


def test_build_signature_counts():
    # distinct builds up to isomorphism at each size
    counts = [len(build_signatures()[n]) for n in range(1, ORACLE_MAX + 1)]
    assert counts[0] == 1
    assert all(a <= b for a, b in zip(counts, counts[1:]))


def test_find_lsts_matches_exhaustive_oracle():
    checked = 0
    for name, tri in oracle_corpus():
        got = [x.tets for x in find_lsts(tri, embedded_only=False)]
        want = oracle_lsts(tri)
        assert sorted(got) == sorted(want), name
        sets = [set(s) for s in want]
        maximal = sorted(s for s, a in zip(want, sets) if not any(a < b for b in sets))
        emb = find_lsts(tri, embedded_only=False)
        assert sorted(x.tets for x in maximal_lsts(tri, emb)) == maximal, name
        checked += 1
    assert checked > 100


def test_lsts_in_lk():
    # L_k holds two copies of S_{k-1} overlapping in k-2 tetrahedra
    for k in range(3, 9):
        tri = l_k(k)[0]
        smax = s_maximal_lsts(tri)
        assert [x.s_index for x in smax] == [k - 1, k - 1]
        assert lst_intersection(tri, smax[0], smax[1]).tets == k - 2
        assert all(x.s_index is None or x.s_index <= k - 1 for x in find_lsts(tri))
    assert s_maximal_lsts(l_k(2)[0]) == []


def test_pairing_intersections():
    tri, _ = pair_solid_tori(2, 2, 6)
    a, b = s_maximal_lsts(tri)
    r = lst_intersection(tri, a, b)
    assert (r.tets, r.faces) == (0, 2)
    tri, _ = pair_solid_tori(2, 3, 2)
    a, b = s_maximal_lsts(tri)
    assert lst_intersection(tri, a, b).tets == 1
    assert sorted([a.size, b.size]) == [2, 4]


def test_lst_fields():
    tri = l_k(4)[0]
    sk = Skeleton(tri)
    for x in find_lsts(tri):
        assert x.univalent in range(len(sk.edges))
        assert len(x.boundary) == 3
        assert x.triple == tuple(sorted(x.triple))
        d = x.to_dict()
        assert d["size"] == len(x.tets)
        assert sorted(b["slope"] for b in d["boundary"]) == list(x.triple)


def test_lst_type_follows_longitude_parity():
    for k in (3, 5, 7):
        tri = l_k(k)[0]
        (c,) = z2_colorings(tri)
        assert {lst_type(tri, x, c) for x in find_lsts(tri)} <= {1, 3}


def test_faces_of_l3():
    tri = l_k(3)[0]
    sk = Skeleton(tri)
    kinds = [classify_face(tri, f.index) for f in sk.faces]
    assert kinds == ["other", "embedded", "embedded", "embedded", "embedded", "other"]
    # the two non-embedded faces read a a b^-1: Moebius bands, not cones
    for f in (0, 5):
        (a, s1_), (b, s2), (c, s3) = face_word(tri, f)
        assert a == b != c and s1_ == s2 == -s3
    with pytest.raises(ValueError):
        classify_face(tri, 99)


def test_edge_models_of_l3():
    tri = l_k(3)[0]
    labels = [edge_model(tri, e).label for e in range(4)]
    assert labels == [None, "S_2", "X^1_{4;3}", "S_2"]
    m = edge_model(tri, 2)
    assert (m.degree, m.k) == (4, 3)
    tets, X, slot = link_complex(tri, 2)
    assert Skeleton(X).edges[Skeleton(X).edge_class(*slot)].degree == 4
    with pytest.raises(ValueError):
        edge_model(tri, 17)
    b = s_k(2)
    with pytest.raises(ValueError):
        edge_model(b.tri, b.univalent)
