import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lenstri import (
    Skeleton,
    canonical_signature,
    census,
    edge_flip_4_4,
    homology_h1,
    is_orientable,
    l_k,
    pachner_2_3,
    pachner_3_2,
    s_k,
)
from lenstri.catalog import ring
from lenstri.moves import flip_degree_report
from lenstri.suites import random_round_trip

POOL = [m.triangulation() for n in (2, 3) for m in census(n).members] + [l_k(k)[0] for k in range(2, 7)]


def interior_faces(tri):
    sk = Skeleton(tri)
    return [fc.index for fc in sk.faces if not fc.boundary and fc.slots[0][0] != fc.slots[1][0]]


@settings(max_examples=80, deadline=None)
@given(st.integers(0, len(POOL) - 1), st.integers(0, 10**6))
def test_2_3_then_3_2(i, seed):
    tri = POOL[i]
    faces = interior_faces(tri)
    if not faces:
        return
    f = random.Random(seed).choice(faces)
    mid = pachner_2_3(tri, f)
    assert mid.size == tri.size + 1
    assert homology_h1(mid) == homology_h1(tri)
    assert is_orientable(mid)
    sk = Skeleton(mid)
    new = sk.edge_class(mid.size - 1, 0, 1)
    assert sk.edges[new].degree == 3
    # one more edge, same vertices
    assert len(sk.edges) == len(Skeleton(tri).edges) + 1
    back = pachner_3_2(mid, new)
    assert canonical_signature(back) == canonical_signature(tri)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, len(POOL) - 1), st.integers(0, 10**6))
def test_random_round_trip(i, seed):
    out = random_round_trip(POOL[i], random.Random(seed))
    if out is None:
        return
    kind, _, mid, back = out
    assert canonical_signature(back) == canonical_signature(POOL[i])
    assert homology_h1(mid) == homology_h1(POOL[i])


def test_moves_reject_bad_input():
    b = s_k(2)
    sk = b.skeleton
    bface = next(fc.index for fc in sk.faces if fc.boundary)
    with pytest.raises(ValueError):
        pachner_2_3(b.tri, bface)
    tri = l_k(3)[0]
    sk = Skeleton(tri)
    not3 = next(e.index for e in sk.edges if e.degree != 3)
    with pytest.raises(ValueError):
        pachner_3_2(tri, not3)
    with pytest.raises(ValueError):
        edge_flip_4_4(tri, not3)


def test_flip_on_octahedron():
    octa = ring(4)
    axis = Skeleton(octa).edge_class(0, 0, 1)
    for diag in (0, 1):
        r = flip_degree_report(octa, axis, diag)
        assert sorted(r["model"].values()) == [-1] * 4 + [0] * 4 + [1] * 4
        assert r["distinct_octahedron_edges"]
        assert r["new_axis_degree"] == 4
        for c in r["classes"]:
            assert c["measured"] == c["predicted"]
            if c["edge"] != axis:
                assert c["measured"] in (-1, 0, 1)
    flipped = edge_flip_4_4(octa, axis, 0)
    assert canonical_signature(flipped) == canonical_signature(octa)


def test_flips_in_census_four():
    count = 0
    for m in census(4).members:
        tri = m.triangulation()
        sk = Skeleton(tri)
        for e in sk.edges:
            if e.degree == 4 and len(e.tetrahedra) == 4:
                for diag in (0, 1):
                    r = flip_degree_report(tri, e.index, diag)
                    assert all(c["measured"] == c["predicted"] for c in r["classes"])
                    assert homology_h1(r["triangulation"]) == m.h1
                    count += 1
    assert count == 92
