import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from lenstri import AbelianGroup, LensSpec, census, homology_h1, l_k, layered_lens, minimal_layered_lens
from lenstri.homology import edge_labels, gf2_kernel, rational_kernel_line, smith_diagonal
from lenstri.layered import pair_solid_tori, s_k
from lenstri.signature import relabel_random


def sympy_factors(rows):
    if not rows or not rows[0]:
        return []
    return [int(d) for d in invariant_factors(Matrix(rows), domain=ZZ) if d != 0]


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 10**6))
def test_smith_diagonal_matches_sympy(r, c, seed):
    rng = random.Random(seed)
    rows = [[rng.choice([0, 0, 1, -1, 2, -3, 4, 6]) for _ in range(c)] for _ in range(r)]
    assert smith_diagonal(rows) == [abs(d) for d in sympy_factors(rows)]


def dual_h1(tri):
    """H1 of a closed manifold triangulation from the dual presentation, via sympy.

    Generators are face pairings, relations are the walks around every edge
    plus a spanning tree of the dual graph.
    """
    n = tri.size
    gens = {}
    for t in range(n):
        for f in range(4):
            t2, f2, _ = tri.gluings[t][f]
            key = min((t, f), (t2, f2))
            gens.setdefault(key, len(gens))

    def crossing(t, f):
        t2, f2, _ = tri.gluings[t][f]
        return gens[min((t, f), (t2, f2))], (1 if (t, f) < (t2, f2) else -1)

    rows = []
    for t in range(n):
        for u in range(4):
            for v in range(u + 1, 4):
                a, b = (w for w in range(4) if w not in (u, v))
                start = state = (t, u, v, a, b)
                row = [0] * len(gens)
                for _ in range(24 * n):
                    tt, uu, vv, aa, bb = state
                    g, s = crossing(tt, bb)
                    row[g] += s
                    t2, _, p = tri.gluings[tt][bb]
                    state = (t2, p[uu], p[vv], p[bb], p[aa])
                    if state == start:
                        break
                else:
                    raise AssertionError("edge walk did not close")
                rows.append(row)
    seen = {0}
    stack = [0]
    while stack:
        t = stack.pop()
        for f in range(4):
            t2 = tri.gluings[t][f][0]
            if t2 not in seen:
                seen.add(t2)
                stack.append(t2)
                row = [0] * len(gens)
                row[crossing(t, f)[0]] = 1
                rows.append(row)
    diag = [abs(d) for d in sympy_factors(rows)]
    rank = len(gens) - len(diag)
    return AbelianGroup.from_factors(rank, [d for d in diag if d > 1])


def corpus_small():
    out = [l_k(k)[0] for k in range(1, 7)]
    out += [layered_lens(LensSpec(p, q)) for p, q in ((1, 0), (2, 1), (3, 1), (7, 2), (12, 5), (17, 5))]
    out += [pair_solid_tori(s, t, k)[0] for s, t in ((1, 2), (2, 3)) for k in range(1, 7)]
    for n in (1, 2, 3):
        out += [m.triangulation() for m in census(n).members]
    return out


def test_h1_matches_dual_oracle():
    checked = 0
    for tri in corpus_small():
        assert homology_h1(tri) == dual_h1(tri)
        checked += 1
    assert checked > 80


def test_h1_of_named_manifolds():
    for k in range(1, 10):
        assert homology_h1(l_k(k)[0]) == AbelianGroup(0, (k + 3,))
    assert homology_h1(layered_lens(LensSpec(1, 0))) == AbelianGroup()
    assert homology_h1(layered_lens(LensSpec(2, 1))) == AbelianGroup(0, (2,))
    assert homology_h1(minimal_layered_lens(LensSpec(26, 5))).order == 26
    # S^2 x S^1 shows up in the two-tetrahedron census
    assert AbelianGroup(1) in {m.h1 for m in census(2).members}


def test_h1_relabel_invariant():
    rng = random.Random(5)
    for tri in corpus_small()[:30]:
        assert homology_h1(relabel_random(tri, rng)) == homology_h1(tri)


def test_abelian_group_parse_and_str():
    g = AbelianGroup.parse("Z + Z2 + Z12")
    assert g == AbelianGroup(1, (2, 12))
    assert str(g) == "Z + Z2 + Z12"
    assert AbelianGroup.from_factors(0, [4, 6]) == AbelianGroup(0, (2, 12))
    assert AbelianGroup.parse("0") == AbelianGroup()
    assert AbelianGroup(0, (2, 2)).order == 4
    assert AbelianGroup(1).order == 0
    with pytest.raises(ValueError):
        AbelianGroup.parse("Q7")


def test_kernels():
    assert rational_kernel_line([[1, -1, 0], [0, 2, -2]], 3) == [1, 1, 1]
    assert rational_kernel_line([[4, -6, 0], [0, 3, -9]], 3) == [9, 6, 2]
    with pytest.raises(ValueError):
        rational_kernel_line([[3, 6, -9]], 3)
    basis = gf2_kernel([[1, 1, 0], [0, 1, 1]], 3)
    assert basis == [[1, 1, 1]]


def test_edge_labels_are_meridian_counts():
    # S_k boundary triple {1, k+1, k+2}
    for k in range(1, 8):
        b = s_k(k)
        labels = edge_labels(b.tri)
        bnd = sorted(abs(labels[c]) for c, _ in b.boundary)
        assert bnd == [1, k + 1, k + 2]
        assert [abs(x) for x in labels] == list(b.labels)
