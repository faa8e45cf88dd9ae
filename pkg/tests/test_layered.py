from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lenstri import (
    LensSpec,
    Skeleton,
    canonical_signature,
    euclid_steps,
    fold_on_slope,
    homology_h1,
    is_orientable,
    l_k,
    layer_on_slope,
    layered_lens,
    minimal_layered_extension,
    minimal_layered_lens,
    pair_solid_tori,
    s1,
    s_k,
    theorem_applies,
    worked_example,
)
from lenstri.homology import edge_labels
from lenstri.layered import ORACLE_LIMIT, descent, fold_identifications, fold_lens, layer_triple


def test_s1():
    b = s1()
    assert b.size == 1
    assert b.triple == (1, 2, 3)
    assert sorted(b.degrees) == [1, 2, 3]
    assert b.skeleton.edges[b.univalent].degree == 1
    assert b.base is None


def test_layer_triple():
    assert layer_triple((1, 2, 3), 3) == (1, 1, 2)
    assert layer_triple((1, 2, 3), 2) == (1, 3, 4)
    assert layer_triple((1, 2, 3), 1) == (2, 3, 5)
    with pytest.raises(ValueError):
        layer_triple((1, 2, 3), 4)
    with pytest.raises(ValueError):
        layer_triple((1, 2, 4), 1)


def test_fold_lens_table():
    assert fold_lens((1, 2, 3), 1) == LensSpec(5, 2)
    assert fold_lens((1, 2, 3), 2) == LensSpec(4, 1)
    assert fold_lens((1, 2, 3), 3) == LensSpec(1, 0)
    assert fold_lens((1, 1, 2), 2) == LensSpec(0, 1)


def test_sk_and_lk_small():
    b = s_k(3)
    assert b.triple == (1, 4, 5)
    assert list(b.degrees) == [7, 3, 4, 3, 1]
    assert b.labels == (1, 2, 3, 4, 5)
    tri, L = l_k(3)
    assert L == LensSpec(6, 1)
    assert tri.size == 3
    with pytest.raises(ValueError):
        s_k(0)
    with pytest.raises(ValueError):
        l_k(0)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=0, max_size=13))
def test_random_layerings(choices):
    b = s1()
    for i in choices:
        b = layer_on_slope(b, b.triple[i])
    # the bookkeeping labels must agree with homology, also past the oracle limit
    assert b.labels == tuple(abs(x) for x in edge_labels(b.tri))
    assert b.size == len(choices) + 1
    for x in b.triple:
        try:
            tri, L = fold_on_slope(b, x)
        except ValueError:
            continue
        assert homology_h1(tri).order == L.P
        assert is_orientable(tri)
        assert len(Skeleton(tri).vertices) == 1


def test_oracle_limit_is_exercised():
    b = s_k(ORACLE_LIMIT + 3)
    assert b.labels == tuple(abs(x) for x in edge_labels(b.tri))


def test_descent_and_extension_sizes():
    assert descent((2, 3, 5)) == [(2, 3, 5), (1, 2, 3)]
    with pytest.raises(ValueError):
        descent((2, 4, 6))
    for q in range(2, 40):
        for p in range(1, q):
            if gcd(p, q) == 1:
                assert minimal_layered_extension((p, q, p + q)).size == euclid_steps(q, p) - 1


def test_minimal_layered_lens_values():
    assert [minimal_layered_lens(LensSpec(2 * n, 1)).size for n in range(2, 9)] == [1, 3, 5, 7, 9, 11, 13]
    assert minimal_layered_lens(LensSpec(26, 5)).size == 7
    assert minimal_layered_lens(LensSpec(16, 5)).size == 5
    with pytest.raises(ValueError):
        minimal_layered_lens(LensSpec(3, 1))


def test_minimal_layered_lens_is_class_invariant():
    for P, qs in ((13, (2, 6, 7, 11)), (17, (3, 6, 11, 14))):
        sigs = {canonical_signature(minimal_layered_lens(LensSpec(P, q))) for q in qs}
        assert len(sigs) == 1


def test_special_cases():
    sizes = [layered_lens(LensSpec(p, q)).size for p, q in ((1, 0), (2, 1), (3, 1))]
    assert sizes == [1, 2, 2]
    for p, q in ((1, 0), (2, 1), (3, 1)):
        assert homology_h1(layered_lens(LensSpec(p, q))).order == p


def test_fold_identifications_on_lk():
    b = s_k(3)
    ids = fold_identifications(b, 3)
    assert len(ids) == 5
    tri, _ = l_k(3)
    assert len({c for _, c, _ in ids}) == len(Skeleton(tri).edges)


def test_worked_example_small():
    tri, L = worked_example(2)
    assert L.P == 140
    assert tri.size == 9
    assert homology_h1(tri).order == 140


def test_pair_solid_tori_rejects():
    with pytest.raises(ValueError):
        pair_solid_tori(3, 2, 1)
    with pytest.raises(ValueError):
        pair_solid_tori(1, 2, 7)


def test_theorem_applies():
    assert theorem_applies(LensSpec(26, 5))
    with pytest.raises(ValueError):
        theorem_applies(LensSpec(25, 4))
    with pytest.raises(ValueError):
        theorem_applies(LensSpec(2, 1))
