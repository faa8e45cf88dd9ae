from math import gcd

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from lenstri import LensSpec, classify_family, continued_fraction, euclid_steps, family_collisions, lens_equal
from lenstri.arith import family_lens, family_memberships
from lenstri.layered import expected_order


def subtraction_count(p, q):
    """Literal subtraction loop on the unordered pair."""
    n = 0
    while (p, q) not in ((1, 0), (0, 1)):
        if p >= q:
            p -= q
        else:
            q -= p
        n += 1
    return n


coprime = st.tuples(st.integers(1, 400), st.integers(0, 400)).filter(lambda x: gcd(*x) == 1)


@given(coprime)
def test_euclid_steps_is_a_subtraction_count(pq):
    p, q = pq
    assert euclid_steps(p, q) == subtraction_count(p, q)
    assert euclid_steps(p, q) == euclid_steps(q, p)


@given(coprime)
def test_continued_fraction_rebuilds_ratio(pq):
    p, q = pq
    assume(q > 0)
    cf = continued_fraction(p, q)
    num, den = 1, 0
    for a in reversed(cf):
        num, den = a * num + den, num
    assert (num, den) == (p, q)
    assert sum(continued_fraction(max(p, q), min(p, q))) == euclid_steps(p, q)


@given(coprime)
def test_euclid_steps_invariant_on_lens_class(pq):
    p, q = pq
    assume(p >= 3 and q > 0)
    L = LensSpec(p, q)
    assert len({euclid_steps(p, x) for x in L.equivalents()}) == 1


def test_frozen_values():
    assert euclid_steps(1, 0) == 0
    assert continued_fraction(1, 0) == []
    assert continued_fraction(26, 5) == [5, 5]
    assert euclid_steps(26, 5) == 10
    assert euclid_steps(16, 5) == 8
    assert continued_fraction(140, 41) == [3, 2, 2, 2, 3]
    with pytest.raises(ValueError):
        euclid_steps(4, 2)
    with pytest.raises(ValueError):
        euclid_steps(-1, 2)


def test_lens_equal_against_orbit():
    for p in range(3, 40):
        qs = [q for q in range(1, p) if gcd(p, q) == 1]
        for q1 in qs:
            orbit = {q1, p - q1, pow(q1, -1, p), p - pow(q1, -1, p)}
            for q2 in qs:
                assert lens_equal(LensSpec(p, q1), LensSpec(p, q2)) == (q2 in orbit)
                assert (LensSpec(p, q1).normal_form() == LensSpec(p, q2).normal_form()) == (q2 in orbit)


def test_lens_spec_validation():
    assert LensSpec(7, 9).Q == 2
    assert str(LensSpec(0, 1)) == "L(0,1)"
    with pytest.raises(ValueError):
        LensSpec(6, 3)
    with pytest.raises(ValueError):
        LensSpec(-5, 1)
    assert LensSpec(13, 5).normal_form() == LensSpec(13, 5)
    assert LensSpec(13, 8).normal_form() == LensSpec(13, 5)


def test_family_examples():
    assert classify_family(LensSpec(6, 1)).index == 1
    f = classify_family(LensSpec(26, 5))
    assert (f.index, f.s, f.t) == (2, 3, 4)
    f = classify_family(LensSpec(16, 5))
    assert (f.index, f.s, f.t) == (3, 2, 3)
    assert classify_family(LensSpec(5, 2)) is None


def test_family_orders_match_pairings():
    # family 2 has the order of pairing 3, family 3 that of pairing 2
    for s in range(2, 6):
        for t in range(s + 1, 8):
            assert family_lens(2, s, t).P == expected_order(s, t, 3)
            assert family_lens(3, s, t).P == expected_order(s, t, 2)


def test_family_overlaps_follow_two_identities():
    # F3(s, t) = F2(s - 1, t + 1) and F4(t) = F2(t - 1, t + 1) literally
    assert {(f.index, f.s, f.t) for f in family_memberships(LensSpec(25, 6))} == {(3, 3, 4), (2, 2, 5)}
    assert {(f.index, f.s, f.t) for f in family_memberships(LensSpec(21, 5))} == {(4, 0, 3), (2, 2, 4)}
    kinds = {}
    total = 0
    for p in range(4, 501):
        for q in range(1, p):
            if gcd(p, q) != 1 or LensSpec(p, q).normal_form().Q != q:
                continue
            both = family_collisions(LensSpec(p, q))
            if both:
                total += 1
                key = tuple(sorted({f.index for f in both}))
                kinds[key] = kinds.get(key, 0) + 1
    assert total == 670
    assert kinds == {(2, 3): 652, (2, 4): 18}


def test_family_one_is_disjoint_from_the_rest():
    for p in range(5, 300):
        found = family_memberships(LensSpec(p, 1))
        assert {f.index for f in found} == {1}
