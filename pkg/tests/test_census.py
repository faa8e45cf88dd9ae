import json

import pytest

from lenstri import (
    AbelianGroup,
    CensusConfig,
    LensSpec,
    canonical_signature,
    census,
    enumerate_census,
    filter_by_h1,
    l_k,
    naive_census,
    verify_unique_minimal,
)


def test_class_counts():
    assert [len(census(n).members) for n in (1, 2, 3)] == [3, 11, 58]


def test_small_groups():
    assert sorted(str(m.h1) for m in census(1).members) == ["0", "Z4", "Z5"]
    assert sorted(str(m.h1) for m in census(2).members) == [
        "0", "0", "0", "Z", "Z2", "Z2 + Z2", "Z3", "Z3", "Z5", "Z7", "Z8"]


def test_matches_naive_oracle():
    for n in (1, 2):
        assert census(n).signatures() == naive_census(n)
    with pytest.raises(ValueError):
        naive_census(3)


def test_members_are_canonical():
    for m in census(3).members:
        assert canonical_signature(m.triangulation()) == m.sig
        assert m.n == 3 and m.vertices == 1


def test_z4_and_z6():
    assert [m.sig for m in filter_by_h1(census(1), "Z4")] == [canonical_signature(l_k(1)[0])]
    assert filter_by_h1(census(2), AbelianGroup(0, (6,))) == []
    assert [m.sig for m in filter_by_h1(census(3), "Z6")] == [canonical_signature(l_k(3)[0])]


def test_parallel_equals_serial():
    a = enumerate_census(CensusConfig(3, jobs=2))
    assert a.signatures() == census(3).signatures()


def test_resume(tmp_path):
    path = tmp_path / "parts.ndjson"
    first = enumerate_census(CensusConfig(3), resume=str(path))
    lines = path.read_text().splitlines()
    assert lines and all(json.loads(x)["n"] == 3 for x in lines)
    # drop the last part: only it is recomputed
    path.write_text("\n".join(lines[:-1]) + "\n")
    again = enumerate_census(CensusConfig(3), resume=str(path))
    assert again.signatures() == first.signatures()
    assert len(path.read_text().splitlines()) == len(lines)


def test_ndjson():
    text = census(1).to_ndjson()
    rows = [json.loads(x) for x in text.splitlines()]
    assert [r["sig"] for r in rows] == census(1).signatures()
    assert set(rows[0]) == {"sig", "n", "h1", "degrees"}


def test_config_validation():
    with pytest.raises(ValueError):
        CensusConfig(0)
    with pytest.raises(ValueError):
        CensusConfig(6)
    with pytest.raises(ValueError):
        CensusConfig(2, require_orientable=False)


def test_multi_vertex_census_is_larger():
    full = enumerate_census(CensusConfig(2, require_one_vertex=False))
    assert set(census(2).signatures()) < set(full.signatures())
    assert census(2).signatures() == [m.sig for m in full.members if m.vertices == 1]
    assert naive_census(2, one_vertex=False) == full.signatures()


def test_min_edge_degree_filter():
    res = enumerate_census(CensusConfig(3, min_edge_degree=3))
    assert all(min(m.degrees) >= 3 for m in res.members)
    assert len(res.members) < len(census(3).members)


def test_verify_unique_minimal():
    r = verify_unique_minimal(LensSpec(6, 1), 3)
    assert r["unique"] and r["size"] == 3 and r["found"]
    r = verify_unique_minimal(LensSpec(5, 2), 1)
    assert r["unique"]
    with pytest.raises(ValueError):
        verify_unique_minimal(LensSpec(10, 1), 3)
