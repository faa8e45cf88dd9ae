import json

import pytest

from lenstri.suites import DEFAULTS, SUITES, lk_vector, run_suite, sk_vector


def test_registry():
    assert set(SUITES) == set(DEFAULTS)
    with pytest.raises(ValueError):
        run_suite("nope")


def test_vectors():
    assert sk_vector(1) == [3, 2, 1]
    assert sk_vector(4) == [9, 3, 4, 4, 3, 1]
    assert lk_vector(2) == [6, 3, 3]


def test_fold_table():
    rep = run_suite("fold-table")
    assert rep["ok"], rep["failures"]


def test_families_report_their_overlaps():
    rep = run_suite("families")
    assert not rep["ok"]
    (fail,) = rep["failures"]
    assert fail["check"] == "families mutually exclusive for P <= 200"
    assert fail["overlaps"] == 178
    assert all(c["ok"] for c in rep["results"] if c is not fail)


def test_reports_are_json_stable():
    a = json.dumps(run_suite("pairings", s=(1, 2), t=(1, 3)), sort_keys=True)
    b = json.dumps(run_suite("pairings", s=(1, 2), t=(1, 3)), sort_keys=True)
    assert a == b
