from fractions import Fraction

import pytest

import fimalg


def test_rank_of_s_plus_sstar():
    r = fimalg.rank("s + adj(s)", T=32)
    assert r["exact"] == Fraction(2, 3)
    assert r["partial"] <= r["exact"] <= r["partial"] + r["tail"]
    assert r["ranks"][:5] == [0, 2, 2, 4, 4]


def test_parse_error_is_value_error():
    with pytest.raises(ValueError, match="position 0"):
        fimalg.rank("foo")
    assert fimalg.normalize("s*") == "adj(s)"


def test_monoid():
    assert fimalg.monoid_equal('[["x",0,1],["y",0,1]]', '[["x",0,1],["z",0,1]]')
    assert not fimalg.monoid_equal('[["x",0,1]]', '[["y",0,1]]')
    assert fimalg.canonical_form('[["y",0,1]]') == fimalg.canonical_form('[["y",1,1],["a",1,1]]')


def test_series():
    assert fimalg.coefficients(fimalg.hadamard("1/(1-2x)", "1/(1-x)"), 4) == ["1", "2", "4", "8"]
    z = fimalg.zero_set("1/(1-x^2)")
    assert z["certified"]
    assert z["period"] == 2 and z["residues"] == [1]


def test_suite():
    assert "example-2-3" in fimalg.suite_names()
    rep = fimalg.run_suite("example-2-3", T=32)
    assert rep["suite"] == "example-2-3"
    assert all(c["holds"] for c in rep["checks"])
