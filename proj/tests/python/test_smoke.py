import gc
import json

import numpy as np
import pytest

import fuchsian_coding as fc


def test_catalog_and_validation():
    names = fc.catalog_names()
    assert "genus2-octagon" in names
    assert fc.catalog_scheme("genus2-octagon").validate()
    quad = fc.catalog_scheme("mutant-compact-quad")
    assert not quad.validate()
    assert "number of sides" in quad.validation_report()


def test_parse_errors_raise_value_error():
    with pytest.raises(ValueError):
        fc.parse_scheme("{")
    with pytest.raises(fc.SchemeError):
        fc.catalog_scheme("no-such-scheme")


def test_scheme_json_round_trip():
    s = fc.catalog_scheme("triangle-special-case")
    t = fc.parse_scheme(s.to_json())
    assert t.labels == s.labels == ["g", "x", "x^-1"]
    assert t.inverse_label("x") == "x^-1"
    assert s.flower_relator(0) == "g x g x g x"


def test_octagon_coding():
    c = fc.Coding(fc.catalog_scheme("genus2-octagon"))
    gc.collect()  # the coding keeps its scheme alive
    assert c.size == 200
    assert c.path_counts(5) == [8, 56, 392, 2736, 19096]
    assert c.reversible() and c.strongly_connected()
    assert c.positivity_index() == 8
    assert c.kind_counts()["C"] == 16
    doc = json.loads(c.to_json())
    assert len(doc["states"]) == 200


def test_literal_variant_is_not_reversible():
    s = fc.catalog_scheme("genus2-octagon")
    lit = fc.Coding(s, "literal")
    assert not lit.reversible()
    assert lit.path_counts(5)[-1] == 19080
    with pytest.raises(ValueError):
        fc.Coding(s, "printed")


def test_parry_and_oracle():
    s = fc.catalog_scheme("free-f2-ideal-quad")
    p = fc.Coding(s).parry()
    assert p["lambda"] == pytest.approx(3.0)
    assert p["stationary"] == pytest.approx([0.25] * 4)
    assert fc.sphere_sizes("genus2-octagon", 3) == [1, 8, 56, 392]
    levels = json.loads(fc.thickened_path("genus2-octagon", "a b", 3))["levels"]
    assert levels == [[""], ["a"], ["a b"]]


def test_spherical_sum_of_constant_counts_the_sphere():
    s = fc.catalog_scheme("genus2-octagon")
    out = fc.spherical_sum(s, "z5-shift", np.ones(5), 3)
    assert np.allclose(out, 392.0)
    with pytest.raises(ValueError):
        fc.spherical_sum(s, "z5-shift", np.ones(4), 3)


def test_simulation_is_deterministic_per_seed():
    s = fc.catalog_scheme("genus2-octagon")
    a = fc.simulate(s, "s5-quotient", 3, seed=11)
    b = fc.simulate(s, "s5-quotient", 3, seed=11)
    c = fc.simulate(s, "s5-quotient", 3, seed=12)
    assert a == b
    assert a != c
    assert [r["n"] for r in a] == [2, 4, 6]
    assert a[-1]["sup_error"] < a[0]["sup_error"]
    with pytest.raises(fc.ActionError):
        fc.simulate(s, "no-such-action", 2)


def test_fast_suite():
    assert "free-end-to-end" in fc.suite_names()
    ok, detail = fc.run_suite("free-end-to-end")
    assert ok, detail
