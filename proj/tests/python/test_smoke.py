import math

import numpy as np
import pytest

import nodallab


def test_constants():
    k, err = nodallab.chiti_constant(3, 2)
    assert abs(k - 1 / (math.pi * math.sqrt(2))) < 1e-12
    assert err < 1e-10
    assert nodallab.sogge_delta(2, 2.0) == 0.0
    assert abs(nodallab.bessel_first_zero(0.0) - 2.404825557695773) < 1e-12
    assert abs(nodallab.unit_ball_volume(3) - 4 * math.pi / 3) < 1e-14


def test_rectangle_spectrum():
    s = nodallab.spectrum("rect", 4, a=math.pi, b=math.pi)
    assert np.allclose(s["lambdas"], [2, 5, 5, 8], rtol=1e-12)
    assert s["labels"][0] == "(1,1)"


def test_fields_are_normalized():
    s = nodallab.spectrum("lshape", 3, fields=True, spacing=1 / 16)
    w = s["weights"]
    for f in s["fields"]:
        assert abs(np.sum(w * f * f) - 1) < 1e-10
    assert s["coords"].shape == (len(w), 3)


def test_nodal_summary_courant():
    rows = nodallab.nodal_summary("disk", 10)
    assert len(rows) == 10
    assert all(r["courant"] for r in rows)
    assert rows[0]["domains"] == 1


def test_plap():
    e = nodallab.sinp_eigenpair(2.0)
    assert abs(e["lambda"] - math.pi ** 2) < 1e-6
    assert e["u"].shape == e["x"].shape


def test_verify_report_schema():
    r = nodallab.verify("HL", seed=3)
    assert set(r) == {"meta", "claims"}
    assert set(r["meta"]) == {"version", "config", "started", "finished"}
    (claim,) = r["claims"]
    assert claim["id"] == "HL" and claim["verdict"] == "pass" and claim["fit"] is None
    assert set(claim["rows"][0]) == {"lambda", "lhs", "rhs", "margin", "pass"}


def test_bad_options():
    with pytest.raises(KeyError):
        nodallab.spectrum("rect", 2, colour=1)
    with pytest.raises(ValueError):
        nodallab.verify("Thm9.9")
