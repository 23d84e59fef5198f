import json
import math

import numpy as np
import pytest

scribe = pytest.importorskip("scribe")


def test_cube_lattice():
    c = scribe.cube(3)
    assert c.dim == 3
    assert c.n_vertices == 8
    assert c.f_vector() == [8, 12, 6]
    assert all(len(f) == 4 for f in c.faces(2))


def test_triakis_is_weak_not_strong():
    t = scribe.fixture("triakis")
    assert scribe.verdict(t, 0, 0, "weak") == "true"
    assert scribe.verdict(t, 0, 0, "strong") == "false"


def test_ridge_stacked_path():
    p = scribe.ridge_stacked_path(3, 3)
    assert scribe.verdict(p, 1, 1) == "true"


def test_json_round_trip():
    p = scribe.hull([np.array(v, dtype=float) for v in [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]])
    q = scribe.from_json(p.to_json())
    assert q.f_vector() == p.f_vector()
    rep = json.loads(scribe.report(q, 0, 2))
    assert rep["verdict"] in ("true", "false", "indeterminate")


def test_caps_and_thresholds():
    assert scribe.is_k_ply([np.array([2.0, 0, 0]), np.array([-2.0, 0, 0])], 2)
    assert not scribe.is_k_ply([np.array([2.0, 0, 0]), np.array([2.0, 0.1, 0])], 2)
    t = scribe.thresholds(4)
    assert math.isfinite(t["even_bound"]) and t["even_bound"] > 0


def test_errors_surface_as_value_errors():
    with pytest.raises(ValueError):
        scribe.verdict(scribe.cube(3), 0, 0, "medium")
    with pytest.raises(ValueError):
        scribe.from_json('{"format": "nope"}')
