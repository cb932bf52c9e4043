import json
import os
from pathlib import Path

import pytest

import hypercontact as hc

DATA = Path(os.environ.get("HYPERCONTACT_TEST_DATA", Path(__file__).resolve().parents[1] / "data"))


def test_alpha0():
    assert hc.alpha0([2, 5, 7], [0, 1, 0]) == 2
    assert hc.alpha0([1, 0, 0], [0, 1, -1]) == 0


def test_legendrian_line_is_horizontal():
    comps = hc.legendrian_line([0, 0, 0], [1, 1, 0])
    assert comps[2] == [0, 0, -0.5]
    assert hc.horizontality_residual(comps) == []
    assert hc.horizontality_residual([[0, 1], [0, 1], [0]]) == [0, 1]


def test_legendrian_from_xy():
    comps = hc.legendrian_from_xy([[1]], [[0, 1]])
    assert comps[2] == [0, -1]


def test_chow_path_reaches_target():
    segs, end = hc.chow_path([0, 0, 0], [0.5, -1, 2 + 1j])
    assert len(segs) > 0
    for s in segs:
        assert hc.horizontality_residual(s) == []
    assert max(abs(a - b) for a, b in zip(end, [0.5, -1, 2 + 1j])) <= 1e-10


def test_norm_bracket_at_origin():
    b = hc.norm_bracket([0, 0, 0], [1, 0, 0], restarts=2, sweeps=20)
    assert b["lower"] == 0.25
    assert b["lower"] <= b["upper"] <= 1.2
    assert b["witness"] is not None
    assert hc.norm_upper_full_space([0, 0, 0], [1, 0, 0], 1e3) <= 1e-2
    assert hc.distance_upper_full_space([0, 0, 0], [0, 0, 1]) <= 1e-2


def test_bad_dimension_raises():
    with pytest.raises(ValueError):
        hc.alpha0([1, 2], [0, 1])


def test_pushout_classify_and_roundtrip():
    s = hc.PushOut.desk(dim=2, i_max=6, k_max=3)
    assert s.rounds == 3
    assert s.classify([0, 0])[0] == "in_omega_certified"
    assert s.classify([2.5, 0]) == ("escaped", 1)
    value, tail = s.evaluate([0.1, 0.1j])
    assert len(value) == 2 and tail == pytest.approx(2.0 ** -4)
    again = hc.PushOut.from_json(s.to_json())
    assert again.to_json() == s.to_json()
    rc = s.round_contract(1, samples=20, identity_samples=20)
    assert rc["pass"]


def test_config_and_run(tmp_path):
    cfg = hc.validate_config(str(DATA / "minimal.json"))
    assert cfg["i_max"] == 6 and cfg["k_max"] == 6
    with pytest.raises(hc.ConfigError):
        hc.validate_config(str(DATA / "bad_interleave.json"))

    small = tmp_path / "small.json"
    small.write_text(json.dumps({
        "n": 1, "k_max": 2, "i_max": 3,
        "samples": {"shell": 10, "identity": 10, "escape": 10, "omega": 5, "pullback_points": 5},
    }))
    rep = hc.run_experiment(str(small), "pushout", str(tmp_path / "out"))
    assert all(c["verdict"] == "pass" for c in rep["checks"]), rep["checks"]
    assert (tmp_path / "out" / "orbits.csv").exists()
    assert (tmp_path / "out" / "pushout.json").exists()
