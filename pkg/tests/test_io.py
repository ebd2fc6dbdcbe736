import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from elastinv import FarField, StarCurve
from elastinv.exceptions import ConfigError, HeaderMismatchError
from elastinv.inverse import IterationRecord, IterationTrace
from elastinv.io import RunConfig, read_far_field, read_trace, write_curves, write_far_field, write_trace

BASE = {
    "medium": {"lambda": 3.88, "mu": 2.56, "omega": 2.199114857512855},
    "wave": {"kind": "S", "theta": 1.9634954084936207},
    "mode": "p",
    "shape": "apple",
    "reference_ball": {"b1": 5.0, "b2": 0.0, "R": 0.5},
    "initial": {"c1": -0.9, "c2": 0.4, "radius": 0.3},
    "solver": {"epsilon": 0.01, "delta": 0.01, "seed": 3},
}


def _ff(n=8, phaseless=False, seed=0):
    rng = np.random.default_rng(seed)
    ang = 2 * np.pi * np.arange(n) / n
    if phaseless:
        return FarField(ang, rng.random(n), rng.random(n), phaseless=True)
    return FarField(ang, rng.standard_normal(n) + 1j * rng.standard_normal(n),
                    rng.standard_normal(n) + 1j * rng.standard_normal(n))


@pytest.mark.parametrize("phaseless", [False, True])
def test_far_field_round_trip_is_exact(tmp_path, phaseless):
    ff = _ff(phaseless=phaseless)
    path = tmp_path / "ff.dat"
    write_far_field(path, ff, {"delta": 0.01, "seed": 4})
    back, head = read_far_field(path)
    assert np.array_equal(back.phi, ff.phi) and np.array_equal(back.psi, ff.psi)
    assert np.array_equal(back.directions, ff.directions)
    assert head["seed"] == 4 and head["n_bar"] == 4 and head["phaseless"] is phaseless


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(allow_nan=False, allow_infinity=False, width=64), min_size=8, max_size=8))
def test_arbitrary_doubles_round_trip(tmp_path_factory, values):
    ang = 2 * np.pi * np.arange(4) / 4
    ff = FarField(ang, np.array(values[:4]) + 1j * np.array(values[4:]), np.zeros(4))
    path = tmp_path_factory.mktemp("rt") / "ff.dat"
    write_far_field(path, ff, {})
    assert np.array_equal(read_far_field(path)[0].phi, ff.phi)


def test_bad_files(tmp_path):
    p = tmp_path / "x.dat"
    p.write_text("1 2 3\n")
    with pytest.raises(HeaderMismatchError):
        read_far_field(p)
    p.write_text("# " + json.dumps({"format": "elastinv-farfield", "version": 99}) + "\n")
    with pytest.raises(HeaderMismatchError, match="version"):
        read_far_field(p)
    write_far_field(p, _ff(), {})
    lines = p.read_text().splitlines()
    p.write_text("\n".join(lines[:-1]) + "\n")
    with pytest.raises(HeaderMismatchError):
        read_far_field(p)


def test_config_round_trip(tmp_path):
    cfg = RunConfig.from_dict(BASE)
    path = tmp_path / "c.json"
    cfg.dump(path)
    again = RunConfig.load(path)
    assert again.to_dict() == cfg.to_dict()
    assert again.solver["n"] == 64 and again.solver["seed"] == 3
    assert again.reconstruction().reference_ball.R == 0.5


@pytest.mark.parametrize("where, key", [((), "colour"), (("solver",), "tolerance"), (("medium",), "rho"),
                                        (("wave",), "phase"), (("initial",), "r")])
def test_unknown_keys_rejected(where, key):
    d = json.loads(json.dumps(BASE))
    target = d
    for w in where:
        target = target[w]
    target[key] = 1
    with pytest.raises(ConfigError) as info:
        RunConfig.from_dict(d)
    assert info.value.key == key


def test_invalid_values_rejected():
    d = json.loads(json.dumps(BASE))
    d["solver"]["rho"] = 2.0
    with pytest.raises(ConfigError):
        RunConfig.from_dict(d)
    d = json.loads(json.dumps(BASE))
    del d["medium"]["mu"]
    with pytest.raises(ConfigError) as info:
        RunConfig.from_dict(d)
    assert info.value.key == "mu"


def test_header_check():
    cfg = RunConfig.from_dict(BASE)
    head = cfg.data_header(False) | {"n_bar": 32}
    cfg.check_header(head)
    with pytest.raises(HeaderMismatchError) as info:
        cfg.check_header(head | {"wave": {"kind": "P", "theta": 1.9634954084936207}})
    assert info.value.key == "wave"
    with pytest.raises(HeaderMismatchError):
        cfg.check_header(head | {"reference_ball": None})


def test_trace_and_curves(tmp_path):
    c = StarCurve.circle((0.1, 0.2), 0.3, M=2)
    trace = IterationTrace([IterationRecord(0, c, 0.5, 0.25, 1.5), IterationRecord(1, c, 0.1, 0.05, 0.5)])
    write_trace(tmp_path / "t.csv", trace, 2)
    header, rows = read_trace(tmp_path / "t.csv")
    assert header[:6] == ["k", "E", "Err", "lambda", "c1", "c2"] and len(header) == 4 + 2 + 3 + 2
    assert np.array_equal(rows[:, 1], [0.5, 0.1]) and rows[1, 6] == 0.3
    write_curves(tmp_path / "c.csv", {"a": c, "b": c})
    lines = (tmp_path / "c.csv").read_text().splitlines()
    assert len(lines) == 1 + 2 * 256
