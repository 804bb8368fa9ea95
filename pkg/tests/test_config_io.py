import json

import numpy as np
import pytest

from tripod_xpm import config, io, scan
from tripod_xpm.scan import ScanSpec, Scenario


def _doc(**extra):
    doc = {"scan": {"axis": "delta_p", "start": -10, "stop": 10, "points": 21}}
    doc.update(extra)
    return doc


def test_every_preset_validates_and_builds():
    for name in config.PRESETS:
        doc = config.load_preset(name)
        config.scenario_from(doc)
        if "scan" in doc:
            config.scan_from(doc)


def test_unknown_key_is_named():
    with pytest.raises(config.ConfigError) as err:
        config.validate(_doc(params={"densty": 1e12}))
    assert err.value.key == "params.densty"
    with pytest.raises(config.ConfigError) as err:
        config.validate(_doc(colour="red"))
    assert err.value.key == "colour"


def test_missing_required_key_is_named():
    doc = _doc()
    del doc["scan"]["points"]
    with pytest.raises(config.ConfigError) as err:
        config.validate(doc)
    assert err.value.key == "scan.points"


def test_too_few_points_rejected():
    doc = _doc()
    doc["scan"]["points"] = 2
    with pytest.raises(config.ConfigError) as err:
        config.validate(doc)
    assert err.value.key == "scan.points"


def test_bad_values_rejected():
    with pytest.raises(config.ConfigError) as err:
        config.validate(_doc(drives={"probe": {"rabi": -1}}))
    assert err.value.key == "drives.probe.rabi"
    with pytest.raises(config.ConfigError) as err:
        config.validate(_doc(provenance={"gamma0": "guessed"}))
    assert err.value.key == "provenance.gamma0"
    with pytest.raises(config.ConfigError):
        config.scan_from({"scan": {"axis": "delta_p", "start": 1, "stop": -1, "points": 5}})
    with pytest.raises(config.ConfigError):
        config.preset_path("fig9")


def test_load_errors(tmp_path):
    with pytest.raises(config.ConfigError):
        config.load(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{", encoding="utf-8")
    with pytest.raises(config.ConfigError):
        config.load(bad)


def test_conversion():
    doc = _doc(
        params={"decay": {"gamma0": 4.0}, "populations": {"rho_a": [0.3, 0.3]}},
        drives={"coupling": {"rabi": 50.0}},
        switches={"trigger": False},
        oracle={"branching": [1, 2, 3]},
        population_source="oracle",
    )
    sc = config.scenario_from(doc)
    assert sc.params.decay.gamma0 == 4.0
    assert sc.params.populations.rho_a == (0.3, 0.3)
    assert sc.drives.coupling.rabi == 50.0
    assert sc.effective_drives.trigger.rabi == 0.0
    assert sc.oracle_model.branching == (1, 2, 3)


def _table():
    spec = ScanSpec("delta_p", -10, 10, 41)
    return scan.sweep(spec, Scenario(), baseline=True)


def test_output_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    io.emit_table(_table(), a, comments=["x"])
    io.emit_table(_table(), b, comments=["x"])
    assert a.read_bytes() == b.read_bytes()
    assert b"\r\n" not in a.read_bytes()


def test_csv_json_csv_round_trip(tmp_path):
    t = _table()
    c1, j, c2 = tmp_path / "t.csv", tmp_path / "t.json", tmp_path / "t2.csv"
    io.emit_table(t, c1, comments=["scenario: test"])
    t1 = io.read_table(c1)
    io.emit_table(t1, j, "json")
    t2 = io.read_table(j)
    io.emit_table(t2, c2)
    assert c2.read_text() == c1.read_text().split("\n", 1)[1]
    for name in t.column_names:
        assert np.array_equal(t.column(name), t2.column(name), equal_nan=True)
    assert json.loads(j.read_text())[0]["delta_p_mhz"] == -10.0


def test_emit_rejects_unknown_format(tmp_path):
    with pytest.raises(ValueError):
        io.emit_table(_table(), tmp_path / "t.txt", "xml")


def test_read_measurements(tmp_path):
    f = tmp_path / "m.csv"
    f.write_text("# data\naxis_mhz,value,sigma\n0,1,0.1\n1,2,0.1\n", encoding="utf-8")
    m = io.read_measurements(f)
    assert list(m.values) == [1.0, 2.0]
    f.write_text("axis_mhz,val\n0,1\n", encoding="utf-8")
    with pytest.raises(ValueError):
        io.read_measurements(f)
    f.write_text("axis_mhz,value,extra\n0,1,2\n", encoding="utf-8")
    with pytest.raises(ValueError):
        io.read_measurements(f)


def test_read_pairs(tmp_path):
    f = tmp_path / "p.csv"
    f.write_text("power_w,diameter_cm,rabi_mhz\n8e-6,0.1,3\n", encoding="utf-8")
    (beam, rabi), = io.read_pairs(f)
    assert beam.power == 8e-6 and rabi == 3.0
