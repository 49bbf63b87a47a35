"""End-to-end command behavior: outputs, config merging, exit codes."""

from __future__ import annotations

import json

import numpy as np
import pytest

from wallfade.cli import main
from wallfade.config import ExperimentConfig
from wallfade.geometry import TxLocation, WallConfig
from wallfade.montecarlo import SampleSpec, sample_location_power
from wallfade.signal import PropagationParams, SliceSpec, power_profile


def run(argv):
    return main(argv)


def test_power_profile_csv(tmp_path):
    out = tmp_path / "prof.csv"
    rc = run([
        "power-profile", "--lo", "0.05", "--hi", "0.45", "--points", "5",
        "--out", str(out),
    ])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "coordinate,power"
    assert len(lines) == 6
    prof = power_profile(
        WallConfig(0.5, 0.5, 0.5),
        PropagationParams(10.0, 4.0),
        SliceSpec("x", 0.0, 0.05, 0.45, 5),
    )
    for row, (c, p) in zip(lines[1:], prof):
        sc, sp = row.split(",")
        assert float(sc) == c and float(sp) == p


def test_power_profile_stdout(capsys):
    rc = run(["power-profile", "--lo", "0.1", "--hi", "0.4", "--points", "3"])
    assert rc == 0
    outerr = capsys.readouterr()
    assert outerr.out.startswith("coordinate,power\n")
    assert len(outerr.out.splitlines()) == 4


def test_power_profile_kappa_zero_is_flat_zero(tmp_path):
    out = tmp_path / "dead.csv"
    rc = run([
        "power-profile", "--kappa", "0", "--lo", "0.1", "--hi", "0.4",
        "--points", "4", "--out", str(out),
    ])
    assert rc == 0
    for row in out.read_text().splitlines()[1:]:
        assert row.endswith(",0.0")


def test_rerun_is_byte_identical(tmp_path):
    args = [
        "power-profile", "--k", "100", "--lo", "0.15", "--hi", "0.35",
        "--points", "64",
    ]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(args + ["--out", str(a)]) == 0
    assert run(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_turning_points_json(tmp_path):
    out = tmp_path / "turn.json"
    rc = run([
        "turning-points", "--lo", "0.05", "--hi", "0.45", "--out", str(out),
    ])
    assert rc == 0
    data = json.loads(out.read_text())
    assert data["axis"] == "x" and data["interval"] == [0.05, 0.45]
    pts = data["turning_points"]
    assert len(pts) == 3
    assert [p["kind"] for p in pts] == ["minimum", "maximum", "minimum"]
    assert pts[0]["t"] == pytest.approx(0.149082, abs=1e-6)
    assert all(not p["degenerate"] for p in pts)
    preds = data["predicted_singular_values"]
    assert len(preds) == 3
    assert all(p["multiplicity"] == 1 for p in preds)


def test_surface_bound_dominates_power(tmp_path):
    out = tmp_path / "bound.csv"
    rc = run([
        "surface-bound", "--lo", "0.05", "--hi", "0.45", "--points", "201",
        "--out", str(out),
    ])
    assert rc == 0
    rows = [r.split(",") for r in out.read_text().splitlines()[1:]]
    assert len(rows) == 201
    for _, p, q in rows:
        assert float(q) - float(p) >= -1e-12


def test_surface_bound_kappa_zero_collapses_to_los(tmp_path):
    out = tmp_path / "bound0.csv"
    rc = run([
        "surface-bound", "--kappa", "0", "--lo", "0.1", "--hi", "0.4",
        "--points", "7", "--out", str(out),
    ])
    assert rc == 0
    for row in out.read_text().splitlines()[1:]:
        c, p, q = (float(v) for v in row.split(","))
        want = c**-4.0
        assert p == pytest.approx(want, rel=1e-12)
        assert q == pytest.approx(want, rel=1e-12)


def test_sample_density_outputs(tmp_path):
    hist_csv = tmp_path / "hist.csv"
    peaks_json = tmp_path / "peaks.json"
    dump_bin = tmp_path / "dump.bin"
    argv = [
        "sample-density", "--k", "100", "--seed", "3", "--samples", "20000",
        "--x-lo", "0.15", "--x-hi", "0.35", "--bins", "50",
        "--prominence", "1.4",
        "--out", str(hist_csv), "--peaks-out", str(peaks_json),
        "--dump-samples", str(dump_bin),
    ]
    assert run(argv) == 0

    lines = hist_csv.read_text().splitlines()
    assert lines[0] == "bin_left,bin_right,count,density"
    assert len(lines) == 51
    counts = [int(r.split(",")[2]) for r in lines[1:]]
    assert sum(counts) == 20000

    data = json.loads(peaks_json.read_text())
    assert sorted(data) == [
        "bin_width",
        "detected",
        "matches",
        "predicted_singular_values",
        "sample_count",
        "unmatched_detected",
        "unmatched_predicted",
    ]
    assert data["sample_count"] == 20000
    assert len(data["matches"]) >= 5

    raw = np.fromfile(dump_bin, dtype="<f8")
    spec = SampleSpec(
        model="location",
        base=TxLocation(0.25, 0.0),
        n_samples=20000,
        seed=3,
        x_interval=(0.15, 0.35),
    )
    want = sample_location_power(
        WallConfig(0.5, 0.5, 0.5), PropagationParams(100.0, 4.0), spec
    )
    np.testing.assert_array_equal(raw, want)


def test_sample_density_csv_dump(tmp_path):
    dump_csv = tmp_path / "dump.csv"
    argv = [
        "sample-density", "--seed", "1", "--samples", "100",
        "--x-lo", "0.2", "--x-hi", "0.3", "--bins", "10",
        "--out", str(tmp_path / "h.csv"), "--dump-samples", str(dump_csv),
    ]
    assert run(argv) == 0
    lines = dump_csv.read_text().splitlines()
    assert lines[0] == "power"
    assert len(lines) == 101
    assert all(float(v) > 0.0 for v in lines[1:])


def test_sample_density_phase_model_has_no_predictions(tmp_path):
    peaks_json = tmp_path / "peaks.json"
    argv = [
        "sample-density", "--model", "phase", "--x", "0.25", "--seed", "2",
        "--samples", "20000", "--bins", "50",
        "--out", str(tmp_path / "h.csv"), "--peaks-out", str(peaks_json),
    ]
    assert run(argv) == 0
    data = json.loads(peaks_json.read_text())
    assert data["predicted_singular_values"] == []
    assert data["matches"] == []
    assert data["unmatched_predicted"] == []


def test_validate_lerch_report(tmp_path):
    out = tmp_path / "lerch.json"
    argv = [
        "validate-lerch", "--lo", "0.05", "--hi", "0.45", "--points", "21",
        "--k-values", "10,100", "--out", str(out),
    ]
    assert run(argv) == 0
    data = json.loads(out.read_text())
    assert data["k_values"] == [10.0, 100.0]
    assert data["grid"]["points"] == 21
    assert data["max_relative_deviation"] < 1e-8
    assert 0.05 <= data["worst_x"] <= 0.45


def test_validate_lerch_kappa_zero_is_exact(tmp_path):
    out = tmp_path / "lerch0.json"
    argv = [
        "validate-lerch", "--kappa", "0", "--lo", "0.1", "--hi", "0.4",
        "--points", "5", "--out", str(out),
    ]
    assert run(argv) == 0
    assert json.loads(out.read_text())["max_relative_deviation"] == 0.0


def test_validate_lerch_strong_reflection_stress(tmp_path):
    out = tmp_path / "lerch999.json"
    argv = [
        "validate-lerch", "--kappa", "0.999", "--eps-series", "1e-14",
        "--lo", "0.1", "--hi", "0.4", "--points", "5", "--k-values", "10",
        "--out", str(out),
    ]
    assert run(argv) == 0
    assert json.loads(out.read_text())["max_relative_deviation"] < 1e-6


def test_config_file_merge_and_override(tmp_path):
    cfg = ExperimentConfig(
        kind="power-profile",
        k=100.0,
        slice_spec=SliceSpec("x", 0.0, 0.15, 0.35, 11),
    )
    path = tmp_path / "run.json"
    path.write_text(cfg.to_json(), encoding="utf-8")

    from_file = tmp_path / "file.csv"
    assert run(["power-profile", "--config", str(path), "--out", str(from_file)]) == 0
    from_flags = tmp_path / "flags.csv"
    assert run([
        "power-profile", "--k", "100", "--lo", "0.15", "--hi", "0.35",
        "--points", "11", "--out", str(from_flags),
    ]) == 0
    assert from_file.read_bytes() == from_flags.read_bytes()

    overridden = tmp_path / "over.csv"
    assert run([
        "power-profile", "--config", str(path), "--points", "5",
        "--out", str(overridden),
    ]) == 0
    assert len(overridden.read_text().splitlines()) == 6


@pytest.mark.parametrize(
    "argv",
    [
        ["power-profile"],  # slice needs --lo
        ["power-profile", "--lo", "0.4", "--hi", "0.1"],
        ["power-profile", "--lo", "0.1", "--hi", "0.4", "--kappa", "1.0"],
        ["sample-density", "--x-lo", "0.1"],  # missing --x-hi
        ["validate-lerch", "--a", "0.6", "--b", "0.4", "--lo", "0.1", "--hi", "0.4"],
    ],
)
def test_configuration_errors_exit_2(argv, capsys):
    assert run(argv) == 2
    assert "configuration error" in capsys.readouterr().err


def test_config_file_errors_exit_2(tmp_path, capsys):
    missing = tmp_path / "nope.json"
    assert run(["power-profile", "--config", str(missing)]) == 2

    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    assert run(["power-profile", "--config", str(bad)]) == 2

    unknown = tmp_path / "unknown.json"
    unknown.write_text(
        json.dumps({"kind": "power-profile", "slice": {"lo": 0.1, "hi": 0.4}, "typo": 1}),
        encoding="utf-8",
    )
    assert run(["power-profile", "--config", str(unknown)]) == 2
    assert "unknown config keys" in capsys.readouterr().err


def test_runtime_errors_exit_3(tmp_path, capsys):
    # a single draw collapses the histogram range
    assert run([
        "sample-density", "--samples", "1", "--x-lo", "0.2", "--x-hi", "0.3",
        "--out", str(tmp_path / "h.csv"),
    ]) == 3
    capsys.readouterr()
    # interval reaching the wall fails at sampling time
    assert run([
        "sample-density", "--samples", "100", "--x-lo", "0.2", "--x-hi", "0.5",
        "--out", str(tmp_path / "h2.csv"),
    ]) == 3
    assert "wallfade:" in capsys.readouterr().err
