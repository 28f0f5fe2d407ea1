"""Tests for the command-line interface: formats, exit codes, determinism."""

import json
import math

import pytest

from ektau.cli import (
    EXIT_HYPOTHESIS,
    EXIT_OK,
    EXIT_USAGE,
    main,
)

jsonschema = pytest.importorskip("jsonschema")


@pytest.fixture(scope="module")
def schema():
    import importlib.resources as res

    with res.files("ektau").joinpath("schemas/output.schema.json").open() as fh:
        return json.load(fh)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestGeodesic:
    def test_csv_table(self, capsys):
        code, out, err = run_cli(
            capsys, "geodesic", "--tau", "1", "--phi", str(math.pi / 3),
            "--t-end", "2", "--steps", "10",
        )
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[0] == "t,x,y,z,a1,a2,a3,speed_drift"
        assert len(lines) == 12
        ts = [float(line.split(",")[0]) for line in lines[1:]]
        assert ts == sorted(ts)
        drift = max(float(line.split(",")[-1]) for line in lines[1:])
        assert drift < 1e-5

    def test_json_validates(self, capsys, schema):
        code, out, _ = run_cli(
            capsys, "geodesic", "--format", "json", "--t-end", "1", "--steps", "5"
        )
        assert code == EXIT_OK
        doc = json.loads(out)
        jsonschema.validate(doc, schema)
        assert doc["command"] == "geodesic"

    def test_invalid_phi_exits_2(self, capsys):
        code, _, err = run_cli(capsys, "geodesic", "--tau", "1", "--phi", "7.0")
        assert code == EXIT_USAGE
        assert "phi" in err

    def test_sl2_family_validation(self, capsys):
        code, _, _ = run_cli(
            capsys, "geodesic", "--kappa", "-1", "--family", "spiral"
        )
        assert code == EXIT_USAGE


class TestBallVolume:
    def test_euclidean_unit_ball(self, capsys):
        code, out, _ = run_cli(
            capsys, "ball-volume", "--kappa", "0", "--tau", "0",
            "--radii", "1", "--samples", "200000", "--seed", "4",
        )
        assert code == EXIT_OK
        row = out.splitlines()[1].split(",")
        vol, std = float(row[1]), float(row[2])
        assert abs(vol - 4.0 * math.pi / 3.0) < 3.0 * std

    def test_fit_row_appended(self, capsys):
        code, out, _ = run_cli(
            capsys, "ball-volume", "--tau", "1",
            "--radii", "1,1.5,2,2.5,3,4", "--samples", "20000",
        )
        assert code == EXIT_OK
        assert out.splitlines()[-1].startswith("fit_power_exponent,")

    def test_sample_floor_exits_2(self, capsys):
        code, _, _ = run_cli(capsys, "ball-volume", "--samples", "10")
        assert code == EXIT_USAGE

    def test_json_validates(self, capsys, schema):
        code, out, _ = run_cli(
            capsys, "ball-volume", "--format", "json", "--radii", "1,2",
            "--samples", "5000",
        )
        assert code == EXIT_OK
        jsonschema.validate(json.loads(out), schema)


class TestGrowth:
    def test_umbrella_matches_closed_form(self, capsys):
        code, out, _ = run_cli(
            capsys, "growth", "--example", "umbrella", "--family", "extrinsic",
            "--tau", "1", "--radii", "1,2",
        )
        assert code == EXIT_OK
        for line in out.splitlines()[1:]:
            R, area = (float(v) for v in line.split(","))
            exact = 2.0 * math.pi / 3.0 * ((1.0 + R * R) ** 1.5 - 1.0)
            assert abs(area / exact - 1.0) < 1e-5

    def test_unknown_example_exits_2(self, capsys):
        code, _, _ = run_cli(capsys, "growth", "--example", "torus")
        assert code == EXIT_USAGE

    def test_json_extras_carry_verdict(self, capsys, schema):
        code, out, _ = run_cli(
            capsys, "growth", "--example", "umbrella", "--family", "cylinder",
            "--format", "json", "--radii", "1,1.5,2,2.5,3,4",
        )
        assert code == EXIT_OK
        doc = json.loads(out)
        jsonschema.validate(doc, schema)
        assert doc["extras"]["verdict"] == "consistent"


class TestCollinKrust:
    def test_catenoid_slope(self, capsys):
        code, out, _ = run_cli(
            capsys, "collin-krust", "--example", "catenoid",
            "--radii", "50,100,150,200",
        )
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[0] == "r,M,M_over_r"
        slopes = [float(line.split(",")[2]) for line in lines[1:]]
        # the sup-height slope approaches E tau = 1 from above
        assert all(abs(s - 1.0) < 0.1 for s in slopes)

    def test_zero_boundary_violation_exits_3(self, capsys):
        code, _, err = run_cli(
            capsys, "collin-krust", "--example", "umbrella", "--radii", "1,2,4"
        )
        assert code == EXIT_HYPOTHESIS
        assert "hypothesis violation" in err


class TestConfigAndOutput:
    def test_config_supplies_defaults(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# sweep config\nt-end = 2.0\nsteps = 4\n")
        code, out, _ = run_cli(capsys, "geodesic", "--config", str(cfg))
        assert code == EXIT_OK
        lines = out.splitlines()
        assert len(lines) == 6
        assert float(lines[-1].split(",")[0]) == 2.0

    def test_flags_override_config(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("steps = 4\n")
        code, out, _ = run_cli(
            capsys, "geodesic", "--config", str(cfg), "--steps", "2", "--t-end", "1"
        )
        assert code == EXIT_OK
        assert len(out.splitlines()) == 4

    def test_unknown_config_key_exits_2(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("warp_factor = 9\n")
        code, _, err = run_cli(capsys, "geodesic", "--config", str(cfg))
        assert code == EXIT_USAGE
        assert "warp_factor" in err

    def test_malformed_config_exits_2(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("just some words\n")
        code, _, _ = run_cli(capsys, "geodesic", "--config", str(cfg))
        assert code == EXIT_USAGE

    def test_out_file_lf_endings(self, tmp_path, capsys):
        path = tmp_path / "table.csv"
        code = main(["geodesic", "--t-end", "1", "--steps", "3", "--out", str(path)])
        capsys.readouterr()
        assert code == EXIT_OK
        data = path.read_bytes()
        assert b"\r" not in data
        assert data.endswith(b"\n")

    def test_deterministic_across_runs_and_threads(self, tmp_path, capsys):
        outs = []
        for threads in ("1", "8"):
            path = tmp_path / f"t{threads}.csv"
            code = main([
                "ball-volume", "--tau", "1", "--radii", "1,2",
                "--samples", "30000", "--seed", "123",
                "--threads", threads, "--out", str(path),
            ])
            capsys.readouterr()
            assert code == EXIT_OK
            outs.append(path.read_bytes())
        assert outs[0] == outs[1]
        # and bit-identical on a repeated run
        path = tmp_path / "again.csv"
        main([
            "ball-volume", "--tau", "1", "--radii", "1,2",
            "--samples", "30000", "--seed", "123", "--out", str(path),
        ])
        capsys.readouterr()
        assert path.read_bytes() == outs[0]
