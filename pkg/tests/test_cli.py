import json
import math

import pytest

from modxl import cli
from modxl.channel import LinkBudget
from modxl.cli import RunConfig, main, parse_grid
from modxl.closedform import ModelTag, evaluate
from modxl.sweep import CSV_HEADER
from modxl.validation import CheckResult


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def parse_snr_line(out):
    fields = dict(item.split("=") for item in out.split())
    return fields["model"], float(fields["snr_linear"]), float(fields["snr_db"])


class TestSnr:
    def test_isotropic_limit(self, capsys):
        code, out, _ = run(capsys, "snr", "--model", "limit-isotropic")
        assert code == 0
        model, linear, db = parse_snr_line(out)
        assert model == "limit-isotropic"
        assert linear == pytest.approx(1e9 * 9 / (2 * math.pi * 180), rel=1e-11)
        assert db == pytest.approx(69.0079, abs=1e-4)

    def test_default_model_is_closed_form(self, capsys):
        code, out, _ = run(capsys, "snr")
        assert code == 0
        assert parse_snr_line(out)[0] == "nusw-closed"

    def test_grazing_user_is_input_error(self, capsys):
        code, out, err = run(capsys, "snr", "--model", "nusw-closed", "--theta", "0")
        assert code == 2
        assert out == ""
        assert err.startswith("modxl: error:") and "cos_x" in err
        assert len(err.strip().splitlines()) == 1

    def test_validity_warning_goes_to_stderr(self, capsys):
        code, out, err = run(capsys, "snr", "--r", "0.5")
        assert code == 0
        assert "warning" in err and "d/r" in err
        assert out.startswith("model=")

    def test_flags_convert_units(self, capsys):
        code, out, _ = run(capsys, "snr", "--model", "upw-projected", "--pbar-db", "80", "--freq-ghz", "3",
                           "--M", "1", "--Ny", "1", "--Nz", "1", "--theta", "90", "--phi", "0", "--r", "10")
        assert code == 0
        lam = 299792458 / 3e9
        expected = 1e8 * lam**2 / (4 * math.pi) / (4 * math.pi * 100)
        assert parse_snr_line(out)[1] == pytest.approx(expected, rel=1e-11)


class TestConfigFile:
    def test_round_trip(self, tmp_path):
        run_cfg = RunConfig(M=5, Ny=3, Nz=7, theta=45.0, pbar_db=70.0, model="nusw-sum")
        path = tmp_path / "run.json"
        path.write_text(run_cfg.to_json())
        parsed = RunConfig.from_mapping(json.loads(path.read_text()))
        assert parsed == run_cfg
        a = evaluate(ModelTag(run_cfg.model), run_cfg.array_config(), run_cfg.location(), run_cfg.budget())
        b = evaluate(ModelTag(parsed.model), parsed.array_config(), parsed.location(), parsed.budget())
        assert a == b

    def test_flags_override_file(self, tmp_path, capsys):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"model": "limit-isotropic", "pbar-db": 80, "M": 1}))
        _, out, _ = run(capsys, "snr", "--config", str(path), "--pbar-db", "90")
        model, linear, _ = parse_snr_line(out)
        assert model == "limit-isotropic"
        assert linear == pytest.approx(1e9 / (2 * math.pi * 10 * 10), rel=1e-11)

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "snr", "--config", "/nonexistent/run.json")
        assert code == 2 and "run.json" in err

    def test_malformed_file(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        assert run(capsys, "snr", "--config", str(path))[0] == 2
        path.write_text("[1, 2]")
        assert run(capsys, "snr", "--config", str(path))[0] == 2
        path.write_text(json.dumps({"colour": "blue"}))
        code, _, err = run(capsys, "snr", "--config", str(path))
        assert code == 2 and "colour" in err

    def test_db_conversion(self):
        assert RunConfig(pbar_db=90).budget().transmit_snr == pytest.approx(1e9, rel=1e-15)
        budget = RunConfig(beta0=2e-4).budget()
        assert budget.reference_gain == 2e-4
        assert budget.beta0(0.1) == 2e-4
        assert RunConfig().budget().beta0(0.1) == LinkBudget(1.0).beta0(0.1)


class TestSweepCommand:
    def test_range_grid(self):
        assert parse_grid("1:5:2") == (1.0, 3.0, 5.0)
        assert parse_grid("0:1:0.1")[-1] == pytest.approx(1.0)
        assert parse_grid("1, 2,4") == (1.0, 2.0, 4.0)
        with pytest.raises(ValueError):
            parse_grid("1:5")

    def test_writes_csv(self, tmp_path, capsys):
        out_path = tmp_path / "s.csv"
        code, _, _ = run(capsys, "sweep", "--variable", "zenith", "--grid", "30,60,90",
                         "--models", "nusw-closed,upw-projected", "--out", str(out_path))
        assert code == 0
        lines = out_path.read_text().splitlines()
        assert lines[1] == ",".join(CSV_HEADER)
        assert len(lines) == 2 + 6
        assert lines[2].startswith(f"zenith_rad,{math.radians(30):.12g},nusw-closed,")

    def test_bad_model_tag(self, capsys):
        code, _, err = run(capsys, "sweep", "--variable", "distance", "--grid", "1,2", "--models", "magic")
        assert code == 2 and "magic" in err

    def test_bad_grid(self, capsys):
        assert run(capsys, "sweep", "--variable", "distance", "--grid", "3,2,5")[0] == 2


class TestFigureAndValidate:
    def test_figure_to_file(self, tmp_path, capsys):
        out_path = tmp_path / "fig5a.csv"
        assert run(capsys, "figure", "fig5a", "--out", str(out_path))[0] == 0
        rows = [line.split(",") for line in out_path.read_text().splitlines()[2:]]
        exact = {r[1]: float(r[3]) for r in rows if r[2] == "nusw-sum"}
        closed = {r[1]: float(r[3]) for r in rows if r[2] == "nusw-closed"}
        assert exact.keys() == closed.keys()
        assert all(abs(closed[k] - exact[k]) / exact[k] < 0.01 for k in exact)

    def test_unwritable_output(self, capsys):
        code, _, err = run(capsys, "figure", "fig7", "--out", "/nonexistent/dir/x.csv")
        assert code == 2 and "x.csv" in err

    def test_validate_passes(self, capsys):
        code, out, _ = run(capsys, "validate")
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 6 and all(line.startswith("PASS") for line in lines)

    def test_validate_failure_exit_code(self, capsys, monkeypatch):
        monkeypatch.setattr(cli, "run_checks", lambda: [CheckResult("x", False, "broken")])
        code, out, _ = run(capsys, "validate")
        assert code == 3 and out.startswith("FAIL x")


class TestUsageErrors:
    @pytest.mark.parametrize("argv", [[], ["bogus"], ["snr", "--wat"], ["snr", "--model", "nope"],
                                      ["figure", "fig99"], ["snr", "--M", "many"]])
    def test_exit_two(self, capsys, argv):
        assert run(capsys, *argv)[0] == 2

    def test_invalid_value(self, capsys):
        code, _, err = run(capsys, "snr", "--M", "0")
        assert code == 2 and "elements_per_module" in err

    def test_help(self, capsys):
        assert run(capsys, "--help")[0] == 0
