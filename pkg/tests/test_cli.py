"""Command-line surface: frame resolution, check reports, sweeps, selftest.

Everything goes through main(argv) in-process; stdout/stderr are captured
with capsys.  Exit codes: 0 = inequality holds / command ok, 1 = inequality
violated, 2 = input error.
"""

import json
import math

import numpy as np
import pytest

from entroframe.cli import main

MERCEDES_LINES = (
    "directions (rad): 0.000000000000 1.047197551197 2.094395102393",
    "weights:          0.666666666667 0.666666666667 0.666666666667",
)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# === frame ================================================================

class TestFrameCommand:
    def test_weights_mercedes(self, capsys):
        code, out, err = run(capsys, "frame", "--weights",
                             "0.6667,0.6667,0.6667")
        assert code == 0 and err == ""
        lines = out.splitlines()
        assert lines[0] == MERCEDES_LINES[0]
        assert lines[1] == MERCEDES_LINES[1]
        assert lines[2].startswith("residual:")
        assert float(lines[2].split()[-1]) <= 1e-12

    def test_sector_violation_message(self, capsys):
        code, out, err = run(capsys, "frame", "--angles", "0,0.5236,0.7854")
        assert code == 2 and out == ""
        assert err == "sector violation: sector 3 measures 2.3562 ≥ π/2\n"

    def test_young_routes_to_conjugate_exponents(self, capsys):
        code_y, out_y, _ = run(capsys, "frame", "--young", "1.3333,1.3333,2")
        code_e, out_e, _ = run(capsys, "frame", "--exponents",
                               "2,1.3333,1.3333")
        assert code_y == code_e == 0
        assert out_y == out_e

    def test_exactly_one_selector_required(self, capsys):
        code, _, err = run(capsys, "frame")
        assert code == 2 and "exactly one" in err
        code, _, err = run(capsys, "frame", "--weights", "0.6,0.6,0.8",
                           "--angles", "0,1,2")
        assert code == 2 and "exactly one" in err

    def test_wrong_value_count(self, capsys):
        code, _, err = run(capsys, "frame", "--weights", "0.5,0.5")
        assert code == 2 and "3 comma-separated values" in err

    def test_angles_round_trip(self, capsys):
        code, out, _ = run(capsys, "frame", "--angles", "0,0.9553,2.0")
        assert code == 0
        weights = [float(v) for v in out.splitlines()[1].split()[1:]]
        np.testing.assert_allclose(sum(weights), 2.0, atol=1e-9)

    def test_output_is_deterministic(self, capsys):
        a = run(capsys, "frame", "--exponents", "2,1.3333,1.3333")
        b = run(capsys, "frame", "--exponents", "2,1.3333,1.3333")
        assert a == b


# === check ================================================================

class TestCheckCommand:
    def test_shannon_gaussian_pair(self, capsys):
        code, out, err = run(capsys, "check", "shannon",
                             "--g", "gauss:0,1", "--h", "gauss:0,4")
        assert code == 0 and err == ""
        report = json.loads(out)
        assert list(report) == ["name", "lhs", "rhs", "constant", "slack",
                                "tolerance", "inputs_digest"]
        assert report["name"] == "shannon"
        np.testing.assert_allclose(report["slack"], 0.5 * math.log(1.25),
                                   atol=1e-4)

    def test_hyper_below_threshold_violates(self, capsys):
        code, out, _ = run(capsys, "check", "hyper", "--f", "exp:1",
                           "--p", "2", "--q", "4", "--theta", "0.7")
        assert code == 1
        assert json.loads(out)["slack"] < 0.0

    def test_hyper_above_threshold_passes(self, capsys):
        code, out, _ = run(capsys, "check", "hyper", "--f", "exp:1",
                           "--p", "2", "--q", "4", "--theta", "1.2")
        assert code == 0
        assert json.loads(out)["slack"] > 0.0

    def test_tolerance_flag_overrides(self, capsys):
        code, out, _ = run(capsys, "check", "hyper", "--f", "exp:1",
                           "--p", "2", "--q", "4", "--theta", "0.7",
                           "--tolerance", "5")
        assert code == 0
        assert json.loads(out)["tolerance"] == 5.0

    def test_out_writes_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out, _ = run(capsys, "check", "shannon", "--g", "gauss:0,1",
                           "--h", "gauss:0,4", "--out", str(target))
        assert code == 0 and out == ""
        assert json.loads(target.read_text())["name"] == "shannon"

    def test_mixture_spec(self, capsys):
        code, out, _ = run(capsys, "check", "shannon",
                           "--g", "gaussmix:0.5,-1,0.5;0.5,1,0.5",
                           "--h", "gauss:0,1")
        assert code == 0
        assert json.loads(out)["slack"] > 0.0

    def test_exp_rejected_in_density_slot(self, capsys):
        code, _, err = run(capsys, "check", "shannon",
                           "--g", "gauss:0,1", "--h", "exp:1")
        assert code == 2
        assert "test function, not a density" in err
        assert "gauss:A,1" in err

    def test_bad_spec_count(self, capsys):
        code, _, err = run(capsys, "check", "shannon", "--g", "gauss:0")
        assert code == 2 and "expected 2 comma-separated values" in err

    def test_unknown_family(self, capsys):
        code, _, err = run(capsys, "check", "shannon", "--g", "cauchy:0,1")
        assert code == 2

    def test_missing_csv_file(self, capsys):
        code, _, err = run(capsys, "check", "shannon", "--g", "csv:/nonexistent")
        assert code == 2

    def test_reference_conflict(self, capsys):
        code, _, err = run(capsys, "check", "lsi",
                           "--reference", "lebesgue")
        assert code == 2 and "conflicts" in err

    def test_defaults_fill_slots(self, capsys):
        code, out, _ = run(capsys, "check", "subadditivity")
        assert code == 0
        assert json.loads(out)["name"] == "subadditivity"

    def test_report_is_deterministic(self, capsys):
        a = run(capsys, "check", "blachmann-stam",
                "--g", "gauss:0,1", "--h", "gauss:0,4")
        b = run(capsys, "check", "blachmann-stam",
                "--g", "gauss:0,1", "--h", "gauss:0,4")
        assert a == b and a[0] == 0


# === sweep ================================================================

class TestSweepCommand:
    def test_hyper_theta_sweep(self, capsys):
        code, out, _ = run(capsys, "sweep", "--check", "hyper",
                           "--param", "theta", "--f", "exp:1",
                           "--p", "2", "--q", "4",
                           "--range", "0.8:1.1", "--steps", "7")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "param,lhs,rhs,slack"
        assert len(lines) == 8
        slacks = [float(line.split(",")[3]) for line in lines[1:]]
        # sign change brackets the threshold acos sqrt(1/3) ~ 0.9553
        assert slacks[3] < 0.0 < slacks[4]

    def test_young_conv_sigma_sweep_dips_at_one(self, capsys):
        code, out, _ = run(capsys, "sweep", "--check", "young-conv",
                           "--param", "sigma",
                           "--range", "0.6:1.4", "--steps", "5")
        assert code == 0
        rows = [line.split(",") for line in out.splitlines()[1:]]
        slacks = [abs(float(r[3])) for r in rows]
        assert min(slacks) == slacks[2]
        assert slacks[2] <= 1e-12

    def test_negative_range_shannon_limit(self, capsys):
        code, out, _ = run(capsys, "sweep", "--check", "shannon-limit",
                           "--param", "s", "--range=-0.01:-0.001",
                           "--steps", "4")
        assert code == 0
        rows = [line.split(",") for line in out.splitlines()[1:]]
        assert len(rows) == 4
        for r in rows:
            assert all(math.isfinite(float(v)) for v in r)

    def test_param_name_must_match(self, capsys):
        code, _, err = run(capsys, "sweep", "--check", "hyper",
                           "--param", "sigma", "--range", "0.5:2")
        assert code == 2 and "varies 'theta'" in err

    def test_out_writes_csv(self, capsys, tmp_path):
        target = tmp_path / "rows.csv"
        code, out, _ = run(capsys, "sweep", "--check", "hyper",
                           "--param", "theta", "--range", "1.0:1.2",
                           "--steps", "3", "--out", str(target))
        assert code == 0 and out == ""
        assert target.read_text().splitlines()[0] == "param,lhs,rhs,slack"

    def test_sweep_is_deterministic(self, capsys):
        args = ("sweep", "--check", "young-conv", "--param", "sigma",
                "--range", "0.8:1.2", "--steps", "3")
        assert run(capsys, *args) == run(capsys, *args)


# === selftest =============================================================

class TestSelftestCommand:
    def test_only_frames_passes(self, capsys):
        code, out, _ = run(capsys, "selftest", "--only", "frames")
        assert code == 0
        assert "criterion  1 PASS" in out
        assert "criterion  2 PASS" in out
        assert out.splitlines()[-1] == "2/2 criteria passed"


# === top level ============================================================

class TestTopLevel:
    def test_help_exits_zero(self, capsys):
        assert run(capsys, "--help")[0] == 0

    def test_no_command_is_input_error(self, capsys):
        assert run(capsys)[0] == 2

    def test_unknown_command_is_input_error(self, capsys):
        assert run(capsys, "bogus")[0] == 2
