"""Command-line interface: parsing, serialization, determinism, exit codes."""
import csv
import io
import json
import math
import subprocess
import sys
import warnings

import pytest

from yukawa_ab import NonIntegerXiWarning
from yukawa_ab.cli import RunConfig, main, parse_args, run


def capture(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def csv_rows(text):
    return list(csv.reader(io.StringIO(text)))


class TestParsing:
    def test_energy_defaults(self):
        config = parse_args(["energy", "--n", "0", "--m", "0"])
        assert config.command == "energy"
        assert (config.n, config.m) == (0, 0)
        assert (config.physical.hbar, config.physical.mu) == (1.0, 1.0)
        assert config.physical.v1 == 2.0
        assert config.physical.delta == 0.005
        assert (config.fields.omega_c, config.fields.xi) == (0.0, 0.0)
        assert config.fmt == "csv"

    def test_verify_defaults_to_json(self):
        config = parse_args(["verify", "--n", "0", "--m", "0"])
        assert config.fmt == "json"

    def test_spectrum_state_set(self):
        config = parse_args(["spectrum", "--n-max", "2", "--m-set=-1,1"])
        assert config.n_max == 2
        assert config.m_set == (-1, 1)

    def test_field_flags(self):
        config = parse_args(
            ["energy", "--n", "3", "--m", "1", "--omega-c", "5", "--xi", "5"]
        )
        assert config.fields.omega_c == 5.0
        assert config.fields.xi == 5.0

    def test_b_field_converted_at_parse_time(self):
        config = parse_args(
            ["energy", "--n", "0", "--m", "0", "--b-field", "10", "--mu", "2"]
        )
        assert config.fields.omega_c == pytest.approx(5.0)

    @pytest.mark.parametrize(
        "argv,fragment",
        [
            (["energy", "--n", "0", "--m", "0", "--delta", "-1"], "delta must be > 0"),
            (["energy", "--n=-1", "--m", "0"], "n must be >= 0"),
            (["spectrum", "--m-set", "a,b"], "comma-separated list of integers"),
            (
                ["sweep", "--axis", "delta", "--values", "1;2"],
                "comma-separated list of numbers",
            ),
            (
                ["wavefunction", "--n", "0", "--m", "0", "--r-min", "5", "--r-max", "1"],
                "r_min",
            ),
            (
                ["verify", "--n", "0", "--m", "0", "--points", "50"],
                "num_points must be >= 100",
            ),
            (
                ["energy", "--n", "0", "--m", "0", "--xi", "2.5", "--strict-integer-xi"],
                "xi must be an integer",
            ),
        ],
    )
    def test_usage_errors_reach_stderr_with_exit_2(self, capsys, argv, fragment):
        code, out, err = capture(capsys, argv)
        assert code == 2
        assert out == ""
        assert fragment in err

    def test_omega_c_and_b_field_are_exclusive(self, capsys):
        code = main(
            ["energy", "--n", "0", "--m", "0", "--omega-c", "1", "--b-field", "1"]
        )
        assert code == 2
        assert "not allowed with" in capsys.readouterr().err

    def test_non_integer_xi_warns_without_strict_flag(self):
        with pytest.warns(NonIntegerXiWarning):
            parse_args(["energy", "--n", "0", "--m", "0", "--xi", "2.5"])

    def test_integer_xi_is_silent(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            parse_args(["energy", "--n", "0", "--m", "0", "--xi", "5"])


class TestEnergyCommand:
    def test_csv_row(self, capsys):
        code, out, err = capture(capsys, ["energy", "--n", "0", "--m", "0"])
        assert code == 0
        rows = csv_rows(out)
        assert rows[0] == ["m", "n", "omega_c", "xi", "energy", "is_bound"]
        assert rows[1] == ["0", "0", "0.0", "0.0", "-8.0000031", "true"]

    def test_json_full_precision(self, capsys):
        code, out, _ = capture(
            capsys, ["energy", "--n", "0", "--m", "0", "--format", "json"]
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["energy"] == -8.000003125
        assert payload["is_bound"] is True

    def test_unbound_cell_is_reported_not_errored(self, capsys):
        code, out, _ = capture(
            capsys, ["energy", "--n", "1", "--m=-1", "--omega-c", "5"]
        )
        assert code == 0
        rows = csv_rows(out)
        assert rows[1][5] == "false"

    def test_determinism_byte_identical(self, capsys):
        argv = ["spectrum", "--n-max", "3", "--m-set=0,-1,1", "--omega-c", "5"]
        _, first, _ = capture(capsys, argv)
        _, second, _ = capture(capsys, argv)
        assert first == second

    def test_b_field_alias_gives_identical_bytes(self, capsys):
        _, via_omega, _ = capture(
            capsys, ["energy", "--n", "0", "--m", "1", "--omega-c", "5"]
        )
        _, via_b, _ = capture(
            capsys, ["energy", "--n", "0", "--m", "1", "--b-field", "5"]
        )
        assert via_omega == via_b


class TestSpectrumCommand:
    def test_row_count_and_order(self, capsys):
        code, out, _ = capture(capsys, ["spectrum", "--n-max", "1", "--m-set=0,1"])
        assert code == 0
        rows = csv_rows(out)
        assert len(rows) == 5
        # n is the outer loop, m the inner one; columns stay (m, n, ...)
        assert [r[:2] for r in rows[1:]] == [
            ["0", "0"],
            ["1", "0"],
            ["0", "1"],
            ["1", "1"],
        ]

    def test_json_shape(self, capsys):
        code, out, _ = capture(
            capsys, ["spectrum", "--n-max", "1", "--m-set", "0", "--format", "json"]
        )
        payload = json.loads(out)
        assert len(payload["rows"]) == 2
        assert payload["rows"][0]["energy"] == -8.000003125


class TestWavefunctionCommand:
    def test_node_count_in_sampled_profile(self, capsys):
        code, out, _ = capture(
            capsys,
            ["wavefunction", "--n", "1", "--m", "0", "--r-max", "2000", "--points", "500"],
        )
        assert code == 0
        rows = csv_rows(out)
        assert rows[0] == ["r", "R"]
        assert len(rows) == 501
        values = [float(r[1]) for r in rows[1:]]
        signs = [v for v in values if abs(v) > 1e-12]
        flips = sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)
        assert flips == 1

    def test_unbound_state_serializes_error_with_exit_1(self, capsys):
        code, out, _ = capture(
            capsys,
            [
                "wavefunction",
                "--n",
                "1",
                "--m=-1",
                "--omega-c",
                "5",
                "--format",
                "json",
            ],
        )
        assert code == 1
        payload = json.loads(out)
        assert "no normalizable wavefunction" in payload["error"]

    def test_json_arrays_align(self, capsys):
        code, out, _ = capture(
            capsys,
            [
                "wavefunction",
                "--n",
                "0",
                "--m",
                "0",
                "--points",
                "50",
                "--r-max",
                "1500",
                "--format",
                "json",
            ],
        )
        payload = json.loads(out)
        assert len(payload["r"]) == 50
        assert len(payload["R"]) == 50
        assert payload["energy"] == -8.000003125


class TestPotentialCommand:
    def test_reports_both_forms(self, capsys):
        code, out, _ = capture(
            capsys,
            ["potential", "--m", "1", "--r-min", "1", "--r-max", "10", "--points", "10"],
        )
        assert code == 0
        rows = csv_rows(out)
        assert rows[0] == ["r", "v_exact", "v_approx"]
        assert len(rows) == 11
        first = [float(x) for x in rows[1]]
        assert first[0] == 1.0
        # the screened well dominates both forms at r ~ 1
        assert first[1] < 0 and first[2] < 0


class TestTable1Command:
    def test_full_table(self, capsys):
        code, out, _ = capture(capsys, ["table1"])
        assert code == 0
        rows = csv_rows(out)
        assert rows[0] == ["m", "n", "scenario", "computed", "published", "status"]
        assert len(rows) == 49
        statuses = [r[5] for r in rows[1:]]
        assert statuses.count("MATCH") == 47
        assert statuses.count("MISMATCH-DOCUMENTED") == 1
        documented = [r for r in rows[1:] if r[5] == "MISMATCH-DOCUMENTED"]
        assert documented[0][:3] == ["-1", "1", "omega5_xi0"]

    def test_energies_use_seven_decimals(self, capsys):
        _, out, _ = capture(capsys, ["table1"])
        row = csv_rows(out)[1]
        assert row[3] == "-8.0000031"
        assert row[4] == "-8.0000031"

    def test_json_summary(self, capsys):
        code, out, _ = capture(capsys, ["table1", "--format", "json"])
        payload = json.loads(out)
        assert len(payload["rows"]) == 48
        assert payload["summary"]["match"] == 47
        assert payload["summary"]["mismatch_documented"] == 1
        assert payload["summary"]["mismatch_new"] == 0


class TestVerifyCommand:
    def test_json_report_round_trips(self, capsys):
        code, out, _ = capture(capsys, ["verify", "--n", "0", "--m", "1"])
        assert code == 0
        payload = json.loads(out)
        for key in (
            "n",
            "m",
            "closed_form",
            "oracle_approx",
            "oracle_exact",
            "richardson_approx",
            "richardson_exact",
            "rel_gap_approx",
            "unresolvable",
            "passed",
        ):
            assert key in payload
        assert payload["passed"] is True
        assert payload["rel_gap_approx"] < 1e-3
        # full-precision JSON: re-serializing the parsed floats is lossless
        assert json.loads(json.dumps(payload)) == payload

    def test_csv_layout(self, capsys):
        code, out, _ = capture(
            capsys, ["verify", "--n", "0", "--m", "1", "--format", "csv"]
        )
        assert code == 0
        rows = csv_rows(out)
        assert rows[0] == ["quantity", "value"]
        quantities = [r[0] for r in rows[1:]]
        assert "closed_form" in quantities
        assert "passed" in quantities

    def test_critical_coupling_state_fails_with_exit_1(self, capsys):
        # m + xi = 0 drives the centrifugal coefficient to its critical value;
        # the Dirichlet oracle cannot resolve it (documented limitation)
        code, out, _ = capture(capsys, ["verify", "--n", "0", "--m", "0"])
        assert code == 1
        payload = json.loads(out)
        assert payload["passed"] is False
        assert payload["rel_gap_approx"] > 1e-3


class TestSweepCommand:
    def test_csv_with_flags(self, capsys):
        code, out, _ = capture(
            capsys,
            [
                "sweep",
                "--axis",
                "omega_c",
                "--values",
                "0,1,5",
                "--n-max",
                "0",
                "--m-set",
                "1",
            ],
        )
        assert code == 0
        rows = csv_rows(out)
        assert rows[0] == ["axis", "value", "n", "m", "energy", "flag"]
        assert rows[1] == ["omega_c", "0.0", "0", "1", "-0.8822253", ""]
        assert rows[2][5] == "unbound"

    def test_axis_choice_is_validated(self, capsys):
        code, _, err = capture(
            capsys,
            ["sweep", "--axis", "charge", "--values", "1"],
        )
        assert code == 2
        assert "invalid choice" in err


class TestDegeneracyCommand:
    def test_groups_in_csv(self, capsys):
        code, out, _ = capture(
            capsys, ["degeneracy", "--n-max", "1", "--m-set=0,-1,1"]
        )
        assert code == 0
        rows = csv_rows(out)
        assert rows[0] == ["group", "n", "m", "energy", "max_gap"]
        pair_rows = [r for r in rows[1:] if r[1] == "0" and r[2] in ("-1", "1")]
        assert len(pair_rows) == 2
        assert pair_rows[0][0] == pair_rows[1][0]
        assert pair_rows[0][4] == "0.0"


class TestOutputFile:
    def test_output_flag_writes_file(self, tmp_path, capsys):
        target = tmp_path / "row.csv"
        code = main(["energy", "--n", "0", "--m", "0", "--output", str(target)])
        assert code == 0
        assert capsys.readouterr().out == ""
        rows = csv_rows(target.read_text())
        assert rows[1][4] == "-8.0000031"

    def test_run_returns_text_without_touching_disk(self):
        config = parse_args(["energy", "--n", "0", "--m", "0"])
        assert isinstance(config, RunConfig)
        code, text = run(config)
        assert code == 0
        assert text.endswith("\n")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "yukawa_ab", "energy", "--n", "0", "--m", "0"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "-8.0000031" in proc.stdout
