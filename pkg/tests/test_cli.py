"""Tests for the command-line surface."""

import json
import os
from fractions import Fraction

import numpy as np
import pytest

from cfdyn import cli
from cfdyn.cf import ContinuedFraction, ZERO, cf_from_rational
from cfdyn.errors import DomainError

GOLDEN_CSV = os.path.join(os.path.dirname(__file__), "golden",
                          "heatmap_n16_k1.csv")


class TestParsePoint:
    def test_zero_and_one(self):
        assert cli.parse_point("0") == ZERO
        assert cli.parse_point("1") == ContinuedFraction((1,))

    def test_bracket_text(self):
        assert cli.parse_point("[0;2,2]") == ContinuedFraction((2, 2))
        assert cli.parse_point("[0;1,(2)]") == ContinuedFraction((1,), (2,))

    def test_bare_period(self):
        assert cli.parse_point("(2)") == ContinuedFraction((), (2,))
        assert cli.parse_point("(1,2)") == ContinuedFraction((), (1, 2))

    def test_rational_variants(self):
        assert cli.parse_point("2/5") == cf_from_rational(Fraction(2, 5))
        assert cli.parse_point("1/2+") == cf_from_rational(
            Fraction(1, 2), variant="plus")
        assert cli.parse_point("1/2-") == cli.parse_point("1/2")

    def test_periodic_prefix_form(self):
        assert cli.parse_point("periodic:1,2:(3)") == ContinuedFraction(
            (1, 2), (3,))
        assert cli.parse_point("periodic:(3)") == ContinuedFraction((), (3,))

    @pytest.mark.parametrize("bad", ["", "x", "3/0", "[1;2]", "(0)", "5//3"])
    def test_rejects_garbage(self, bad):
        with pytest.raises(DomainError):
            cli.parse_point(bad)


class TestMapEval:
    def test_classical_shift(self, capsys):
        assert cli.main(["map-eval", "--alpha", "0", "--x", "2/5"]) == 0
        assert capsys.readouterr().out == "[0;2] 0.5\n"

    def test_golden_parameter(self, capsys):
        code = cli.main(["map-eval", "--alpha", "(1)", "--x", "[0;1,1,3,2]"])
        assert code == 0
        assert capsys.readouterr().out == "[0;2,2] 0.4\n"

    def test_parameter_maps_to_zero(self, capsys):
        assert cli.main(["map-eval", "--alpha", "1/2+", "--x", "1/2+"]) == 0
        assert capsys.readouterr().out == "0\n"

    def test_parse_failure_exit_code(self, capsys):
        assert cli.main(["map-eval", "--alpha", "0", "--x", "nope"]) == 2
        assert "cannot parse" in capsys.readouterr().err

    def test_truncation_exit_code(self, capsys):
        code = cli.main(["map-eval", "--alpha", "0",
                         "--x", "[0;4,...]", "--iter", "3"])
        assert code == 3


class TestOrbitCommand:
    def test_prints_states(self, capsys):
        assert cli.main(["orbit", "--alpha", "0", "--x", "5/13",
                         "--iter", "6"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "0 [0;2,1,1,2] 0.38461538461538464"
        assert lines[-1] == "4 0 0.0"


class TestQmarkCommand:
    def test_exact_value(self, capsys):
        assert cli.main(["qmark", "--x", "2/5"]) == 0
        assert capsys.readouterr().out == "3/8\n"

    def test_pushforward(self, capsys):
        assert cli.main(["qmark", "--x", "1/2", "--alpha", "(1)"]) == 0
        value, label, tail = capsys.readouterr().out.split()
        assert label == "uncovered"
        assert abs(float(Fraction(value)) - 0.5) <= float(Fraction(tail))


class TestJimmCommand:
    def test_periodic_rewrite(self, capsys):
        assert cli.main(["jimm", "--x", "(2)"]) == 0
        assert capsys.readouterr().out == "[0;1,(2)]\n"

    def test_golden_to_zero(self, capsys):
        assert cli.main(["jimm", "--x", "(1)"]) == 0
        assert capsys.readouterr().out == "0\n"


class TestZetaCommand:
    def test_csv_row(self, capsys):
        assert cli.main(["zeta", "--alpha", "0", "--s", "1.5"]) == 0
        out = capsys.readouterr().out
        lines = out.split("\r\n")
        assert lines[0] == "alpha,s,t,y,value,tail"
        fields = lines[1].split(",")
        assert fields[0] == "0"
        assert abs(float(fields[4]) - 0.2020569031595942) < 1e-12

    def test_domain_error_exit(self, capsys):
        assert cli.main(["zeta", "--alpha", "0", "--s", "0.2"]) == 2


class TestSpectrumCommand:
    def test_classical_report(self, capsys, tmp_path):
        out = tmp_path / "dens.csv"
        code = cli.main(["spectrum", "--alpha", "0", "--s", "1",
                         "--grid", "32", "--out", str(out)])
        assert code == 0
        text = capsys.readouterr().out
        lam = float(text.splitlines()[0].split()[1])
        assert abs(lam - 1.0) < 1e-3
        assert "classical closed form" in text
        assert out.read_text().startswith("y,value")


class TestLyapunovCommand:
    def test_json_contract(self, capsys):
        code = cli.main(["lyapunov", "--alpha", "0", "--samples", "3",
                         "--steps", "120", "--seed", "7"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert list(payload) == ["alpha", "method", "mean", "stderr",
                                 "n_samples", "n_steps", "bits", "seed",
                                 "discarded_samples"]
        assert payload["alpha"] == "0"
        assert payload["bits"] == 480
        assert payload["n_steps"] == 120

    def test_golden_parameter_default_steps(self, capsys):
        code = cli.main(["lyapunov", "--alpha", "(1)", "--samples", "1",
                         "--seed", "3"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["n_steps"] == 4000

    def test_insufficient_bits_exit(self, capsys):
        code = cli.main(["lyapunov", "--alpha", "0", "--samples", "2",
                         "--steps", "100", "--bits", "10"])
        assert code == 2


class TestVerifyCommand:
    def test_single_suite_report(self, capsys, tmp_path):
        out = tmp_path / "report.json"
        code = cli.main(["verify", "--suite", "qmark", "--out", str(out)])
        assert code == 0
        report = json.loads(out.read_text())
        assert report["passed"] is True
        assert {c["name"] for c in report["suites"]["qmark"]} >= {
            "qmark-dyadic-values", "qmark-monotone", "qmark-pushforward"}


class TestHeatmap:
    def test_values_symmetry_and_range(self):
        vals = cli.heatmap_values(16, 1)
        assert vals.shape == (16, 16)
        assert np.all((0.0 <= vals) & (vals < 1.0))
        assert np.array_equal(vals, vals[::-1, ::-1])

    def test_parallel_columns_identical(self):
        a = cli.heatmap_values(16, 2, jobs=1)
        b = cli.heatmap_values(16, 2, jobs=2)
        assert np.array_equal(a, b)

    def test_pgm_layout(self):
        vals = cli.heatmap_values(16, 1)
        blob = cli.heatmap_pgm(vals)
        assert blob.startswith(b"P5\n16 16\n255\n")
        assert len(blob) == len(b"P5\n16 16\n255\n") + 256
        body = blob[len(b"P5\n16 16\n255\n"):]
        # top-left pixel is column 0 at the highest x node
        assert body[0] == min(255, int(255.0 * vals[0, 15] + 0.5))

    def test_golden_csv_byte_exact(self):
        vals = cli.heatmap_values(16, 1)
        with open(GOLDEN_CSV, "rb") as fh:
            assert cli.heatmap_csv(vals, 16).encode() == fh.read()

    def test_cli_writes_both_files(self, tmp_path):
        out = tmp_path / "img.pgm"
        code = cli.main(["heatmap", "--grid", "16", "--iter", "1",
                         "--out", str(out)])
        assert code == 0
        assert (tmp_path / "img.pgm").exists()
        assert (tmp_path / "img.csv").exists()

    def test_small_grid_rejected(self, tmp_path):
        code = cli.main(["heatmap", "--grid", "8", "--iter", "1",
                         "--out", str(tmp_path / "x.pgm")])
        assert code == 2
        assert not (tmp_path / "x.pgm").exists()

    def test_variant_changes_values(self):
        # One step from a dyadic midpoint never lands on a branch boundary
        # (the boundaries have odd denominator), so k=1 grids agree; by the
        # second step some orbits hit a boundary exactly and the two digit
        # conventions resolve it to opposite sides.
        assert np.array_equal(cli.heatmap_values(16, 1, "minus"),
                              cli.heatmap_values(16, 1, "plus"))
        minus = cli.heatmap_values(16, 2, "minus")
        plus = cli.heatmap_values(16, 2, "plus")
        assert not np.array_equal(minus, plus)
