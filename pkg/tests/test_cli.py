"""Tests for CLI functionality."""

import json
import sys
from unittest.mock import Mock, patch

import pandas as pd
import pytest

from latticewitt.cli import classify_module, cover, lattice_check, main, verify
from latticewitt.verification import VerificationEngine


def _verify_args(**overrides):
    args = Mock()
    args.embedding = None
    args.suite = "mc"
    args.trials = 2
    args.seed = 7
    args.radius = 1
    args.order = None
    args.out = None
    args.csv = None
    for key, value in overrides.items():
        setattr(args, key, value)
    return args


class TestLatticeCheck:
    """Tests for the lattice-check command."""

    def test_demo_passes(self, capsys):
        """Test that the demo lattice passes every condition."""
        args = Mock()
        args.embedding = None
        args.radius = 3
        args.out = None

        lattice_check(args)

        output = capsys.readouterr().out
        assert "injective" in output

    def test_failing_embedding(self, failing_config_file):
        """Test exit code 1 when a condition fails."""
        args = Mock()
        args.embedding = str(failing_config_file)
        args.radius = 3
        args.out = None

        with pytest.raises(SystemExit) as excinfo:
            lattice_check(args)
        assert excinfo.value.code == 1

    def test_writes_report(self, demo_config_file, temp_dir):
        """Test that the report is written when --out is given."""
        out = temp_dir / "check.json"
        args = Mock()
        args.embedding = str(demo_config_file)
        args.radius = 2
        args.out = str(out)

        lattice_check(args)

        data = json.loads(out.read_text())
        assert data["embedding"]["rank"] == 2
        assert data["results"]

    def test_missing_config(self, temp_dir):
        """Test exit code 2 for a missing config file."""
        args = Mock()
        args.embedding = str(temp_dir / "missing.json")
        args.radius = 3
        args.out = None

        with pytest.raises(SystemExit) as excinfo:
            lattice_check(args)
        assert excinfo.value.code == 2


class TestVerify:
    """Tests for the verify command."""

    def test_suite_passes(self, capsys):
        """Test a passing suite on the demo lattice."""
        verify(_verify_args())
        assert "mc: pass (2/2)" in capsys.readouterr().out

    def test_out_and_csv(self, temp_dir):
        """Test the JSON report and CSV export."""
        out, csv = temp_dir / "mc.json", temp_dir / "mc.csv"
        verify(_verify_args(out=str(out), csv=str(csv)))
        assert json.loads(out.read_text())["suite"] == "mc"
        assert len(pd.read_csv(csv)) == 2

    def test_failing_suite(self):
        """Test exit code 1 when a trial fails."""
        args = _verify_args(suite="omega-annihilate", order=1, trials=3, seed=2)
        with pytest.raises(SystemExit) as excinfo:
            verify(args)
        assert excinfo.value.code == 1

    def test_invalid_trials(self):
        """Test exit code 2 for a run config that fails validation."""
        with pytest.raises(SystemExit) as excinfo:
            verify(_verify_args(trials=0))
        assert excinfo.value.code == 2

    def test_unknown_suite(self):
        """Test exit code 2 for an unknown suite."""
        with pytest.raises(SystemExit) as excinfo:
            verify(_verify_args(suite="nonsense"))
        assert excinfo.value.code == 2

    def test_computation_error_propagates(self):
        """Test that a ValueError from a suite is not reported as a usage error."""
        with patch.object(VerificationEngine, "run_many", side_effect=ValueError("bad order")):
            with pytest.raises(ValueError, match="bad order"):
                verify(_verify_args())


class TestClassify:
    """Tests for the classify command."""

    def test_m2(self, m2_config_file, temp_dir, capsys):
        """Test classifying M^2 and writing the report."""
        out = temp_dir / "classify.json"
        args = Mock()
        args.module = str(m2_config_file)
        args.embedding = None
        args.out = str(out)

        classify_module(args)

        output = capsys.readouterr().out
        assert "case: Mn" in output
        assert "n: 2" in output
        assert json.loads(out.read_text())["gamma_base"] == ["1/3", "1/7+2/5i"]

    def test_symbol_slice(self, sgamma_config_file, capsys):
        """Test classifying S_Gamma on a generic coset."""
        args = Mock()
        args.module = str(sgamma_config_file)
        args.embedding = None
        args.out = None

        classify_module(args)

        assert "case: SGammaIrreducible" in capsys.readouterr().out

    def test_bad_module_config(self, temp_dir):
        """Test exit code 2 for a malformed module config."""
        path = temp_dir / "module.json"
        path.write_text("[]")
        args = Mock()
        args.module = str(path)
        args.embedding = None
        args.out = None

        with pytest.raises(SystemExit) as excinfo:
            classify_module(args)
        assert excinfo.value.code == 2


class TestCover:
    """Tests for the cover command."""

    def test_symbol_slice(self, sgamma_config_file, temp_dir, capsys):
        """Test the audit of S_Gamma with CSV export."""
        csv = temp_dir / "cover.csv"
        args = Mock()
        args.module = str(sgamma_config_file)
        args.embedding = None
        args.radius = 1
        args.order = 3
        args.probe_annihilator = False
        args.out = None
        args.csv = str(csv)

        cover(args)

        assert "rank 2 <= 9" in capsys.readouterr().out
        assert len(pd.read_csv(csv)) == 9


class TestMain:
    """Tests for the argument parser."""

    def test_no_command(self):
        """Test that no command prints help and exits 2."""
        with patch.object(sys, "argv", ["latticewitt"]):
            with pytest.raises(SystemExit) as excinfo:
                main()
        assert excinfo.value.code == 2

    def test_unknown_suite_rejected_by_parser(self):
        """Test that argparse rejects a suite outside the choices."""
        with patch.object(sys, "argv", ["latticewitt", "verify", "--suite", "nonsense"]):
            with pytest.raises(SystemExit) as excinfo:
                main()
        assert excinfo.value.code == 2

    def test_dispatch_verify(self, capsys):
        """Test that the verify subcommand runs a suite."""
        argv = ["latticewitt", "verify", "--suite", "jacobi", "--trials", "1", "--radius", "1"]
        with patch.object(sys, "argv", argv):
            main()
        assert "jacobi: pass (1/1)" in capsys.readouterr().out
