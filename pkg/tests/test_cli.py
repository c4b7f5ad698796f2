"""
Tests for the command-line interface and the MillService orchestrator.

Runs the subcommands end to end on a small configuration and checks the
artifacts and exit codes.
"""

import csv
import json
from pathlib import Path
from typing import Any

import pytest

from src.cli import run
from src.exceptions.mill_exceptions import ConstraintViolationError, DomainViolationError
from src.services.mill_service import MillService
from tests.conftest import R_STAR, write_config


def read_csv(path: Path) -> list[list[str]]:
    with open(path, encoding="utf-8", newline="") as handle:
        return list(csv.reader(handle))


class TestExitCodes:
    """Tests for subcommand exit codes."""

    def test_steady_success(self, config_file: Path, temp_dir: Path) -> None:
        """Test steady exits 0 and writes one row per node."""
        out = temp_dir / "out"

        code = run(["steady", "--config", str(config_file), "--out", str(out)])

        assert code == 0
        rows = read_csv(out / "steady.csv")
        assert rows[0] == ["r", "rho0", "g0", "vtheta0"]
        assert len(rows) == 18
        identities = json.loads((out / "identities.json").read_text(encoding="utf-8"))
        assert identities["p"] == 1.5
        assert identities["max_chemical_deviation"] == 0.0

    def test_constraint_violation(
        self,
        temp_dir: Path,
        config_payload: dict[str, Any],
        capsys: pytest.CaptureFixture[str],
    ) -> None:
        """Test C2 <= 0 exits 3 with the violated constraint on stderr."""
        config_payload["constants"]["c2"] = -1.0
        path = write_config(temp_dir, config_payload)

        code = run(["steady", "--config", str(path), "--out", str(temp_dir / "out")])

        assert code == 3
        assert "C₂ must be positive" in capsys.readouterr().err

    def test_missing_config(self, temp_dir: Path) -> None:
        """Test a missing config file exits 2."""
        assert run(["steady", "--config", str(temp_dir / "absent.json")]) == 2

    def test_malformed_config(self, temp_dir: Path) -> None:
        """Test invalid JSON exits 2."""
        path = temp_dir / "broken.json"
        path.write_text("{", encoding="utf-8")

        assert run(["steady", "--config", str(path)]) == 2

    def test_unknown_subcommand(self, config_file: Path) -> None:
        """Test an unknown subcommand exits 2."""
        assert run(["spin", "--config", str(config_file)]) == 2

    def test_missing_config_option(self) -> None:
        """Test --config is required."""
        assert run(["steady"]) == 2

    def test_invalid_jobs(self, config_file: Path) -> None:
        """Test --jobs 0 exits 2."""
        assert run(["fredholm", "--config", str(config_file), "--jobs", "0"]) == 2

    def test_negative_seed(self, config_file: Path, temp_dir: Path) -> None:
        """Test --seed -1 is rejected by the parser with exit 2 and nothing written."""
        out = temp_dir / "out"

        argv = ["stability", "--config", str(config_file), "--out", str(out), "--seed", "-1"]

        assert run(argv) == 2
        assert not out.exists()

    def test_non_positive_sweep_coupling(
        self, temp_dir: Path, config_payload: dict[str, Any]
    ) -> None:
        """Test a b_sweep entry <= 0 exits 3 before any stability table is written."""
        config_payload["stability"]["b_sweep"] = [-1.0, 1.0]
        path = write_config(temp_dir, config_payload)
        out = temp_dir / "out"

        assert run(["stability", "--config", str(path), "--out", str(out)]) == 3
        for name in ("spectrum.csv", "report.csv", "linearization.csv"):
            assert not (out / name).exists()

    def test_kernel_bias_out_of_range(
        self, temp_dir: Path, config_payload: dict[str, Any]
    ) -> None:
        """Test fredholm with J = 1 exits 3."""
        config_payload["fredholm"]["J"] = 1.0
        path = write_config(temp_dir, config_payload)

        assert run(["fredholm", "--config", str(path), "--out", str(temp_dir / "out")]) == 3

    def test_negative_time_step(self, temp_dir: Path, config_payload: dict[str, Any]) -> None:
        """Test evolve with dt < 0 exits 3."""
        config_payload["evolve"]["dt"] = -1e-3
        path = write_config(temp_dir, config_payload)

        assert run(["evolve", "--config", str(path), "--out", str(temp_dir / "out")]) == 3

    def test_blowup_writes_trajectory_then_fails(
        self, temp_dir: Path, config_payload: dict[str, Any]
    ) -> None:
        """Test a forced blow-up exits 4 with the last trajectory row flagged."""
        config_payload["evolve"] = {
            "dt": 1.0,
            "n_steps": 500,
            "scheme": "euler",
            "cfl_override": True,
        }
        path = write_config(temp_dir, config_payload)
        out = temp_dir / "out"

        code = run(["evolve", "--config", str(path), "--out", str(out)])

        assert code == 4
        rows = read_csv(out / "trajectory.csv")
        assert rows[0] == ["t", "deviation_norm", "blowup_flag"]
        assert rows[-1][1:] == ["nan", "1"]
        assert all(row[2] == "0" for row in rows[1:-1])


class TestArtifacts:
    """Tests for the files each subcommand writes."""

    def test_evolve_trajectory(self, config_file: Path, temp_dir: Path) -> None:
        """Test one record per step plus t = 0, no blow-up."""
        out = temp_dir / "out"

        assert run(["evolve", "--config", str(config_file), "--out", str(out)]) == 0

        rows = read_csv(out / "trajectory.csv")
        assert len(rows) == 22
        assert float(rows[1][0]) == 0.0
        assert float(rows[1][1]) > 0.0

    def test_stability_files(self, config_file: Path, temp_dir: Path) -> None:
        """Test spectrum, report and linearization tables."""
        out = temp_dir / "out"

        assert run(["stability", "--config", str(config_file), "--out", str(out)]) == 0

        report = read_csv(out / "report.csv")
        assert report[0] == [
            "n",
            "b",
            "dt",
            "norm_I_minus_dtM",
            "spectral_radius",
            "max_re_eig",
            "verdict",
        ]
        assert [(row[0], row[1]) for row in report[1:]] == [
            ("0", "1.0"),
            ("1", "1.0"),
            ("0", "10.0"),
            ("1", "10.0"),
        ]
        assert {row[6] for row in report[1:]} <= {"stable", "unstable", "marginal"}

        spectrum = read_csv(out / "spectrum.csv")
        assert spectrum[0] == ["n", "b", "eig_index", "re", "im"]
        assert len(spectrum) > 1

        linearization = read_csv(out / "linearization.csv")
        assert len(linearization) == 4
        assert all(row[1] == "0" for row in linearization[1:])

    def test_fredholm_files(self, config_file: Path, temp_dir: Path) -> None:
        """Test one scan row per (J, k) and one kernel row per J."""
        out = temp_dir / "out"

        assert run(["fredholm", "--config", str(config_file), "--out", str(out), "--jobs", "2"]) == 0

        scan = read_csv(out / "fredholm.csv")
        assert scan[0] == ["k", "J", "m", "sigma_min"]
        assert len(scan) == 7
        assert all(float(row[3]) > 0 for row in scan[1:])
        kernel = read_csv(out / "kernel.csv")
        assert [row[0] for row in kernel[1:]] == ["0.0", "0.5"]

    def test_all_is_reproducible(self, config_file: Path, temp_dir: Path) -> None:
        """Test two runs with the same seed give byte-identical artifacts."""
        first = temp_dir / "first"
        second = temp_dir / "second"

        assert run(["all", "--config", str(config_file), "--out", str(first), "--seed", "3"]) == 0
        assert run(["all", "--config", str(config_file), "--out", str(second), "--seed", "3"]) == 0

        names = sorted(path.name for path in first.iterdir())
        assert names == [
            "fredholm.csv",
            "identities.json",
            "kernel.csv",
            "linearization.csv",
            "report.csv",
            "spectrum.csv",
            "steady.csv",
            "trajectory.csv",
        ]
        for name in names:
            assert (first / name).read_bytes() == (second / name).read_bytes()

    def test_output_dir_from_config(self, temp_dir: Path, config_payload: dict[str, Any]) -> None:
        """Test output_dir is used when --out is omitted."""
        config_payload["output_dir"] = str(temp_dir / "from_config")
        path = write_config(temp_dir, config_payload)

        assert run(["steady", "--config", str(path)]) == 0
        assert (temp_dir / "from_config" / "steady.csv").is_file()


class TestMillService:
    """Tests for MillService setup."""

    def test_prepare_with_fraction(
        self, mill_service: MillService, config_file: Path
    ) -> None:
        """Test r_b_fraction scales the admissible radius."""
        setup = mill_service.prepare(mill_service.load_config(str(config_file)))

        assert setup.r_star == pytest.approx(R_STAR)
        assert setup.grid.r_b == pytest.approx(0.9 * R_STAR)
        assert setup.grid.n == 17
        assert setup.constants.p == 1.5

    def test_prepare_with_absolute_radius(
        self, mill_service: MillService, temp_dir: Path, config_payload: dict[str, Any]
    ) -> None:
        """Test an absolute r_b is used as given."""
        del config_payload["grid"]["r_b_fraction"]
        config_payload["grid"]["r_b"] = 1.4
        config = mill_service.load_config(str(write_config(temp_dir, config_payload)))

        assert mill_service.prepare(config).grid.r_b == 1.4

    def test_outer_radius_beyond_admissible(
        self, mill_service: MillService, temp_dir: Path, config_payload: dict[str, Any]
    ) -> None:
        """Test steady with r_b >= r* raises DomainViolationError."""
        del config_payload["grid"]["r_b_fraction"]
        config_payload["grid"]["r_b"] = 1.6
        config = mill_service.load_config(str(write_config(temp_dir, config_payload)))

        with pytest.raises(DomainViolationError):
            mill_service.run_steady(config, str(temp_dir / "out"))

    def test_stability_summary(
        self, mill_service: MillService, config_file: Path, temp_dir: Path
    ) -> None:
        """Test the summary counts every (b, n) cell and reports the linearization error."""
        config = mill_service.load_config(str(config_file))

        summary = mill_service.run_stability(config, str(temp_dir / "out"), seed=1)

        assert summary["cells"] == 4
        assert summary["max_linearization_error"] >= 0.0
        assert set(summary["stable_b"]) <= {1.0, 10.0}

    def test_sweep_coupling_violations_name_each_value(
        self, mill_service: MillService, temp_dir: Path, config_payload: dict[str, Any]
    ) -> None:
        """Test every non-positive b_sweep entry is listed in the violation."""
        config_payload["stability"]["b_sweep"] = [0.0, 1.0, -2.5]
        config = mill_service.load_config(str(write_config(temp_dir, config_payload)))

        with pytest.raises(ConstraintViolationError) as exc_info:
            mill_service.run_stability(config, str(temp_dir / "out"))

        message = str(exc_info.value)
        assert "b_sweep value 0.0" in message
        assert "b_sweep value -2.5" in message
        assert "b_sweep value 1.0" not in message
