import json
import math

import numpy as np
import pytest

from crowdist.cli import main
from crowdist.io import read_population_csv, write_population_csv
from crowdist.maximin import optimal_placement
from crowdist.population import Population


def run_cli(*argv):
    return main(list(argv))


class TestCmdRun:
    def test_population_row_count(self, tmp_path):
        code = run_cli("run", "--problem", "linefront", "--scheme", "mu1",
                       "--pop", "7", "--offspring", "200", "--seed", "0",
                       "--out", str(tmp_path))
        assert code == 0
        csv_path = tmp_path / "linefront_mu1_pop7_seed0.csv"
        pop, manifest = read_population_csv(csv_path)
        assert len(pop) == 7
        assert manifest["seed"] == "0"
        assert manifest["problem"] == "linefront"

    def test_reruns_are_byte_identical(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        for out in (a, b):
            run_cli("run", "--problem", "dtlz1", "--nvar", "6", "--nobj", "2",
                    "--scheme", "mumu", "--pop", "5", "--gens", "50",
                    "--seed", "3", "--out", str(out))
        name = "dtlz1_mumu_pop5_seed3.csv"
        assert (a / name).read_bytes() == (b / name).read_bytes()
        metrics = "dtlz1_mumu_pop5_seed3_metrics.json"
        assert (a / metrics).read_bytes() == (b / metrics).read_bytes()

    def test_metrics_json_keys(self, tmp_path):
        run_cli("run", "--problem", "linefront", "--scheme", "mu1", "--pop", "7",
                "--offspring", "500", "--seed", "1", "--out", str(tmp_path))
        payload = json.loads((tmp_path / "linefront_mu1_pop7_seed1_metrics.json").read_text())
        for key in ("manifest", "min_finite_cd", "gap_cv", "dup_at_extremes",
                    "excluded_off_front", "cd_histogram", "snapshots"):
            assert key in payload
        assert payload["manifest"]["offspring"] == 500

    def test_missing_budget_is_usage_error(self, tmp_path, capsys):
        code = run_cli("run", "--problem", "linefront", "--out", str(tmp_path))
        assert code == 2
        assert "budget" in capsys.readouterr().err

    def test_env_var_output_dir(self, tmp_path, monkeypatch):
        monkeypatch.setenv("CROWDIST_OUT", str(tmp_path / "envout"))
        run_cli("run", "--problem", "linefront", "--scheme", "mu1", "--pop", "5",
                "--offspring", "50", "--seed", "0")
        assert (tmp_path / "envout" / "linefront_mu1_pop5_seed0.csv").exists()

    def test_config_file_with_flag_override(self, tmp_path):
        config = tmp_path / "run.cfg"
        config.write_text(
            "# experiment defaults\n"
            "problem=linefront\n"
            "scheme=mu1\n"
            "pop=6\n"
            "offspring=100\n"
            "seed=5\n"
        )
        code = run_cli("run", "--config", str(config), "--pop", "8",
                       "--out", str(tmp_path))
        assert code == 0
        # pop came from the flag, everything else from the file
        assert (tmp_path / "linefront_mu1_pop8_seed5.csv").exists()

    def test_config_file_unknown_key(self, tmp_path, capsys):
        config = tmp_path / "run.cfg"
        config.write_text("nonsense=1\n")
        code = run_cli("run", "--config", str(config), "--out", str(tmp_path))
        assert code == 2
        assert "unknown keys" in capsys.readouterr().err


class TestCmdSweep:
    def test_aggregate_reports_uniform_fraction(self, tmp_path):
        code = run_cli("sweep", "--problem", "linefront", "--scheme", "mu1",
                       "--pop", "7", "--offspring", "2000", "--runs", "3",
                       "--seed", "0", "--out", str(tmp_path))
        assert code == 0
        payload = json.loads((tmp_path / "linefront_pop7_sweep_aggregate.json").read_text())
        assert payload["runs"] == 3
        summary = payload["summary"]["mu-plus-one"]
        assert 0 <= summary["uniform_runs"] <= 3
        assert set(payload["per_seed"]) == {"0", "1", "2"}

    def test_single_seed_sweep_matches_run(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        run_cli("sweep", "--problem", "linefront", "--scheme", "mu1", "--pop", "6",
                "--offspring", "100", "--runs", "1", "--seed", "4", "--out", str(a))
        run_cli("run", "--problem", "linefront", "--scheme", "mu1", "--pop", "6",
                "--offspring", "100", "--seed", "4", "--out", str(b))
        name = "linefront_mu1_pop6_seed4.csv"
        assert (a / name).read_bytes() == (b / name).read_bytes()

    def test_paired_sweep_comparison_table(self, tmp_path):
        code = run_cli("sweep", "--problem", "linefront", "--pop", "6",
                       "--evals", "3000", "--runs", "2", "--paired",
                       "--out", str(tmp_path))
        assert code == 0
        payload = json.loads((tmp_path / "linefront_pop6_sweep_aggregate.json").read_text())
        paired = payload["summary"]["paired"]
        assert len(paired["table"]) == 2
        assert {row["seed"] for row in paired["table"]} == {0, 1}
        assert 0 <= paired["mu_plus_one_lower_cv_seeds"] <= 2

    def test_parallel_jobs_identical_to_serial(self, tmp_path):
        a, b = tmp_path / "serial", tmp_path / "parallel"
        for out, jobs in ((a, "1"), (b, "2")):
            run_cli("sweep", "--problem", "linefront", "--scheme", "mu1",
                    "--pop", "5", "--offspring", "200", "--runs", "2",
                    "--jobs", jobs, "--out", str(out))
        for name in ("linefront_mu1_pop5_seed0.csv", "linefront_mu1_pop5_seed1.csv",
                     "linefront_pop5_sweep_aggregate.json"):
            assert (a / name).read_bytes() == (b / name).read_bytes()


class TestCmdMaximin:
    def test_closed_form_six(self, capsys):
        assert run_cli("maximin", "--n", "6") == 0
        out = capsys.readouterr().out
        assert "value: 1.0" in out
        assert "witness_interior: [0.0, 0.5, 0.5, 1.0]" in out
        assert "uniqueness: unique" in out

    def test_continuum_three(self, capsys):
        assert run_cli("maximin", "--n", "3") == 0
        out = capsys.readouterr().out
        assert "value: 2.0" in out
        assert "uniqueness: continuum" in out

    def test_grid_method_close_to_closed_form(self, capsys):
        assert run_cli("maximin", "--n", "8", "--method", "grid",
                       "--resolution", "0.01") == 0
        out = capsys.readouterr().out
        value = float(out.split("value: ")[1].splitlines()[0])
        assert abs(value - 2 / 3) <= 0.04

    def test_bisect_method(self, capsys):
        assert run_cli("maximin", "--n", "5", "--method", "bisect") == 0
        out = capsys.readouterr().out
        value = float(out.split("value: ")[1].splitlines()[0])
        assert value == pytest.approx(1.0, abs=1e-9)

    def test_too_small_n(self, capsys):
        assert run_cli("maximin", "--n", "2") == 2

    def test_json_output(self, tmp_path, capsys):
        out_path = tmp_path / "maximin.json"
        run_cli("maximin", "--n", "4", "--out", str(out_path))
        payload = json.loads(out_path.read_text())
        assert payload["value"] == 2.0
        assert payload["witness_interior"] == [0.0, 1.0]


class TestCmdAnalyze:
    def _write_placement_csv(self, path, ts, manifest=None):
        ts = np.asarray(ts, dtype=float)
        pop = Population(
            decisions=ts[:, None],
            objectives=np.column_stack([ts, 1.0 - ts]),
            ranks=np.zeros(len(ts), dtype=np.int64),
            crowding=np.zeros(len(ts)),
        )
        write_population_csv(path, pop, manifest or {"problem": "linefront"})

    def test_optimal_eight_placement(self, tmp_path):
        csv_path = tmp_path / "opt8.csv"
        interior = optimal_placement(8).witness.interior
        self._write_placement_csv(csv_path, [0.0, *interior, 1.0])
        out_path = tmp_path / "report.json"
        assert run_cli("analyze", str(csv_path), "--out", str(out_path)) == 0
        payload = json.loads(out_path.read_text())
        assert payload["is_optimal"] is True
        assert payload["min_finite_cd"] == pytest.approx(2 / 3)

    def test_uniform_six_not_optimal(self, tmp_path):
        csv_path = tmp_path / "uni6.csv"
        self._write_placement_csv(csv_path, [0, 0.2, 0.4, 0.6, 0.8, 1.0])
        out_path = tmp_path / "report.json"
        run_cli("analyze", str(csv_path), "--out", str(out_path))
        payload = json.loads(out_path.read_text())
        assert payload["is_optimal"] is False
        assert payload["min_finite_cd"] == pytest.approx(0.8)

    def test_inf_token_round_trips(self, tmp_path):
        csv_path = tmp_path / "inf.csv"
        pop = Population(
            decisions=np.array([[0.0], [0.5], [1.0]]),
            objectives=np.array([[0.0, 1.0], [0.5, 0.5], [1.0, 0.0]]),
            ranks=np.zeros(3, dtype=np.int64),
            crowding=np.array([math.inf, 2.0, math.inf]),
        )
        write_population_csv(csv_path, pop, {"problem": "linefront"})
        loaded, _ = read_population_csv(csv_path)
        assert math.isinf(loaded.crowding[0])
        assert run_cli("analyze", str(csv_path), "--out", str(tmp_path / "m.json")) == 0

    def test_malformed_csv_exit_code(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("id,x1,f1,f2,rank,crowding\n0,1,2\n")
        assert run_cli("analyze", str(bad)) == 2
        assert "line 2" in capsys.readouterr().err

    def test_missing_file_is_io_error(self, tmp_path):
        assert run_cli("analyze", str(tmp_path / "nope.csv")) == 3


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["run", "--problem", "not-a-problem", "--gens", "1"])
    assert exc.value.code == 2
