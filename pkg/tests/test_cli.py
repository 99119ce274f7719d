"""End-to-end command-line checks: exit codes, JSON output, CSV curves."""

import json
import math

import numpy as np
import pytest

from shotbudget import cli
from shotbudget import montecarlo as mc
from shotbudget.montecarlo import McResult


def _write_pure(path, amplitudes):
    data = [[z.real, z.imag] for z in np.asarray(amplitudes, dtype=complex)]
    path.write_text(json.dumps({"kind": "pure", "n": 1, "data": data}))


def _write_density(path, matrix):
    flat = np.asarray(matrix, dtype=complex).reshape(-1)
    data = [[z.real, z.imag] for z in flat]
    path.write_text(json.dumps({"kind": "density", "n": 1, "data": data}))


@pytest.fixture()
def state_files(tmp_path):
    zero = tmp_path / "zero.json"
    one = tmp_path / "one.json"
    plus = tmp_path / "plus.json"
    mixed = tmp_path / "mixed.json"
    _write_pure(zero, [1.0, 0.0])
    _write_pure(one, [0.0, 1.0])
    _write_pure(plus, np.array([1.0, 1.0]) / math.sqrt(2.0))
    _write_density(mixed, [[0.7, 0.1 + 0.05j], [0.1 - 0.05j, 0.3]])
    return {"zero": str(zero), "one": str(one), "plus": str(plus), "mixed": str(mixed)}


@pytest.fixture()
def dist_files(tmp_path):
    p = tmp_path / "p.json"
    q = tmp_path / "q.json"
    p.write_text(json.dumps([0.3, 0.3, 0.2, 0.2]))
    q.write_text(json.dumps([0.25, 0.25, 0.25, 0.25]))
    return {"p": str(p), "q": str(q)}


@pytest.fixture()
def spec_file(tmp_path):
    spec = {
        "fidelity_target": 0.99,
        "p_e": 0.05,
        "regime_factor": 1.0,
        "hardware": {"r1": 1e-7, "r2": 5e-7, "gamma": 0.0},
        "blocks": [
            {"name": "A", "multiplicity": 10, "g1": 5, "g2": 2},
            {"name": "B", "multiplicity": 100, "g1": 1, "g2": 1},
        ],
    }
    path = tmp_path / "prog.json"
    path.write_text(json.dumps(spec))
    return str(path)


class TestShots:
    def test_fidelity_table(self, capsys):
        assert cli.main(["shots", "--fidelity", "0.999", "--pe", "0.01"]) == 0
        out = capsys.readouterr().out
        assert "inverse" in out and "4603" in out

    def test_fidelity_json(self, capsys):
        assert cli.main(["shots", "--fidelity", "0.99", "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        rows = {row["formula"]: row for row in doc["estimates"]}
        assert rows["inverse_ideal"]["shots"] == 299

    def test_trace_distance_mode(self, capsys):
        assert cli.main(["shots", "--trace-distance", "0.1", "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert any(row["formula"].startswith("trace") for row in doc["estimates"])

    def test_both_inputs_rejected(self, capsys):
        assert cli.main(["shots", "--fidelity", "0.9", "--trace-distance", "0.1"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_missing_inputs_rejected(self):
        assert cli.main(["shots"]) == 2

    def test_degenerate_fidelity_exit_code(self, capsys):
        assert cli.main(["shots", "--fidelity", "1.0"]) == 3
        assert "degenerate" in capsys.readouterr().err


class TestQcb:
    def test_pure_pair_report(self, state_files, capsys):
        code = cli.main(["qcb", state_files["zero"], state_files["plus"], "--json"])
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["q"] == pytest.approx(0.5)
        assert doc["fidelity"] == pytest.approx(0.5)

    def test_orthogonal_pair_single_shot(self, state_files, capsys):
        code = cli.main(
            ["qcb", state_files["zero"], state_files["one"], "--pe", "0.01", "--json"]
        )
        captured = capsys.readouterr()
        assert code == 0
        doc = json.loads(captured.out)
        assert doc["q"] == 0.0
        assert doc["shots"]["shots"] == 1
        assert "orthogonal" in captured.err

    def test_identical_pair_degenerate(self, state_files, capsys):
        code = cli.main(
            ["qcb", state_files["zero"], state_files["zero"], "--pe", "0.01"]
        )
        assert code == 3
        assert "indistinguishable" in capsys.readouterr().err

    def test_pure_mixed_pair(self, state_files, capsys):
        code = cli.main(["qcb", state_files["plus"], state_files["mixed"], "--json"])
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert 0.0 < doc["q"] < 1.0
        assert doc["q_bounds_from_fidelity"][0] <= doc["q"] + 1e-12

    def test_missing_file(self, tmp_path):
        assert cli.main(["qcb", str(tmp_path / "absent.json"), str(tmp_path / "b.json")]) == 2


class TestChisq:
    def test_w2_source(self, capsys):
        assert cli.main(["chisq", "--w2", "1e-4", "--bins", "16", "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["w2"] == 1e-4
        assert doc["shots"] > 0

    def test_fidelity_cases_differ(self, capsys):
        assert cli.main(["chisq", "--fidelity", "0.99", "--case", "small", "--json"]) == 0
        small = json.loads(capsys.readouterr().out)
        assert cli.main(["chisq", "--fidelity", "0.99", "--case", "attaining", "--json"]) == 0
        attaining = json.loads(capsys.readouterr().out)
        assert attaining["shots"] > small["shots"]

    def test_distribution_source_sets_bins_from_data(self, dist_files, capsys):
        code = cli.main(["chisq", "--p", dist_files["p"], "--q", dist_files["q"], "--json"])
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["bins"] == 4

    def test_conflicting_sources_rejected(self):
        assert cli.main(["chisq", "--w2", "1e-4", "--fidelity", "0.99"]) == 2

    def test_no_source_rejected(self):
        assert cli.main(["chisq"]) == 2


class TestNoise:
    def test_plan(self, capsys):
        code = cli.main(["noise", "plan", "--q0", "1.0", "--q1", "0.99", "--json"])
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["shots"] == 2149

    def test_plan_needs_q1(self):
        assert cli.main(["noise", "plan", "--q0", "1.0"]) == 2

    def test_decide_reject(self, capsys):
        code = cli.main(
            ["noise", "decide", "--q0", "0.999", "--zeros", "10", "--shots", "1000"]
        )
        assert code == 0
        assert "REJECT" in capsys.readouterr().out

    def test_decide_no_reject(self, capsys):
        code = cli.main(
            ["noise", "decide", "--q0", "0.999", "--zeros", "999", "--shots", "1000"]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "no reject" in out


class TestBudget:
    def test_table(self, spec_file, capsys):
        assert cli.main(["budget", "--spec", spec_file]) == 0
        out = capsys.readouterr().out
        assert "A" in out and "total" in out

    def test_json(self, spec_file, capsys):
        assert cli.main(["budget", "--spec", spec_file, "--out", "json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert len(doc["blocks"]) == 2
        total = sum(b["multiplicity"] * b["theta"] for b in doc["blocks"])
        assert total == pytest.approx(doc["theta_star"], abs=1e-9)

    def test_csv(self, spec_file, capsys):
        assert cli.main(["budget", "--spec", spec_file, "--out", "csv"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0].startswith("name,")
        assert len(lines) == 3

    def test_strict_flags_infeasible(self, tmp_path, capsys):
        spec = {
            "fidelity_target": 0.99999999,
            "p_e": 0.05,
            "regime_factor": 1.0,
            "hardware": {"r1": 1e-11, "r2": 1e-10, "gamma": 0.0},
            "blocks": [{"name": "huge", "multiplicity": 100_000, "g1": 1, "g2": 0}],
        }
        path = tmp_path / "infeasible.json"
        path.write_text(json.dumps(spec))
        assert cli.main(["budget", "--spec", str(path)]) == 0
        capsys.readouterr()
        assert cli.main(["budget", "--spec", str(path), "--strict"]) == 1
        assert "infeasible" in capsys.readouterr().err

    def test_malformed_spec(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"p_e": 0.05}))
        assert cli.main(["budget", "--spec", str(path)]) == 2


class TestValidate:
    def test_inverse_pass(self, capsys):
        code = cli.main(
            [
                "validate", "--scenario", "inverse", "--fidelity", "0.99",
                "--shots", "458", "--trials", "20000", "--seed", "7",
            ]
        )
        assert code == 0
        assert "PASS" in capsys.readouterr().out

    def test_binomial_json(self, capsys):
        code = cli.main(
            [
                "validate", "--scenario", "binomial", "--q0", "1.0", "--q1", "0.5",
                "--shots", "1", "--trials", "20000", "--json",
            ]
        )
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["pass"] is True
        assert doc["expected"] == pytest.approx(0.5)

    def test_biased_estimate_fails(self, monkeypatch, capsys):
        def biased(fid, shots, config):
            return McResult(
                estimate=0.5, std_error=0.0, trials=config.trials,
                ci_low=0.5, ci_high=0.5, warnings=(),
            )

        monkeypatch.setattr(mc, "simulate_inverse_miss_rate", biased)
        code = cli.main(
            [
                "validate", "--scenario", "inverse", "--fidelity", "0.99",
                "--shots", "458", "--trials", "1000",
            ]
        )
        assert code == 1
        assert "FAIL" in capsys.readouterr().out

    def test_missing_scenario_arguments(self):
        assert cli.main(["validate", "--scenario", "inverse"]) == 2


class TestCurve:
    def _rows(self, capsys):
        lines = capsys.readouterr().out.strip().splitlines()
        header = lines[0].split(",")
        return header, [line.split(",") for line in lines[1:]]

    def test_fid_vs_shots(self, capsys):
        assert cli.main(["curve", "fid_vs_shots", "--points", "5"]) == 0
        header, rows = self._rows(capsys)
        assert header[:2] == ["F", "one_minus_F"]
        assert len(rows) == 5
        shots = [int(r[header.index("n_pure")]) for r in rows]
        assert shots == sorted(shots)

    def test_test_comparison(self, capsys):
        code = cli.main(
            ["curve", "test_comparison", "--points", "3", "--bins", "4,16"]
        )
        assert code == 0
        header, rows = self._rows(capsys)
        assert "n_chisq_attaining_k16" in header
        assert len(rows) == 3

    def test_noise_binomial(self, capsys):
        code = cli.main(
            ["curve", "noise_binomial", "--points", "4", "--q1", "0.90,0.99"]
        )
        assert code == 0
        header, rows = self._rows(capsys)
        assert "n_binomial_q1_0.99" in header
        assert len(rows) == 4

    def test_trace_vs_shots(self, capsys):
        assert cli.main(["curve", "trace_vs_shots", "--points", "4"]) == 0
        header, rows = self._rows(capsys)
        # the conservative pure-vs-mixed column collapses onto the pure one
        i_pure = header.index("n_pure")
        i_hi = header.index("n_pm_hi")
        for row in rows:
            assert row[i_hi] == row[i_pure]

    def test_bad_range_rejected(self):
        assert cli.main(["curve", "fid_vs_shots", "--start", "0.9", "--stop", "0.1"]) == 2

    def test_unknown_curve_is_usage_error(self):
        with pytest.raises(SystemExit) as info:
            cli.main(["curve", "nonsense"])
        assert info.value.code == 2
