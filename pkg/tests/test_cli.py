"""CLI: parsing, precedence, output formats, exit statuses."""

import csv
import json
import os

import pytest

from steanesim import cli


def run_cli(args):
    return cli.main(args)


def test_usage_error_bad_grid(capsys):
    rc = run_cli(["crash-rate", "--gamma-min", "0.2", "--gamma-max", "0.1"])
    assert rc == cli.EXIT_USAGE
    assert "gamma" in capsys.readouterr().err


def test_usage_error_unknown_config_key(tmp_path, capsys):
    cfgf = tmp_path / "run.cfg"
    cfgf.write_text("flavor = chocolate\n")
    rc = run_cli(["crash-rate", "--config", str(cfgf)])
    assert rc == cli.EXIT_USAGE
    assert "flavor" in capsys.readouterr().err


def test_config_precedence(tmp_path):
    cfgf = tmp_path / "run.cfg"
    cfgf.write_text("scheme = steane\ntrials = 7\nseed = 5\n")

    class Args:
        command = "crash-rate"
        config = str(cfgf)
        scheme = "reject"  # flag wins
        checks = None
        gamma = None
        gamma_min = None
        gamma_max = None
        points = None
        trials = None
        rounds = None
        burnin = None
        seed = None
        pool_cap = None
        budget = None
        workers = None
        output = None
        format = None
        ancilla_stats = None

    cfg = cli.resolve_config(Args())
    assert cfg["scheme"] == "reject"
    assert cfg["trials"] == 7
    assert cfg["seed"] == 5


def test_csv_and_json_encode_same_data(tmp_path):
    out_csv = tmp_path / "r.csv"
    out_json = tmp_path / "r.json"
    base = ["crash-rate", "--scheme", "reject", "--gamma", "0,0.001",
            "--trials", "30", "--rounds", "5", "--seed", "2"]
    assert run_cli(base + ["-o", str(out_csv)]) == 0
    assert run_cli(base + ["-o", str(out_json), "--format", "json"]) == 0
    with open(out_csv) as fh:
        rows = list(csv.DictReader(fh))
    data = json.loads(out_json.read_text())
    assert data["columns"] == cli.SWEEP_COLUMNS
    assert len(rows) == len(data["rows"]) == 2
    for r_csv, r_json in zip(rows, data["rows"]):
        assert float(r_csv["crash_rate"]) == r_json["crash_rate"]
        assert int(r_csv["crashes"]) == r_json["crashes"]


def test_no_partial_output_files(tmp_path):
    out = tmp_path / "x.csv"
    run_cli(["crash-rate", "--gamma", "0", "--trials", "5", "--rounds", "4",
             "-o", str(out)])
    assert out.exists()
    assert not [p for p in os.listdir(tmp_path) if p.startswith(".tmp-")]


def test_outdir_env_override(tmp_path, monkeypatch):
    monkeypatch.setenv("STEANESIM_OUTDIR", str(tmp_path))
    run_cli(["crash-rate", "--gamma", "0", "--trials", "5", "--rounds", "4",
             "-o", "rel.csv"])
    assert (tmp_path / "rel.csv").exists()


def test_threshold_summary(capsys):
    # Small grid far below threshold: explicit no-crossing, still exit 0.
    rc = run_cli(["threshold", "--scheme", "reject", "--gamma", "1e-4,3e-4",
                  "--trials", "50", "--rounds", "5", "--seed", "3"])
    assert rc == 0
    assert "no-crossing" in capsys.readouterr().out


def test_ancilla_stats_columns(tmp_path):
    out = tmp_path / "a.csv"
    run_cli(["crash-rate", "--scheme", "reject", "--gamma", "0.001",
             "--trials", "50", "--rounds", "5", "--ancilla-stats",
             "-o", str(out)])
    with open(out) as fh:
        header = fh.readline().strip().split(",")
    assert header == cli.SWEEP_COLUMNS + cli.ANCILLA_COLUMNS


def test_budget_exhaustion_exit_code(monkeypatch):
    from steanesim.ancilla import ResourceExhausted

    def boom(*a, **k):
        raise ResourceExhausted("budget spent")

    import steanesim.harness as harness

    monkeypatch.setattr(harness, "run_sweep", boom)
    assert run_cli(["crash-rate", "--gamma", "0.1", "--trials", "5"]) == cli.EXIT_BUDGET


def test_decoder_audit(capsys):
    rc = run_cli(["decoder-audit"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "weight<=2 exhaustive: PASS" in out
    assert "hierarchical weight-4 witness: PASS" in out
