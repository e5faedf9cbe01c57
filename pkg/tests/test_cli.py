"""CLI surface: flags, reports, exit codes."""

import json
import subprocess
import sys

import pytest

from spacefortress.cli import main


def run_cli(args):
    return main(args)


def test_simulate_noop_rows(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = run_cli(["simulate", "--agent", "noop", "-n", "3", "--seed", "5",
                    "--episode-seconds", "2", "--out", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert len(report["rows"]) == 3
    assert all(r["missiles"] == 0 for r in report["rows"])
    agg = report["aggregates"]
    assert agg["Fortress Death"] == 0.0
    captured = capsys.readouterr().out
    assert "Avg. Score" in captured


def test_simulate_seed_determinism(tmp_path):
    outs = []
    for name in ("a.json", "b.json"):
        out = tmp_path / name
        code = run_cli(["simulate", "--agent", "random", "--game", "youturn",
                        "-n", "2", "--seed", "42", "--episode-seconds", "2",
                        "--out", str(out)])
        assert code == 0
        outs.append(json.loads(out.read_text()))
    assert outs[0]["rows"] == outs[1]["rows"]


def test_sf_seed_env_fallback(tmp_path, monkeypatch):
    monkeypatch.setenv("SF_SEED", "77")
    out = tmp_path / "r.json"
    code = run_cli(["simulate", "--agent", "noop", "-n", "1",
                    "--episode-seconds", "1", "--out", str(out)])
    assert code == 0
    assert json.loads(out.read_text())["rows"][0]["seed"] == 77


def test_record_and_replay_round_trip(tmp_path):
    rec = tmp_path / "logs"
    code = run_cli(["simulate", "--agent", "oracle", "-n", "1", "--seed", "9",
                    "--episode-seconds", "2", "--record", str(rec)])
    assert code == 0
    logs = list(rec.iterdir())
    assert len(logs) == 1
    assert run_cli(["replay", str(logs[0])]) == 0


def test_replay_divergence_exit_code(tmp_path):
    rec = tmp_path / "logs"
    run_cli(["simulate", "--agent", "oracle", "-n", "1", "--seed", "9",
             "--episode-seconds", "2", "--record", str(rec)])
    path = next(iter(rec.iterdir()))
    lines = path.read_text().splitlines()
    rec_obj = json.loads(lines[10])
    rec_obj["r"] += 0.5
    lines[10] = json.dumps(rec_obj)
    path.write_text("\n".join(lines) + "\n")
    assert run_cli(["replay", str(path)]) == 3


def test_config_file_applies(tmp_path):
    cfg = tmp_path / "sim.cfg"
    cfg.write_text("episode_seconds=1\ngame_version=youturn  # comment\n")
    out = tmp_path / "r.json"
    code = run_cli(["simulate", "--agent", "noop", "-n", "1", "--seed", "1",
                    "--config", str(cfg), "--out", str(out)])
    assert code == 0


def test_flag_error_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["simulate", "--agent", "alphago"])
    assert exc.value.code == 2


def test_dump_frames_writes_pgm(tmp_path):
    dump = tmp_path / "frames"
    code = run_cli(["simulate", "--agent", "noop", "-n", "1", "--seed", "2",
                    "--episode-seconds", "1", "--dump-frames", str(dump)])
    assert code == 0
    files = sorted(dump.iterdir())
    assert len(files) == 30
    assert files[0].name == "frame_000000.pgm"
    assert files[0].read_bytes().startswith(b"P5\n84 84\n255\n")


def test_train_smoke(tmp_path):
    out = tmp_path / "run"
    code = run_cli(["train", "--algo", "ppo", "--arch", "feature-mlp",
                    "--reward", "aeci", "--steps", "64", "--workers", "2",
                    "--rollout", "16", "--eval-every", "64",
                    "--eval-episodes", "1", "--episode-seconds", "1",
                    "--seed", "0", "--out", str(out)])
    assert code == 0
    assert (out / "curve.csv").exists()


def test_transfer_smoke(tmp_path):
    base = tmp_path / "base"
    run_cli(["train", "--algo", "ppo", "--arch", "feature-mlp",
             "--steps", "32", "--workers", "2", "--rollout", "16",
             "--eval-episodes", "1", "--episode-seconds", "1",
             "--seed", "0", "--out", str(base)])
    ckpt = sorted(base.glob("ckpt_*.bin"))[-1]
    out = tmp_path / "pair"
    code = run_cli(["transfer", "--from", str(ckpt), "--interval-ms", "400",
                    "--steps", "32", "--workers", "2", "--rollout", "16",
                    "--eval-episodes", "1", "--episode-seconds", "1",
                    "--seed", "1", "--out", str(out)])
    assert code == 0
    lines = (out / "paired_curves.csv").read_text().splitlines()
    assert lines[0] == "steps,scratch_score,transfer_score"


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "spacefortress", "--version"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
