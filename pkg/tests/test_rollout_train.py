"""Rollout collection and the training loop at smoke scale."""

import numpy as np
import pytest
import torch

from spacefortress.config import AUTOTURN, SimConfig
from spacefortress.rl.nets import FEATURE_GRU, FEATURE_MLP, PolicySpec, make_policy
from spacefortress.rl.rollout import rollout_collect
from spacefortress.rl.train import (evaluate, make_vector_env, train,
                                    transfer_init, write_paired_curves)
from spacefortress.rl.update import make_train_config
from spacefortress.rl.checkpoint import load_checkpoint


def tiny_sim_config(seconds=1):
    return SimConfig(game_version=AUTOTURN, episode_seconds=seconds)


def collect(policy, rollout_len=32, n_workers=4, seconds=1, seed=0):
    venv = make_vector_env(tiny_sim_config(seconds), "sparse", "feature",
                           n_workers, base_seed=seed)
    obs = venv.reset()
    gen = torch.Generator().manual_seed(seed)
    hx = policy.initial_state(n_workers)
    return rollout_collect(venv, policy, obs, rollout_len, gen, hx)


class TestRollout:
    def test_batch_dimensions(self):
        policy = make_policy(PolicySpec(FEATURE_MLP, n_actions=3), seed=0)
        batch, obs, hx = collect(policy, rollout_len=40, n_workers=4)
        assert batch.obs.shape == (40, 4, 13)
        assert batch.values.shape == (41, 4)
        assert batch.n_transitions == 160
        assert obs.shape == (4, 13)

    def test_full_scale_batch_is_16384_transitions(self):
        policy = make_policy(PolicySpec(FEATURE_MLP, n_actions=3), seed=0)
        batch, _, _ = collect(policy, rollout_len=1024, n_workers=16,
                              seconds=60)
        assert batch.n_transitions == 16384
        assert batch.horizon == 1024 and batch.n_workers == 16

    def test_pixel_mode_rollout(self):
        policy = make_policy(PolicySpec("sf-ff", n_actions=3), seed=0)
        venv = make_vector_env(tiny_sim_config(), "sparse", "pixel", 2,
                               base_seed=0)
        obs = venv.reset()
        assert obs.shape == (2, 4, 84, 84)
        gen = torch.Generator().manual_seed(0)
        batch, obs, _ = rollout_collect(venv, policy, obs, 4, gen, None)
        assert batch.obs.shape == (4, 2, 4, 84, 84)
        assert np.isfinite(batch.values).all()

    def test_deterministic_given_seeds(self):
        policy = make_policy(PolicySpec(FEATURE_MLP, n_actions=3), seed=1)
        a, _, _ = collect(policy, seed=5)
        b, _, _ = collect(policy, seed=5)
        assert np.array_equal(a.obs, b.obs)
        assert np.array_equal(a.actions, b.actions)
        assert np.array_equal(a.rewards, b.rewards)

    def test_dones_present_for_short_episodes(self):
        policy = make_policy(PolicySpec(FEATURE_MLP, n_actions=3), seed=0)
        batch, _, _ = collect(policy, rollout_len=40, seconds=1)
        assert batch.dones.any()  # 30-frame episodes end inside the segment

    def test_recurrent_state_resets_on_done(self):
        spec = PolicySpec(FEATURE_GRU, n_actions=3)
        policy = make_policy(spec, seed=0)
        seen_hx = []
        orig_forward = policy.forward

        def spy(obs, hx=None):
            seen_hx.append(None if hx is None else hx.clone())
            return orig_forward(obs, hx)

        policy.forward = spy
        batch, _, _ = collect(policy, rollout_len=35, seconds=1)
        done_steps = np.argwhere(batch.dones)
        assert len(done_steps) > 0
        for t, w in done_steps:
            if t + 1 < batch.horizon:
                nxt = seen_hx[t + 1]
                assert torch.all(nxt[w] == 0.0)

    def test_bootstrap_row_is_value_of_final_obs(self):
        policy = make_policy(PolicySpec(FEATURE_MLP, n_actions=3), seed=0)
        batch, obs, _ = collect(policy)
        with torch.no_grad():
            _, v, _ = policy(torch.from_numpy(obs.astype(np.float32)))
        assert np.allclose(batch.values[-1], v.numpy(), atol=1e-6)


class TestTrainLoop:
    def test_zero_steps_returns_untrained_eval(self, tmp_path):
        cfg = make_train_config("ppo", n_workers=2, rollout_len=16,
                                total_steps=0, eval_episodes=1, seed=0)
        result = train(cfg, tiny_sim_config(), "sparse",
                       PolicySpec(FEATURE_MLP, n_actions=3),
                       out_dir=tmp_path / "run")
        assert len(result.curve) == 1
        assert result.curve[0].steps == 0
        assert len(result.checkpoints) == 1
        ckpt = load_checkpoint(result.checkpoints[0])
        assert ckpt.step == 0

    def test_short_run_improves_nothing_but_completes(self, tmp_path):
        cfg = make_train_config("ppo", n_workers=4, rollout_len=32,
                                total_steps=256, eval_every=128,
                                eval_episodes=1, seed=1)
        result = train(cfg, tiny_sim_config(), "aeci",
                       PolicySpec(FEATURE_MLP, n_actions=3),
                       out_dir=tmp_path / "run")
        assert result.curve[0].steps == 0
        assert result.curve[-1].steps == 256
        assert (tmp_path / "run").exists()
        csv_path = tmp_path / "curve.csv"
        result.write_curve(csv_path)
        text = csv_path.read_text().splitlines()
        assert text[0].startswith("steps,mean_score")
        assert len(text) == len(result.curve) + 1

    def test_training_deterministic_across_runs(self):
        def run():
            cfg = make_train_config("ppo", n_workers=2, rollout_len=16,
                                    total_steps=64, eval_every=10**9,
                                    eval_episodes=1, seed=3)
            result = train(cfg, tiny_sim_config(), "sparse",
                           PolicySpec(FEATURE_MLP, n_actions=3))
            return [float(p.detach().sum()) for p in result.policy.parameters()]
        assert run() == run()

    def test_a2c_path(self):
        cfg = make_train_config("a2c", n_workers=2, rollout_len=16,
                                total_steps=32, eval_episodes=1, seed=0)
        result = train(cfg, tiny_sim_config(), "dense",
                       PolicySpec(FEATURE_MLP, n_actions=3))
        assert result.final_eval


class TestEvaluate:
    def test_eval_deterministic(self):
        policy = make_policy(PolicySpec(FEATURE_MLP, n_actions=3), seed=0)
        a = evaluate(policy, tiny_sim_config(seconds=2), "sparse", 2, seed=7)
        b = evaluate(policy, tiny_sim_config(seconds=2), "sparse", 2, seed=7)
        assert a == b

    def test_eval_reports_display_stats(self):
        policy = make_policy(PolicySpec(FEATURE_MLP, n_actions=3), seed=0)
        stats = evaluate(policy, tiny_sim_config(seconds=2), "sparse", 2, seed=7)
        assert set(stats) >= {"mean_score", "mean_fortress_deaths",
                              "mean_ship_deaths", "mean_missiles"}
        want = (100 * stats["mean_fortress_deaths"]
                - 100 * stats["mean_ship_deaths"]
                - 2 * stats["mean_missiles"])
        assert stats["mean_score"] == pytest.approx(want)


class TestTransfer:
    def test_transfer_initializes_from_checkpoint(self, tmp_path):
        spec = PolicySpec(FEATURE_MLP, n_actions=3)
        cfg = make_train_config("ppo", n_workers=2, rollout_len=16,
                                total_steps=32, eval_episodes=1, seed=5)
        base = train(cfg, tiny_sim_config(), "aeci", spec,
                     out_dir=tmp_path / "base")
        ckpt_path = base.checkpoints[-1]

        scratch, transfer = transfer_init(
            ckpt_path, 400.0, cfg, tiny_sim_config(), "aeci",
            out_dir=tmp_path / "pair")
        # The transfer run starts from the trained weights...
        ckpt = load_checkpoint(ckpt_path)
        first_transfer = load_checkpoint(transfer.checkpoints[0])
        for name, arr in ckpt.arrays.items():
            assert np.array_equal(first_transfer.arrays[name], arr)
        # ...and the scratch control does not.
        first_scratch = load_checkpoint(scratch.checkpoints[0])
        same = all(np.array_equal(first_scratch.arrays[n], ckpt.arrays[n])
                   for n in ckpt.arrays)
        assert not same
        # Both runs happened at the new interval.
        assert first_transfer.critical_interval_ms == 400.0
        assert first_scratch.critical_interval_ms == 400.0

        out = tmp_path / "paired.csv"
        write_paired_curves(out, scratch, transfer)
        lines = out.read_text().splitlines()
        assert lines[0] == "steps,scratch_score,transfer_score"
        assert len(lines) >= 2
