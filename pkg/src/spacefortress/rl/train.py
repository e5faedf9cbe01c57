"""The training loop: collect -> GAE -> update, with periodic evaluation,
checkpointing, and the critical-interval transfer runner."""

from __future__ import annotations

import csv
import hashlib
import os
from dataclasses import dataclass, field

import numpy as np
import torch

from ..config import SimConfig
from ..env import SpaceFortressEnv, VectorEnv
from ..observe import FEATURE, PIXEL
from .checkpoint import Checkpoint, load_checkpoint, save_checkpoint
from .nets import ActorCritic, PolicySpec, make_policy
from .rollout import rollout_collect
from .update import TrainConfig, update


def derive_seed(base: int, stream: str) -> int:
    h = hashlib.sha256(f"{base}/{stream}".encode()).digest()
    return int.from_bytes(h[:8], "little") >> 1


@dataclass
class CurveRow:
    steps: int
    mean_score: float
    mean_fortress_deaths: float
    mean_ship_deaths: float
    mean_missiles: float

    @staticmethod
    def header() -> list[str]:
        return ["steps", "mean_score", "mean_fortress_deaths",
                "mean_ship_deaths", "mean_missiles"]

    def row(self) -> list:
        return [self.steps, f"{self.mean_score:.2f}",
                f"{self.mean_fortress_deaths:.3f}",
                f"{self.mean_ship_deaths:.3f}", f"{self.mean_missiles:.2f}"]


@dataclass
class TrainResult:
    curve: list
    checkpoints: list
    policy: ActorCritic
    final_eval: dict = field(default_factory=dict)

    def write_curve(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(CurveRow.header())
            for row in self.curve:
                writer.writerow(row.row())


def obs_mode_for(spec: PolicySpec) -> str:
    return PIXEL if spec.pixel else FEATURE


def make_vector_env(config: SimConfig, scheme: str, obs_mode: str,
                    n_envs: int, base_seed: int) -> VectorEnv:
    seeds = [derive_seed(base_seed, f"env{i}") for i in range(n_envs)]
    return VectorEnv(
        lambda i: SpaceFortressEnv(config=config, scheme=scheme,
                                   obs_mode=obs_mode),
        n_envs=n_envs, seeds=seeds)


@torch.no_grad()
def evaluate(policy: ActorCritic, config: SimConfig, scheme: str,
             episodes: int, seed: int) -> dict:
    """Play full episodes with the stochastic policy and report display
    statistics (evaluation uses the unclipped display score)."""
    policy.eval()
    obs_mode = obs_mode_for(policy.spec)
    gen = torch.Generator().manual_seed(derive_seed(seed, "eval-actions"))
    scores, fds, sds, missiles = [], [], [], []
    for ep in range(episodes):
        env = SpaceFortressEnv(config=config, scheme=scheme, obs_mode=obs_mode)
        obs = env.reset(seed=derive_seed(seed, f"eval-ep{ep}"))
        hx = policy.initial_state(1)
        while not env.done:
            obs_t = torch.from_numpy(np.ascontiguousarray(obs, dtype=np.float32))
            logits, _, hx = policy(obs_t.unsqueeze(0), hx)
            probs = torch.softmax(logits, dim=-1)
            action = int(torch.multinomial(probs, 1, generator=gen))
            result = env.step(action)
            obs = result.observation
        info = env.info()
        scores.append(info["display_score"])
        fds.append(info["fortress_deaths"])
        sds.append(info["ship_deaths"])
        missiles.append(info["missiles_fired"])
    return {
        "mean_score": float(np.mean(scores)),
        "mean_fortress_deaths": float(np.mean(fds)),
        "mean_ship_deaths": float(np.mean(sds)),
        "mean_missiles": float(np.mean(missiles)),
        "scores": scores,
    }


def train(train_config: TrainConfig, sim_config: SimConfig, scheme: str,
          spec: PolicySpec, out_dir=None, policy: ActorCritic | None = None,
          log=None) -> TrainResult:
    """Run the collect/update loop for train_config.total_steps env steps.

    A pre-trained `policy` may be passed in (the transfer path); otherwise
    a fresh one is initialized from the config seed. Evaluation runs before
    any update (step 0), on every eval_every boundary, and at the end.
    """
    cfg = train_config
    torch.manual_seed(derive_seed(cfg.seed, "torch"))
    if policy is None:
        policy = make_policy(spec, seed=derive_seed(cfg.seed, "policy-init"))
    if policy.spec != spec:
        raise ValueError(f"policy spec {policy.spec} != requested {spec}")
    optimizer = torch.optim.Adam(policy.parameters(), lr=cfg.lr)
    gen = torch.Generator().manual_seed(derive_seed(cfg.seed, "sampling"))

    obs_mode = obs_mode_for(spec)
    venv = make_vector_env(sim_config, scheme, obs_mode, cfg.n_workers,
                           base_seed=derive_seed(cfg.seed, "train-envs"))
    obs = venv.reset()
    hx = policy.initial_state(cfg.n_workers)

    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
    curve: list[CurveRow] = []
    checkpoints: list[str] = []
    steps_done = 0
    next_eval = 0
    last_eval = None

    def run_eval():
        nonlocal last_eval
        stats = evaluate(policy, sim_config, scheme, cfg.eval_episodes,
                         seed=derive_seed(cfg.seed, f"eval@{steps_done}"))
        row = CurveRow(steps_done, stats["mean_score"],
                       stats["mean_fortress_deaths"],
                       stats["mean_ship_deaths"], stats["mean_missiles"])
        curve.append(row)
        last_eval = stats
        if log:
            log(f"steps={steps_done} score={stats['mean_score']:.1f} "
                f"fd={stats['mean_fortress_deaths']:.2f} "
                f"missiles={stats['mean_missiles']:.1f}")
        if out_dir is not None:
            path = os.path.join(out_dir, f"ckpt_{steps_done:010d}.bin")
            save_checkpoint(path, policy, steps_done, sim_config.digest(),
                            sim_config.critical_interval_ms)
            checkpoints.append(path)

    run_eval()
    next_eval = cfg.eval_every
    batch_steps = cfg.n_workers * cfg.rollout_len
    while steps_done < cfg.total_steps:
        batch, obs, hx = rollout_collect(venv, policy, obs, cfg.rollout_len,
                                         gen, hx)
        update(batch, policy, optimizer, cfg, generator=gen)
        steps_done += batch_steps
        if steps_done >= next_eval and steps_done < cfg.total_steps:
            run_eval()
            next_eval += cfg.eval_every

    if cfg.total_steps > 0 or not curve:
        run_eval()
    return TrainResult(curve, checkpoints, policy, final_eval=last_eval or {})


def transfer_init(checkpoint_path, new_interval_ms: float,
                  train_config: TrainConfig, sim_config: SimConfig,
                  scheme: str, out_dir=None, log=None) -> tuple[TrainResult, TrainResult]:
    """Warm-start training at a new critical interval from saved weights,
    paired with a from-scratch control at the same interval.

    Returns (scratch_result, transfer_result)."""
    ckpt: Checkpoint = load_checkpoint(checkpoint_path)
    target_config = sim_config.with_critical_interval(new_interval_ms)

    scratch_dir = transfer_dir = None
    if out_dir is not None:
        scratch_dir = os.path.join(out_dir, "scratch")
        transfer_dir = os.path.join(out_dir, "transfer")

    if log:
        log(f"scratch run at {new_interval_ms} ms")
    scratch = train(train_config, target_config, scheme, ckpt.spec,
                    out_dir=scratch_dir, log=log)

    if log:
        log(f"transfer run from {checkpoint_path} "
            f"({ckpt.critical_interval_ms} ms -> {new_interval_ms} ms)")
    warm = make_policy(ckpt.spec)
    ckpt.load_into(warm)
    transfer = train(train_config, target_config, scheme, ckpt.spec,
                     out_dir=transfer_dir, policy=warm, log=log)
    return scratch, transfer


def write_paired_curves(path, scratch: TrainResult, transfer: TrainResult) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["steps", "scratch_score", "transfer_score"])
        for s_row, t_row in zip(scratch.curve, transfer.curve):
            writer.writerow([s_row.steps, f"{s_row.mean_score:.2f}",
                             f"{t_row.mean_score:.2f}"])
