"""PPO and A2C parameter updates over collected rollouts."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import torch

from ..errors import ConfigError, TrainingDiverged
from .gae import compute_gae
from .nets import ActorCritic
from .rollout import RolloutBatch

PPO = "ppo"
A2C = "a2c"


@dataclass
class TrainConfig:
    algo: str = PPO
    n_workers: int = 16
    rollout_len: int = 1024
    gamma: float = 0.99
    lam: float = 0.95
    value_coef: float = 0.5
    entropy_coef: float = 0.05
    lr: float = 1e-3
    grad_clip: float = 0.5
    ppo_epochs: int = 4
    ppo_clip_eps: float = 0.2
    minibatches: int = 4
    total_steps: int = 2_000_000
    eval_every: int = 250_000
    eval_episodes: int = 4
    seed: int = 0
    normalize_advantages: bool = True

    def __post_init__(self):
        if self.algo not in (PPO, A2C):
            raise ConfigError(f"algo must be {PPO!r} or {A2C!r}")
        for name in ("n_workers", "rollout_len", "gamma", "lam", "value_coef",
                     "lr", "grad_clip", "ppo_epochs", "ppo_clip_eps",
                     "minibatches"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive")
        if self.entropy_coef < 0 or self.total_steps < 0:
            raise ConfigError("entropy_coef and total_steps must be >= 0")
        if self.algo == A2C and self.ppo_epochs != 1:
            raise ConfigError("a2c makes exactly one update per batch")


def make_train_config(algo: str = PPO, **overrides) -> TrainConfig:
    """Per-algorithm defaults: PPO(c2=0.05, lr=1e-3, 4 epochs) vs
    A2C(c2=0.01, lr=5e-4, single update)."""
    if algo == A2C:
        base = dict(algo=A2C, entropy_coef=0.01, lr=5e-4, ppo_epochs=1)
    else:
        base = dict(algo=PPO)
    base.update(overrides)
    return TrainConfig(**base)


@dataclass
class UpdateStats:
    policy_loss: float = 0.0
    value_loss: float = 0.0
    entropy: float = 0.0
    clip_fraction: float = 0.0
    grad_norm: float = 0.0       # pre-clip global norm (mean over passes)
    approx_kl: float = 0.0
    n_passes: int = 0

    def accumulate(self, other: "UpdateStats") -> None:
        n = self.n_passes + 1
        for name in ("policy_loss", "value_loss", "entropy", "clip_fraction",
                     "grad_norm", "approx_kl"):
            prev = getattr(self, name)
            setattr(self, name, prev + (getattr(other, name) - prev) / n)
        self.n_passes = n


def advantages_and_returns(batch: RolloutBatch, config: TrainConfig):
    adv, ret = compute_gae(batch.rewards, batch.values, batch.dones,
                           config.gamma, config.lam)
    if config.normalize_advantages:
        adv = (adv - adv.mean()) / (adv.std() + 1e-8)
    return adv.astype(np.float32), ret.astype(np.float32)


def _losses(logits, values, actions, old_logp, adv, ret, config,
            clipped: bool):
    logp_all = torch.log_softmax(logits, dim=-1)
    logp = logp_all.gather(1, actions.unsqueeze(1)).squeeze(1)
    entropy = -(logp_all * torch.softmax(logits, dim=-1)).sum(-1).mean()

    if clipped:
        ratio = torch.exp(logp - old_logp)
        unclipped = ratio * adv
        clamped = torch.clamp(ratio, 1.0 - config.ppo_clip_eps,
                              1.0 + config.ppo_clip_eps) * adv
        policy_loss = -torch.min(unclipped, clamped).mean()
        clip_fraction = ((ratio - 1.0).abs() > config.ppo_clip_eps).float().mean()
        approx_kl = (old_logp - logp).mean()
    else:
        policy_loss = -(logp * adv).mean()
        clip_fraction = torch.zeros(())
        approx_kl = (old_logp - logp).mean()

    value_loss = 0.5 * (values - ret).pow(2).mean()
    loss = (policy_loss + config.value_coef * value_loss
            - config.entropy_coef * entropy)
    return loss, policy_loss, value_loss, entropy, clip_fraction, approx_kl


def _snap(pl, vl, ent, cf, grad_norm, kl) -> UpdateStats:
    as_float = lambda t: float(t.detach())
    return UpdateStats(as_float(pl), as_float(vl), as_float(ent),
                       as_float(cf), grad_norm, as_float(kl), 0)


def _apply(policy, optimizer, loss, config) -> float:
    optimizer.zero_grad()
    loss.backward()
    grad_norm = torch.nn.utils.clip_grad_norm_(policy.parameters(),
                                               config.grad_clip)
    optimizer.step()
    return float(grad_norm)


def _sequence_forward(policy: ActorCritic, obs: torch.Tensor,
                      dones: torch.Tensor, h0: torch.Tensor):
    """Replay a (T, B, ...) segment through a recurrent policy, resetting
    the hidden state after done steps (stored-initial-state replay)."""
    T = obs.shape[0]
    hx = h0
    logits_seq, values_seq = [], []
    for t in range(T):
        logits, value, hx = policy(obs[t], hx)
        logits_seq.append(logits)
        values_seq.append(value)
        mask = (1.0 - dones[t].float()).unsqueeze(1)
        hx = hx * mask
    return torch.stack(logits_seq), torch.stack(values_seq)


def _check_finite(loss: torch.Tensor, stats: UpdateStats) -> None:
    if not torch.isfinite(loss):
        raise TrainingDiverged(f"non-finite loss {float(loss.detach())!r}",
                               stats=stats)


def ppo_update(batch: RolloutBatch, policy: ActorCritic,
               optimizer: torch.optim.Optimizer, config: TrainConfig,
               generator: torch.Generator | None = None) -> UpdateStats:
    """Clipped-surrogate updates: ppo_epochs passes over the batch split
    into `minibatches` pieces (flat transitions for feed-forward policies,
    whole worker sequences for recurrent ones)."""
    policy.train()
    adv, ret = advantages_and_returns(batch, config)
    stats = UpdateStats()

    if policy.spec.recurrent:
        _ppo_recurrent(batch, policy, optimizer, config, adv, ret, stats,
                       generator)
        return stats

    T, N = batch.horizon, batch.n_workers
    flat = lambda a: torch.from_numpy(a.reshape(T * N, *a.shape[2:]))
    obs = flat(batch.obs)
    actions = flat(batch.actions)
    old_logp = flat(batch.log_probs)
    adv_t = flat(adv)
    ret_t = flat(ret)
    total = T * N

    for _ in range(config.ppo_epochs):
        perm = torch.randperm(total, generator=generator)
        for piece in torch.chunk(perm, config.minibatches):
            logits, values, _ = policy(obs[piece])
            loss, pl, vl, ent, cf, kl = _losses(
                logits, values, actions[piece], old_logp[piece],
                adv_t[piece], ret_t[piece], config, clipped=True)
            _check_finite(loss, stats)
            gn = _apply(policy, optimizer, loss, config)
            stats.accumulate(_snap(pl, vl, ent, cf, gn, kl))
    return stats


def _ppo_recurrent(batch, policy, optimizer, config, adv, ret, stats,
                   generator):
    T, N = batch.horizon, batch.n_workers
    obs = torch.from_numpy(batch.obs)
    actions = torch.from_numpy(batch.actions)
    old_logp = torch.from_numpy(batch.log_probs)
    dones = torch.from_numpy(batch.dones)
    adv_t = torch.from_numpy(adv)
    ret_t = torch.from_numpy(ret)
    h0_all = (torch.zeros(N, policy.spec.trunk_dim)
              if batch.initial_state is None
              else torch.from_numpy(batch.initial_state))

    n_chunks = min(config.minibatches, N)
    for _ in range(config.ppo_epochs):
        perm = torch.randperm(N, generator=generator)
        for workers in torch.chunk(perm, n_chunks):
            logits, values = _sequence_forward(
                policy, obs[:, workers], dones[:, workers], h0_all[workers])
            B = len(workers)
            loss, pl, vl, ent, cf, kl = _losses(
                logits.reshape(T * B, -1), values.reshape(T * B),
                actions[:, workers].reshape(T * B),
                old_logp[:, workers].reshape(T * B),
                adv_t[:, workers].reshape(T * B),
                ret_t[:, workers].reshape(T * B), config, clipped=True)
            _check_finite(loss, stats)
            gn = _apply(policy, optimizer, loss, config)
            stats.accumulate(_snap(pl, vl, ent, cf, gn, kl))


def a2c_update(batch: RolloutBatch, policy: ActorCritic,
               optimizer: torch.optim.Optimizer,
               config: TrainConfig) -> UpdateStats:
    """Single full-batch pass: vanilla policy gradient with GAE advantages,
    the same value and entropy terms, no ratio clipping."""
    policy.train()
    adv, ret = advantages_and_returns(batch, config)
    stats = UpdateStats()
    T, N = batch.horizon, batch.n_workers

    if policy.spec.recurrent:
        obs = torch.from_numpy(batch.obs)
        dones = torch.from_numpy(batch.dones)
        h0 = (torch.zeros(N, policy.spec.trunk_dim)
              if batch.initial_state is None
              else torch.from_numpy(batch.initial_state))
        logits, values = _sequence_forward(policy, obs, dones, h0)
        logits = logits.reshape(T * N, -1)
        values = values.reshape(T * N)
    else:
        obs = torch.from_numpy(batch.obs.reshape(T * N, *batch.obs.shape[2:]))
        logits, values, _ = policy(obs)

    loss, pl, vl, ent, cf, kl = _losses(
        logits, values,
        torch.from_numpy(batch.actions.reshape(T * N)),
        torch.from_numpy(batch.log_probs.reshape(T * N)),
        torch.from_numpy(adv.reshape(T * N)),
        torch.from_numpy(ret.reshape(T * N)),
        config, clipped=False)
    _check_finite(loss, stats)
    gn = _apply(policy, optimizer, loss, config)
    stats.accumulate(_snap(pl, vl, ent, cf, gn, kl))
    return stats


def update(batch, policy, optimizer, config, generator=None) -> UpdateStats:
    if config.algo == A2C:
        return a2c_update(batch, policy, optimizer, config)
    return ppo_update(batch, policy, optimizer, config, generator)
