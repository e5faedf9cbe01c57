"""Synchronous rollout collection over a vectorized environment."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import torch

from .nets import ActorCritic


@dataclass
class RolloutBatch:
    """Fixed-horizon slab of transitions, time-major: (T, N, ...)."""
    obs: np.ndarray          # (T, N, *obs_shape) float32
    actions: np.ndarray      # (T, N) int64
    log_probs: np.ndarray    # (T, N) float32
    rewards: np.ndarray      # (T, N) float64
    dones: np.ndarray        # (T, N) bool
    values: np.ndarray       # (T+1, N) float32, bootstrap row last
    initial_state: np.ndarray | None   # (N, H) recurrent state at segment start
    final_obs: np.ndarray    # (N, *obs_shape)

    @property
    def horizon(self) -> int:
        return self.obs.shape[0]

    @property
    def n_workers(self) -> int:
        return self.obs.shape[1]

    @property
    def n_transitions(self) -> int:
        return self.horizon * self.n_workers


@torch.no_grad()
def rollout_collect(venv, policy: ActorCritic, obs: np.ndarray,
                    rollout_len: int, generator: torch.Generator,
                    hx: torch.Tensor | None = None):
    """Step `venv` for `rollout_len` frames, sampling from the policy.

    `obs` is the current batched observation; returns (batch, next_obs,
    next_hx) so collection can resume seamlessly. Episodes that end inside
    the segment auto-reset in the venv; the recurrent state is zeroed where
    that happened so the next episode starts fresh.
    """
    policy.eval()
    T, N = rollout_len, venv.n_envs
    obs_buf = np.empty((T, N) + obs.shape[1:], dtype=np.float32)
    act_buf = np.empty((T, N), dtype=np.int64)
    logp_buf = np.empty((T, N), dtype=np.float32)
    rew_buf = np.empty((T, N), dtype=np.float64)
    done_buf = np.empty((T, N), dtype=bool)
    val_buf = np.empty((T + 1, N), dtype=np.float32)
    initial_state = None if hx is None else hx.cpu().numpy().copy()

    for t in range(T):
        obs_t = torch.from_numpy(np.ascontiguousarray(obs, dtype=np.float32))
        logits, value, hx_next = policy(obs_t, hx)
        probs = torch.softmax(logits, dim=-1)
        actions = torch.multinomial(probs, 1, generator=generator).squeeze(1)
        logp = torch.log_softmax(logits, dim=-1).gather(
            1, actions.unsqueeze(1)).squeeze(1)

        obs_buf[t] = obs
        act_buf[t] = actions.numpy()
        logp_buf[t] = logp.numpy()
        val_buf[t] = value.numpy()

        obs, rewards, dones, _ = venv.step(act_buf[t].tolist())
        rew_buf[t] = rewards
        done_buf[t] = dones
        if hx_next is not None:
            mask = torch.from_numpy(~dones).float().unsqueeze(1)
            hx = hx_next * mask
        else:
            hx = None

    obs_t = torch.from_numpy(np.ascontiguousarray(obs, dtype=np.float32))
    _, bootstrap, _ = policy(obs_t, hx)
    val_buf[T] = bootstrap.numpy()

    batch = RolloutBatch(obs_buf, act_buf, logp_buf, rew_buf, done_buf,
                         val_buf, initial_state, obs.copy())
    return batch, obs, hx
