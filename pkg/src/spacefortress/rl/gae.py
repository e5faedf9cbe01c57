"""Generalized advantage estimation over fixed-horizon rollouts."""

from __future__ import annotations

import numpy as np


def compute_gae(rewards: np.ndarray, values: np.ndarray, dones: np.ndarray,
                gamma: float, lam: float) -> tuple[np.ndarray, np.ndarray]:
    """Backward recursion
        delta_t = r_t + gamma * v_{t+1} * (1 - done_t) - v_t
        A_t     = delta_t + gamma * lam * (1 - done_t) * A_{t+1}
    with returns = advantages + values.

    Shapes: rewards and dones are (T,) or (T, N); values carries one extra
    bootstrap row, (T+1,) or (T+1, N). done_t marks that the episode ended
    *on* step t, gating both the bootstrap and the advantage chain.
    """
    rewards = np.asarray(rewards, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    dones = np.asarray(dones)
    if values.shape[0] != rewards.shape[0] + 1:
        raise ValueError(
            f"values must have one bootstrap entry beyond rewards: got "
            f"{values.shape[0]} values for {rewards.shape[0]} rewards")
    if dones.shape != rewards.shape:
        raise ValueError(f"dones shape {dones.shape} != rewards shape {rewards.shape}")

    not_done = 1.0 - dones.astype(np.float64)
    T = rewards.shape[0]
    advantages = np.zeros_like(rewards)
    gae = np.zeros_like(rewards[0] if rewards.ndim > 1 else np.float64(0.0))
    for t in range(T - 1, -1, -1):
        delta = rewards[t] + gamma * values[t + 1] * not_done[t] - values[t]
        gae = delta + gamma * lam * not_done[t] * gae
        advantages[t] = gae
    returns = advantages + values[:-1]
    return advantages, returns
