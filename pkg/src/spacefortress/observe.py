"""Agent observations: stacked pixel frames or a compact feature vector."""

from __future__ import annotations

import math

import numpy as np

from .config import WORLD_CENTER
from .render import render_frame
from .sim import GameState, MISSILE, SHELL

PIXEL = "pixel"
FEATURE = "feature"

STACK_DEPTH = 4
FEATURE_DIM = 13

ABSENT = -1.0   # sentinel for "no such projectile in flight"


def reset_stack(frame: np.ndarray) -> np.ndarray:
    """Fresh stack: four copies of the first frame, newest last."""
    return np.repeat(frame[None, :, :], STACK_DEPTH, axis=0)


def stack_push(stack: np.ndarray, frame: np.ndarray) -> np.ndarray:
    out = np.empty_like(stack)
    out[:-1] = stack[1:]
    out[-1] = frame
    return out


def pixel_obs(state: GameState, stack: np.ndarray | None) -> np.ndarray:
    frame = render_frame(state)
    if stack is None:
        return reset_stack(frame)
    return stack_push(stack, frame)


def _nearest(state: GameState, kind: str) -> tuple[float, float] | None:
    ship = state.ship
    best = None
    best_d2 = math.inf
    for p in state.projectiles:
        if p.kind != kind:
            continue
        dx = p.x - ship.x
        dy = p.y - ship.y
        d2 = dx * dx + dy * dy
        if d2 < best_d2:
            best_d2 = d2
            best = (dx, dy)
    return best


def feature_obs(state: GameState, include_clock: bool = False) -> np.ndarray:
    """Normalized feature vector; every component lies in [-1, 1].

    The shot clock is excluded unless `include_clock` is set, preserving the
    partial observability of the pixel pipeline.
    """
    cfg = state.config
    cx, cy = WORLD_CENTER
    half = cx
    ship = state.ship
    h = math.radians(ship.heading)
    f = math.radians(state.fortress.heading)
    span = 2.0 * cfg.outer_hex_radius

    out = [
        (ship.x - cx) / half,
        (ship.y - cy) / half,
        ship.vx / cfg.max_speed,
        ship.vy / cfg.max_speed,
        math.sin(h),
        math.cos(h),
        math.sin(f),
        math.cos(f),
        state.vuln.v / cfg.vulnerability_threshold,
    ]
    for kind in (SHELL, MISSILE):
        rel = _nearest(state, kind)
        if rel is None:
            out.extend((ABSENT, ABSENT))
        else:
            out.extend((rel[0] / span, rel[1] / span))
    if include_clock:
        last_ms = state.vuln.last_shot_ms
        if last_ms is None:
            clock = 1.0
        else:
            since = state.time_ms - last_ms
            clock = min(since / cfg.critical_interval_ms, 1.0)
        out.append(clock)
    return np.clip(np.asarray(out, dtype=np.float32), -1.0, 1.0)


def observation_shape(obs_mode: str) -> tuple[int, ...]:
    if obs_mode == PIXEL:
        return (STACK_DEPTH, 84, 84)
    if obs_mode == FEATURE:
        return (FEATURE_DIM,)
    raise ValueError(f"unknown obs mode {obs_mode!r}")
