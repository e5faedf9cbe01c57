"""Step/reset environment facade over the simulation.

An env owns one `GameState`, applies a reward scheme as a pure view over
the frame's events, tracks the display score, and (optionally) records an
episode log that can be replayed bit-exactly.

Episode logs are line-delimited JSON: one header object, then one object
per frame with keys ``f`` (frame), ``a`` (action id), ``r`` (reward),
``ev`` (event tokens) and ``score`` (display score after the frame).
"""

from __future__ import annotations

import json
import secrets
import time
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .config import SimConfig, make_config
from .errors import LifecycleError, ReplayError
from .events import SimEvent, encode_event
from .observe import FEATURE, PIXEL, feature_obs, pixel_obs
from .rewards import (RewardScheme, ScoreState, display_score_update,
                      make_scheme, reward_from_events)
from .sim import GameState, new_game, state_hash, step_sim

LOG_FORMAT_VERSION = 1


@dataclass
class StepResult:
    observation: Any
    reward: float
    done: bool
    info: dict


@dataclass
class EpisodeLog:
    header: dict
    frames: list = field(default_factory=list)  # (f, a, r, ev_tokens, score)

    def dumps(self) -> str:
        lines = [json.dumps(self.header, sort_keys=True)]
        for f, a, r, ev, score in self.frames:
            lines.append(json.dumps(
                {"f": f, "a": a, "r": r, "ev": ev, "score": score}))
        return "\n".join(lines) + "\n"

    def save(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.dumps())

    @classmethod
    def loads(cls, text: str) -> "EpisodeLog":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ReplayError("empty log")
        header = json.loads(lines[0])
        frames = []
        for ln in lines[1:]:
            rec = json.loads(ln)
            frames.append((rec["f"], rec["a"], rec["r"], rec["ev"], rec["score"]))
        return cls(header, frames)

    @classmethod
    def load(cls, path) -> "EpisodeLog":
        with open(path) as fh:
            return cls.loads(fh.read())


@dataclass
class ReplayReport:
    exact: bool
    frames_checked: int
    divergence_frame: int | None = None
    field_name: str | None = None
    expected: Any = None
    actual: Any = None

    def summary(self) -> str:
        if self.exact:
            return f"exact ({self.frames_checked} frames)"
        return (f"divergence at frame {self.divergence_frame}: "
                f"{self.field_name} expected {self.expected!r} "
                f"got {self.actual!r}")


class SpaceFortressEnv:
    """Single Space Fortress episode driver."""

    def __init__(self, config: SimConfig | None = None, scheme: str | RewardScheme = "sparse",
                 obs_mode: str = FEATURE, seed: int | None = None,
                 record: bool = False, include_clock: bool = False):
        self.config = config if config is not None else SimConfig()
        self.scheme = scheme if isinstance(scheme, RewardScheme) else make_scheme(scheme)
        if obs_mode not in (PIXEL, FEATURE):
            raise ValueError(f"obs_mode must be {PIXEL!r} or {FEATURE!r}")
        self.obs_mode = obs_mode
        self.record = record
        self.include_clock = include_clock
        self._default_seed = seed
        self.state: GameState | None = None
        self.score = ScoreState()
        self.seed: int | None = None
        self.episode_log: EpisodeLog | None = None
        self._stack = None

    # -- lifecycle -------------------------------------------------------

    def reset(self, seed: int | None = None):
        if seed is None:
            seed = self._default_seed
        if seed is None:
            seed = secrets.randbits(63)
        self.seed = int(seed)
        self._default_seed = None  # later resets draw fresh entropy unless given
        self.state = new_game(self.config, self.seed)
        self.score = ScoreState()
        self._stack = None
        if self.record:
            self.episode_log = EpisodeLog(header={
                "version": self.config.game_version,
                "seed": self.seed,
                "scheme": self.scheme.kind,
                "config_digest": self.config.digest(),
                "config": self.config.to_dict(),
                "log_format": LOG_FORMAT_VERSION,
                "ts": time.strftime("%Y-%m-%dT%H:%M:%S"),
            })
        else:
            self.episode_log = None
        return self._observe()

    def _require_state(self) -> GameState:
        if self.state is None:
            raise LifecycleError("reset() must be called before stepping")
        return self.state

    def _observe(self):
        state = self._require_state()
        if self.obs_mode == PIXEL:
            self._stack = pixel_obs(state, self._stack)
            return self._stack
        return feature_obs(state, include_clock=self.include_clock)

    @property
    def done(self) -> bool:
        return self.state is not None and self.state.done

    @property
    def n_actions(self) -> int:
        return self.config.n_actions

    def step(self, action: int) -> StepResult:
        state = self._require_state()
        state, events = step_sim(state, action)
        reward = reward_from_events(events, self.scheme)
        self.score = display_score_update(self.score, events)
        obs = self._observe()
        done = state.done
        info = self._info(events)
        if self.record and self.episode_log is not None:
            self.episode_log.frames.append(
                (state.frame, action, reward,
                 [encode_event(e) for e in events], self.score.display_score))
        return StepResult(obs, reward, done, info)

    def _info(self, events: list[SimEvent] | None = None) -> dict:
        state = self._require_state()
        info = {
            "frame": state.frame,
            "seed": self.seed,
            "v": state.vuln.v,
            "display_score": self.score.display_score,
            "fortress_deaths": state.fortress_deaths,
            "ship_deaths": state.ship_deaths,
            "missiles_fired": state.missiles_fired,
        }
        if events is not None:
            info["events"] = events
        return info

    def info(self) -> dict:
        return self._info()

    def state_hash(self) -> str:
        return state_hash(self._require_state())

    def set_critical_interval(self, ms: float) -> "SpaceFortressEnv":
        if self.state is not None and not self.state.done:
            raise LifecycleError(
                "cannot change the critical interval of a running episode; "
                "finish it and reset")
        self.config = self.config.with_critical_interval(ms)
        return self

    def render_pgm(self) -> bytes:
        from .render import frame_to_pgm, render_frame
        return frame_to_pgm(render_frame(self._require_state()))


def replay(log: EpisodeLog, config: SimConfig | None = None) -> ReplayReport:
    """Re-simulate a recorded episode and compare every frame's stream.

    The log is self-contained; a `config` argument, when given, must match
    the digest the log was recorded under.
    """
    header = log.header
    embedded = header.get("config")
    if embedded is None:
        raise ReplayError("log header carries no config")
    log_config = make_config(embedded)
    if log_config.digest() != header.get("config_digest"):
        raise ReplayError("log header config does not match its digest "
                          "(header tampered or version skew)")
    if config is not None and config.digest() != header["config_digest"]:
        raise ReplayError(
            f"config digest mismatch: replaying under {config.digest()} "
            f"but log was recorded under {header['config_digest']}")

    env = SpaceFortressEnv(config=log_config, scheme=header["scheme"],
                           obs_mode=FEATURE)
    env.reset(seed=header["seed"])
    for i, (f, a, r, ev, score) in enumerate(log.frames):
        result = env.step(a)
        got_ev = [encode_event(e) for e in result.info["events"]]
        checks = (
            ("frame", f, env.state.frame),
            ("reward", r, result.reward),
            ("events", ev, got_ev),
            ("score", score, result.info["display_score"]),
        )
        for name, want, got in checks:
            if want != got:
                return ReplayReport(False, i, divergence_frame=f,
                                    field_name=name, expected=want, actual=got)
    return ReplayReport(True, len(log.frames))


class VectorEnv:
    """Synchronous batch of independent envs, stepping in lock-step.

    Finished episodes auto-reset: the returned observation for a done env
    is the first observation of its next episode, with the done flag set
    for the step that ended.
    """

    def __init__(self, make_env, n_envs: int, seeds: list[int]):
        if len(seeds) != n_envs:
            raise ValueError("need one seed per env")
        self.envs: list[SpaceFortressEnv] = [make_env(i) for i in range(n_envs)]
        self._seed_streams = [_SeedStream(s) for s in seeds]

    def reset(self):
        return np.stack([env.reset(seed=stream.next())
                         for env, stream in zip(self.envs, self._seed_streams)])

    def step(self, actions):
        obs, rewards, dones, infos = [], [], [], []
        for env, stream, action in zip(self.envs, self._seed_streams, actions):
            result = env.step(int(action))
            rewards.append(result.reward)
            dones.append(result.done)
            infos.append(result.info)
            if result.done:
                obs.append(env.reset(seed=stream.next()))
            else:
                obs.append(result.observation)
        return (np.stack(obs), np.asarray(rewards, dtype=np.float64),
                np.asarray(dones, dtype=bool), infos)

    @property
    def n_envs(self) -> int:
        return len(self.envs)


class _SeedStream:
    """Deterministic per-env episode seeds derived from one base seed."""

    def __init__(self, base: int):
        self.base = base
        self.count = 0

    def next(self) -> int:
        import hashlib
        h = hashlib.sha256(f"{self.base}:{self.count}".encode()).digest()
        self.count += 1
        return int.from_bytes(h[:8], "little") >> 1
