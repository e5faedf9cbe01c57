"""The bridge environment and its id registry."""

from __future__ import annotations

import numpy as np

from spacefortress import AUTOTURN, YOUTURN, SimConfig, SpaceFortressEnv
from spacefortress.observe import FEATURE, PIXEL, observation_shape

from .spaces import Box, Discrete

ENV_IDS = {
    "SpaceFortress-Autoturn-Feature-v0": (AUTOTURN, FEATURE),
    "SpaceFortress-Autoturn-Pixel-v0": (AUTOTURN, PIXEL),
    "SpaceFortress-Youturn-Feature-v0": (YOUTURN, FEATURE),
    "SpaceFortress-Youturn-Pixel-v0": (YOUTURN, PIXEL),
}


class SpaceFortressGymEnv:
    """Thin standard-API shim: reset() -> (obs, info), step() -> 5-tuple.

    The episode's 3-minute horizon is the game's natural end, so it is
    reported as `terminated`; `truncated` is always False.
    """

    metadata = {"render_modes": ["rgb_array"]}

    def __init__(self, game_version: str = AUTOTURN, obs_mode: str = FEATURE,
                 scheme: str = "sparse", seed: int | None = None,
                 interval_ms: float | None = None,
                 include_clock: bool = False,
                 episode_seconds: int | None = None):
        kwargs = {"game_version": game_version}
        if episode_seconds is not None:
            kwargs["episode_seconds"] = episode_seconds
        config = SimConfig(**kwargs)
        if interval_ms is not None:
            config = config.with_critical_interval(interval_ms)
        self._env = SpaceFortressEnv(config=config, scheme=scheme,
                                     obs_mode=obs_mode, seed=seed,
                                     include_clock=include_clock)
        n_features = 14 if include_clock else 13
        if obs_mode == PIXEL:
            self.observation_space = Box(0.0, 1.0, observation_shape(PIXEL),
                                         dtype=np.float32)
        else:
            self.observation_space = Box(-1.0, 1.0, (n_features,),
                                         dtype=np.float32)
        self.action_space = Discrete(self._env.n_actions)

    def reset(self, seed: int | None = None, options=None):
        obs = self._env.reset(seed=seed)
        return obs, self._env.info()

    def step(self, action):
        result = self._env.step(int(action))
        return (result.observation, result.reward, result.done, False,
                result.info)

    def render(self):
        from spacefortress.render import render_frame
        frame = render_frame(self._env.state)
        return (frame * 255.0).round().astype(np.uint8)

    def close(self):
        pass

    @property
    def unwrapped(self):
        return self._env


def make(env_id: str, **kwargs) -> SpaceFortressGymEnv:
    if env_id not in ENV_IDS:
        raise KeyError(f"unknown env id {env_id!r}; known: {sorted(ENV_IDS)}")
    game_version, obs_mode = ENV_IDS[env_id]
    return SpaceFortressGymEnv(game_version=game_version, obs_mode=obs_mode,
                               **kwargs)
