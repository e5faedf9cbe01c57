"""Bridge conformance: bit-equal observations, shapes, error surfacing."""

import numpy as np
import pytest

import sfgym
from spacefortress import ActionError, SimConfig, SpaceFortressEnv
from spacefortress.config import AUTOTURN, YOUTURN


def native_env(version, obs_mode, seconds=None):
    kwargs = {"game_version": version}
    if seconds is not None:
        kwargs["episode_seconds"] = seconds
    return SpaceFortressEnv(config=SimConfig(**kwargs), scheme="sparse",
                            obs_mode=obs_mode)


def test_env_id_registry():
    assert len(sfgym.ENV_IDS) == 4
    with pytest.raises(KeyError, match="unknown env id"):
        sfgym.make("SpaceFortress-Hardcore-v0")


def test_observation_shapes_on_reset():
    pix = sfgym.make("SpaceFortress-Autoturn-Pixel-v0", episode_seconds=1)
    obs, info = pix.reset(seed=1)
    assert obs.shape == (4, 84, 84)
    assert pix.observation_space.shape == (4, 84, 84)

    feat = sfgym.make("SpaceFortress-Autoturn-Feature-v0", episode_seconds=1)
    obs, info = feat.reset(seed=1)
    assert obs.shape == (13,)
    assert feat.observation_space.shape == (13,)
    assert info["v"] == 0


@pytest.mark.parametrize("env_id,version,obs_mode", [
    ("SpaceFortress-Autoturn-Feature-v0", AUTOTURN, "feature"),
    ("SpaceFortress-Youturn-Feature-v0", YOUTURN, "feature"),
    ("SpaceFortress-Autoturn-Pixel-v0", AUTOTURN, "pixel"),
])
def test_bridge_observations_bit_equal_native(env_id, version, obs_mode):
    """Three seeded episodes: the bridge mirrors the native env exactly."""
    seconds = 2
    for seed in (11, 22, 33):
        bridge = sfgym.make(env_id, episode_seconds=seconds)
        native = native_env(version, obs_mode, seconds)
        b_obs, _ = bridge.reset(seed=seed)
        n_obs = native.reset(seed=seed)
        assert np.array_equal(b_obs, n_obs)
        rng = np.random.default_rng(seed)
        done = False
        while not done:
            action = int(rng.integers(0, native.n_actions))
            b_obs, b_r, terminated, truncated, b_info = bridge.step(action)
            result = native.step(action)
            assert np.array_equal(b_obs, result.observation)
            assert b_r == result.reward
            assert terminated == result.done
            assert truncated is False
            done = result.done


def test_episode_terminates_at_horizon():
    env = sfgym.make("SpaceFortress-Autoturn-Feature-v0", episode_seconds=1)
    env.reset(seed=0)
    frames = 30
    for i in range(frames):
        _, _, terminated, truncated, _ = env.step(0)
        assert terminated == (i == frames - 1)
        assert truncated is False


def test_native_errors_surface():
    env = sfgym.make("SpaceFortress-Autoturn-Feature-v0", episode_seconds=1)
    env.reset(seed=0)
    with pytest.raises(ActionError, match="out of range"):
        env.step(4)


def test_action_space_sizes():
    auto = sfgym.make("SpaceFortress-Autoturn-Feature-v0")
    you = sfgym.make("SpaceFortress-Youturn-Feature-v0")
    assert auto.action_space.n == 3
    assert you.action_space.n == 5
    assert auto.action_space.contains(2)
    assert not auto.action_space.contains(3)


def test_scheme_and_interval_kwargs():
    env = sfgym.make("SpaceFortress-Autoturn-Feature-v0", scheme="aeci",
                     interval_ms=400.0, episode_seconds=1)
    env.reset(seed=5)
    assert env.unwrapped.config.critical_interval_ms == 400.0
    assert env.unwrapped.scheme.kind == "aeci"


def test_render_returns_uint8_frame():
    env = sfgym.make("SpaceFortress-Autoturn-Pixel-v0", episode_seconds=1)
    env.reset(seed=3)
    frame = env.render()
    assert frame.shape == (84, 84)
    assert frame.dtype == np.uint8


def test_box_space_fallback_contains():
    space = sfgym.Box(-1.0, 1.0, (3,), dtype=np.float32)
    assert space.contains(np.zeros(3, dtype=np.float32))
    assert not space.contains(np.full(3, 2.0, dtype=np.float32))
    sample = space.sample()
    assert space.contains(sample)
