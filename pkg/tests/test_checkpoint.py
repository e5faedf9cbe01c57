"""Checkpoint format: byte determinism and spec safety."""

import numpy as np
import pytest

from spacefortress.errors import CheckpointError
from spacefortress.rl.checkpoint import load_checkpoint, save_checkpoint
from spacefortress.rl.nets import (FEATURE_GRU, FEATURE_MLP, PolicySpec,
                                   make_policy, policy_params_numpy)


def test_save_load_save_byte_identical(tmp_path):
    policy = make_policy(PolicySpec(FEATURE_MLP, n_actions=3), seed=0)
    p1 = tmp_path / "a.bin"
    p2 = tmp_path / "b.bin"
    save_checkpoint(p1, policy, step=12345, config_digest="deadbeef",
                    critical_interval_ms=250.0)
    ckpt = load_checkpoint(p1)
    fresh = make_policy(PolicySpec(FEATURE_MLP, n_actions=3), seed=999)
    ckpt.load_into(fresh)
    save_checkpoint(p2, fresh, step=12345, config_digest="deadbeef",
                    critical_interval_ms=250.0)
    assert p1.read_bytes() == p2.read_bytes()


def test_round_trip_preserves_values(tmp_path):
    policy = make_policy(PolicySpec(FEATURE_MLP, n_actions=3), seed=4)
    path = tmp_path / "c.bin"
    save_checkpoint(path, policy, step=7, config_digest="cafe",
                    critical_interval_ms=400.0, extra={"note": "x"})
    ckpt = load_checkpoint(path)
    assert ckpt.step == 7
    assert ckpt.critical_interval_ms == 400.0
    assert ckpt.extra == {"note": "x"}
    want = policy_params_numpy(policy)
    for name, arr in want.items():
        assert np.array_equal(ckpt.arrays[name], arr)


def test_spec_mismatch_rejected(tmp_path):
    policy = make_policy(PolicySpec(FEATURE_MLP, n_actions=3), seed=0)
    path = tmp_path / "d.bin"
    save_checkpoint(path, policy, 0, "x", 250.0)
    ckpt = load_checkpoint(path)
    other = make_policy(PolicySpec(FEATURE_GRU, n_actions=3), seed=0)
    with pytest.raises(CheckpointError, match="spec mismatch"):
        ckpt.load_into(other)
    wider = make_policy(PolicySpec(FEATURE_MLP, n_actions=5), seed=0)
    with pytest.raises(CheckpointError, match="spec mismatch"):
        ckpt.load_into(wider)


def test_bad_magic_rejected(tmp_path):
    path = tmp_path / "e.bin"
    path.write_bytes(b"not a checkpoint")
    with pytest.raises(CheckpointError, match="not a checkpoint"):
        load_checkpoint(path)
