"""GAE against a termwise brute-force expansion."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spacefortress.rl.gae import compute_gae


def brute_force_gae(rewards, values, dones, gamma, lam):
    """A_t = sum_k (gamma*lam)^k * delta_{t+k} * prod_{j<k}(1-done_{t+j}),
    expanded term by term; deltas themselves gate the bootstrap."""
    T = len(rewards)
    deltas = [rewards[t] + gamma * values[t + 1] * (1.0 - dones[t]) - values[t]
              for t in range(T)]
    adv = np.zeros(T)
    for t in range(T):
        acc = 0.0
        weight = 1.0
        for k in range(t, T):
            acc += weight * deltas[k]
            if dones[k]:
                break
            weight *= gamma * lam
        adv[t] = acc
    return adv, adv + np.asarray(values[:-1])


def test_single_step_identity():
    adv, ret = compute_gae(np.array([1.0]), np.array([0.0, 0.0]),
                           np.array([False]), 0.99, 0.95)
    assert adv[0] == 1.0 and ret[0] == 1.0


def test_two_step_hand_computed():
    # delta_0 = 0, delta_1 = 1; A_1 = 1, A_0 = 0.99 * 0.95 * 1 = 0.9405
    adv, ret = compute_gae(np.array([0.0, 1.0]), np.zeros(3),
                           np.array([False, False]), 0.99, 0.95)
    assert adv == pytest.approx([0.9405, 1.0])
    assert ret == pytest.approx([0.9405, 1.0])


def test_done_cuts_the_chain():
    rewards = np.array([0.5, 123.0])
    values = np.array([0.0, 7.0, 9.0])
    dones = np.array([True, False])
    adv, _ = compute_gae(rewards, values, dones, 0.99, 0.95)
    # A_0 sees neither v_1 nor r_1.
    assert adv[0] == pytest.approx(0.5)


def test_length_mismatch_raises():
    with pytest.raises(ValueError, match="bootstrap"):
        compute_gae(np.zeros(3), np.zeros(3), np.zeros(3, dtype=bool), 0.99, 0.95)
    with pytest.raises(ValueError, match="dones"):
        compute_gae(np.zeros(3), np.zeros(4), np.zeros(2, dtype=bool), 0.99, 0.95)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_matches_brute_force_oracle(data):
    T = data.draw(st.integers(1, 64))
    rng = np.random.default_rng(data.draw(st.integers(0, 2**32 - 1)))
    rewards = rng.normal(size=T)
    values = rng.normal(size=T + 1)
    dones = rng.random(T) < 0.15
    gamma = data.draw(st.floats(0.5, 1.0))
    lam = data.draw(st.floats(0.0, 1.0))
    adv, ret = compute_gae(rewards, values, dones, gamma, lam)
    b_adv, b_ret = brute_force_gae(rewards, values, dones, gamma, lam)
    assert np.max(np.abs(adv - b_adv)) <= 1e-10
    assert np.max(np.abs(ret - b_ret)) <= 1e-10


def test_batched_matches_per_column():
    rng = np.random.default_rng(7)
    T, N = 32, 5
    rewards = rng.normal(size=(T, N))
    values = rng.normal(size=(T + 1, N))
    dones = rng.random((T, N)) < 0.1
    adv, ret = compute_gae(rewards, values, dones, 0.99, 0.95)
    for j in range(N):
        aj, rj = compute_gae(rewards[:, j], values[:, j], dones[:, j], 0.99, 0.95)
        assert np.allclose(adv[:, j], aj, atol=1e-12)
        assert np.allclose(ret[:, j], rj, atol=1e-12)
