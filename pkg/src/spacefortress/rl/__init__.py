"""Policy-gradient training harness: PPO/A2C with GAE over vectorized envs."""
