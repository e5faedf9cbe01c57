"""Actor-critic networks: conv trunks for pixel stacks, MLPs for features,
each with an optional GRU cell before the heads."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import torch
import torch.nn as nn

from ..errors import CheckpointError

SF_FF = "sf-ff"
SF_GRU = "sf-gru"
FEATURE_MLP = "feature-mlp"
FEATURE_GRU = "feature-gru"

POLICY_KINDS = (SF_FF, SF_GRU, FEATURE_MLP, FEATURE_GRU)


@dataclass(frozen=True)
class PolicySpec:
    kind: str
    n_actions: int
    feature_dim: int = 13     # feature-* input width
    hidden: int = 256         # trunk width for sf-*; feature nets use 64

    def __post_init__(self):
        if self.kind not in POLICY_KINDS:
            raise CheckpointError(f"unknown policy kind {self.kind!r}")

    @property
    def recurrent(self) -> bool:
        return self.kind in (SF_GRU, FEATURE_GRU)

    @property
    def pixel(self) -> bool:
        return self.kind in (SF_FF, SF_GRU)

    @property
    def trunk_dim(self) -> int:
        return self.hidden if self.pixel else 64

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "PolicySpec":
        return cls(**d)


class ActorCritic(nn.Module):
    """Shared trunk, softmax action head, scalar value head.

    forward() processes one time step for a batch: obs (B, ...) and, for
    recurrent kinds, hx (B, trunk_dim); returns (logits, value, hx').
    """

    def __init__(self, spec: PolicySpec):
        super().__init__()
        self.spec = spec
        d = spec.trunk_dim
        if spec.pixel:
            self.encoder = nn.Sequential(
                nn.Conv2d(4, 16, kernel_size=8, stride=4), nn.ReLU(),
                nn.Conv2d(16, 32, kernel_size=4, stride=2), nn.ReLU(),
                nn.Flatten(),
                nn.Linear(32 * 9 * 9, d), nn.ReLU(),
            )
        else:
            self.encoder = nn.Sequential(
                nn.Linear(spec.feature_dim, d), nn.ReLU(),
            )
        if spec.recurrent:
            self.core: nn.Module = nn.GRUCell(d, d)
        else:
            self.core = nn.Sequential(nn.Linear(d, d), nn.ReLU())
        self.pi_head = nn.Linear(d, spec.n_actions)
        self.v_head = nn.Linear(d, 1)

    def initial_state(self, batch: int, device=None) -> torch.Tensor | None:
        if not self.spec.recurrent:
            return None
        return torch.zeros(batch, self.spec.trunk_dim, device=device)

    def forward(self, obs: torch.Tensor, hx: torch.Tensor | None = None):
        z = self.encoder(obs)
        if self.spec.recurrent:
            hx = self.core(z, hx)
            z = hx
        else:
            z = self.core(z)
        return self.pi_head(z), self.v_head(z).squeeze(-1), hx

    def distribution(self, obs, hx=None):
        logits, value, hx = self.forward(obs, hx)
        return torch.distributions.Categorical(logits=logits), value, hx


def make_policy(spec: PolicySpec, seed: int | None = None) -> ActorCritic:
    if seed is not None:
        torch.manual_seed(seed)
    return ActorCritic(spec)


def policy_params_numpy(policy: ActorCritic) -> dict:
    return {name: tensor.detach().cpu().numpy().copy()
            for name, tensor in policy.state_dict().items()}


def load_params_numpy(policy: ActorCritic, arrays: dict) -> None:
    state = policy.state_dict()
    if set(state) != set(arrays):
        missing = set(state) ^ set(arrays)
        raise CheckpointError(f"parameter names do not match policy: {sorted(missing)}")
    for name, tensor in state.items():
        arr = arrays[name]
        if tuple(tensor.shape) != tuple(arr.shape):
            raise CheckpointError(
                f"shape mismatch for {name}: policy {tuple(tensor.shape)} "
                f"vs checkpoint {tuple(arr.shape)}")
    policy.load_state_dict({name: torch.from_numpy(arr.copy())
                            for name, arr in arrays.items()})
