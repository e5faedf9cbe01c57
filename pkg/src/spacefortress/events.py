"""Per-frame simulation events: everything reward- or score-relevant."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, slots=True)
class MissileFired:
    pass


@dataclass(frozen=True, slots=True)
class ShellFired:
    pass


@dataclass(frozen=True, slots=True)
class FortressHit:
    """A missile hit registered by the vulnerability tracker; delta is 0 or 1."""
    delta: int


@dataclass(frozen=True, slots=True)
class VulnerabilityReset:
    """Fast shot while building knocked the counter back to zero."""
    from_v: int


@dataclass(frozen=True, slots=True)
class FortressDestroyed:
    pass


@dataclass(frozen=True, slots=True)
class ShipDestroyed:
    pass


SimEvent = (MissileFired | ShellFired | FortressHit | VulnerabilityReset
            | FortressDestroyed | ShipDestroyed)


def encode_event(ev: SimEvent) -> str:
    """Compact human-readable token used in episode logs."""
    match ev:
        case MissileFired():
            return "fire"
        case ShellFired():
            return "shell"
        case FortressHit(delta=d):
            return f"hit:{d}"
        case VulnerabilityReset(from_v=v):
            return f"reset:{v}"
        case FortressDestroyed():
            return "kill"
        case ShipDestroyed():
            return "death"
    raise ValueError(f"unknown event {ev!r}")


def decode_event(token: str) -> SimEvent:
    if token == "fire":
        return MissileFired()
    if token == "shell":
        return ShellFired()
    if token == "kill":
        return FortressDestroyed()
    if token == "death":
        return ShipDestroyed()
    if token.startswith("hit:"):
        return FortressHit(int(token[4:]))
    if token.startswith("reset:"):
        return VulnerabilityReset(int(token[6:]))
    raise ValueError(f"unknown event token {token!r}")
