"""Simulation configuration: game version, timing, arena geometry and dynamics.

All world distances are in abstract world units on a 420x420 arena; the
84x84 render is an exact 5:1 downscale. Time advances in integer frames;
millisecond quantities are derived from frames as frame * (1000 / fps) and
all timing comparisons are done in exact integer arithmetic (see
``vulnerability.py``) so that boundary cases never drift.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, replace

from .errors import ConfigError

AUTOTURN = "autoturn"
YOUTURN = "youturn"

WORLD_SIZE = 420.0
WORLD_CENTER = (WORLD_SIZE / 2.0, WORLD_SIZE / 2.0)


@dataclass(frozen=True)
class SimConfig:
    game_version: str = AUTOTURN
    fps: int = 30
    episode_seconds: int = 180
    critical_interval_ms: float = 250.0
    vulnerability_threshold: int = 10

    # Arena geometry (world units; hexagons share the arena center).
    outer_hex_radius: float = 200.0
    inner_hex_radius: float = 40.0
    spawn_clearance: float = 25.0

    # Ship dynamics.
    thrust_accel: float = 80.0          # units/s^2
    ship_turn_rate: float = 180.0       # degrees/s (Youturn rotation actions)
    max_speed: float = 120.0            # units/s
    spawn_speed: float = 60.0           # tangential speed at episode start

    # Projectiles.
    missile_speed: float = 300.0        # units/s
    shell_speed: float = 150.0          # units/s

    # Fortress AI.
    fortress_lock_tolerance_deg: float = 10.0
    fortress_shell_cooldown_ms: float = 1000.0
    fortress_turn_rate: float = 90.0    # degrees/s

    # Collision radii.
    ship_radius: float = 8.0
    fortress_radius: float = 12.0
    projectile_radius: float = 2.0

    def __post_init__(self):
        # Coerce declared numeric types so a config rebuilt from JSON (where
        # 250.0 may arrive as 250) digests identically to the original.
        for name, field_def in self.__dataclass_fields__.items():
            if field_def.type in ("float", float):
                object.__setattr__(self, name, float(getattr(self, name)))
            elif field_def.type in ("int", int):
                object.__setattr__(self, name, int(getattr(self, name)))
        self.validate()

    def validate(self) -> None:
        checks = [
            (self.fps > 0, "fps must be > 0"),
            (self.episode_seconds > 0, "episode_seconds must be > 0"),
            (self.critical_interval_ms > 0, "critical_interval_ms must be > 0"),
            (self.vulnerability_threshold >= 1, "vulnerability_threshold must be >= 1"),
            (self.inner_hex_radius < self.outer_hex_radius,
             "inner_hex_radius must be < outer_hex_radius"),
            (self.game_version in (AUTOTURN, YOUTURN),
             f"game_version must be {AUTOTURN!r} or {YOUTURN!r}"),
        ]
        for name in ("outer_hex_radius", "inner_hex_radius", "thrust_accel",
                     "ship_turn_rate", "max_speed", "missile_speed", "shell_speed",
                     "fortress_lock_tolerance_deg", "fortress_shell_cooldown_ms",
                     "fortress_turn_rate", "ship_radius", "fortress_radius",
                     "projectile_radius"):
            checks.append((getattr(self, name) > 0, f"{name} must be > 0"))
        checks.append((self.spawn_speed >= 0, "spawn_speed must be >= 0"))
        checks.append((self.spawn_clearance >= 0, "spawn_clearance must be >= 0"))
        for ok, msg in checks:
            if not ok:
                raise ConfigError(msg)

    @property
    def dt(self) -> float:
        """Seconds per frame."""
        return 1.0 / self.fps

    @property
    def frame_ms(self) -> float:
        return 1000.0 / self.fps

    @property
    def episode_frames(self) -> int:
        return self.fps * self.episode_seconds

    @property
    def n_actions(self) -> int:
        return 3 if self.game_version == AUTOTURN else 5

    def with_critical_interval(self, ms: float) -> "SimConfig":
        return replace(self, critical_interval_ms=float(ms))

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "SimConfig":
        return cls(**d)

    def digest(self) -> str:
        """Stable hex digest of the full configuration (first 16 hex chars)."""
        blob = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


_BOOL = {"true": True, "false": False, "yes": True, "no": False}


def _coerce(value: str):
    v = value.strip()
    low = v.lower()
    if low in _BOOL:
        return _BOOL[low]
    try:
        return int(v)
    except ValueError:
        pass
    try:
        return float(v)
    except ValueError:
        return v


def load_config_file(path) -> dict:
    """Parse a key=value config file; '#' starts a comment, blank lines skipped."""
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
            key, value = line.split("=", 1)
            out[key.strip()] = _coerce(value)
    return out


def make_config(overrides: dict | None = None, **kwargs) -> SimConfig:
    """Build a SimConfig from the defaults, a config-file dict, and kwargs."""
    merged = {}
    if overrides:
        merged.update(overrides)
    merged.update(kwargs)
    known = {f for f in SimConfig.__dataclass_fields__}
    unknown = set(merged) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return SimConfig(**merged)
