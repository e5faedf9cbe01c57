"""Deterministic fixed-timestep Space Fortress simulation.

One call to :func:`step_sim` advances exactly one frame. Within a frame the
order of operations is fixed:

1. respawn the ship if it died last frame (velocity zero, seeded draws)
2. Autoturn only: overwrite the ship heading to point at the fortress
3. apply the action (fire / thrust / rotate)
4. integrate frictionless ship motion
5. fortress AI: rotate toward the ship, fire a shell when locked and off
   cooldown
6. move projectiles
7. resolve collisions in fixed order: missile->fortress, shell->ship,
   ship->walls; then despawn out-of-bounds projectiles

Everything is a pure function of (seed, action sequence): replaying the
same inputs reproduces every float bit-exactly, which `state_hash` makes
checkable per frame.
"""

from __future__ import annotations

import hashlib
import math
import random
import struct
from dataclasses import dataclass

from .config import SimConfig, WORLD_CENTER, AUTOTURN
from .errors import ActionError, LifecycleError
from .events import (FortressDestroyed, MissileFired, ShellFired, ShipDestroyed,
                     SimEvent)
from .geometry import Hexagon, bearing_degrees, heading_vector, wrap_degrees
from .vulnerability import VulnerabilityTracker

# Action ids. Autoturn uses the first three; Youturn all five.
NOOP = 0
FIRE = 1
THRUST = 2
TURN_RIGHT = 3   # rotate right without changing position
TURN_LEFT = 4    # rotate left without changing position

ACTION_NAMES = {NOOP: "noop", FIRE: "fire", THRUST: "thrust",
                TURN_RIGHT: "right", TURN_LEFT: "left"}

MISSILE = "missile"
SHELL = "shell"


@dataclass(slots=True)
class ShipState:
    x: float
    y: float
    vx: float
    vy: float
    heading: float
    alive: bool = True


@dataclass(slots=True)
class FortressState:
    heading: float
    frames_since_shell: int = 0
    alive: bool = True

    def ms_since_last_shell(self, fps: int) -> float:
        return self.frames_since_shell * (1000.0 / fps)


@dataclass(slots=True)
class Projectile:
    kind: str
    x: float
    y: float
    vx: float
    vy: float
    age_frames: int = 0


@dataclass(slots=True)
class ContactReport:
    """Raw collision detections for one frame, before any rules apply."""
    missile_hits: list          # indices into state.projectiles
    shell_hits: list            # indices into state.projectiles
    ship_hit_wall: bool
    out_of_bounds: list         # projectile indices leaving the outer hexagon

    def is_empty(self) -> bool:
        return (not self.missile_hits and not self.shell_hits
                and not self.ship_hit_wall and not self.out_of_bounds)


class GameState:
    """Full simulation snapshot plus cached arena geometry."""

    __slots__ = ("config", "frame", "rng", "ship", "fortress", "projectiles",
                 "vuln", "fortress_deaths", "ship_deaths", "missiles_fired",
                 "outer_hex", "inner_hex", "spawn_outer", "spawn_inner")

    def __init__(self, config: SimConfig, rng: random.Random):
        cx, cy = WORLD_CENTER
        self.config = config
        self.rng = rng
        self.frame = 0
        self.projectiles: list[Projectile] = []
        self.vuln = VulnerabilityTracker(threshold=config.vulnerability_threshold)
        self.fortress = FortressState(heading=0.0)
        self.fortress_deaths = 0
        self.ship_deaths = 0
        self.missiles_fired = 0
        self.outer_hex = Hexagon(cx, cy, config.outer_hex_radius)
        self.inner_hex = Hexagon(cx, cy, config.inner_hex_radius)
        self.spawn_outer = Hexagon(cx, cy, config.outer_hex_radius - config.spawn_clearance)
        self.spawn_inner = Hexagon(cx, cy, config.inner_hex_radius + config.spawn_clearance)
        self.ship = ShipState(cx, cy, 0.0, 0.0, 0.0)  # placed by new_game

    @property
    def done(self) -> bool:
        return self.frame >= self.config.episode_frames

    @property
    def time_ms(self) -> float:
        return self.frame * (1000.0 / self.config.fps)

def action_space_size(config: SimConfig) -> int:
    return config.n_actions


def validate_action(action: int, config: SimConfig) -> None:
    if not isinstance(action, int) or isinstance(action, bool):
        raise ActionError(f"action must be an int, got {action!r}")
    if not 0 <= action < config.n_actions:
        raise ActionError(
            f"action {action} out of range for {config.game_version} "
            f"({config.n_actions} actions)")


def _sample_spawn_position(rng: random.Random, state: GameState) -> tuple[float, float]:
    """Uniform over the hex annulus shrunk by the clearance margin."""
    cx, cy = WORLD_CENTER
    r = state.config.outer_hex_radius
    while True:
        px = cx + (rng.random() * 2.0 - 1.0) * r
        py = cy + (rng.random() * 2.0 - 1.0) * r
        if state.spawn_outer.contains(px, py) and not state.spawn_inner.contains(px, py):
            return px, py


def respawn_ship(rng: random.Random, state: GameState) -> ShipState:
    """Mid-episode respawn: random pose, zero velocity."""
    px, py = _sample_spawn_position(rng, state)
    heading = rng.random() * 360.0
    return ShipState(px, py, 0.0, 0.0, heading)


def _initial_ship(rng: random.Random, state: GameState) -> ShipState:
    """Episode-start spawn: like a respawn but with tangential drift so the
    ship starts on an orbit-capable trajectory (Autoturn thrust is purely
    radial and cannot create angular momentum)."""
    ship = respawn_ship(rng, state)
    cx, cy = WORLD_CENTER
    dx = ship.x - cx
    dy = ship.y - cy
    norm = math.sqrt(dx * dx + dy * dy)
    sign = 1.0 if rng.random() < 0.5 else -1.0
    speed = state.config.spawn_speed
    ship.vx = -dy / norm * speed * sign
    ship.vy = dx / norm * speed * sign
    return ship


def new_game(config: SimConfig, seed: int) -> GameState:
    config.validate()
    rng = random.Random(seed)
    state = GameState(config, rng)
    state.ship = _initial_ship(rng, state)
    return state


def fortress_update(fortress: FortressState, ship: ShipState,
                    config: SimConfig) -> Projectile | None:
    """Advance the fortress AI one frame; returns a spawned shell, if any."""
    cx, cy = WORLD_CENTER
    bearing = bearing_degrees(cx, cy, ship.x, ship.y)
    err = wrap_degrees(bearing - fortress.heading)
    max_turn = config.fortress_turn_rate * config.dt
    if abs(err) <= max_turn:
        fortress.heading = bearing
    else:
        fortress.heading += max_turn if err > 0 else -max_turn
    fortress.heading = fortress.heading % 360.0

    fortress.frames_since_shell += 1
    cooldown_done = (fortress.frames_since_shell * 1000
                     >= config.fortress_shell_cooldown_ms * config.fps)
    if cooldown_done and abs(err) <= config.fortress_lock_tolerance_deg:
        dx = ship.x - cx
        dy = ship.y - cy
        norm = math.sqrt(dx * dx + dy * dy)
        ux, uy = dx / norm, dy / norm
        offset = config.fortress_radius + config.projectile_radius + 1.0
        fortress.frames_since_shell = 0
        return Projectile(SHELL, cx + ux * offset, cy + uy * offset,
                          ux * config.shell_speed, uy * config.shell_speed)
    return None


def collision_check(state: GameState) -> ContactReport:
    """Detect all contacts for the current frame without applying them."""
    cfg = state.config
    cx, cy = WORLD_CENTER
    missile_hits: list[int] = []
    shell_hits: list[int] = []
    out_of_bounds: list[int] = []

    fort_r = cfg.fortress_radius + cfg.projectile_radius
    fort_r2 = fort_r * fort_r
    ship_r = cfg.ship_radius + cfg.projectile_radius
    ship_r2 = ship_r * ship_r
    ship = state.ship

    for i, p in enumerate(state.projectiles):
        if p.kind == MISSILE:
            dx = p.x - cx
            dy = p.y - cy
            if dx * dx + dy * dy <= fort_r2:
                missile_hits.append(i)
                continue
        else:
            if ship.alive:
                dx = p.x - ship.x
                dy = p.y - ship.y
                if dx * dx + dy * dy <= ship_r2:
                    shell_hits.append(i)
                    continue
        if not state.outer_hex.contains(p.x, p.y):
            out_of_bounds.append(i)

    ship_hit_wall = False
    if ship.alive:
        inside_outer = state.outer_hex.contains(ship.x, ship.y, strict=True)
        outside_inner = not state.inner_hex.contains(ship.x, ship.y)
        ship_hit_wall = not (inside_outer and outside_inner)

    return ContactReport(missile_hits, shell_hits, ship_hit_wall, out_of_bounds)


def _fire_missile(state: GameState) -> None:
    cfg = state.config
    ship = state.ship
    hx, hy = heading_vector(ship.heading)
    offset = cfg.ship_radius + cfg.projectile_radius + 1.0
    state.projectiles.append(Projectile(
        MISSILE, ship.x + hx * offset, ship.y + hy * offset,
        hx * cfg.missile_speed, hy * cfg.missile_speed))
    state.missiles_fired += 1


def resolve_fortress_destruction(state: GameState) -> None:
    """Reset-and-continue: counter cleared, fortress back next instant."""
    state.fortress.alive = False
    state.vuln.reset()
    state.fortress_deaths += 1
    state.fortress.frames_since_shell = 0
    state.fortress.alive = True


def step_sim(state: GameState, action: int) -> tuple[GameState, list[SimEvent]]:
    cfg = state.config
    if state.done:
        raise LifecycleError(
            f"episode already complete at frame {state.frame}; reset first")
    validate_action(action, cfg)

    events: list[SimEvent] = []
    dt = cfg.dt
    ship = state.ship

    # 1. Delayed respawn from last frame's death.
    if not ship.alive:
        state.ship = ship = respawn_ship(state.rng, state)

    # 2. Autoturn aiming happens before the action so a fired missile leaves
    #    along the corrected heading.
    cx, cy = WORLD_CENTER
    if cfg.game_version == AUTOTURN:
        ship.heading = bearing_degrees(ship.x, ship.y, cx, cy)

    # 3. Action.
    if action == FIRE:
        _fire_missile(state)
        events.append(MissileFired())
    elif action == THRUST:
        hx, hy = heading_vector(ship.heading)
        ship.vx += hx * cfg.thrust_accel * dt
        ship.vy += hy * cfg.thrust_accel * dt
        speed2 = ship.vx * ship.vx + ship.vy * ship.vy
        if speed2 > cfg.max_speed * cfg.max_speed:
            scale = cfg.max_speed / math.sqrt(speed2)
            ship.vx *= scale
            ship.vy *= scale
    elif action == TURN_RIGHT:
        ship.heading = (ship.heading + cfg.ship_turn_rate * dt) % 360.0
    elif action == TURN_LEFT:
        ship.heading = (ship.heading - cfg.ship_turn_rate * dt) % 360.0

    # 4. Frictionless integration.
    ship.x += ship.vx * dt
    ship.y += ship.vy * dt

    # 5. Fortress AI.
    shell = fortress_update(state.fortress, ship, cfg)
    if shell is not None:
        state.projectiles.append(shell)
        events.append(ShellFired())

    # 6. Projectiles advance.
    for p in state.projectiles:
        p.x += p.vx * dt
        p.y += p.vy * dt
        p.age_frames += 1

    # 7. Collisions, fixed order.
    report = collision_check(state)
    hit_frame = state.frame + 1
    removed = set(report.out_of_bounds)

    for i in report.missile_hits:
        removed.add(i)
        ev = state.vuln.register_hit_frame(hit_frame, cfg.fps,
                                           cfg.critical_interval_ms)
        events.append(ev)
        if isinstance(ev, FortressDestroyed):
            resolve_fortress_destruction(state)

    if report.shell_hits and ship.alive:
        removed.update(report.shell_hits)
        ship.alive = False
        state.ship_deaths += 1
        events.append(ShipDestroyed())

    if report.ship_hit_wall and ship.alive:
        ship.alive = False
        state.ship_deaths += 1
        events.append(ShipDestroyed())

    if removed:
        state.projectiles = [p for i, p in enumerate(state.projectiles)
                             if i not in removed]

    state.frame += 1
    return state, events


def state_hash(state: GameState) -> str:
    """Bit-exact digest of the simulation state (rng internals excluded)."""
    ship = state.ship
    fort = state.fortress
    parts = [struct.pack(
        "<qddddd?dq?qqqq",
        state.frame, ship.x, ship.y, ship.vx, ship.vy, ship.heading,
        ship.alive, fort.heading, fort.frames_since_shell, fort.alive,
        state.vuln.v,
        -1 if state.vuln.last_shot_frame is None else state.vuln.last_shot_frame,
        state.fortress_deaths, state.ship_deaths)]
    parts.append(struct.pack("<q", state.missiles_fired))
    for p in state.projectiles:
        parts.append(struct.pack("<cddddq", p.kind[:1].encode(), p.x, p.y,
                                 p.vx, p.vy, p.age_frames))
    return hashlib.sha256(b"".join(parts)).hexdigest()
