"""Built-in policies: a rule-following oracle plus random/no-op baselines.

The oracle is a validator, not a learner: it reads the privileged
GameState. It plays the cadence game exactly:

* building phase - fire missiles whose *predicted hit times* stay at least
  one critical interval apart (hit spacing is what the fortress tracks, so
  the oracle schedules hits, not trigger pulls);
* vulnerable phase - keep exactly two missiles in the air on consecutive
  frames; they land one frame apart, well inside the fast window, and the
  second of the pair (or the pair with the threshold-reaching hit) destroys
  the fortress.

In Autoturn the ship's only freedom is radial thrust, which cannot create
angular momentum; survival therefore relies on the tangential drift the
ship spawns with. The oracle holds a mid-annulus orbit - shells are aimed
at the ship's position at fire time and an orbiting ship is tens of units
away by the time they arrive. In Youturn the oracle aims before firing and
uses rotation to dodge and to re-establish an orbit after a respawn.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .config import WORLD_CENTER, AUTOTURN, SimConfig
from .geometry import heading_vector, wrap_degrees
from .sim import (FIRE, MISSILE, NOOP, SHELL, THRUST, TURN_LEFT, TURN_RIGHT,
                  GameState)
from .vulnerability import min_slow_gap_frames


@dataclass(frozen=True)
class OraclePolicy:
    fire_period_frames: int = 8       # nominal slow cadence at defaults
    aim_tolerance_deg: float = 5.0    # Youturn fire gate
    dodge: bool = True
    orbit_radius: float = 130.0
    orbit_lead_s: float = 0.8         # radial look-ahead for thrust control
    min_orbit_speed: float = 25.0     # below this, thrusting is radial suicide


def noop_act() -> int:
    return NOOP


def random_act(rng: random.Random, config: SimConfig) -> int:
    return rng.randrange(config.n_actions)


# -- oracle internals ------------------------------------------------------

def _predicted_hit_frame(x: float, y: float, vx: float, vy: float,
                         cfg: SimConfig, base_frame: int,
                         max_frames: int = 240) -> int | None:
    """Frame at which a projectile on a straight path registers a fortress
    hit, or None if it will miss. Mirrors the sim's per-frame advance-then-
    check ordering exactly."""
    cx, cy = WORLD_CENTER
    hit_r = cfg.fortress_radius + cfg.projectile_radius
    hit_r2 = hit_r * hit_r
    dt = cfg.dt
    px, py = x, y
    prev_d2 = math.inf
    for k in range(1, max_frames + 1):
        px += vx * dt
        py += vy * dt
        dx = px - cx
        dy = py - cy
        d2 = dx * dx + dy * dy
        if d2 <= hit_r2:
            return base_frame + k
        if d2 > prev_d2:
            return None  # receding: the path misses
        prev_d2 = d2
    return None


def _pending_hits(state: GameState) -> list[int]:
    out = []
    for p in state.projectiles:
        if p.kind != MISSILE:
            continue
        hit = _predicted_hit_frame(p.x, p.y, p.vx, p.vy, state.config, state.frame)
        if hit is not None:
            out.append(hit)
    out.sort()
    return out


def _fire_now_hit_frame(state: GameState, heading: float) -> int | None:
    """Predicted hit frame for a missile fired on this very step."""
    cfg = state.config
    ship = state.ship
    hx, hy = heading_vector(heading)
    offset = cfg.ship_radius + cfg.projectile_radius + 1.0
    return _predicted_hit_frame(ship.x + hx * offset, ship.y + hy * offset,
                                hx * cfg.missile_speed, hy * cfg.missile_speed,
                                cfg, state.frame)


def _destruction_scheduled(state: GameState, pending: list[int]) -> bool:
    """True when some already-airborne pair of hits will land fast enough
    to finish a vulnerable fortress without further shots."""
    cfg = state.config
    times = pending if state.vuln.last_shot_frame is None \
        else [state.vuln.last_shot_frame] + pending
    for a, b in zip(times, times[1:]):
        if (b - a) * 1000 < cfg.critical_interval_ms * cfg.fps:
            return True
    return False


def _wants_fire(state: GameState, policy: OraclePolicy, heading: float) -> bool:
    cfg = state.config
    candidate = _fire_now_hit_frame(state, heading)
    if candidate is None:
        return False
    pending = _pending_hits(state)

    if state.vuln.v >= cfg.vulnerability_threshold:
        # Vulnerable: put exactly two missiles in the air on consecutive
        # frames; they land one frame apart, and stop as soon as a landing
        # pair already guarantees the destruction.
        if _destruction_scheduled(state, pending):
            return False
        return len(pending) < 2

    if state.vuln.v + len(pending) >= cfg.vulnerability_threshold:
        # The threshold-reaching hit is still in the air; hold until the
        # counter actually flips so the double is a clean pair.
        return False

    # Building: the new hit must land a slow gap after the last committed
    # hit, whether that hit already happened or is still in the air.
    min_gap = max(min_slow_gap_frames(cfg.critical_interval_ms, cfg.fps),
                  policy.fire_period_frames)
    last = state.vuln.last_shot_frame
    if pending:
        last = pending[-1] if last is None else max(last, pending[-1])
    return last is None or candidate - last >= min_gap


def _radial_state(state: GameState) -> tuple[float, float, float]:
    """(radius, radial velocity, tangential speed) about the arena center."""
    cx, cy = WORLD_CENTER
    ship = state.ship
    dx = ship.x - cx
    dy = ship.y - cy
    r = math.sqrt(dx * dx + dy * dy)
    v_r = (dx * ship.vx + dy * ship.vy) / r
    v_t = (dx * ship.vy - dy * ship.vx) / r
    return r, v_r, v_t


def _wants_thrust_autoturn(state: GameState, policy: OraclePolicy) -> bool:
    r, v_r, v_t = _radial_state(state)
    if abs(v_t) < policy.min_orbit_speed:
        # No angular momentum: radial thrust would just dive at the
        # fortress. Sit still and keep shooting.
        return False
    return r + v_r * policy.orbit_lead_s > policy.orbit_radius


def _shell_threat(state: GameState) -> tuple[float, float] | None:
    """Closest-approach vector of the most pressing shell, if any gets near."""
    ship = state.ship
    threat = None
    threat_d2 = 18.0 * 18.0
    dt = state.config.dt
    for p in state.projectiles:
        if p.kind != SHELL:
            continue
        # Relative closest approach of two constant-velocity points.
        rx = p.x - ship.x
        ry = p.y - ship.y
        wx = p.vx - ship.vx
        wy = p.vy - ship.vy
        w2 = wx * wx + wy * wy
        if w2 == 0.0:
            continue
        t_star = -(rx * wx + ry * wy) / w2
        if t_star < 0.0 or t_star > 3.0:
            continue
        qx = rx + wx * t_star
        qy = ry + wy * t_star
        d2 = qx * qx + qy * qy
        if d2 < threat_d2:
            threat_d2 = d2
            threat = (p.x + p.vx * t_star - (ship.x + ship.vx * t_star),
                      p.y + p.vy * t_star - (ship.y + ship.vy * t_star))
    return threat


def oracle_act(state: GameState, policy: OraclePolicy | None = None) -> int:
    """Pure function of the privileged state; no internal memory."""
    if policy is None:
        policy = OraclePolicy()
    cfg = state.config
    cx, cy = WORLD_CENTER
    ship = state.ship
    if not ship.alive:
        return NOOP  # respawn happens at the start of the next step

    if cfg.game_version == AUTOTURN:
        heading = math.degrees(math.atan2(cy - ship.y, cx - ship.x))
        if _wants_fire(state, policy, heading):
            return FIRE
        if _wants_thrust_autoturn(state, policy):
            return THRUST
        return NOOP

    # -- Youturn -----------------------------------------------------------
    bearing = math.degrees(math.atan2(cy - ship.y, cx - ship.x))
    err = wrap_degrees(bearing - ship.heading)
    r, v_r, v_t = _radial_state(state)

    def turn_toward(target_heading: float, slack: float) -> int | None:
        d = wrap_degrees(target_heading - ship.heading)
        if abs(d) > slack:
            return TURN_RIGHT if d > 0 else TURN_LEFT
        return None

    # Predictive wall emergencies trump everything.
    if r + v_r * 1.2 > cfg.outer_hex_radius * 0.8:
        return turn_toward(bearing, 30.0) or THRUST
    if r + v_r * 1.2 < cfg.inner_hex_radius + 25.0:
        return turn_toward(bearing + 180.0, 30.0) or THRUST

    if policy.dodge:
        threat = _shell_threat(state)
        if threat is not None:
            # Step aside along whichever perpendicular needs less turning;
            # shells fly radially, so this doubles as orbit-building.
            toward = math.degrees(math.atan2(threat[1], threat[0]))
            options = (wrap_degrees(toward + 90.0), wrap_degrees(toward - 90.0))
            side = min(options,
                       key=lambda h: abs(wrap_degrees(h - ship.heading)))
            return turn_toward(side, 60.0) or THRUST

    if abs(v_t) < policy.min_orbit_speed:
        # Too little angular momentum to survive long; build some before
        # settling into the firing pattern.
        sign = 90.0 if v_t >= 0 else -90.0
        return turn_toward(bearing + sign, 30.0) or THRUST

    if abs(err) <= policy.aim_tolerance_deg:
        if _wants_fire(state, policy, ship.heading):
            return FIRE
        if r + v_r * policy.orbit_lead_s > policy.orbit_radius:
            return THRUST
        return NOOP
    return TURN_RIGHT if err > 0 else TURN_LEFT


def act(agent: str, state: GameState, policy: OraclePolicy,
        rng: random.Random) -> int:
    if agent == "oracle":
        return oracle_act(state, policy)
    if agent == "random":
        return random_act(rng, state.config)
    if agent == "noop":
        return noop_act()
    raise ValueError(f"unknown agent {agent!r}")
