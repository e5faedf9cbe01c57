"""Space Fortress: a deterministic arcade simulation built for RL research.

The fortress sits at the arena center behind an inner hexagon wall; the
ship flies the frictionless annulus between the hexagons and shoots it.
Missile hits spaced slower than the critical interval build the fortress'
vulnerability; at the threshold the required cadence flips and a rapid
double shot destroys it, resetting the counter and continuing the episode.
"""

__version__ = "0.1.0"

from .config import AUTOTURN, YOUTURN, SimConfig, make_config
from .env import EpisodeLog, ReplayReport, SpaceFortressEnv, StepResult, VectorEnv, replay
from .errors import (ActionError, CheckpointError, ConfigError,
                     LifecycleError, ReplayError, SpaceFortressError,
                     TrainingDiverged)
from .events import (FortressDestroyed, FortressHit, MissileFired, ShellFired,
                     ShipDestroyed, SimEvent, VulnerabilityReset)
from .observe import FEATURE, PIXEL, feature_obs
from .render import render_frame
from .rewards import (AECI, DENSE, SPARSE, RewardScheme, ScoreState,
                      display_score_update, make_scheme, reward_from_events)
from .sim import (GameState, collision_check, fortress_update, new_game,
                  respawn_ship, state_hash, step_sim)
from .vulnerability import VulnerabilityTracker, update_vulnerability

__all__ = [
    "AUTOTURN", "YOUTURN", "SimConfig", "make_config",
    "EpisodeLog", "ReplayReport", "SpaceFortressEnv", "StepResult",
    "VectorEnv", "replay",
    "ActionError", "CheckpointError", "ConfigError", "LifecycleError",
    "ReplayError", "SpaceFortressError", "TrainingDiverged",
    "FortressDestroyed", "FortressHit", "MissileFired", "ShellFired",
    "ShipDestroyed", "SimEvent", "VulnerabilityReset",
    "FEATURE", "PIXEL", "feature_obs", "render_frame",
    "AECI", "DENSE", "SPARSE", "RewardScheme", "ScoreState",
    "display_score_update", "make_scheme", "reward_from_events",
    "GameState", "collision_check", "fortress_update", "new_game",
    "respawn_ship", "state_hash", "step_sim",
    "VulnerabilityTracker", "update_vulnerability",
]
