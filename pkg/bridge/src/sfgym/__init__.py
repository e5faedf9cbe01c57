"""Standard-API environment bridge over the spacefortress simulator.

The bridge holds no game logic: it delegates every call to the native
`spacefortress` environment and mirrors its observations bit-for-bit.
Four env ids cover the (game version x observation mode) grid:

    SpaceFortress-Autoturn-Feature-v0
    SpaceFortress-Autoturn-Pixel-v0
    SpaceFortress-Youturn-Feature-v0
    SpaceFortress-Youturn-Pixel-v0

`make(env_id, **kwargs)` accepts scheme="sparse"|"dense"|"aeci",
seed=int, interval_ms=float, and include_clock=bool.
"""

from .envs import ENV_IDS, SpaceFortressGymEnv, make
from .spaces import Box, Discrete

__all__ = ["ENV_IDS", "SpaceFortressGymEnv", "make", "Box", "Discrete"]
