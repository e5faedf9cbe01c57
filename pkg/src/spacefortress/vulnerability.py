"""The fortress vulnerability state machine.

Each missile hit either builds the counter, resets it, destroys the
fortress, or does nothing, depending on the phase and on how long after the
previous hit it lands. The split between "fast" and "slow" is:

    fast  iff  dt <  critical_interval
    slow  iff  dt >= critical_interval

so a gap of exactly the critical interval counts as slow. Timing inside the
simulation is frame-quantized; ``register_hit_frame`` compares
``dt_frames * 1000  <  critical_ms * fps`` in exact arithmetic instead of
deriving fractional milliseconds, so exact frame multiples of the interval
(e.g. 400 ms at 30 FPS) classify without float drift. The millisecond-domain
``update_vulnerability`` applies the same rule cells to explicit timestamps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .events import FortressDestroyed, FortressHit, SimEvent, VulnerabilityReset

BUILDING = "building"
VULNERABLE = "vulnerable"


@dataclass
class VulnerabilityTracker:
    v: int = 0
    threshold: int = 10
    last_shot_ms: float | None = None    # derived display value; None before first hit
    last_shot_frame: int | None = None   # exact sim bookkeeping

    @property
    def phase(self) -> str:
        return VULNERABLE if self.v >= self.threshold else BUILDING

    def copy(self) -> "VulnerabilityTracker":
        return VulnerabilityTracker(self.v, self.threshold,
                                    self.last_shot_ms, self.last_shot_frame)

    def reset(self) -> None:
        """Fresh machine after a fortress destruction."""
        self.v = 0
        self.last_shot_ms = None
        self.last_shot_frame = None

    def register_hit_frame(self, hit_frame: int, fps: int,
                           critical_ms: float) -> SimEvent:
        """Apply one missile hit landing at `hit_frame`; returns the event."""
        if self.last_shot_frame is None:
            fast = False
        else:
            dt_frames = hit_frame - self.last_shot_frame
            fast = dt_frames * 1000 < critical_ms * fps
        event = apply_hit_rule(self, fast)
        self.last_shot_frame = hit_frame
        self.last_shot_ms = hit_frame * (1000.0 / fps)
        return event


def apply_hit_rule(tracker: VulnerabilityTracker, fast: bool) -> SimEvent:
    """The four rule cells; mutates v, leaves timestamps to the caller."""
    if tracker.phase == BUILDING:
        if fast:
            from_v = tracker.v
            tracker.v = 0
            if from_v == 0:
                # Nothing to lose: a fast hit at zero registers without a
                # reset event (resets always carry from_v >= 1).
                return FortressHit(delta=0)
            return VulnerabilityReset(from_v=from_v)
        tracker.v = min(tracker.v + 1, tracker.threshold)
        return FortressHit(delta=1)
    # Vulnerable: the required cadence flips.
    if fast:
        return FortressDestroyed()
    return FortressHit(delta=0)


def update_vulnerability(tracker: VulnerabilityTracker, hit_time_ms: float,
                         critical_interval_ms: float,
                         threshold: int) -> tuple[VulnerabilityTracker, SimEvent]:
    """Millisecond-domain form of the hit rule (pure; returns a new tracker).

    The caller guarantees hit_time_ms is strictly after the previous hit.
    The first hit ever counts as slow (dt = +inf).
    """
    out = tracker.copy()
    out.threshold = threshold
    fast = (tracker.last_shot_ms is not None
            and hit_time_ms - tracker.last_shot_ms < critical_interval_ms)
    event = apply_hit_rule(out, fast)
    out.last_shot_ms = hit_time_ms
    out.last_shot_frame = None
    return out, event


def min_slow_gap_frames(critical_ms: float, fps: int) -> int:
    """Smallest whole-frame hit gap that still counts as slow."""
    k = math.ceil(critical_ms * fps / 1000.0)
    # Exact multiples classify as slow, so ceil is already correct; guard
    # against float ceil landing one short of the exact product.
    while k * 1000 < critical_ms * fps:
        k += 1
    return max(k, 1)
