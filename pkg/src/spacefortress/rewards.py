"""Training rewards and the human-facing display score.

Three reward schemes share one constants table:

* sparse - clipped arcade events only: +1 destruction, -1 ship death,
  -0.05 per missile.
* dense  - sparse plus +1 for every registered fortress hit and a flat -1
  when the vulnerability counter resets.
* aeci   - sparse plus +-1 per unit of vulnerability change (a reset from
  v=7 costs -7) and a +2 destruction bonus on top of the +1 base.

The display score is a separate, unclipped ledger: +100 per fortress
destruction, -100 per ship death, -2 per missile.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigError
from .events import (FortressDestroyed, FortressHit, MissileFired,
                     ShipDestroyed, SimEvent, VulnerabilityReset)

SPARSE = "sparse"
DENSE = "dense"
AECI = "aeci"

SCHEME_KINDS = (SPARSE, DENSE, AECI)

DISPLAY_DESTRUCTION = 100
DISPLAY_SHIP_DEATH = -100
DISPLAY_MISSILE = -2


@dataclass(frozen=True)
class RewardScheme:
    kind: str
    destruction: float = 1.0
    ship_death: float = -1.0
    missile: float = -0.05
    hit: float = 0.0                # per registered hit (dense)
    reset_penalty: float = 0.0      # flat, per reset event (dense)
    vuln_delta: float = 0.0         # per unit of v change (aeci)
    destruction_bonus: float = 0.0  # on top of the clipped base (aeci)


def make_scheme(kind: str) -> RewardScheme:
    if kind == SPARSE:
        return RewardScheme(SPARSE)
    if kind == DENSE:
        return RewardScheme(DENSE, hit=1.0, reset_penalty=-1.0)
    if kind == AECI:
        return RewardScheme(AECI, vuln_delta=1.0, destruction_bonus=2.0)
    raise ConfigError(f"unknown reward scheme {kind!r}; expected one of {SCHEME_KINDS}")


def reward_from_events(events: list[SimEvent], scheme: RewardScheme) -> float:
    """Sum the scheme's per-event rewards for one frame of events."""
    total = 0.0
    for ev in events:
        if isinstance(ev, MissileFired):
            total += scheme.missile
        elif isinstance(ev, FortressHit):
            total += scheme.hit + scheme.vuln_delta * ev.delta
        elif isinstance(ev, VulnerabilityReset):
            total += scheme.reset_penalty - scheme.vuln_delta * ev.from_v
        elif isinstance(ev, FortressDestroyed):
            total += scheme.destruction + scheme.destruction_bonus
        elif isinstance(ev, ShipDestroyed):
            total += scheme.ship_death
    return total


@dataclass
class ScoreState:
    display_score: int = 0
    fortress_deaths: int = 0
    ship_deaths: int = 0
    missiles_fired: int = 0

    def copy(self) -> "ScoreState":
        return ScoreState(self.display_score, self.fortress_deaths,
                          self.ship_deaths, self.missiles_fired)


def display_score_update(score: ScoreState, events: list[SimEvent]) -> ScoreState:
    """Integer score ledger; the invariant
    score = 100*FD - 100*SD - 2*missiles holds exactly at every frame."""
    out = score.copy()
    for ev in events:
        if isinstance(ev, FortressDestroyed):
            out.fortress_deaths += 1
            out.display_score += DISPLAY_DESTRUCTION
        elif isinstance(ev, ShipDestroyed):
            out.ship_deaths += 1
            out.display_score += DISPLAY_SHIP_DEATH
        elif isinstance(ev, MissileFired):
            out.missiles_fired += 1
            out.display_score += DISPLAY_MISSILE
    return out


def display_score_from_counts(fortress_deaths: int, ship_deaths: int,
                              missiles_fired: int) -> int:
    return (DISPLAY_DESTRUCTION * fortress_deaths
            + DISPLAY_SHIP_DEATH * ship_deaths
            + DISPLAY_MISSILE * missiles_fired)
