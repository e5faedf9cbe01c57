"""Vulnerability state machine vs a table-driven rule oracle."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from spacefortress.events import (FortressDestroyed, FortressHit,
                                  VulnerabilityReset)
from spacefortress.vulnerability import (BUILDING, VULNERABLE,
                                         VulnerabilityTracker,
                                         min_slow_gap_frames,
                                         update_vulnerability)

THRESHOLD = 10
CRITICAL = 250.0


def rule_oracle(v, threshold, gap_kind):
    """Independent enumeration of the rule table.

    gap_kind: 'fast', 'slow', or 'first'. Returns (new_v, event_kind,
    event_arg). A first-ever hit has an unbounded gap and is slow. A fast
    hit with nothing on the counter registers without a reset event
    (reset events always carry from_v >= 1).
    """
    vulnerable = v >= threshold
    fast = gap_kind == "fast"
    if not vulnerable:
        if fast:
            if v == 0:
                return 0, "hit", 0
            return 0, "reset", v
        return min(v + 1, threshold), "hit", 1
    if fast:
        return v, "destroyed", None
    return v, "hit", 0


def event_kind(ev):
    if isinstance(ev, FortressHit):
        return "hit", ev.delta
    if isinstance(ev, VulnerabilityReset):
        return "reset", ev.from_v
    if isinstance(ev, FortressDestroyed):
        return "destroyed", None
    raise AssertionError(f"unexpected event {ev!r}")


def all_cells():
    for v in range(THRESHOLD + 1):
        for gap in ("fast", "slow", "first"):
            yield v, gap


@pytest.mark.parametrize("v,gap", list(all_cells()))
def test_ms_rule_matches_oracle_cell(v, gap):
    if gap == "first":
        tracker = VulnerabilityTracker(v=v, threshold=THRESHOLD)
        hit_ms = 1000.0
    else:
        tracker = VulnerabilityTracker(v=v, threshold=THRESHOLD, last_shot_ms=1000.0)
        hit_ms = 1000.0 + (100.0 if gap == "fast" else 300.0)
    new, ev = update_vulnerability(tracker, hit_ms, CRITICAL, THRESHOLD)
    want_v, want_kind, want_arg = rule_oracle(v, THRESHOLD, gap)
    assert new.v == want_v
    assert event_kind(ev) == (want_kind, want_arg)
    assert new.last_shot_ms == hit_ms
    # Original tracker untouched (pure form).
    assert tracker.v == v


@pytest.mark.parametrize("v,gap", list(all_cells()))
def test_frame_rule_matches_oracle_cell(v, gap):
    fps = 30
    tracker = VulnerabilityTracker(v=v, threshold=THRESHOLD)
    if gap == "first":
        hit_frame = 30
    else:
        tracker.last_shot_frame = 30
        hit_frame = 30 + (7 if gap == "fast" else 8)  # 233.3 ms vs 266.7 ms
    ev = tracker.register_hit_frame(hit_frame, fps, CRITICAL)
    want_v, want_kind, want_arg = rule_oracle(v, THRESHOLD, gap)
    assert tracker.v == want_v
    assert event_kind(ev) == (want_kind, want_arg)
    assert tracker.last_shot_frame == hit_frame


def test_spec_cells_at_defaults():
    # Building, slow gap: builds by one.
    t = VulnerabilityTracker(v=3, threshold=10, last_shot_ms=0.0)
    t2, ev = update_vulnerability(t, 300.0, 250.0, 10)
    assert t2.v == 4 and ev == FortressHit(delta=1)

    # Building, fast gap: reset to zero.
    t = VulnerabilityTracker(v=3, threshold=10, last_shot_ms=0.0)
    t2, ev = update_vulnerability(t, 200.0, 250.0, 10)
    assert t2.v == 0 and ev == VulnerabilityReset(from_v=3)

    # Vulnerable, fast gap: destroyed.
    t = VulnerabilityTracker(v=10, threshold=10, last_shot_ms=0.0)
    t2, ev = update_vulnerability(t, 200.0, 250.0, 10)
    assert ev == FortressDestroyed()

    # Vulnerable, slow gap: nothing changes.
    t = VulnerabilityTracker(v=10, threshold=10, last_shot_ms=0.0)
    t2, ev = update_vulnerability(t, 400.0, 250.0, 10)
    assert t2.v == 10 and ev == FortressHit(delta=0)


def test_exact_boundary_gap_is_slow():
    t = VulnerabilityTracker(v=5, threshold=10, last_shot_ms=100.0)
    t2, ev = update_vulnerability(t, 350.0, 250.0, 10)
    assert ev == FortressHit(delta=1)
    assert t2.v == 6


def test_frame_quantized_boundaries_at_30fps():
    # 250 ms = 7.5 frames: 7 frames is always fast, 8 always slow.
    fps = 30
    t = VulnerabilityTracker(v=4, threshold=10, last_shot_frame=100)
    ev = t.register_hit_frame(107, fps, 250.0)
    assert isinstance(ev, VulnerabilityReset)
    t = VulnerabilityTracker(v=4, threshold=10, last_shot_frame=100)
    ev = t.register_hit_frame(108, fps, 250.0)
    assert ev == FortressHit(delta=1)


def test_exact_frame_multiple_interval_is_slow():
    # 400 ms at 30 FPS is exactly 12 frames; the boundary lands on a frame
    # and must classify as slow.
    fps = 30
    t = VulnerabilityTracker(v=9, threshold=10, last_shot_frame=0)
    ev = t.register_hit_frame(12, fps, 400.0)
    assert ev == FortressHit(delta=1)
    t = VulnerabilityTracker(v=9, threshold=10, last_shot_frame=0)
    ev = t.register_hit_frame(11, fps, 400.0)
    assert isinstance(ev, VulnerabilityReset)


@pytest.mark.parametrize("critical,fps,want", [
    (250.0, 30, 8),
    (125.0, 30, 4),
    (400.0, 30, 12),
    (600.0, 30, 18),
    (250.0, 60, 15),
])
def test_min_slow_gap_frames(critical, fps, want):
    assert min_slow_gap_frames(critical, fps) == want
    # Definition check: the gap is slow, one frame less is fast.
    assert want * 1000 >= critical * fps
    assert (want - 1) * 1000 < critical * fps


@given(st.integers(0, 10), st.integers(1, 2000))
def test_phase_is_pure_function_of_v(v, frame):
    t = VulnerabilityTracker(v=v, threshold=10, last_shot_frame=frame)
    assert t.phase == (VULNERABLE if v >= 10 else BUILDING)


@given(st.lists(st.integers(1, 30), min_size=1, max_size=120))
def test_reset_events_always_carry_positive_from_v(gaps):
    fps = 30
    t = VulnerabilityTracker(threshold=10)
    frame = 0
    for gap in gaps:
        frame += gap
        ev = t.register_hit_frame(frame, fps, 250.0)
        if isinstance(ev, VulnerabilityReset):
            assert ev.from_v >= 1
        if isinstance(ev, FortressDestroyed):
            t.reset()


@given(st.lists(st.integers(1, 30), min_size=1, max_size=120))
def test_v_bounded_and_monotone_between_resets(gaps):
    """Feeding arbitrary hit gaps: v stays in [0, threshold] and only drops
    on a reset or a destruction."""
    fps = 30
    t = VulnerabilityTracker(threshold=10)
    frame = 0
    prev_v = 0
    for gap in gaps:
        frame += gap
        ev = t.register_hit_frame(frame, fps, 250.0)
        assert 0 <= t.v <= 10
        if isinstance(ev, FortressHit):
            assert t.v >= prev_v or ev.delta == 0
        elif isinstance(ev, VulnerabilityReset):
            assert t.v == 0
        elif isinstance(ev, FortressDestroyed):
            t.reset()
            assert t.v == 0 and t.last_shot_frame is None
        prev_v = t.v
