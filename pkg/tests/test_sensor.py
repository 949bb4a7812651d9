import math

import pytest

from streetwalker.geometry import GeometryError, Point2, SimplePolygon, dist
from streetwalker.sensor import (
    APPEARANCE,
    DISAPPEARANCE,
    MERGE,
    SPLIT,
    GapSensor,
    InvariantViolationError,
    funnel_transition,
    mark_primitive,
)
from streetwalker.streets import build_street
from streetwalker.generators import (
    gen_corridor,
    gen_event_showcase,
    gen_two_pocket,
)

from conftest import UNIT_SQUARE
from helpers import line_cross_x, sensing_walk


def test_sense_convex_no_gaps():
    street = build_street(SimplePolygon(UNIT_SQUARE), 0, 2)
    sensor = GapSensor(street)
    frame = sensor.sense(Point2(0.5, 0.5))
    assert frame.gaps == []
    assert frame.target_visible


def test_sense_rejects_exterior():
    street = build_street(SimplePolygon(UNIT_SQUARE), 0, 2)
    sensor = GapSensor(street)
    with pytest.raises(GeometryError):
        sensor.sense(Point2(2.0, 0.5))


def test_corridor_start_frame():
    street = gen_corridor(33.0)
    sensor = GapSensor(street)
    frame = sensor.sense(Point2(street.s.x, street.s.y + 0.02))
    assert not frame.target_visible
    sides = sorted(g.side for g in frame.gaps)
    assert "L" in sides and "R" in sides
    assert all(not g.primitive for g in frame.gaps)
    # gaps appear in increasing angular order
    angles = [g.angle() for g in frame.gaps]
    assert angles == sorted(angles)
    # one gap per reflex vertex at most
    anchors = [g.anchor_index for g in frame.gaps]
    assert len(anchors) == len(set(anchors))
    sensor.check_target_hidden(frame)


def test_advanced_gaps_two_pockets():
    street = gen_two_pocket(20.0)
    sensor = GapSensor(street)
    frame = sensor.sense(Point2(street.s.x, street.s.y + 0.02))
    same_side = {g.side for g in frame.gaps}
    assert len(same_side) == 1
    gl, gr = sensor.advanced_gaps(frame)
    advanced = gl if gl is not None else gr
    others = [g for g in frame.gaps if g.id != advanced.id]
    assert others
    # the advanced gap is the one whose pocket holds the target
    assert sensor.hidden_region_contains(frame, advanced, street.t)
    frac = street.chain_fraction
    assert all(frac(advanced.anchor_index) > frac(g.anchor_index)
               for g in others)


def test_theorem1_check_flags_wrong_blocker():
    street = gen_corridor(33.0)
    sensor = GapSensor(street)
    frame = sensor.sense(Point2(street.s.x, street.s.y + 0.02))
    # artificially mark the hiding gap primitive: the check must now fail
    blocker = sensor._hiding_gap(frame, street.t)
    blocker.primitive = True
    with pytest.raises(InvariantViolationError):
        sensor.check_target_hidden(frame)


def test_event_showcase_sequence_and_locations():
    street, info = gen_event_showcase()
    p0, aim = info["walk_start"], info["aim"]
    events = sensing_walk(street, p0, aim, info["walk_end_x"])
    kinds = [ev.kind for ev in events]
    assert kinds == [SPLIT, DISAPPEARANCE, APPEARANCE, SPLIT, MERGE]
    d = (aim.x - p0.x, aim.y - p0.y)
    n = math.hypot(*d)
    d = (d[0] / n, d[1] / n)
    for ev, (kind, a, b) in zip(events, info["lines"]):
        assert ev.kind == kind
        expected_x = line_cross_x(p0, d, a, b)
        assert abs(ev.location.x - expected_x) < 1e-3


def test_primitive_flags_through_showcase():
    street, info = gen_event_showcase()
    sensor = GapSensor(street)
    p0, aim = info["walk_start"], info["aim"]
    d = (aim.x - p0.x, aim.y - p0.y)
    n = math.hypot(*d)
    d = (d[0] / n, d[1] / n)
    pos = p0
    frame = sensor.sense(pos)
    assert all(not g.primitive for g in frame.gaps)
    by_event = {}
    for _ in range(200):
        if pos.x >= info["walk_end_x"]:
            break
        reach = (info["walk_end_x"] - pos.x) / d[0]
        target = Point2(pos.x + d[0] * reach, pos.y + d[1] * reach)
        clip = sensor.clip_motion(pos, target)
        nxt = clip if clip is not None else target
        q = Point2(nxt.x + d[0] * 1e-9, nxt.y + d[1] * 1e-9)
        new_frame = sensor.sense(q, prior=frame)
        for ev in sensor.diff_events(frame, new_frame, (frame.position, q)):
            by_event.setdefault(ev.kind, []).append((ev, new_frame))
        frame = new_frame
        pos = nxt
    # split children inherit the non-primitive parent flag
    ev, fr = by_event[SPLIT][0]
    child = fr.gap_by_id(ev.gap_ids[1])
    assert child is not None and not child.primitive
    # appeared gaps are primitive
    ev, fr = by_event[APPEARANCE][0]
    appeared = fr.gap_by_id(ev.gap_ids[0])
    assert appeared is not None and appeared.primitive
    # merging two non-primitive gaps keeps the absorber non-primitive
    ev, fr = by_event[MERGE][0]
    absorber = fr.gap_by_id(ev.gap_ids[0])
    assert absorber is not None and not absorber.primitive


def test_gap_ids_stable_across_untouched_frames():
    street, info = gen_event_showcase()
    sensor = GapSensor(street)
    f1 = sensor.sense(info["walk_start"])
    # small motion with no event line crossed
    q = Point2(info["walk_start"].x + 0.05, info["walk_start"].y)
    f2 = sensor.sense(q, prior=f1)
    assert sensor.diff_events(f1, f2) == []
    assert [(g.id, g.anchor_index, g.primitive) for g in f1.gaps] == \
           [(g.id, g.anchor_index, g.primitive) for g in f2.gaps]


def test_diff_events_subdivision_invariance():
    street, info = gen_event_showcase()
    sensor = GapSensor(street)
    a = Point2(7.0, 0.35 + 7.0 * 0.15 / 34.0)
    b = Point2(9.5, 0.35 + 9.5 * 0.15 / 34.0)
    mid = Point2(0.5 * (a.x + b.x), 0.5 * (a.y + b.y))
    fa = sensor.sense(a)
    fb = sensor.sense(b, prior=fa)
    whole = sensor.diff_events(fa, fb, (a, b))
    fm = sensor.sense(mid, prior=fa)
    half1 = sensor.diff_events(fa, fm, (a, mid))
    fb2 = sensor.sense(b, prior=fm)
    half2 = sensor.diff_events(fm, fb2, (mid, b))
    whole_sig = sorted((ev.kind, ev.anchor_index) for ev in whole)
    halves_sig = sorted((ev.kind, ev.anchor_index)
                        for ev in half1 + half2)
    assert whole_sig == halves_sig


def test_event_location_accuracy():
    street, info = gen_event_showcase()
    sensor = GapSensor(street)
    p0, aim = info["walk_start"], info["aim"]
    d = (aim.x - p0.x, aim.y - p0.y)
    n = math.hypot(*d)
    d = (d[0] / n, d[1] / n)
    # the first split fires crossing the (T2, T3) alignment line
    kind, a, b = info["lines"][0]
    x_star = line_cross_x(p0, d, a, b)
    t_star = (x_star - p0.x) / d[0]
    eps = 1e-4
    before = Point2(p0.x + (t_star - eps) * d[0],
                    p0.y + (t_star - eps) * d[1])
    after = Point2(p0.x + (t_star + eps) * d[0],
                   p0.y + (t_star + eps) * d[1])
    fb = sensor.sense(before)
    fa = sensor.sense(after)
    assert len(fa.gaps) == len(fb.gaps) + 1


def test_mark_primitive_rules():
    street, info = gen_event_showcase()
    sensor = GapSensor(street)
    frame = sensor.sense(info["walk_start"])
    gap = frame.gaps[0]
    from streetwalker.sensor import CriticalEvent
    ev = CriticalEvent(APPEARANCE, (gap.id,), frame.position, gap.anchor_index)
    mark_primitive(ev, frame)
    assert frame.gap_by_id(gap.id).primitive


def test_funnel_transition_rules():
    street = gen_corridor(33.0)
    sensor = GapSensor(street)
    frame = sensor.sense(Point2(street.s.x, street.s.y + 0.02))
    gl, gr = sensor.advanced_gaps(frame)
    from streetwalker.sensor import CriticalEvent
    # rule 3: disappearance of a pursued gap ends the funnel
    ev = CriticalEvent(DISAPPEARANCE, (gr.id,), frame.position, gr.anchor_index)
    assert funnel_transition(gl, gr, [ev], frame, sensor, "R")
    # an unrelated disappearance does not
    ev = CriticalEvent(DISAPPEARANCE, (999,), frame.position, 0)
    assert not funnel_transition(gl, gr, [ev], frame, sensor, "R")
    # a merge involving a pursued gap is an invariant violation
    ev = CriticalEvent(MERGE, (gl.id, gr.id), frame.position, gl.anchor_index)
    with pytest.raises(InvariantViolationError):
        funnel_transition(gl, gr, [ev], frame, sensor, "R")
