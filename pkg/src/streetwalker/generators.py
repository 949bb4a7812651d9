"""Parameterized street families for the benchmark harness.

The corridor and funnel families share one construction: a wedge opening
from the start vertex, closed far above by a lid, with an "awning" hanging
from the lid on each side. An awning is a curtain dropping to an anchor
vertex plus a long shallow underside ramp aimed at a point just below the
first sensing position above s, so the sliver between the ramp and the
sightlines through the anchor stays occluded for the entire search while
every sliver point still sees the opposite low wall.

The target-side ramp carries a notch: a baffle lip with the target tucked
behind it. The most advanced gap on that side anchors at the baffle and the
target is revealed exactly when the walk crosses the sightline through it.
The other awning is a plain decoy. The lid stays above every working
sightline, so the two pursued gaps can never merge away. With the opening
angle near pi the alternating doubling walk degenerates to search on a line
with turn-around points at 1, 2, 4, ... steps from the start.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .geometry import GeometryError, Point2, SimplePolygon, dist
from .sensor import START_NUDGE, GapSensor
from .streets import Street, StreetError, build_street

CORRIDOR_OPENING = math.pi - 0.06
MIN_WEDGE_DEPTH = 16.0

_FLOOR_ARC = 0.6
_FLOOR_DROOP = 0.02          # radians below horizontal for the two s-edges
_LIP_DROP = 0.35             # default baffle lip depth below the ramp
_CURTAIN = 1.5               # curtain height above each anchor


def _lip_drop(elev):
    """Baffle depth below the ramp; grows with wall steepness so the chord
    toward the far anchor clears under the near awning anchor."""
    return 0.45 + math.sin(elev)


class GenerationError(StreetError):
    """Family parameters produced an invalid street."""


@dataclass(frozen=True)
class InstanceFamily:
    kind: str                       # corridor | funnel | two-pocket | file
    opening_angle: float = CORRIDOR_OPENING
    depth: float = 24.0
    target_offset: float = 0.0
    count: int = 1
    seed: int = 0
    path: str = ""                  # kind == "file" only


def _mirror(vertices, t_index):
    flipped = [(-x, y) for (x, y) in vertices]
    reordered = [flipped[0]] + flipped[1:][::-1]
    n = len(vertices)
    new_t = 0 if t_index == 0 else n - t_index
    return reordered, new_t


def _floor_pt(sign):
    return (sign * _FLOOR_ARC * math.cos(_FLOOR_DROOP),
            -_FLOOR_ARC * math.sin(_FLOOR_DROOP))


def _line_y_at(p, q, x):
    f = (x - p[0]) / (q[0] - p[0])
    return p[1] + f * (q[1] - p[1])


class _Awning:
    """One lid-hung awning: anchor at polar (depth, elev), ramp underside
    aimed at (0, hook_c), optional notches cut into the ramp."""

    def __init__(self, depth, elev, sign, hook_c, ramp_len, notches=()):
        self.sign = sign
        self.depth = depth
        self.lip = _lip_drop(elev)
        self.anchor = (sign * depth * math.cos(elev), depth * math.sin(elev))
        ax, ay = self.anchor
        rn = math.hypot(ax, ay - hook_c)
        self.ramp_dir = (ax / rn, (ay - hook_c) / rn)   # away from s
        # low wall passing outside the anchor, below the deepest notch
        wall_off = self.lip + 0.35
        out = (sign * math.sin(elev), -math.cos(elev))
        wall_pt = (ax + wall_off * out[0], ay + wall_off * out[1])
        floor = _floor_pt(sign)
        wdx, wdy = wall_pt[0] - floor[0], wall_pt[1] - floor[1]
        wn = math.hypot(wdx, wdy)
        self.wall_dir = (wdx / wn, wdy / wn)
        self.floor = floor
        self.wall_pt = wall_pt
        sin_gap = abs(self.ramp_dir[0] * self.wall_dir[1]
                      - self.ramp_dir[1] * self.wall_dir[0])
        self.ramp_len = min(ramp_len, 0.5 * wall_off / max(sin_gap, 1e-9))
        need = max((arc for arc, _t in notches), default=0.0) + 0.6
        if self.ramp_len < need:
            raise GenerationError("awning ramp too short for its notches")
        self.notches = sorted(notches)   # (face arc, is_target)

    def ramp_at(self, arc, drop=0.0):
        return (self.anchor[0] + arc * self.ramp_dir[0],
                self.anchor[1] + arc * self.ramp_dir[1] - drop)

    def ramp_end(self):
        return self.ramp_at(self.ramp_len)

    def wall_at(self, arc_from_floor):
        return (self.floor[0] + arc_from_floor * self.wall_dir[0],
                self.floor[1] + arc_from_floor * self.wall_dir[1])

    def cap_bottom(self):
        end = self.ramp_end()
        proj = ((end[0] - self.floor[0]) * self.wall_dir[0]
                + (end[1] - self.floor[1]) * self.wall_dir[1])
        return self.wall_at(proj + 2.0)

    def curtain_top(self):
        return (self.anchor[0], self.anchor[1] + _CURTAIN)

    def boundary_chain(self):
        """Vertices from the cap bottom up and along the ramp to the anchor,
        in boundary order (ramp traversed from its far end toward s-side).

        Returns (vertices, t_position) with t_position the index within the
        returned list of the target vertex, or None.
        """
        verts = [self.cap_bottom(), self.ramp_end()]
        t_pos = None
        for arc, is_target in sorted(self.notches, reverse=True):
            if is_target:
                verts.append(self.ramp_at(arc + 0.3))
                t_pos = len(verts)
                verts.append(self.ramp_at(arc + 0.2, drop=0.5 * self.lip))
                verts.append(self.ramp_at(arc, drop=self.lip))
                verts.append(self.ramp_at(arc - 0.1))
            else:
                verts.append(self.ramp_at(arc + 0.15))
                verts.append(self.ramp_at(arc, drop=0.6 * self.lip))
                verts.append(self.ramp_at(arc - 0.15))
        verts.append(self.anchor)
        verts.append(self.curtain_top())
        return verts, t_pos


def _wedge_street(theta, depth, side=1, decoy_reach=None, extra_notch=None,
                  validate=True, check_start=True, decoy=True,
                  notch_arc=0.5, ramp_pad=1.5, decoy_wall_arc=10.0):
    """Generic awning-wedge street; target hidden behind the baffle at
    roughly `depth` + notch_arc along one side."""
    if not (0.0 < theta < math.pi):
        raise GenerationError("opening angle must be in (0, pi)")
    if depth < MIN_WEDGE_DEPTH:
        raise GenerationError(
            "depth must be at least %g model units; scale base_step instead"
            % MIN_WEDGE_DEPTH)
    elev = (math.pi - theta) / 2.0
    hook_c = 0.5 * START_NUDGE
    notches = [(notch_arc, True)]
    if extra_notch is not None:
        notches.append((extra_notch, False))
    east = _Awning(depth, elev, 1, hook_c,
                   max(n for n, _ in notches) + ramp_pad, notches)
    verts = [(0.0, 0.0), east.floor]
    chain, t_pos = east.boundary_chain()
    t_index = 2 + t_pos
    verts.extend(chain)
    if decoy:
        d_dec = decoy_reach if decoy_reach is not None else 4.0 * depth + 8.0
        west = _Awning(d_dec, elev, -1, hook_c,
                       max(6.0, 0.05 * d_dec))
        wchain, _ = west.boundary_chain()
        apex_y = max(east.ramp_end()[1], west.ramp_end()[1],
                     east.curtain_top()[1], west.curtain_top()[1]) + 1.5
        verts.append((0.0, apex_y))
        verts.extend(reversed(wchain))
        verts.append(west.floor)
    else:
        apex_y = max(east.ramp_end()[1], east.curtain_top()[1]) + 1.5
        verts.append((0.0, apex_y))
        verts.append((-decoy_wall_arc * math.cos(elev),
                      decoy_wall_arc * math.sin(elev)))
        verts.append(_floor_pt(-1))
    if side < 0:
        verts, t_index = _mirror(verts, t_index)
    try:
        poly = SimplePolygon(verts)
    except GeometryError as exc:
        raise GenerationError("degenerate family polygon: %s" % exc)
    street = build_street(poly, 0, t_index, validate=validate)
    if check_start:
        _check_start(street, want_both_sides=decoy)
    return street


def _start_probe(street):
    s = street.s
    probe = Point2(s.x, s.y + START_NUDGE)
    if street.polygon.contains(probe) != 1:
        raise GenerationError("start probe point is not interior")
    return probe


def _check_start(street, want_both_sides):
    sensor = GapSensor(street)
    frame = sensor.sense(_start_probe(street))
    if frame.target_visible:
        raise GenerationError("target must start hidden")
    gl, gr = sensor.advanced_gaps(frame)
    if want_both_sides:
        if gl is None or gr is None:
            raise GenerationError(
                "start frame lacks a gap on each side: %r"
                % [(g.anchor_index, g.side) for g in frame.gaps])
    else:
        if (gl is None) == (gr is None):
            raise GenerationError(
                "start frame must have gaps on exactly one side: %r"
                % [(g.anchor_index, g.side) for g in frame.gaps])
    sensor.check_target_hidden(frame)


def gen_corridor(target_offset, width=None) -> Street:
    """Near-flat funnel whose doubling walk degenerates to line search.

    The target hides roughly |target_offset| model units along one side; the
    sign picks the side. Adversarial instances place the offset one step
    past a turn-around point of the walk. `width` is accepted for interface
    completeness (the construction fixes its own cross-section).
    """
    if target_offset == 0.0:
        raise GenerationError("target_offset must be nonzero")
    side = 1 if target_offset > 0 else -1
    return _wedge_street(CORRIDOR_OPENING, abs(target_offset), side=side)


def _tooth_wedge_street(theta, depth, side=1, validate=True,
                        check_start=True):
    """Funnel street with a solid wall tooth on each side.

    The decoy tooth sits at `depth`; the robot resolves it on arrival (the
    funnel's critical point), then commits to the target side whose tooth
    and target sit deeper. Wall teeth keep the wedge middle open, which is
    what steep opening angles need, but their occluded slots only see the
    opposite chain when that wall is tall, so this shape is for angles well
    below pi (the corridor family covers the flat regime).
    """
    if not (0.0 < theta < 2.9):
        raise GenerationError("tooth wedge needs opening angle < 2.9")
    if depth < MIN_WEDGE_DEPTH:
        raise GenerationError(
            "depth must be at least %g model units; scale base_step instead"
            % MIN_WEDGE_DEPTH)
    elev = (math.pi - theta) / 2.0
    d_target = 1.6 * depth + 2.0

    def wall_tooth(arc, sign):
        tip = (sign * arc * math.cos(elev), arc * math.sin(elev))
        out = (sign * math.sin(elev), -math.cos(elev))
        base = (tip[0] + _LIP_DROP * out[0], tip[1] + _LIP_DROP * out[1])
        floor = _floor_pt(sign)
        ddx, ddy = base[0] - floor[0], base[1] - floor[1]
        nn = math.hypot(ddx, ddy)
        d = (ddx / nn, ddy / nn)

        def at(off):
            return (base[0] + off * d[0], base[1] + off * d[1])
        return tip, at

    tip_e, east_at = wall_tooth(d_target, 1)
    tip_w, west_at = wall_tooth(depth, -1)
    t_pt = east_at(0.5)
    e_up = (t_pt[0], t_pt[1] + 1.0)
    wall_top = west_at(0.15 + 4.0)
    w_up = (wall_top[0], wall_top[1] + 1.5)
    chord0 = _line_y_at(tip_e, tip_w, 0.0)
    apex = (0.0, max(chord0, e_up[1], w_up[1]) + 2.0)
    verts = [
        (0.0, 0.0),
        _floor_pt(1),
        east_at(-0.4),
        tip_e,
        east_at(0.15),
        t_pt,
        e_up,
        apex,
        w_up,
        wall_top,
        west_at(0.15),
        tip_w,
        west_at(-0.4),
        _floor_pt(-1),
    ]
    t_index = 5
    if side < 0:
        verts, t_index = _mirror(verts, t_index)
    try:
        poly = SimplePolygon(verts)
    except GeometryError as exc:
        raise GenerationError("degenerate funnel polygon: %s" % exc)
    street = build_street(poly, 0, t_index, validate=validate)
    if check_start:
        _check_start(street, want_both_sides=True)
    return street


def gen_funnel(opening_angle, depth, side=1) -> Street:
    """Street with a single funnel at s; the gap ambiguity resolves at
    roughly `depth` along the target-side direction."""
    return _wedge_street(opening_angle, depth, side=side)


def gen_single_gap(seed=0) -> Street:
    """Street whose start gaps all sit on one side (no funnel ever)."""
    rng = random.Random(seed)
    depth = rng.uniform(60.0, 100.0)
    side = 1 if rng.random() < 0.5 else -1
    return _wedge_street(CORRIDOR_OPENING, depth, side=side, decoy=False,
                         notch_arc=0.5 + rng.uniform(0.0, 0.3),
                         ramp_pad=1.5 + rng.uniform(0.0, 1.0),
                         decoy_wall_arc=rng.uniform(6.0, 14.0))


def gen_two_pocket(near_depth=20.0, far_depth=None) -> Street:
    """One side carrying two pockets: an empty baffle notch nearer s and the
    target notch beyond it, so two same-side gaps compete and the more
    advanced one hides the target."""
    if near_depth < MIN_WEDGE_DEPTH:
        raise GenerationError("near_depth too small")
    # both notches live on one awning; arcs are measured along the ramp
    return _wedge_street(CORRIDOR_OPENING, near_depth, decoy=False,
                         notch_arc=4.0, extra_notch=1.5, ramp_pad=1.5,
                         check_start=False, decoy_wall_arc=10.0)


def gen_event_showcase():
    """Hand-built fixture street whose scripted walk fires the five-event
    sequence split, disappearance, appearance, split, merge.

    Returns (street, info) where info carries the walk start, the aim point,
    the walk end abscissa, and the five event lines for independent crossing
    computation.
    """
    teeth = {
        "T2": ((13.2, 1.0), (14.0, 0.5), (14.8, 1.0)),
        "T3": ((19.3, 1.0), (20.0, 0.62), (20.7, 1.0)),
        "T3b": ((21.7, 1.0), (22.0, 0.793), (22.3, 1.0)),
        "T4": ((33.2, 1.0), (34.0, 0.5), (34.8, 1.0)),
        "A": ((-9.6, 1.0), (-9.0, 0.6), (-8.4, 1.0)),
        "V": ((-30.6, 1.0), (-30.0, 0.7287), (-29.4, 1.0)),
    }
    ceiling = []
    for name in ("T4", "T3b", "T3", "T2", "A", "V"):
        base_w, tip, base_e = teeth[name]
        ceiling.extend([base_e, tip, base_w])
    verts = [(-100.0, 0.0), (70.0, 0.0), (70.0, 1.0), (65.0, 1.0)]
    verts.extend(ceiling)
    verts.append((-100.0, 1.0))
    poly = SimplePolygon(verts)
    street = build_street(poly, 0, 3)
    info = {
        "walk_start": Point2(0.0, 0.35),
        "aim": Point2(*teeth["T4"][1]),
        "walk_end_x": 19.0,
        "lines": [
            ("split", teeth["T2"][1], teeth["T3"][1]),
            ("disappearance", teeth["T2"][1], teeth["T2"][2]),
            ("appearance", teeth["T2"][1], teeth["T2"][0]),
            ("split", teeth["T3"][1], teeth["T3b"][1]),
            ("merge", teeth["A"][1], teeth["V"][1]),
        ],
    }
    return street, info


def gen_random_street(seed, max_vertices=10, attempts=600):
    """Small random street via rejection sampling (for oracle tests)."""
    rng = random.Random(seed)
    for _ in range(attempts):
        n = rng.randint(4, max_vertices)
        pts = [(rng.uniform(-10, 10), rng.uniform(-10, 10)) for _ in range(n)]
        cx = sum(p[0] for p in pts) / n
        cy = sum(p[1] for p in pts) / n
        pts.sort(key=lambda p: math.atan2(p[1] - cy, p[0] - cx))
        if min(dist(a, b) for a, b in zip(pts, pts[1:] + pts[:1])) < 0.5:
            continue
        try:
            poly = SimplePolygon(pts)
        except GeometryError:
            continue
        s_index = rng.randrange(n)
        t_index = rng.randrange(n)
        if t_index == s_index:
            continue
        try:
            return build_street(poly, s_index, t_index, samples_per_edge=8)
        except StreetError:
            continue
    raise GenerationError("no valid random street found for seed %r" % seed)


def instance_streets(family: InstanceFamily):
    """Materialize (instance_id, street) pairs for a family."""
    if family.kind == "corridor":
        offsets = []
        if family.target_offset:
            offsets = [family.target_offset]
        else:
            rng = random.Random(family.seed)
            for _ in range(family.count):
                k = rng.randint(4, 6)
                side = rng.choice((-1, 1))
                offsets.append(side * (2.0 ** k + 1.0))
        return [("corridor(offset=%g)" % off, gen_corridor(off))
                for off in offsets[:max(family.count, 1)]]
    if family.kind == "funnel":
        return [("funnel(theta=%.4f,depth=%g)" % (family.opening_angle,
                                                  family.depth),
                 gen_funnel(family.opening_angle, family.depth))]
    if family.kind == "two-pocket":
        return [("two-pocket(depth=%g)" % family.depth,
                 gen_two_pocket(family.depth))]
    raise GenerationError("unknown family kind %r" % family.kind)
