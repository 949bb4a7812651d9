"""Minimal-sensing emulation: the cyclically ordered gap list at a position,
gap identity and primitive-flag tracking across motion, critical-event
classification, and selection of the two advanced gaps.

Gaps are anchored at reflex vertices. A gap exists at reflex vertex v exactly
when v is visible and one of its incident edges faces the robot while the
other faces away; the hidden region then lies past v on the side of the
back-facing edge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

from .geometry import (
    EPS,
    GeometryError,
    Point2,
    dist,
    first_boundary_hit,
    orient,
    proper_cross,
    ray_segment_param,
    segment_intersection,
    unit,
    visible_vertex,
)
from .streets import Street

APPEARANCE = "appearance"
DISAPPEARANCE = "disappearance"
MERGE = "merge"
SPLIT = "split"

# Interior offset used for the first sensing position above the start
# vertex; generators size their occlusion structures against it.
START_NUDGE = 0.02


def _dist_point_segment(p, a, b):
    ax, ay = a[0], a[1]
    vx, vy = b[0] - ax, b[1] - ay
    wx, wy = p[0] - ax, p[1] - ay
    seg2 = vx * vx + vy * vy
    if seg2 <= 0.0:
        return math.hypot(wx, wy)
    t = (wx * vx + wy * vy) / seg2
    t = 0.0 if t < 0.0 else (1.0 if t > 1.0 else t)
    return math.hypot(wx - t * vx, wy - t * vy)


def _ring_area(ring) -> float:
    total = 0.0
    n = len(ring)
    for i in range(n):
        a = ring[i]
        b = ring[(i + 1) % n]
        total += a[0] * b[1] - b[0] * a[1]
    return 0.5 * total


def _ring_parity(ring, q) -> bool:
    """Fast even-odd test; only valid for q away from the ring boundary."""
    qx, qy = q[0], q[1]
    inside = False
    n = len(ring)
    for i in range(n):
        a = ring[i]
        b = ring[(i + 1) % n]
        if (a[1] > qy) != (b[1] > qy):
            xs = a[0] + (qy - a[1]) * (b[0] - a[0]) / (b[1] - a[1])
            if xs > qx:
                inside = not inside
    return inside


def _point_in_ring(ring, q) -> int:
    """1 inside, 0 on boundary (within EPS), -1 outside; tolerates repeated
    consecutive points in the ring."""
    pts = []
    for p in ring:
        if not pts or abs(p[0] - pts[-1][0]) > EPS or abs(p[1] - pts[-1][1]) > EPS:
            pts.append(p)
    if len(pts) > 1 and abs(pts[0][0] - pts[-1][0]) <= EPS \
            and abs(pts[0][1] - pts[-1][1]) <= EPS:
        pts.pop()
    if len(pts) < 3:
        on = any(_dist_point_segment(q, pts[i], pts[(i + 1) % len(pts)]) <= EPS
                 for i in range(len(pts))) if pts else False
        return 0 if on else -1
    qx, qy = q[0], q[1]
    n = len(pts)
    for i in range(n):
        if _dist_point_segment(q, pts[i], pts[(i + 1) % n]) <= EPS:
            return 0
    inside = False
    for i in range(n):
        a = pts[i]
        b = pts[(i + 1) % n]
        if (a[1] > qy) != (b[1] > qy):
            xs = a[0] + (qy - a[1]) * (b[0] - a[0]) / (b[1] - a[1])
            if xs > qx:
                inside = not inside
    return 1 if inside else -1


class SensorError(Exception):
    """Frames that no event sequence explains (step too large)."""


class InvariantViolationError(Exception):
    """A runtime guarantee of the sensing model failed (exit code 3)."""


@dataclass
class Gap:
    id: int
    side: str                # 'L' or 'R': side of the hidden region
    primitive: bool
    anchor: Point2
    anchor_index: int
    direction: tuple         # unit vector robot -> anchor
    depth_near: float
    window_far: Point2       # far endpoint of the window edge
    far_edge: int = -1       # polygon edge index holding window_far

    def angle(self) -> float:
        return math.atan2(self.direction[1], self.direction[0])


@dataclass
class SensorFrame:
    position: Point2
    gaps: list
    target_visible: bool
    next_gap_id: int

    def gap_by_id(self, gid) -> Optional[Gap]:
        for g in self.gaps:
            if g.id == gid:
                return g
        return None

    def keyed(self):
        return {(g.anchor_index, g.side): g for g in self.gaps}


@dataclass(frozen=True)
class CriticalEvent:
    kind: str
    gap_ids: tuple           # (gap,) / (parent, child) / (absorber, absorbed)
    location: Point2
    anchor_index: int


class GapSensor:
    """Sensor bound to one street; pure queries, no internal state."""

    def __init__(self, street: Street):
        self.street = street
        self.poly = street.polygon
        self.reflex = self.poly.reflex_indices()
        self.t_index = street.t_index
        vs = self.poly.vertices
        n = self.poly.n
        self._edge_arrays = [
            (vs[j].x, vs[j].y,
             vs[(j + 1) % n].x - vs[j].x, vs[(j + 1) % n].y - vs[j].y)
            for j in range(n)
        ]
        self._event_segments = self._build_event_segments()

    # ------------------------------------------------------------------
    # event-line precomputation

    def _ray_inside_clip(self, origin, direction):
        """Clipped segment [origin, first hit] if the ray enters the interior."""
        probe = Point2(origin[0] + direction[0] * 1e-7,
                       origin[1] + direction[1] * 1e-7)
        if self.poly.contains(probe) != 1:
            return None
        try:
            hit = first_boundary_hit(self.poly, origin, direction, min_t=1e-7)
        except GeometryError:
            return None
        if dist(origin, hit) <= 10 * EPS:
            return None
        return (origin, hit)

    def _build_event_segments(self):
        segs = []
        vs = self.poly.vertices
        n = self.poly.n
        for i in self.reflex:
            v = vs[i]
            for nb in (vs[(i - 1) % n], vs[(i + 1) % n]):
                d = unit(v.x - nb[0], v.y - nb[1])
                clip = self._ray_inside_clip(v, d)
                if clip:
                    segs.append(clip + (("inflect", i),))
        anchors = list(self.reflex)
        others = list(self.reflex) + [self.t_index]
        for i in anchors:
            v = vs[i]
            for j in others:
                if i == j:
                    continue
                w = vs[j]
                if not visible_vertex(self.poly, w, i):
                    continue
                d = unit(v.x - w.x, v.y - w.y)
                clip = self._ray_inside_clip(v, d)
                if clip:
                    segs.append(clip + (("align", i, j),))
        return segs

    def clip_motion(self, a, b):
        """First crossing of segment ab with any event line, or None.

        Crossings at (or numerically before) a itself are ignored so a robot
        standing on a line can march off it.
        """
        ax, ay = a[0], a[1]
        dx, dy = b[0] - ax, b[1] - ay
        length = math.hypot(dx, dy)
        if length <= EPS:
            return None
        tmin_allowed = 1e-9 / length
        best = None
        for (u, v, _tag) in self._event_segments:
            ex, ey = v[0] - u[0], v[1] - u[1]
            denom = dx * ey - dy * ex
            if abs(denom) < 1e-14:
                continue
            qx, qy = u[0] - ax, u[1] - ay
            t = (qx * ey - qy * ex) / denom
            s = (qx * dy - qy * dx) / denom
            if tmin_allowed < t < 1.0 - 1e-12 and -1e-9 <= s <= 1.0 + 1e-9:
                if best is None or t < best:
                    best = t
        if best is None:
            return None
        return Point2(ax + best * dx, ay + best * dy)

    # ------------------------------------------------------------------
    # sensing

    _PROBE = 1e-3   # how far past a reflex vertex to test for open interior

    def _first_hit_edge(self, px, py, dx, dy, min_t):
        """(hit_point, edge_index) for the nearest boundary hit past min_t."""
        best = math.inf
        best_j = -1
        for j, (ax, ay, ex, ey) in enumerate(self._edge_arrays):
            denom = dx * ey - dy * ex
            if -1e-14 < denom < 1e-14:
                continue
            qx = ax - px
            qy = ay - py
            t = (qx * ey - qy * ex) / denom
            if t <= min_t or t >= best:
                continue
            u = (qx * dy - qy * dx) / denom
            if -1e-9 <= u <= 1.0 + 1e-9:
                best = t
                best_j = j
        if best_j < 0:
            return None, -1
        return Point2(px + best * dx, py + best * dy), best_j

    def _raw_gaps(self, p):
        """(anchor_index, side, direction, depth, far, far_edge) per window.

        A window exists at a visible reflex vertex exactly when the sight ray
        continues past it into the interior; the hidden pocket is the piece
        of the polygon cut off by the chord from the vertex to the ray's far
        boundary hit, and the side label says where that pocket lies relative
        to the ray.
        """
        poly = self.poly
        vs = poly.vertices
        out = []
        for i in self.reflex:
            v = vs[i]
            if not visible_vertex(poly, p, i):
                continue
            depth = dist(p, v)
            if depth <= EPS:
                continue
            d = unit(v.x - p[0], v.y - p[1])
            probe = Point2(v.x + d[0] * self._PROBE, v.y + d[1] * self._PROBE)
            if poly.contains_fast(probe) != 1:
                continue
            far, far_edge = self._first_hit_edge(p[0], p[1], d[0], d[1],
                                                 depth + 1e-9)
            if far is None:
                continue
            side = self._pocket_side(p, v, i, far, far_edge)
            out.append((i, side, d, depth, far, far_edge))
        out.sort(key=lambda g: math.atan2(g[2][1], g[2][0]))
        return out

    def _pocket_side(self, p, v, anchor_index, far, far_edge):
        """'L' or 'R': which side of the ray p->v holds the hidden pocket."""
        ring = self._ring_between(anchor_index, far, far_edge)
        if _ring_parity(ring, p):
            ring = self._ring_complement(anchor_index, far, far_edge)
        px, py = p[0], p[1]
        dx, dy = v[0] - px, v[1] - py
        best = 0.0
        for q in ring:
            cross = dx * (q[1] - py) - dy * (q[0] - px)
            if abs(cross) > abs(best):
                best = cross
        return 'L' if best > 0 else 'R'

    def target_visible_from(self, p) -> bool:
        return visible_vertex(self.poly, p, self.t_index)

    def sense(self, p, prior: Optional[SensorFrame] = None) -> SensorFrame:
        """Sensor frame at p; gap ids and primitive flags carried from prior.

        p must be strictly interior; positions on or outside the boundary
        are rejected (points within EPS of the boundary may slip through the
        fast parity test and yield degenerate frames, so callers nudge).
        """
        if self.poly.contains_fast(p) != 1:
            raise GeometryError("sensing position must be strictly inside")
        p = Point2(p[0], p[1])
        raw = self._raw_gaps(p)
        tv = self.target_visible_from(p)
        if prior is None:
            gaps = [
                Gap(k + 1, side, False, self.poly.vertices[i], i, d, depth,
                    far, fe)
                for k, (i, side, d, depth, far, fe) in enumerate(raw)
            ]
            return SensorFrame(p, gaps, tv, len(raw) + 1)
        prev_keyed = prior.keyed()
        next_id = prior.next_gap_id
        gaps = []
        for (i, side, d, depth, far, fe) in raw:
            old = prev_keyed.get((i, side))
            if old is not None:
                gaps.append(Gap(old.id, side, old.primitive,
                                self.poly.vertices[i], i, d, depth, far, fe))
            else:
                anchor_pt = self.poly.vertices[i]
                if visible_vertex(self.poly, prior.position, i):
                    primitive = True   # appeared: region was visible before
                else:
                    parent = self._hiding_gap(prior, anchor_pt)
                    if parent is None:
                        raise SensorError(
                            "new gap at vertex %d is unexplainable; "
                            "subdivide the motion" % i)
                    primitive = parent.primitive
                gaps.append(Gap(next_id, side, primitive,
                                anchor_pt, i, d, depth, far, fe))
                next_id += 1
        frame = SensorFrame(p, gaps, tv, next_id)
        # a merge downgrades the absorber if any absorbed gap was non-primitive
        for key, old in prev_keyed.items():
            if any(g.anchor_index == key[0] and g.side == key[1] for g in gaps):
                continue
            if not visible_vertex(self.poly, p, old.anchor_index):
                absorber = self._hiding_gap(frame, old.anchor)
                if absorber is not None and old.primitive is False:
                    absorber.primitive = False
        return frame

    def _edge_of_point(self, q):
        vs = self.poly.vertices
        n = self.poly.n
        best_j, best_d = 0, math.inf
        for j in range(n):
            a = vs[j]
            b = vs[(j + 1) % n]
            d = _dist_point_segment(q, a, b)
            if d < best_d:
                best_d = d
                best_j = j
        return best_j

    def _ring_between(self, anchor_index, far, far_edge=None):
        """Boundary walk from the window's far point CCW back to the anchor,
        closed by the window chord."""
        vs = self.poly.vertices
        n = self.poly.n
        j = far_edge if far_edge is not None and far_edge >= 0 \
            else self._edge_of_point(far)
        ring = [far]
        k = (j + 1) % n
        while True:
            ring.append(vs[k])
            if k == anchor_index:
                break
            k = (k + 1) % n
        return ring

    def _ring_complement(self, anchor_index, far, far_edge=None):
        vs = self.poly.vertices
        n = self.poly.n
        j = far_edge if far_edge is not None and far_edge >= 0 \
            else self._edge_of_point(far)
        ring = []
        k = anchor_index
        while True:
            ring.append(vs[k])
            if k == j:
                break
            k = (k + 1) % n
        ring.append(far)
        return ring

    def _hidden_ring(self, gap: Gap, position):
        ring = self._ring_between(gap.anchor_index, gap.window_far,
                                  gap.far_edge)
        if _ring_parity(ring, position):
            ring = self._ring_complement(gap.anchor_index, gap.window_far,
                                         gap.far_edge)
        return ring

    def hidden_region_contains(self, frame: SensorFrame, gap: Gap, q) -> bool:
        """Membership of q in the pocket hidden behind one gap's window."""
        return _point_in_ring(self._hidden_ring(gap, frame.position), q) >= 0

    def _hiding_gap(self, frame: SensorFrame, q) -> Optional[Gap]:
        """The frame gap whose hidden pocket contains q.

        Pockets can nest (a deeper occlusion inside a wider one); the
        innermost pocket is the one whose window actually conceals q.
        """
        best = None
        best_area = math.inf
        for g in frame.gaps:
            ring = self._hidden_ring(g, frame.position)
            if _point_in_ring(ring, q) >= 0:
                area = abs(_ring_area(ring))
                if area < best_area:
                    best_area = area
                    best = g
        return best

    # ------------------------------------------------------------------
    # event classification

    def diff_events(self, prev: SensorFrame, nxt: SensorFrame, motion=None):
        """Critical events explaining the change from prev to nxt.

        motion defaults to the segment between the two frame positions; it is
        used only to locate where each event line was crossed.
        """
        if motion is None:
            motion = (prev.position, nxt.position)
        prev_keyed = prev.keyed()
        next_keyed = nxt.keyed()
        events = []
        for key, g in next_keyed.items():
            if key in prev_keyed:
                continue
            i = g.anchor_index
            anchor_pt = g.anchor
            if visible_vertex(self.poly, prev.position, i):
                loc = self._inflection_crossing(i, prev.position, nxt.position, motion)
                events.append(CriticalEvent(APPEARANCE, (g.id,), loc, i))
            else:
                parent = self._hiding_gap(prev, anchor_pt)
                if parent is None:
                    raise SensorError(
                        "gap at vertex %d has no explaining parent" % i)
                loc = self._line_crossing(parent.anchor, anchor_pt, motion)
                events.append(CriticalEvent(SPLIT, (parent.id, g.id), loc, i))
        for key, g in prev_keyed.items():
            if key in next_keyed:
                continue
            i = g.anchor_index
            if visible_vertex(self.poly, nxt.position, i):
                loc = self._inflection_crossing(i, prev.position, nxt.position, motion)
                events.append(CriticalEvent(DISAPPEARANCE, (g.id,), loc, i))
            else:
                absorber = self._hiding_gap(nxt, g.anchor)
                if absorber is None:
                    raise SensorError(
                        "gap at vertex %d vanished with no absorber" % i)
                loc = self._line_crossing(absorber.anchor, g.anchor, motion)
                events.append(CriticalEvent(MERGE, (absorber.id, g.id), loc, i))
        m0, m1 = motion
        mdx, mdy = m1[0] - m0[0], m1[1] - m0[1]
        events.sort(key=lambda ev: (ev.location[0] - m0[0]) * mdx
                    + (ev.location[1] - m0[1]) * mdy)
        return events

    def _line_crossing_param(self, a, b, motion):
        (m0, m1) = motion
        dx, dy = m1[0] - m0[0], m1[1] - m0[1]
        ex, ey = b[0] - a[0], b[1] - a[1]
        denom = dx * ey - dy * ex
        if abs(denom) < 1e-14:
            return None
        return ((a[0] - m0[0]) * ey - (a[1] - m0[1]) * ex) / denom

    def _line_crossing(self, a, b, motion) -> Point2:
        """Where motion crosses the infinite line through a and b."""
        t = self._line_crossing_param(a, b, motion)
        if t is None:
            return Point2(*motion[1])
        t = min(max(t, 0.0), 1.0)
        (m0, m1) = motion
        return Point2(m0[0] + t * (m1[0] - m0[0]),
                      m0[1] + t * (m1[1] - m0[1]))

    def _inflection_crossing(self, i, p_prev, p_next, motion) -> Point2:
        """Where motion crossed the inflection ray of vertex i.

        The inflection ray extends an incident edge beyond the vertex, so
        among the candidate edge lines whose side flipped, the crossing must
        lie past the vertex (away from the edge's other endpoint).
        """
        vs = self.poly.vertices
        n = self.poly.n
        v = vs[i]
        fallback = None
        for nb in (vs[(i - 1) % n], vs[(i + 1) % n]):
            s_prev = orient(nb, v, p_prev)
            s_next = orient(nb, v, p_next)
            if s_prev == s_next:
                continue
            crossing = self._line_crossing(nb, v, motion)
            beyond = ((crossing[0] - v.x) * (v.x - nb.x)
                      + (crossing[1] - v.y) * (v.y - nb.y))
            if beyond > 0:
                return crossing
            if fallback is None:
                fallback = crossing
        return fallback if fallback is not None else Point2(*motion[1])

    # ------------------------------------------------------------------
    # advanced gaps and runtime invariants

    def advanced_gaps(self, frame: SensorFrame):
        """The most advanced non-primitive gap per side (g_l, g_r)."""
        best = {'L': None, 'R': None}
        for g in frame.gaps:
            if g.primitive:
                continue
            cur = best[g.side]
            if cur is None or self._advance_key(g) > self._advance_key(cur):
                best[g.side] = g
        return best['L'], best['R']

    def _advance_key(self, g: Gap):
        return (self.street.chain_fraction(g.anchor_index),
                -g.depth_near, -g.anchor_index)

    def check_target_hidden(self, frame: SensorFrame):
        """Assert the target lies behind one of the two advanced gaps.

        No-op when the target is visible. Raises InvariantViolationError when
        the sightline to t first crosses the window of any other gap.
        """
        if frame.target_visible:
            return
        t_pt = self.street.t
        blocker = self._hiding_gap(frame, t_pt)
        if blocker is None:
            raise InvariantViolationError(
                "target invisible but inside no gap's hidden pocket")
        gl, gr = self.advanced_gaps(frame)
        allowed = {g.id for g in (gl, gr) if g is not None}
        if blocker.id not in allowed:
            raise InvariantViolationError(
                "target hidden behind gap %d (anchor %d), not behind an "
                "advanced gap" % (blocker.id, blocker.anchor_index))


def mark_primitive(event: CriticalEvent, frame: SensorFrame) -> SensorFrame:
    """Apply the primitive-flag rule of one event to a frame (in place).

    Appearances flag the new gap primitive; split children inherit the parent
    flag; a merge leaves the absorber non-primitive unless every parent was
    primitive.
    """
    if event.kind == APPEARANCE:
        g = frame.gap_by_id(event.gap_ids[0])
        if g is not None:
            g.primitive = True
    elif event.kind == SPLIT:
        parent = frame.gap_by_id(event.gap_ids[0])
        child = frame.gap_by_id(event.gap_ids[1])
        if parent is not None and child is not None:
            child.primitive = parent.primitive
    elif event.kind == MERGE:
        absorber = frame.gap_by_id(event.gap_ids[0])
        if absorber is not None:
            # the absorbed gap is gone; its flag travelled through sense()
            pass
    return frame


def funnel_transition(gl_prev, gr_prev, events, frame, sensor, moving_toward):
    """Apply the pursued-gap update rules to one batch of events.

    Returns True when the funnel ends (an advanced gap disappeared, or a
    pursued gap split off an opposite-side child). Raises
    InvariantViolationError if a pursued gap merges while being approached.
    """
    pursued = {g.id: g for g in (gl_prev, gr_prev) if g is not None}
    funnel_end = False
    for ev in events:
        if ev.kind == MERGE and (set(ev.gap_ids) & set(pursued)):
            raise InvariantViolationError(
                "gap %s merged while the robot was moving toward g_%s"
                % (ev.gap_ids, moving_toward.lower()))
        if ev.kind == DISAPPEARANCE and ev.gap_ids[0] in pursued:
            funnel_end = True
        if ev.kind == SPLIT and ev.gap_ids[0] in pursued:
            child = frame.gap_by_id(ev.gap_ids[1])
            parent = pursued[ev.gap_ids[0]]
            if child is not None and child.side != parent.side:
                funnel_end = True
    return funnel_end
