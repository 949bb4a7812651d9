"""Search strategies for unknown streets.

The robot pursues the single candidate gap when there is no ambiguity and
runs an alternating doubling walk between the two advanced gaps inside a
funnel. Stage budgets follow 1, 3, 6, 12, ... steps; the randomized variant
scales the step by 2**e (e uniform in [0,1)) and flips a fair coin for the
starting side, drawn fresh at each funnel.

Motion toward a gap anchor is emitted as straight segments clipped at the
street's precomputed event lines, so no critical event is skipped inside a
step; re-aiming happens at every sensing sample.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Optional

from .geometry import EPS, Point2, dist, unit
from .sensor import (
    GapSensor,
    InvariantViolationError,
    MERGE,
    START_NUDGE,
    SensorFrame,
    funnel_transition,
)
from .streets import Street, shortest_path


class NonTerminationError(Exception):
    """Safety bound hit; carries the partial trajectory for diagnosis."""

    def __init__(self, message, trajectory=None):
        super().__init__(message)
        self.trajectory = trajectory


@dataclass
class StrategyConfig:
    kind: str = "deterministic"      # or "randomized"
    base_step: Optional[float] = None  # default: geodesic length / 1000
    rng_seed: int = 0
    max_steps: int = 1_000_000

    def __post_init__(self):
        if self.kind not in ("deterministic", "randomized"):
            raise ValueError("unknown strategy kind %r" % self.kind)
        if self.base_step is not None and self.base_step <= 0:
            raise ValueError("base_step must be positive")
        if self.max_steps <= 0:
            raise ValueError("max_steps must be positive")


def stage_budget(i: int) -> float:
    """Steps allotted to stage i: 1, 3, then doubling."""
    if i <= 1:
        return 1.0
    return 3.0 * (2.0 ** (i - 2))


def randomize_entry(rng: random.Random):
    """Step-length multiplier 2**e, e ~ U[0,1), then the side coin X."""
    e = rng.random()
    coin = rng.randrange(2)
    return 2.0 ** e, coin


def collinear_check(position, gap_l, gap_r) -> bool:
    """True when both anchors sit on one ray from the robot (one behind the
    other), the unambiguous case where the funnel collapses."""
    ax, ay = gap_l.anchor
    bx, by = gap_r.anchor
    px, py = position
    ux, uy = ax - px, ay - py
    vx, vy = bx - px, by - py
    nu = math.hypot(ux, uy)
    nv = math.hypot(vx, vy)
    if nu <= EPS or nv <= EPS:
        return True
    cross = ux * vy - uy * vx
    dot = ux * vx + uy * vy
    return abs(cross) <= 1e-9 * nu * nv and dot > 0.0


@dataclass
class FunnelState:
    active: bool = True
    stage_index: int = 1
    steps_remaining: float = 1.0     # in units of step_length
    toward: str = "R"
    step_length: float = 1.0
    origin: Point2 = Point2(0.0, 0.0)
    coin: Optional[int] = None

    def snapshot(self):
        return (self.stage_index, self.steps_remaining, self.toward,
                self.step_length)

    def advance_stage(self):
        self.stage_index += 1
        self.steps_remaining = stage_budget(self.stage_index)
        self.toward = "L" if self.toward == "R" else "R"


def funnel_walk(state: FunnelState, frame: SensorFrame, sensor: GapSensor):
    """Next motion target and allowance for an active funnel.

    Returns (target_point, max_distance) for the current stage; the caller
    moves (clipped at event lines), then feeds back the walked distance via
    state.steps_remaining and advances the stage on exhaustion.
    """
    gl, gr = sensor.advanced_gaps(frame)
    g = gr if state.toward == "R" else gl
    if g is None:
        return None, 0.0
    return g.anchor, state.steps_remaining * state.step_length


@dataclass
class Sample:
    position: Point2
    frame: SensorFrame
    funnel: Optional[tuple]
    events: list


@dataclass
class Trajectory:
    samples: list = field(default_factory=list)
    total_length: float = 0.0
    theorem_checks: int = 0
    pursued_merges: int = 0
    funnels_entered: int = 0

    def positions(self):
        return [s.position for s in self.samples]

    def event_counts(self):
        counts = {"appearance": 0, "disappearance": 0, "split": 0, "merge": 0}
        for s in self.samples:
            for ev in s.events:
                counts[ev.kind] += 1
        return counts

    def events(self):
        for s in self.samples:
            for ev in s.events:
                yield ev


class _Runner:
    def __init__(self, street: Street, config: StrategyConfig):
        self.street = street
        self.config = config
        self.sensor = GapSensor(street)
        self.poly = street.polygon
        if config.base_step is not None:
            self.base_step = config.base_step
        else:
            self.base_step = shortest_path(street).length / 1000.0
        self.rng = random.Random(config.rng_seed)
        self.round_hop = max(1e-7, 1e-7 * self.poly.diameter())
        self.traj = Trajectory()
        self.steps_used = 0
        self.pos = None
        self.frame = None
        self.funnel: Optional[FunnelState] = None

    # -- low-level motion -------------------------------------------------

    def _inward_bisector(self, vertex_index):
        vs = self.poly.vertices
        n = self.poly.n
        v = vs[vertex_index]
        a = vs[(vertex_index - 1) % n]
        b = vs[(vertex_index + 1) % n]
        ua = unit(a.x - v.x, a.y - v.y)
        ub = unit(b.x - v.x, b.y - v.y)
        bx, by = ua[0] + ub[0], ua[1] + ub[1]
        if math.hypot(bx, by) <= 1e-12:
            bx, by = -ua[1], ua[0]
        d = unit(bx, by)
        if self.poly.contains(Point2(v.x + d[0] * 1e-7, v.y + d[1] * 1e-7)) != 1:
            d = (-d[0], -d[1])
        return d

    def _start_position(self):
        d = self._inward_bisector(self.street.s_index)
        s = self.street.s
        eps0 = START_NUDGE
        for _ in range(40):
            cand = Point2(s.x + d[0] * eps0, s.y + d[1] * eps0)
            if self.poly.contains(cand) == 1:
                return cand
            eps0 *= 0.5
        raise InvariantViolationError("could not nudge off the start vertex")

    def _record(self, events):
        snap = self.funnel.snapshot() if self.funnel else None
        self.traj.samples.append(Sample(self.pos, self.frame, snap, events))
        if not self.frame.target_visible:
            self.sensor.check_target_hidden(self.frame)
            self.traj.theorem_checks += 1

    def _sense_here(self, direction):
        q = Point2(self.pos.x + direction[0] * 1e-9,
                   self.pos.y + direction[1] * 1e-9)
        if self.poly.contains_fast(q) != 1:
            q = self.pos
        prev = self.frame
        frame = self.sensor.sense(q, prior=prev)
        events = self.sensor.diff_events(prev, frame, (prev.position, q))
        self.frame = frame
        return events

    def _substep(self, target, max_dist, stop_at_target=False):
        """One clipped motion segment toward target. Returns (walked, events)."""
        dx = target[0] - self.pos.x
        dy = target[1] - self.pos.y
        gap_dist = math.hypot(dx, dy)
        if gap_dist <= EPS:
            return 0.0, []
        d = (dx / gap_dist, dy / gap_dist)
        if stop_at_target:
            reach = min(max_dist, gap_dist)
        else:
            reach = min(max_dist, max(gap_dist - self.round_hop, 0.0))
        if reach <= 0.0:
            return 0.0, []
        end = Point2(self.pos.x + d[0] * reach, self.pos.y + d[1] * reach)
        clipped = self.sensor.clip_motion(self.pos, end)
        if clipped is not None:
            end = clipped
        walked = dist(self.pos, end)
        self.pos = end
        self.steps_used += 1
        if self.steps_used > self.config.max_steps:
            raise NonTerminationError("max_steps exceeded", self.traj)
        self.traj.total_length += walked
        if stop_at_target and dist(self.pos, target) <= EPS:
            return walked, None   # caller finalizes without sensing at t
        events = self._sense_here(d)
        self._record(events)
        return walked, events

    def _round_corner(self, vertex_index):
        """Hop just past a reflex anchor the robot has reached."""
        d = self._inward_bisector(vertex_index)
        v = self.poly.vertices[vertex_index]
        hop = Point2(v.x + d[0] * self.round_hop, v.y + d[1] * self.round_hop)
        walked = dist(self.pos, hop)
        self.pos = hop
        self.steps_used += 1
        self.traj.total_length += walked
        events = self._sense_here(d)
        self._record(events)
        return events

    # -- strategy layers ---------------------------------------------------

    def _enter_funnel(self):
        state = FunnelState(origin=self.pos)
        if self.config.kind == "randomized":
            mult, coin = randomize_entry(self.rng)
            state.step_length = self.base_step * mult
            state.coin = coin
            state.toward = "R" if coin == 1 else "L"
        else:
            state.step_length = self.base_step
            state.toward = "R"
        state.steps_remaining = stage_budget(1)
        self.funnel = state
        self.traj.funnels_entered += 1

    def _funnel_tick(self):
        state = self.funnel
        gl, gr = self.sensor.advanced_gaps(self.frame)
        target, allowance = funnel_walk(state, self.frame, self.sensor)
        if target is None:
            self.funnel = None
            return
        before = dist(self.pos, target)
        walked, events = self._substep(target, allowance)
        if walked <= 0.0 and before <= 2 * self.round_hop:
            g = gr if state.toward == "R" else gl
            events = self._round_corner(g.anchor_index)
            walked = 0.0
        state.steps_remaining -= walked / state.step_length
        if self.frame.target_visible:
            self.funnel = None
            return
        ended = funnel_transition(gl, gr, events or [], self.frame,
                                  self.sensor, state.toward)
        n_gl, n_gr = self.sensor.advanced_gaps(self.frame)
        if n_gl is None or n_gr is None:
            ended = True
        elif collinear_check(self.pos, n_gl, n_gr):
            ended = True
        if ended:
            self.funnel = None
            return
        if state.steps_remaining <= 1e-12:
            state.advance_stage()

    def _pursue_tick(self, gap):
        before = dist(self.pos, gap.anchor)
        walked, _events = self._substep(gap.anchor, self.poly.diameter())
        if walked <= 0.0 and before <= 2 * self.round_hop:
            self._round_corner(gap.anchor_index)

    def _walk_to_target(self):
        t_pt = self.street.t
        guard = 0
        while dist(self.pos, t_pt) > EPS:
            guard += 1
            if guard > 10000:
                raise NonTerminationError("target approach stalled", self.traj)
            walked, events = self._substep(t_pt, self.poly.diameter(),
                                           stop_at_target=True)
            if events is None:
                break   # reached t exactly
            if walked <= 0.0:
                raise NonTerminationError("no progress toward target", self.traj)
        # synthesize the final sample at t from a sensing point just short of it
        back = unit(self.pos.x - t_pt.x + 0.0, self.pos.y - t_pt.y + 0.0) \
            if dist(self.pos, t_pt) > EPS else None
        d = self._inward_bisector(self.street.t_index)
        q = Point2(t_pt.x + d[0] * self.round_hop, t_pt.y + d[1] * self.round_hop)
        if self.poly.contains(q) != 1:
            q = self.frame.position
        final_frame = self.sensor.sense(q, prior=self.frame)
        events = self.sensor.diff_events(self.frame, final_frame,
                                         (self.frame.position, q))
        self.pos = t_pt
        self.frame = final_frame
        snap = None
        self.traj.samples.append(Sample(t_pt, final_frame, snap, events))

    def run(self) -> Trajectory:
        self.pos = self._start_position()
        self.traj.total_length += dist(self.street.s, self.pos)
        self.frame = self.sensor.sense(self.pos)
        self._record([])
        guard = 0
        while True:
            guard += 1
            if guard > self.config.max_steps:
                raise NonTerminationError("main loop exceeded max_steps",
                                          self.traj)
            if self.frame.target_visible:
                self._walk_to_target()
                return self.traj
            gl, gr = self.sensor.advanced_gaps(self.frame)
            if gl is None and gr is None:
                raise InvariantViolationError(
                    "target hidden but no non-primitive gap remains")
            if self.funnel is not None:
                self._funnel_tick()
                continue
            if gl is not None and gr is not None and not collinear_check(
                    self.pos, gl, gr):
                self._enter_funnel()
                continue
            if gl is not None and gr is not None:
                gap = gl if gl.depth_near <= gr.depth_near else gr
            else:
                gap = gl if gl is not None else gr
            self._pursue_tick(gap)


def run(street: Street, config: StrategyConfig) -> Trajectory:
    """Execute one search run from s to t; returns the full trajectory."""
    return _Runner(street, config).run()
