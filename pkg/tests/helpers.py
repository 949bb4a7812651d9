"""Independent oracles and drivers shared by the test modules.

Everything here recomputes expected values by brute force, staying off the
code paths under test.
"""

import math
from itertools import permutations

from streetwalker.geometry import Point2, dist, segment_inside
from streetwalker.sensor import GapSensor


def ray_sample_area(poly, p, rays=10000):
    """Visible-area estimate by casting `rays` evenly spaced rays from p and
    integrating the first-hit distances."""
    total = 0.0
    prev_hit = None
    first_hit = None
    for k in range(rays):
        ang = 2.0 * math.pi * k / rays
        d = (math.cos(ang), math.sin(ang))
        best = None
        for a, b in poly.edges():
            t = _ray_seg(p, d, a, b)
            if t is not None and (best is None or t < best):
                best = t
        hit = Point2(p[0] + best * d[0], p[1] + best * d[1])
        if prev_hit is not None:
            total += _tri_area(p, prev_hit, hit)
        else:
            first_hit = hit
        prev_hit = hit
    total += _tri_area(p, prev_hit, first_hit)
    return total


def _ray_seg(o, d, a, b):
    ex, ey = b[0] - a[0], b[1] - a[1]
    denom = d[0] * ey - d[1] * ex
    if abs(denom) < 1e-15:
        return None
    qx, qy = a[0] - o[0], a[1] - o[1]
    t = (qx * ey - qy * ex) / denom
    u = (qx * d[1] - qy * d[0]) / denom
    if t >= 0.0 and -1e-12 <= u <= 1.0 + 1e-12:
        return t
    return None


def _tri_area(p, a, b):
    return 0.5 * abs((a[0] - p[0]) * (b[1] - p[1])
                     - (a[1] - p[1]) * (b[0] - p[0]))


def brute_force_shortest(street):
    """Shortest s-t path by enumerating every simple vertex sequence."""
    poly = street.polygon
    vs = poly.vertices
    n = poly.n
    see = {}

    def visible(i, j):
        key = (min(i, j), max(i, j))
        if key not in see:
            see[key] = segment_inside(poly, vs[i], vs[j])
        return see[key]

    src, dst = street.s_index, street.t_index
    others = [i for i in range(n) if i not in (src, dst)]
    best = math.inf
    if visible(src, dst):
        best = dist(vs[src], vs[dst])
    for r in range(1, len(others) + 1):
        for mid in permutations(others, r):
            seq = [src] + list(mid) + [dst]
            length = 0.0
            ok = True
            for a, b in zip(seq, seq[1:]):
                if not visible(a, b):
                    ok = False
                    break
                length += dist(vs[a], vs[b])
                if length >= best:
                    ok = False
                    break
            if ok:
                best = length
    return best


def cowpath_total(target, step=1.0, multiplier=1.0, first_positive=True):
    """Walked distance of the 1-D doubling search until reaching `target`
    (signed; positive side is visited first when first_positive).

    Stage budgets are 1, 3, 6, 12, ... times step*multiplier; the walk turns
    around when each budget runs out.
    """
    unit = step * multiplier
    pos = 0.0
    total = 0.0
    direction = 1.0 if first_positive else -1.0
    budget = 1.0 * unit
    stage = 1
    for _ in range(200):
        end = pos + direction * budget
        if (target - pos) * direction > 0 and abs(target - pos) <= budget:
            return total + abs(target - pos)
        total += budget
        pos = end
        stage += 1
        budget = 3.0 * unit * (2.0 ** (stage - 2))
        direction = -direction
    raise AssertionError("cow path did not terminate")


def sensing_walk(street, start, toward, end_x, max_steps=500):
    """Drive the sensor straight from `start` toward the point `toward`,
    clipping at event lines, until the x coordinate reaches end_x.

    Returns the list of critical events in firing order.
    """
    sensor = GapSensor(street)
    dx, dy = toward[0] - start[0], toward[1] - start[1]
    nn = math.hypot(dx, dy)
    d = (dx / nn, dy / nn)
    pos = Point2(*start)
    frame = sensor.sense(pos)
    events = []
    for _ in range(max_steps):
        if pos.x >= end_x:
            break
        reach = (end_x - pos.x) / d[0]
        target = Point2(pos.x + d[0] * reach, pos.y + d[1] * reach)
        clip = sensor.clip_motion(pos, target)
        nxt = clip if clip is not None else target
        q = Point2(nxt.x + d[0] * 1e-9, nxt.y + d[1] * 1e-9)
        new_frame = sensor.sense(q, prior=frame)
        events.extend(sensor.diff_events(frame, new_frame,
                                         (frame.position, q)))
        frame = new_frame
        pos = nxt
    return events


def line_cross_x(p0, d, a, b):
    """x coordinate where the ray p0 + t*d crosses the line through a, b."""
    ex, ey = b[0] - a[0], b[1] - a[1]
    denom = d[0] * ey - d[1] * ex
    t = ((a[0] - p0[0]) * ey - (a[1] - p0[1]) * ex) / denom
    return p0[0] + t * d[0]
