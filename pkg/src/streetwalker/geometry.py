"""Planar geometry: orientation and intersection predicates, point location,
and visibility regions with their depth-discontinuity (window) edges.

All tolerances are absolute, in model units, controlled by EPS. Instances are
expected at O(1)-O(1e3) coordinate scale, far above EPS.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Optional

EPS = 1e-9


class GeometryError(Exception):
    """Invalid geometric input or query."""


class Point2(NamedTuple):
    x: float
    y: float


def pt(x, y) -> Point2:
    x = float(x)
    y = float(y)
    if not (math.isfinite(x) and math.isfinite(y)):
        raise GeometryError("non-finite coordinate (%r, %r)" % (x, y))
    return Point2(x, y)


def dist(a, b) -> float:
    return math.hypot(b[0] - a[0], b[1] - a[1])


def unit(dx, dy):
    n = math.hypot(dx, dy)
    if n <= 0.0:
        raise GeometryError("zero-length direction")
    return (dx / n, dy / n)


def orient(p, q, r) -> int:
    """Turn sign for p->q->r: +1 left, -1 right, 0 collinear within EPS."""
    cross = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    if cross > EPS:
        return 1
    if cross < -EPS:
        return -1
    return 0


def point_on_segment(p, a, b, tol=EPS) -> bool:
    """True if p lies on segment ab within absolute distance tol."""
    ax, ay = a[0], a[1]
    vx, vy = b[0] - ax, b[1] - ay
    wx, wy = p[0] - ax, p[1] - ay
    seg2 = vx * vx + vy * vy
    if seg2 <= tol * tol:
        return math.hypot(wx, wy) <= tol
    t = (wx * vx + wy * vy) / seg2
    if t < 0.0:
        t = 0.0
    elif t > 1.0:
        t = 1.0
    dx = wx - t * vx
    dy = wy - t * vy
    return dx * dx + dy * dy <= tol * tol


def segment_intersection(a, b, c, d):
    """Classify the intersection of closed segments ab and cd.

    Returns one of:
      ("none", None)
      ("point", Point2)
      ("overlap", (Point2, Point2))   collinear overlap, ordered along ab
    """
    rx, ry = b[0] - a[0], b[1] - a[1]
    sx, sy = d[0] - c[0], d[1] - c[1]
    qx, qy = c[0] - a[0], c[1] - a[1]
    denom = rx * sy - ry * sx
    rlen = math.hypot(rx, ry)
    slen = math.hypot(sx, sy)
    if rlen == 0.0 or slen == 0.0:
        raise GeometryError("degenerate segment")
    if abs(denom) > 1e-12 * rlen * slen:
        t = (qx * sy - qy * sx) / denom
        u = (qx * ry - qy * rx) / denom
        ttol = EPS / rlen
        utol = EPS / slen
        if -ttol <= t <= 1.0 + ttol and -utol <= u <= 1.0 + utol:
            t = min(max(t, 0.0), 1.0)
            return ("point", Point2(a[0] + t * rx, a[1] + t * ry))
        return ("none", None)
    # parallel: collinear iff c is on line ab
    if abs(qx * ry - qy * rx) > EPS * max(1.0, rlen):
        return ("none", None)
    r2 = rx * rx + ry * ry
    t0 = (qx * rx + qy * ry) / r2
    t1 = ((d[0] - a[0]) * rx + (d[1] - a[1]) * ry) / r2
    lo, hi = min(t0, t1), max(t0, t1)
    lo = max(lo, 0.0)
    hi = min(hi, 1.0)
    if hi < lo - EPS / rlen:
        return ("none", None)
    p_lo = Point2(a[0] + lo * rx, a[1] + lo * ry)
    p_hi = Point2(a[0] + hi * rx, a[1] + hi * ry)
    if dist(p_lo, p_hi) <= EPS:
        return ("point", p_lo)
    return ("overlap", (p_lo, p_hi))


def proper_cross(a, b, c, d) -> bool:
    """Strict interior crossing of segments ab and cd."""
    o1 = orient(a, b, c)
    o2 = orient(a, b, d)
    if o1 * o2 >= 0:
        return False
    o3 = orient(c, d, a)
    o4 = orient(c, d, b)
    return o3 * o4 < 0


def ray_segment_param(ox, oy, dx, dy, ax, ay, bx, by):
    """Ray parameter t >= 0 where origin+t*dir meets segment ab, or None.

    dir need not be normalized; t is in units of |dir|.
    """
    ex, ey = bx - ax, by - ay
    denom = dx * ey - dy * ex
    qx, qy = ax - ox, ay - oy
    if abs(denom) > 1e-14 * max(1.0, abs(ex) + abs(ey)):
        t = (qx * ey - qy * ex) / denom
        u = (qx * dy - qy * dx) / denom
        if t >= -1e-12 and -1e-9 <= u <= 1.0 + 1e-9:
            return t
        return None
    # parallel; collinear only
    if abs(qx * dy - qy * dx) > EPS:
        return None
    d2 = dx * dx + dy * dy
    ta = (qx * dx + qy * dy) / d2
    tb = ((bx - ox) * dx + (by - oy) * dy) / d2
    cands = [t for t in (ta, tb) if t >= -1e-12]
    if not cands:
        return None
    return min(cands)


class SimplePolygon:
    """Simple polygon with counterclockwise vertex order."""

    __slots__ = ("vertices", "n", "_reflex", "_bbox")

    def __init__(self, vertices, check=True):
        vs = [pt(v[0], v[1]) for v in vertices]
        if len(vs) < 3:
            raise GeometryError("polygon needs at least 3 vertices")
        for i in range(len(vs)):
            if dist(vs[i], vs[(i + 1) % len(vs)]) <= EPS:
                raise GeometryError("consecutive duplicate vertex at index %d" % i)
        self.vertices = vs
        self.n = len(vs)
        if self.signed_area() <= 0.0:
            raise GeometryError("vertices must be in counterclockwise order")
        self._reflex = None
        xs = [v.x for v in vs]
        ys = [v.y for v in vs]
        self._bbox = (min(xs), min(ys), max(xs), max(ys))
        if check:
            self._check_simple()

    def signed_area(self) -> float:
        vs = self.vertices
        total = 0.0
        for i in range(self.n):
            a = vs[i]
            b = vs[(i + 1) % self.n]
            total += a.x * b.y - b.x * a.y
        return 0.5 * total

    def edge(self, i):
        return self.vertices[i], self.vertices[(i + 1) % self.n]

    def edges(self):
        for i in range(self.n):
            yield self.vertices[i], self.vertices[(i + 1) % self.n]

    @property
    def bbox(self):
        return self._bbox

    def diameter(self) -> float:
        x0, y0, x1, y1 = self._bbox
        return math.hypot(x1 - x0, y1 - y0)

    def _check_simple(self):
        n = self.n
        vs = self.vertices
        for i in range(n):
            a, b = vs[i], vs[(i + 1) % n]
            # fold-back through a vertex is a degenerate self-touch
            c = vs[(i + 2) % n]
            if orient(a, b, c) == 0:
                if (c[0] - b[0]) * (b[0] - a[0]) + (c[1] - b[1]) * (b[1] - a[1]) < 0:
                    raise GeometryError("boundary folds back at vertex %d" % ((i + 1) % n))
            for j in range(i + 1, n):
                if j == i or (j + 1) % n == i or (i + 1) % n == j:
                    continue
                c, d = vs[j], vs[(j + 1) % n]
                kind, _ = segment_intersection(a, b, c, d)
                if kind != "none":
                    raise GeometryError(
                        "boundary self-intersects (edges %d and %d)" % (i, j))

    def reflex_indices(self):
        """Indices of reflex vertices (interior angle > pi)."""
        if self._reflex is None:
            vs = self.vertices
            n = self.n
            self._reflex = tuple(
                i for i in range(n)
                if orient(vs[(i - 1) % n], vs[i], vs[(i + 1) % n]) < 0)
        return self._reflex

    def contains_fast(self, p) -> int:
        """Parity-only interior test (1 or -1); undefined on the boundary."""
        x0, y0, x1, y1 = self._bbox
        px, py = p[0], p[1]
        if px < x0 or px > x1 or py < y0 or py > y1:
            return -1
        vs = self.vertices
        n = self.n
        inside = False
        for i in range(n):
            a = vs[i]
            b = vs[(i + 1) % n]
            if (a.y > py) != (b.y > py):
                xs = a.x + (py - a.y) * (b.x - a.x) / (b.y - a.y)
                if xs > px:
                    inside = not inside
        return 1 if inside else -1

    def contains(self, p) -> int:
        """1 strictly inside, 0 on boundary (within EPS), -1 outside."""
        x0, y0, x1, y1 = self._bbox
        px, py = p[0], p[1]
        if px < x0 - EPS or px > x1 + EPS or py < y0 - EPS or py > y1 + EPS:
            return -1
        vs = self.vertices
        n = self.n
        for i in range(n):
            if point_on_segment(p, vs[i], vs[(i + 1) % n]):
                return 0
        inside = False
        for i in range(n):
            a = vs[i]
            b = vs[(i + 1) % n]
            ay_gt = a.y > py
            by_gt = b.y > py
            if ay_gt != by_gt:
                xs = a.x + (py - a.y) * (b.x - a.x) / (b.y - a.y)
                if xs > px:
                    inside = not inside
        return 1 if inside else -1


def segment_inside(poly: SimplePolygon, a, b) -> bool:
    """True iff the closed segment ab stays inside the polygon.

    Touching the boundary, including grazing a reflex vertex, counts as
    inside; only actually leaving the polygon does not.
    """
    ca = poly.contains(a)
    cb = poly.contains(b)
    if ca < 0 or cb < 0:
        raise GeometryError("segment endpoint outside polygon")
    if dist(a, b) <= EPS:
        return True
    rx, ry = b[0] - a[0], b[1] - a[1]
    rlen = math.hypot(rx, ry)
    ts = [0.0, 1.0]
    for u, v in poly.edges():
        if proper_cross(a, b, u, v):
            return False
        kind, payload = segment_intersection(a, b, u, v)
        if kind == "point":
            p = payload
            t = ((p[0] - a[0]) * rx + (p[1] - a[1]) * ry) / (rlen * rlen)
            ts.append(min(max(t, 0.0), 1.0))
        elif kind == "overlap":
            for p in payload:
                t = ((p[0] - a[0]) * rx + (p[1] - a[1]) * ry) / (rlen * rlen)
                ts.append(min(max(t, 0.0), 1.0))
    ts.sort()
    for i in range(len(ts) - 1):
        if ts[i + 1] - ts[i] <= 2e-9 / rlen:
            continue
        tm = 0.5 * (ts[i] + ts[i + 1])
        mid = (a[0] + tm * rx, a[1] + tm * ry)
        if poly.contains(mid) < 0:
            return False
    return True


def visible_vertex(poly: SimplePolygon, p, vi: int) -> bool:
    """Visibility of polygon vertex vi from an interior (or on-edge) point p.

    Grazing contact with a reflex corner does not block.
    """
    vs = poly.vertices
    n = poly.n
    v = vs[vi]
    px, py = p[0], p[1]
    vx, vy = v.x, v.y
    if abs(px - vx) <= EPS and abs(py - vy) <= EPS:
        return True
    lox, hix = (px, vx) if px < vx else (vx, px)
    loy, hiy = (py, vy) if py < vy else (vy, py)
    prev_i = (vi - 1) % n
    for j in range(n):
        if j == vi or j == prev_i:
            continue
        a = vs[j]
        b = vs[(j + 1) % n]
        if (a.x < lox - EPS and b.x < lox - EPS) or (a.x > hix + EPS and b.x > hix + EPS):
            continue
        if (a.y < loy - EPS and b.y < loy - EPS) or (a.y > hiy + EPS and b.y > hiy + EPS):
            continue
        o1 = orient(p, v, a)
        o2 = orient(p, v, b)
        if o1 * o2 >= 0:
            continue
        o3 = orient(a, b, p)
        o4 = orient(a, b, v)
        if o3 * o4 < 0:
            return False
    # vertices lying on the open sightline can still block if the boundary
    # crosses the line there
    for k in range(n):
        if k == vi:
            continue
        w = vs[k]
        if w.x < lox - EPS or w.x > hix + EPS or w.y < loy - EPS or w.y > hiy + EPS:
            continue
        if orient(p, v, w) != 0:
            continue
        dxw = w.x - px
        dyw = w.y - py
        dxv = vx - px
        dyv = vy - py
        t = (dxw * dxv + dyw * dyv) / (dxv * dxv + dyv * dyv)
        if t <= EPS or t >= 1.0 - EPS:
            continue
        s1 = orient(p, v, vs[(k - 1) % n])
        s2 = orient(p, v, vs[(k + 1) % n])
        if s1 * s2 < 0:
            return False
    return True


def first_boundary_hit(poly: SimplePolygon, origin, direction, min_t=EPS):
    """Nearest boundary point hit by the ray origin + t*direction, t > min_t."""
    ox, oy = origin[0], origin[1]
    dx, dy = direction[0], direction[1]
    best = None
    vs = poly.vertices
    n = poly.n
    for i in range(n):
        a = vs[i]
        b = vs[(i + 1) % n]
        t = ray_segment_param(ox, oy, dx, dy, a.x, a.y, b.x, b.y)
        if t is not None and t > min_t and (best is None or t < best):
            best = t
    if best is None:
        raise GeometryError("ray from interior point missed the boundary")
    return Point2(ox + best * dx, oy + best * dy)


class VisibilityRegion(NamedTuple):
    apex: Point2
    boundary: list
    window_edges: list  # (boundary edge index, side) with side 'L' or 'R'

    def area(self) -> float:
        pts = self.boundary
        total = 0.0
        for i in range(len(pts)):
            a = pts[i]
            b = pts[(i + 1) % len(pts)]
            total += a[0] * b[1] - b[0] * a[1]
        return 0.5 * abs(total)


def _nearest_edge_on_ray(poly, px, py, dx, dy):
    best_t = None
    best_j = -1
    vs = poly.vertices
    n = poly.n
    for j in range(n):
        a = vs[j]
        b = vs[(j + 1) % n]
        t = ray_segment_param(px, py, dx, dy, a.x, a.y, b.x, b.y)
        if t is not None and t > EPS and (best_t is None or t < best_t):
            best_t = t
            best_j = j
    return best_t, best_j


def visibility_region(poly: SimplePolygon, p) -> VisibilityRegion:
    """Region of the polygon visible from interior point p.

    Window edges are the collinear-with-p jumps across depth
    discontinuities; each is anchored at a reflex vertex.
    """
    if poly.contains(p) != 1:
        raise GeometryError("visibility query point must be strictly inside")
    px, py = p[0], p[1]
    vs = poly.vertices
    angles = sorted({math.atan2(v.y - py, v.x - px) for v in vs})
    merged = []
    for a in angles:
        if not merged or a - merged[-1] > 1e-12:
            merged.append(a)
    if len(merged) > 1 and (merged[0] + 2 * math.pi) - merged[-1] <= 1e-12:
        merged.pop()
    angles = merged
    m = len(angles)
    interval_edge = []
    for k in range(m):
        a0 = angles[k]
        a1 = angles[(k + 1) % m]
        if k == m - 1:
            a1 += 2 * math.pi
        amid = 0.5 * (a0 + a1)
        t, j = _nearest_edge_on_ray(poly, px, py, math.cos(amid), math.sin(amid))
        interval_edge.append(j)

    boundary = []
    window_raw = []  # index into boundary of window start, plus side
    for k in range(m):
        theta = angles[k]
        dx, dy = math.cos(theta), math.sin(theta)
        e_prev = interval_edge[(k - 1) % m]
        e_next = interval_edge[k]
        a_p, b_p = poly.edge(e_prev)
        a_n, b_n = poly.edge(e_next)
        t_prev = ray_segment_param(px, py, dx, dy, a_p.x, a_p.y, b_p.x, b_p.y)
        t_next = ray_segment_param(px, py, dx, dy, a_n.x, a_n.y, b_n.x, b_n.y)
        if t_prev is None or t_next is None:
            # numerical miss at a shared vertex; fall back to nearest hit
            t_fallback, _ = _nearest_edge_on_ray(poly, px, py, dx, dy)
            t_prev = t_prev if t_prev is not None else t_fallback
            t_next = t_next if t_next is not None else t_fallback
        near_t, far_t = min(t_prev, t_next), max(t_prev, t_next)
        if far_t - near_t <= 1e-7 * max(1.0, near_t):
            boundary.append(_snap_to_vertex(poly, px, py, dx, dy, near_t))
        else:
            near_pt = _snap_to_vertex(poly, px, py, dx, dy, near_t)
            far_pt = Point2(px + far_t * dx, py + far_t * dy)
            if t_next > t_prev:
                # depth jumps up as the sweep passes theta: hidden on the left
                side = 'L'
                first, second = near_pt, far_pt
            else:
                side = 'R'
                first, second = far_pt, near_pt
            boundary.append(first)
            window_raw.append((len(boundary) - 1, side))
            boundary.append(second)

    # drop consecutive duplicates, remapping window indices
    cleaned = []
    remap = {}
    for idx, q in enumerate(boundary):
        if cleaned and dist(cleaned[-1], q) <= 1e-9:
            remap[idx] = len(cleaned) - 1
            continue
        remap[idx] = len(cleaned)
        cleaned.append(q)
    if len(cleaned) > 1 and dist(cleaned[0], cleaned[-1]) <= 1e-9:
        cleaned.pop()
    windows = [(remap[i], side) for i, side in window_raw]
    return VisibilityRegion(Point2(px, py), cleaned, windows)


def _snap_to_vertex(poly, px, py, dx, dy, t):
    hit = Point2(px + t * dx, py + t * dy)
    for v in poly.vertices:
        if dist(hit, v) <= 1e-6:
            return v
    return hit


def polyline_length(points) -> float:
    total = 0.0
    for i in range(len(points) - 1):
        total += dist(points[i], points[i + 1])
    return total
