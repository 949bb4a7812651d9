"""Street construction and validation, the geodesic shortest-path oracle,
and the street file format.

A street is a simple polygon with two designated vertices s and t whose two
boundary chains between them are mutually weakly visible.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

from .geometry import (
    EPS,
    GeometryError,
    Point2,
    SimplePolygon,
    dist,
    polyline_length,
    segment_inside,
)


class StreetError(Exception):
    """Base class for street-level failures (CLI exit code 2)."""


class StreetParseError(StreetError):
    pass


class StreetGeometryError(StreetError):
    pass


class StreetPropertyError(StreetError):
    """Weak-visibility violation; carries a witness boundary point."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class Street:
    polygon: SimplePolygon
    s_index: int
    t_index: int
    # vertex index sequences from s to t; right follows the CCW boundary
    right_chain: tuple = field(default=())
    left_chain: tuple = field(default=())

    @property
    def s(self) -> Point2:
        return self.polygon.vertices[self.s_index]

    @property
    def t(self) -> Point2:
        return self.polygon.vertices[self.t_index]

    def chain_fraction(self, vertex_index: int) -> float:
        """Progress of a vertex toward t along whichever chain holds it."""
        if vertex_index == self.s_index:
            return 0.0
        if vertex_index == self.t_index:
            return 1.0
        if vertex_index in self._right_pos:
            chain, pos = self.right_chain, self._right_pos[vertex_index]
        else:
            chain, pos = self.left_chain, self._left_pos[vertex_index]
        return pos / (len(chain) - 1)

    def __post_init__(self):
        n = self.polygon.n
        right = [self.s_index]
        i = self.s_index
        while i != self.t_index:
            i = (i + 1) % n
            right.append(i)
        left = [self.s_index]
        i = self.s_index
        while i != self.t_index:
            i = (i - 1) % n
            left.append(i)
        object.__setattr__(self, "right_chain", tuple(right))
        object.__setattr__(self, "left_chain", tuple(left))
        object.__setattr__(self, "_right_pos",
                           {v: k for k, v in enumerate(right)})
        object.__setattr__(self, "_left_pos",
                           {v: k for k, v in enumerate(left)})


def _chain_samples(poly, chain, per_edge):
    pts = [poly.vertices[i] for i in chain]
    samples = list(pts)
    for a, b in zip(pts, pts[1:]):
        for j in range(1, per_edge + 1):
            f = j / (per_edge + 1)
            samples.append(Point2(a.x + f * (b.x - a.x), a.y + f * (b.y - a.y)))
    return samples


def validate_street(poly: SimplePolygon, s_index: int, t_index: int,
                    samples_per_edge: int = 32):
    """Sampled mutual weak-visibility check of the two chains.

    Returns (True, None) or (False, witness_point) where the witness sample
    saw no point of the opposite chain.
    """
    n = poly.n
    if not (0 <= s_index < n and 0 <= t_index < n):
        raise StreetError("s/t index out of range")
    if s_index == t_index:
        raise StreetError("s and t must differ")
    street = Street(poly, s_index, t_index)
    side_a = _chain_samples(poly, street.right_chain, samples_per_edge)
    side_b = _chain_samples(poly, street.left_chain, samples_per_edge)
    for source, targets in ((side_a, side_b), (side_b, side_a)):
        for p in source:
            order = sorted(range(len(targets)),
                           key=lambda k: (targets[k].x - p.x) ** 2 + (targets[k].y - p.y) ** 2)
            seen = False
            for k in order:
                if segment_inside(poly, p, targets[k]):
                    seen = True
                    break
            if not seen:
                return False, p
    return True, None


def build_street(poly: SimplePolygon, s_index: int, t_index: int,
                 validate: bool = True, samples_per_edge: int = 32) -> Street:
    if validate:
        ok, witness = validate_street(poly, s_index, t_index, samples_per_edge)
        if not ok:
            raise StreetPropertyError(
                "chains are not mutually weakly visible (witness %r)" % (witness,),
                witness=witness)
    return Street(poly, s_index, t_index)


@dataclass(frozen=True)
class GeodesicPath:
    waypoints: tuple
    length: float


def shortest_path(street: Street) -> GeodesicPath:
    """Globally shortest s-to-t path via the vertex visibility graph."""
    poly = street.polygon
    vs = poly.vertices
    n = poly.n
    adj = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if segment_inside(poly, vs[i], vs[j]):
                d = dist(vs[i], vs[j])
                adj[i].append((j, d))
                adj[j].append((i, d))
    src, dst = street.s_index, street.t_index
    best = [math.inf] * n
    prev = [-1] * n
    best[src] = 0.0
    heap = [(0.0, src)]
    while heap:
        d, i = heapq.heappop(heap)
        if d > best[i] + 1e-15:
            continue
        if i == dst:
            break
        for j, w in adj[i]:
            nd = d + w
            if nd < best[j] - 1e-15:
                best[j] = nd
                prev[j] = i
                heapq.heappush(heap, (nd, j))
    if not math.isfinite(best[dst]):
        raise StreetError("no path from s to t (polygon inconsistent)")
    seq = [dst]
    while seq[-1] != src:
        seq.append(prev[seq[-1]])
    seq.reverse()
    waypoints = tuple(vs[i] for i in seq)
    return GeodesicPath(waypoints, polyline_length(waypoints))


def save_street(street: Street) -> str:
    lines = ["street v=%d" % street.polygon.n]
    for v in street.polygon.vertices:
        lines.append("%r %r" % (v.x, v.y))
    lines.append("s=%d t=%d" % (street.s_index, street.t_index))
    return "\n".join(lines) + "\n"


def load_street(text: str, validate: bool = True) -> Street:
    rows = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append(line)
    if not rows:
        raise StreetParseError("empty street file")
    head = rows[0]
    if not head.startswith("street v="):
        raise StreetParseError("bad header %r" % head)
    try:
        n = int(head[len("street v="):])
    except ValueError:
        raise StreetParseError("bad vertex count in %r" % head)
    if n < 3:
        raise StreetParseError("vertex count must be >= 3")
    if len(rows) != n + 2:
        raise StreetParseError(
            "expected %d lines (header + %d vertices + s/t), got %d"
            % (n + 2, n, len(rows)))
    verts = []
    for k in range(1, n + 1):
        parts = rows[k].split()
        if len(parts) != 2:
            raise StreetParseError("bad vertex line %r" % rows[k])
        try:
            verts.append((float(parts[0]), float(parts[1])))
        except ValueError:
            raise StreetParseError("bad coordinate in %r" % rows[k])
    tail = rows[n + 1].split()
    if len(tail) != 2 or not tail[0].startswith("s=") or not tail[1].startswith("t="):
        raise StreetParseError("bad s/t line %r" % rows[n + 1])
    try:
        s_index = int(tail[0][2:])
        t_index = int(tail[1][2:])
    except ValueError:
        raise StreetParseError("bad s/t indices in %r" % rows[n + 1])
    if not (0 <= s_index < n and 0 <= t_index < n) or s_index == t_index:
        raise StreetParseError("s/t indices out of range")
    try:
        poly = SimplePolygon(verts)
    except GeometryError as exc:
        raise StreetGeometryError(str(exc))
    return build_street(poly, s_index, t_index, validate=validate)
