"""Deterministic SVG rendering of streets, trajectories and geodesics.

Styling is fixed so rendered documents are byte-stable for identical input:
polygon outline in black, the executed path bold, the geodesic dotted,
markers at s, t and event locations.
"""

from __future__ import annotations

EVENT_COLORS = {
    "appearance": "#2a9d8f",
    "disappearance": "#e76f51",
    "split": "#264653",
    "merge": "#f4a261",
}


def _fmt(v: float) -> str:
    out = "%.4f" % v
    return "0.0000" if out == "-0.0000" else out


def _path_d(points) -> str:
    cmds = []
    for i, p in enumerate(points):
        cmds.append("%s%s %s" % ("M" if i == 0 else "L", _fmt(p[0]), _fmt(p[1])))
    return " ".join(cmds)


def render_svg(street, trajectory=None, geodesic=None) -> str:
    poly = street.polygon
    x0, y0, x1, y1 = poly.bbox
    margin = 0.06 * max(x1 - x0, y1 - y0, 1.0)
    vb = (x0 - margin, -(y1 + margin), (x1 - x0) + 2 * margin,
          (y1 - y0) + 2 * margin)
    stroke = max((x1 - x0), (y1 - y0)) / 400.0
    marker_r = 3.0 * stroke

    parts = []
    parts.append('<?xml version="1.0" encoding="UTF-8"?>')
    parts.append(
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        'viewBox="%s %s %s %s">' % tuple(_fmt(v) for v in vb))
    # flip y so model +y points up
    parts.append('<g transform="scale(1,-1)">')
    outline = " ".join("%s,%s" % (_fmt(v.x), _fmt(v.y)) for v in poly.vertices)
    parts.append('<polygon points="%s" fill="#f3f1ec" stroke="#000000" '
                 'stroke-width="%s"/>' % (outline, _fmt(stroke)))
    if geodesic is not None:
        parts.append('<path d="%s" fill="none" stroke="#777777" '
                     'stroke-width="%s" stroke-dasharray="%s %s"/>'
                     % (_path_d(geodesic.waypoints), _fmt(stroke),
                        _fmt(4 * stroke), _fmt(3 * stroke)))
    if trajectory is not None:
        pts = trajectory.positions()
        parts.append('<path d="%s" fill="none" stroke="#000000" '
                     'stroke-width="%s"/>' % (_path_d(pts), _fmt(2.5 * stroke)))
        for sample in trajectory.samples:
            for ev in sample.events:
                color = EVENT_COLORS.get(ev.kind, "#888888")
                parts.append(
                    '<circle cx="%s" cy="%s" r="%s" fill="%s"/>'
                    % (_fmt(ev.location[0]), _fmt(ev.location[1]),
                       _fmt(marker_r * 0.7), color))
    s, t = street.s, street.t
    parts.append('<circle cx="%s" cy="%s" r="%s" fill="#1b7f3a"/>'
                 % (_fmt(s.x), _fmt(s.y), _fmt(marker_r)))
    parts.append('<rect x="%s" y="%s" width="%s" height="%s" fill="#c22f2f"/>'
                 % (_fmt(t.x - marker_r), _fmt(t.y - marker_r),
                    _fmt(2 * marker_r), _fmt(2 * marker_r)))
    parts.append('</g>')
    parts.append('</svg>')
    return "\n".join(parts) + "\n"
