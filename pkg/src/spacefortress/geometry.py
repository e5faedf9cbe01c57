"""2D helpers: regular hexagons, point containment, circle overlap.

Hexagons are pointy-top (a vertex straight up at the arena center's -y,
i.e. toward the top of the screen in render coordinates) and defined by
their circumradius. Containment uses the standard convex half-plane test;
the matching edge-crossing oracle lives in the test suite.
"""

from __future__ import annotations

import math


def hexagon_vertices(cx: float, cy: float, radius: float) -> list[tuple[float, float]]:
    """Six vertices, counter-clockwise in (x, y-down) screen coordinates."""
    verts = []
    for k in range(6):
        ang = math.radians(90.0 + 60.0 * k)
        verts.append((cx + radius * math.cos(ang), cy + radius * math.sin(ang)))
    return verts


def point_in_convex_polygon(px: float, py: float, verts: list[tuple[float, float]],
                            strict: bool = False) -> bool:
    """True if (px, py) is inside the convex polygon given by `verts`.

    With strict=False, boundary points count as inside. The vertex order may
    be either winding; the sign convention is picked up from the polygon.
    """
    sign = 0
    n = len(verts)
    for i in range(n):
        x1, y1 = verts[i]
        x2, y2 = verts[(i + 1) % n]
        cross = (x2 - x1) * (py - y1) - (y2 - y1) * (px - x1)
        if cross == 0.0:
            if strict:
                return False
            continue
        s = 1 if cross > 0.0 else -1
        if sign == 0:
            sign = s
        elif s != sign:
            return False
    return True


class Hexagon:
    """A regular pointy-top hexagon with a cached containment test."""

    __slots__ = ("cx", "cy", "radius", "verts")

    def __init__(self, cx: float, cy: float, radius: float):
        self.cx = cx
        self.cy = cy
        self.radius = radius
        self.verts = hexagon_vertices(cx, cy, radius)

    def contains(self, px: float, py: float, strict: bool = False) -> bool:
        return point_in_convex_polygon(px, py, self.verts, strict=strict)


def dist_sq(ax: float, ay: float, bx: float, by: float) -> float:
    dx = bx - ax
    dy = by - ay
    return dx * dx + dy * dy


def circles_overlap(ax: float, ay: float, ra: float,
                    bx: float, by: float, rb: float) -> bool:
    r = ra + rb
    return dist_sq(ax, ay, bx, by) <= r * r


def heading_vector(heading_deg: float) -> tuple[float, float]:
    rad = math.radians(heading_deg)
    return math.cos(rad), math.sin(rad)


def wrap_degrees(angle: float) -> float:
    """Wrap to [-180, 180)."""
    return (angle + 180.0) % 360.0 - 180.0


def bearing_degrees(from_x: float, from_y: float, to_x: float, to_y: float) -> float:
    return math.degrees(math.atan2(to_y - from_y, to_x - from_x))
