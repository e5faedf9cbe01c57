"""Deterministic 84x84 grayscale rasterizer.

The 420x420 world maps onto the frame at an exact 5:1 scale. Everything is
drawn on the integer pixel grid with no anti-aliasing, so a frame is a pure,
bit-stable function of the visible game state: ship pose, fortress heading,
projectiles, the vulnerability bar, and the score strip. The internal shot
clock is deliberately not drawn anywhere.

Intensities are multiples of 1/255 so frames survive a uint8 round trip.
"""

from __future__ import annotations

import math

import numpy as np

from .config import WORLD_CENTER
from .geometry import heading_vector, hexagon_vertices
from .rewards import display_score_from_counts

FRAME_SIZE = 84
WORLD_TO_PIXEL = 5.0

BG = 0.0
HEX = 77 / 255
SHELL_I = 153 / 255
SHIP_I = 204 / 255
MISSILE_I = 230 / 255
FORTRESS_I = 1.0
HUD = 1.0

# 3x5 digit glyphs, row-major strings.
_GLYPHS = {
    "0": ["111", "101", "101", "101", "111"],
    "1": ["010", "110", "010", "010", "111"],
    "2": ["111", "001", "111", "100", "111"],
    "3": ["111", "001", "111", "001", "111"],
    "4": ["101", "101", "111", "001", "001"],
    "5": ["111", "100", "111", "001", "111"],
    "6": ["111", "100", "111", "101", "111"],
    "7": ["111", "001", "010", "010", "010"],
    "8": ["111", "101", "111", "101", "111"],
    "9": ["111", "101", "111", "001", "111"],
    "-": ["000", "000", "111", "000", "000"],
}

SCORE_STRIP_ROWS = 8          # rows 0..7 reserved for the score
VULN_BAR_TOP = 81             # rows 81..83 are the vulnerability bar


def _px(v: float) -> int:
    return int(v / WORLD_TO_PIXEL)


def _put(img: np.ndarray, x: int, y: int, val: float) -> None:
    if 0 <= x < FRAME_SIZE and 0 <= y < FRAME_SIZE:
        img[y, x] = val


def _draw_line(img: np.ndarray, x0: int, y0: int, x1: int, y1: int, val: float) -> None:
    dx = abs(x1 - x0)
    dy = -abs(y1 - y0)
    sx = 1 if x0 < x1 else -1
    sy = 1 if y0 < y1 else -1
    err = dx + dy
    while True:
        _put(img, x0, y0, val)
        if x0 == x1 and y0 == y1:
            return
        e2 = 2 * err
        if e2 >= dy:
            err += dy
            x0 += sx
        if e2 <= dx:
            err += dx
            y0 += sy


def _fill_triangle(img: np.ndarray, pts: list[tuple[float, float]], val: float) -> None:
    """Pixel-center point-in-triangle fill in pixel space."""
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    x_lo = max(int(math.floor(min(xs))), 0)
    x_hi = min(int(math.ceil(max(xs))), FRAME_SIZE - 1)
    y_lo = max(int(math.floor(min(ys))), 0)
    y_hi = min(int(math.ceil(max(ys))), FRAME_SIZE - 1)
    (ax, ay), (bx, by), (cx, cy) = pts
    for y in range(y_lo, y_hi + 1):
        for x in range(x_lo, x_hi + 1):
            d1 = (bx - ax) * (y - ay) - (by - ay) * (x - ax)
            d2 = (cx - bx) * (y - by) - (cy - by) * (x - bx)
            d3 = (ax - cx) * (y - cy) - (ay - cy) * (x - cx)
            neg = d1 < 0 or d2 < 0 or d3 < 0
            pos = d1 > 0 or d2 > 0 or d3 > 0
            if not (neg and pos):
                img[y, x] = val


def _draw_oriented_triangle(img: np.ndarray, x: float, y: float, heading: float,
                            nose: float, tail: float, spread_deg: float,
                            val: float) -> None:
    hx, hy = heading_vector(heading)
    pts = [( (x + hx * nose) / WORLD_TO_PIXEL, (y + hy * nose) / WORLD_TO_PIXEL )]
    for side in (spread_deg, -spread_deg):
        bx, by = heading_vector(heading + 180.0 - side)
        pts.append(((x + bx * tail) / WORLD_TO_PIXEL,
                    (y + by * tail) / WORLD_TO_PIXEL))
    _fill_triangle(img, pts, val)


def _draw_glyph(img: np.ndarray, ch: str, col: int, row: int) -> None:
    glyph = _GLYPHS.get(ch)
    if glyph is None:
        return
    for r, bits in enumerate(glyph):
        for c, bit in enumerate(bits):
            if bit == "1":
                _put(img, col + c, row + r, HUD)


def render_frame(state) -> np.ndarray:
    """Rasterize a GameState into an 84x84 float32 frame in [0, 1]."""
    cfg = state.config
    img = np.zeros((FRAME_SIZE, FRAME_SIZE), dtype=np.float32)
    cx, cy = WORLD_CENTER

    for radius in (cfg.outer_hex_radius, cfg.inner_hex_radius):
        verts = hexagon_vertices(cx, cy, radius)
        for i in range(6):
            x0, y0 = verts[i]
            x1, y1 = verts[(i + 1) % 6]
            _draw_line(img, _px(x0), _px(y0), _px(x1), _px(y1), HEX)

    _draw_oriented_triangle(img, cx, cy, state.fortress.heading,
                            nose=14.0, tail=11.0, spread_deg=50.0,
                            val=FORTRESS_I)

    ship = state.ship
    if ship.alive:
        _draw_oriented_triangle(img, ship.x, ship.y, ship.heading,
                                nose=12.0, tail=10.0, spread_deg=40.0,
                                val=SHIP_I)

    for p in state.projectiles:
        val = MISSILE_I if p.kind == "missile" else SHELL_I
        _put(img, _px(p.x), _px(p.y), val)

    # HUD: score strip (top) and vulnerability bar (bottom).
    score = display_score_from_counts(state.fortress_deaths, state.ship_deaths,
                                      state.missiles_fired)
    col = 1
    for ch in str(score):
        _draw_glyph(img, ch, col, 1)
        col += 4
    # The bar rows are a reserved HUD band: background unless filled.
    img[VULN_BAR_TOP:VULN_BAR_TOP + 3, :] = BG
    fill = int(round(FRAME_SIZE * state.vuln.v / cfg.vulnerability_threshold))
    if fill > 0:
        img[VULN_BAR_TOP:VULN_BAR_TOP + 3, :min(fill, FRAME_SIZE)] = HUD

    return img


def frame_to_pgm(frame: np.ndarray) -> bytes:
    """Binary PGM encoding (for --dump-frames debugging output)."""
    data = np.round(frame * 255.0).astype(np.uint8)
    header = f"P5\n{frame.shape[1]} {frame.shape[0]}\n255\n".encode()
    return header + data.tobytes()
