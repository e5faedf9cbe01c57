// Scene construction and canvas painting.
//
// Scene building is pure (testable without a DOM); the painter walks the
// draw list onto a 2D context. World coordinates are painted 1:1 onto a
// 420x420 canvas with a HUD band below.

import type { FrameMessage, SimConfigWire } from "./protocol.js";

export const WORLD = 420;
export const HUD_HEIGHT = 40;

export type DrawOp =
  | { op: "polyline"; points: [number, number][]; color: string; close: boolean }
  | { op: "triangle"; points: [number, number][]; color: string }
  | { op: "dot"; x: number; y: number; r: number; color: string }
  | { op: "bar"; x: number; y: number; w: number; h: number; fill: number; color: string }
  | { op: "text"; x: number; y: number; text: string; color: string; size: number }
  | { op: "overlay"; text: string };

const COLORS = {
  wall: "#4a6a8a",
  ship: "#e8e8ff",
  fortress: "#ffcc44",
  missile: "#7dff7d",
  shell: "#ff6060",
  hud: "#cfd8e3",
  bar: "#ffcc44",
};

export function hexagonPoints(cx: number, cy: number, radius: number): [number, number][] {
  const pts: [number, number][] = [];
  for (let k = 0; k < 6; k++) {
    const ang = ((90 + 60 * k) * Math.PI) / 180;
    pts.push([cx + radius * Math.cos(ang), cy + radius * Math.sin(ang)]);
  }
  return pts;
}

function orientedTriangle(
  x: number, y: number, headingDeg: number,
  nose: number, tail: number, spreadDeg: number,
): [number, number][] {
  const pts: [number, number][] = [];
  const h = (headingDeg * Math.PI) / 180;
  pts.push([x + nose * Math.cos(h), y + nose * Math.sin(h)]);
  for (const side of [spreadDeg, -spreadDeg]) {
    const back = ((headingDeg + 180 - side) * Math.PI) / 180;
    pts.push([x + tail * Math.cos(back), y + tail * Math.sin(back)]);
  }
  return pts;
}

export function vulnerabilityFill(v: number, threshold: number): number {
  if (threshold <= 0) return 0;
  return Math.max(0, Math.min(1, v / threshold));
}

export function buildScene(frame: FrameMessage, sim: SimConfigWire): DrawOp[] {
  const cx = WORLD / 2;
  const cy = WORLD / 2;
  const ops: DrawOp[] = [];
  ops.push({ op: "polyline", points: hexagonPoints(cx, cy, sim.outer_hex_radius),
             color: COLORS.wall, close: true });
  ops.push({ op: "polyline", points: hexagonPoints(cx, cy, sim.inner_hex_radius),
             color: COLORS.wall, close: true });
  ops.push({ op: "triangle", color: COLORS.fortress,
             points: orientedTriangle(cx, cy, frame.fortress.heading, 14, 11, 50) });
  if (frame.ship.alive) {
    ops.push({ op: "triangle", color: COLORS.ship,
               points: orientedTriangle(frame.ship.x, frame.ship.y,
                                        frame.ship.heading, 12, 10, 40) });
  }
  for (const p of frame.projectiles) {
    ops.push({ op: "dot", x: p.x, y: p.y, r: 2.5,
               color: p.k === "missile" ? COLORS.missile : COLORS.shell });
  }
  ops.push({ op: "text", x: 8, y: WORLD + 16, size: 14, color: COLORS.hud,
             text: `score ${frame.score}` });
  ops.push({ op: "text", x: WORLD - 84, y: WORLD + 16, size: 14, color: COLORS.hud,
             text: `${frame.remaining.toFixed(0)}s left` });
  ops.push({ op: "bar", x: 8, y: WORLD + 24, w: WORLD - 16, h: 10,
             fill: vulnerabilityFill(frame.v, sim.vulnerability_threshold),
             color: COLORS.bar });
  return ops;
}

export function disconnectedScene(): DrawOp[] {
  return [{ op: "overlay", text: "disconnected - game paused" }];
}

export function paint(ctx: CanvasRenderingContext2D, ops: DrawOp[]): void {
  ctx.fillStyle = "#060a10";
  ctx.fillRect(0, 0, WORLD, WORLD + HUD_HEIGHT);
  for (const op of ops) {
    switch (op.op) {
      case "polyline": {
        ctx.strokeStyle = op.color;
        ctx.lineWidth = 1.5;
        ctx.beginPath();
        const [first, ...rest] = op.points;
        if (!first) break;
        ctx.moveTo(first[0], first[1]);
        for (const [x, y] of rest) ctx.lineTo(x, y);
        if (op.close) ctx.closePath();
        ctx.stroke();
        break;
      }
      case "triangle": {
        ctx.fillStyle = op.color;
        ctx.beginPath();
        const [a, b, c] = op.points;
        if (!a || !b || !c) break;
        ctx.moveTo(a[0], a[1]);
        ctx.lineTo(b[0], b[1]);
        ctx.lineTo(c[0], c[1]);
        ctx.closePath();
        ctx.fill();
        break;
      }
      case "dot":
        ctx.fillStyle = op.color;
        ctx.beginPath();
        ctx.arc(op.x, op.y, op.r, 0, 2 * Math.PI);
        ctx.fill();
        break;
      case "bar": {
        ctx.strokeStyle = op.color;
        ctx.strokeRect(op.x, op.y, op.w, op.h);
        ctx.fillStyle = op.color;
        ctx.fillRect(op.x, op.y, op.w * op.fill, op.h);
        break;
      }
      case "text":
        ctx.fillStyle = op.color;
        ctx.font = `${op.size}px monospace`;
        ctx.fillText(op.text, op.x, op.y);
        break;
      case "overlay":
        ctx.fillStyle = "rgba(0, 0, 0, 0.6)";
        ctx.fillRect(0, 0, WORLD, WORLD + HUD_HEIGHT);
        ctx.fillStyle = "#ffffff";
        ctx.font = "20px monospace";
        ctx.textAlign = "center";
        ctx.fillText(op.text, WORLD / 2, WORLD / 2);
        ctx.textAlign = "start";
        break;
    }
  }
}
