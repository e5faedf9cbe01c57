// Scripted rule-following driver, reconstructed from wire messages only.
//
// This mirrors the simulator-side oracle's Autoturn decision rule, float
// for float: every expression is written in the same shape as the backend
// (same constants, same order of operations), so a lockstep session driven
// by this module reproduces the backend oracle's action stream exactly.
// The one piece of hidden state - the time of the last registered hit -
// is inferred by predicting when our own missiles land.

import type { FrameMessage, ProjectileWire, SimConfigWire } from "./protocol.js";

export const NOOP = 0;
export const FIRE = 1;
export const THRUST = 2;

const RAD_TO_DEG = 180 / Math.PI;
const DEG_TO_RAD = Math.PI / 180;
const CX = 210;
const CY = 210;

export interface OracleTuning {
  firePeriodFrames: number;
  orbitRadius: number;
  orbitLeadS: number;
  minOrbitSpeed: number;
}

export const DEFAULT_TUNING: OracleTuning = {
  firePeriodFrames: 8,
  orbitRadius: 130.0,
  orbitLeadS: 0.8,
  minOrbitSpeed: 25.0,
};

export function predictedHitFrame(
  x: number, y: number, vx: number, vy: number,
  sim: SimConfigWire, baseFrame: number, maxFrames = 240,
): number | null {
  const hitR = sim.fortress_radius + sim.projectile_radius;
  const hitR2 = hitR * hitR;
  const dt = 1.0 / sim.fps;
  let px = x;
  let py = y;
  let prevD2 = Infinity;
  for (let k = 1; k <= maxFrames; k++) {
    px += vx * dt;
    py += vy * dt;
    const dx = px - CX;
    const dy = py - CY;
    const d2 = dx * dx + dy * dy;
    if (d2 <= hitR2) return baseFrame + k;
    if (d2 > prevD2) return null;
    prevD2 = d2;
  }
  return null;
}

export function minSlowGapFrames(criticalMs: number, fps: number): number {
  let k = Math.ceil((criticalMs * fps) / 1000.0);
  while (k * 1000 < criticalMs * fps) k += 1;
  return Math.max(k, 1);
}

function pendingHits(frame: FrameMessage, sim: SimConfigWire): number[] {
  const out: number[] = [];
  for (const p of frame.projectiles) {
    if (p.k !== "missile") continue;
    const hit = predictedHitFrame(p.x, p.y, p.vx, p.vy, sim, frame.f);
    if (hit !== null) out.push(hit);
  }
  out.sort((a, b) => a - b);
  return out;
}

function fireNowHitFrame(frame: FrameMessage, sim: SimConfigWire,
                         headingDeg: number): number | null {
  const rad = headingDeg * DEG_TO_RAD;
  const hx = Math.cos(rad);
  const hy = Math.sin(rad);
  const offset = sim.ship_radius + sim.projectile_radius + 1.0;
  return predictedHitFrame(
    frame.ship.x + hx * offset, frame.ship.y + hy * offset,
    hx * sim.missile_speed, hy * sim.missile_speed, sim, frame.f);
}

function destructionScheduled(lastHit: number | null, pending: number[],
                              sim: SimConfigWire): boolean {
  const times = lastHit === null ? pending : [lastHit, ...pending];
  for (let i = 0; i + 1 < times.length; i++) {
    const a = times[i] as number;
    const b = times[i + 1] as number;
    if ((b - a) * 1000 < sim.critical_interval_ms * sim.fps) return true;
  }
  return false;
}

function wantsFire(frame: FrameMessage, sim: SimConfigWire,
                   tuning: OracleTuning, headingDeg: number,
                   lastHit: number | null): boolean {
  const candidate = fireNowHitFrame(frame, sim, headingDeg);
  if (candidate === null) return false;
  const pending = pendingHits(frame, sim);

  if (frame.v >= sim.vulnerability_threshold) {
    if (destructionScheduled(lastHit, pending, sim)) return false;
    return pending.length < 2;
  }
  if (frame.v + pending.length >= sim.vulnerability_threshold) return false;

  const minGap = Math.max(minSlowGapFrames(sim.critical_interval_ms, sim.fps),
                          tuning.firePeriodFrames);
  let last = lastHit;
  if (pending.length > 0) {
    const tail = pending[pending.length - 1] as number;
    last = last === null ? tail : Math.max(last, tail);
  }
  return last === null || candidate - last >= minGap;
}

function wantsThrust(frame: FrameMessage, tuning: OracleTuning): boolean {
  const dx = frame.ship.x - CX;
  const dy = frame.ship.y - CY;
  const r = Math.sqrt(dx * dx + dy * dy);
  const vR = (dx * frame.ship.vx + dy * frame.ship.vy) / r;
  const vT = (dx * frame.ship.vy - dy * frame.ship.vx) / r;
  if (Math.abs(vT) < tuning.minOrbitSpeed) return false;
  return r + vR * tuning.orbitLeadS > tuning.orbitRadius;
}

export class ScriptedOracle {
  private inferredLastHit: number | null = null;
  private prevMissiles: ProjectileWire[] = [];
  private prevV = 0;
  private prevFrame: number | null = null;

  constructor(private readonly sim: SimConfigWire,
              private readonly tuning: OracleTuning = DEFAULT_TUNING) {
    if (sim.game_version !== "autoturn") {
      throw new Error("the scripted driver plays the autoturn version");
    }
  }

  private advanceInference(frame: FrameMessage): void {
    if (this.prevFrame === null) return;
    for (const p of this.prevMissiles) {
      const hit = predictedHitFrame(p.x, p.y, p.vx, p.vy, this.sim,
                                    this.prevFrame);
      if (hit === frame.f) this.inferredLastHit = frame.f;
    }
    if (this.prevV >= this.sim.vulnerability_threshold && frame.v < this.prevV) {
      this.inferredLastHit = null; // fortress destroyed: tracker reset
    }
  }

  act(frame: FrameMessage): number {
    this.advanceInference(frame);
    let action = NOOP;
    if (frame.ship.alive) {
      const heading =
        Math.atan2(CY - frame.ship.y, CX - frame.ship.x) * RAD_TO_DEG;
      if (wantsFire(frame, this.sim, this.tuning, heading,
                    this.inferredLastHit)) {
        action = FIRE;
      } else if (wantsThrust(frame, this.tuning)) {
        action = THRUST;
      }
    }
    this.prevMissiles = frame.projectiles.filter((p) => p.k === "missile");
    this.prevV = frame.v;
    this.prevFrame = frame.f;
    return action;
  }
}
