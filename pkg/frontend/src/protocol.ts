// Wire protocol shared with the python server (JSON per message).

export interface SimConfigWire {
  game_version: "autoturn" | "youturn";
  fps: number;
  episode_seconds: number;
  critical_interval_ms: number;
  vulnerability_threshold: number;
  outer_hex_radius: number;
  inner_hex_radius: number;
  spawn_clearance: number;
  thrust_accel: number;
  ship_turn_rate: number;
  max_speed: number;
  spawn_speed: number;
  missile_speed: number;
  shell_speed: number;
  fortress_lock_tolerance_deg: number;
  fortress_shell_cooldown_ms: number;
  fortress_turn_rate: number;
  ship_radius: number;
  fortress_radius: number;
  projectile_radius: number;
}

export interface ConfigMessage {
  t: "config";
  seed: number;
  pace: "real" | "lockstep";
  scheme: string;
  actions: number;
  sim: SimConfigWire;
}

export interface ShipWire {
  x: number;
  y: number;
  vx: number;
  vy: number;
  heading: number;
  alive: boolean;
}

export interface ProjectileWire {
  k: "missile" | "shell";
  x: number;
  y: number;
  vx: number;
  vy: number;
}

export interface FrameMessage {
  t: "frame";
  f: number;
  ship: ShipWire;
  fortress: { heading: number; alive: boolean };
  projectiles: ProjectileWire[];
  v: number;
  score: number;
  remaining: number;
}

export type LogRecord = [number, number, number, string[], number];

export interface EpisodeLogWire {
  header: Record<string, unknown>;
  frames: LogRecord[];
}

export interface EndMessage {
  t: "end";
  score: number;
  fortress_deaths: number;
  ship_deaths: number;
  missiles: number;
  replay: string;
  log: EpisodeLogWire;
}

export interface BusyMessage {
  t: "busy";
}

export type ServerMessage = ConfigMessage | FrameMessage | EndMessage | BusyMessage;

export interface InputMessage {
  t: "input";
  f: number;
  a: number;
}

export function parseServerMessage(raw: string): ServerMessage {
  const msg = JSON.parse(raw) as ServerMessage;
  if (!msg || typeof msg !== "object" || !("t" in msg)) {
    throw new Error(`malformed server message: ${raw.slice(0, 80)}`);
  }
  return msg;
}

export function inputMessage(frame: number, action: number): string {
  const msg: InputMessage = { t: "input", f: frame, a: action };
  return JSON.stringify(msg);
}
