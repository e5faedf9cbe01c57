// Browser entry: wire the canvas, keyboard, and websocket together.

import { PlayClient } from "./client.js";
import { KeyTracker, actionForFrame } from "./input.js";
import { buildScene, disconnectedScene, paint } from "./render.js";
import { aggregateSessions, downloadLog, summarizeEnd } from "./session.js";
import type { SessionSummary } from "./session.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

const sessions: SessionSummary[] = [];

function connect(): void {
  const canvas = el<HTMLCanvasElement>("game");
  const ctx = canvas.getContext("2d");
  if (!ctx) throw new Error("no 2d context");
  const status = el<HTMLElement>("status");
  const host = el<HTMLInputElement>("host").value || "localhost:8765";

  const keys = new KeyTracker();
  keys.attach(window);

  const ws = new WebSocket(`ws://${host}`);
  let session: { sim: Parameters<typeof buildScene>[1]; actions: number } | null = null;
  const client = new PlayClient(ws, {
    onConfig(cfg) {
      session = { sim: cfg.sim, actions: cfg.actions };
      status.textContent =
        `playing ${cfg.sim.game_version} | scheme ${cfg.scheme} | seed ${cfg.seed}`;
    },
    onFrame(frame) {
      if (!session) return null;
      paint(ctx, buildScene(frame, session.sim));
      return actionForFrame(keys.keys, session.actions);
    },
    onEnd(end) {
      sessions.push(summarizeEnd(end));
      const agg = aggregateSessions(sessions);
      const score = agg.rows[0];
      status.textContent =
        `final score ${end.score} (server replay: ${end.replay}) | ` +
        `sessions ${agg.sessions}, last-5 avg ${score ? score.last5.toFixed(0) : "-"}`;
      el<HTMLButtonElement>("download").onclick = () => downloadLog(end.log);
    },
    onBusy() {
      status.textContent = "server busy: one player session at a time";
    },
    onClose() {
      paint(ctx, disconnectedScene());
    },
  });
  void client;
}

el<HTMLButtonElement>("connect").addEventListener("click", connect);
