"""Websocket server for live human play.

The server is authoritative: the client only sends frame-stamped action
ids; the applied action stream is recorded as a normal episode log, the
log is replay-verified server-side, and the final score is whatever that
log says.

Protocol (JSON per message):

    server -> client
        {"t": "config", "seed": ..., "pace": ..., "actions": N,
         "sim": {full SimConfig}}
        {"t": "frame", "f": N, "ship": {...}, "fortress": {...},
         "projectiles": [...], "v": V, "score": S, "remaining": seconds}
        {"t": "end", "score": S, "fortress_deaths": ..., "ship_deaths": ...,
         "missiles": ..., "replay": "exact" | <divergence>, "log": {...}}
        {"t": "busy"}   (a second concurrent connection is turned away)

    client -> server
        {"t": "input", "f": N, "a": action_id}

Pacing: "real" runs a wall-clock tick per frame and applies the most
recent input received (NoOp when silent) - suited to human hands.
"lockstep" waits for the input stamped with the current frame before
stepping, which makes scripted sessions bit-reproducible.
"""

from __future__ import annotations

import asyncio
import json
import secrets

from websockets.asyncio.server import serve as ws_serve

from .config import SimConfig
from .env import EpisodeLog, SpaceFortressEnv, replay
from .sim import NOOP

REAL = "real"
LOCKSTEP = "lockstep"


def frame_message(env: SpaceFortressEnv) -> dict:
    state = env.state
    ship = state.ship
    cfg = state.config
    remaining = (cfg.episode_frames - state.frame) / cfg.fps
    return {
        "t": "frame",
        "f": state.frame,
        "ship": {"x": ship.x, "y": ship.y, "vx": ship.vx, "vy": ship.vy,
                 "heading": ship.heading, "alive": ship.alive},
        "fortress": {"heading": state.fortress.heading,
                     "alive": state.fortress.alive},
        "projectiles": [{"k": p.kind, "x": p.x, "y": p.y,
                         "vx": p.vx, "vy": p.vy}
                        for p in state.projectiles],
        "v": state.vuln.v,
        "score": env.score.display_score,
        "remaining": remaining,
    }


def log_payload(log: EpisodeLog) -> dict:
    return {"header": log.header,
            "frames": [list(rec) for rec in log.frames]}


class PlaySession:
    def __init__(self, ws, config: SimConfig, scheme: str, seed: int,
                 pace: str):
        self.ws = ws
        self.config = config
        self.scheme = scheme
        self.seed = seed
        self.pace = pace
        self.latest_action = NOOP
        self.inputs: asyncio.Queue = asyncio.Queue()

    async def send(self, payload: dict) -> None:
        await self.ws.send(json.dumps(payload))

    async def reader(self) -> None:
        try:
            async for raw in self.ws:
                try:
                    msg = json.loads(raw)
                except json.JSONDecodeError:
                    continue
                if msg.get("t") == "input":
                    action = int(msg.get("a", NOOP))
                    self.latest_action = action
                    await self.inputs.put((int(msg.get("f", -1)), action))
        finally:
            # Wake a lockstep wait so the session can shut down.
            await self.inputs.put(None)

    async def action_for_frame(self, frame: int, n_actions: int) -> int:
        if self.pace == LOCKSTEP:
            while True:
                item = await self.inputs.get()
                if item is None:
                    raise ConnectionError("client disconnected mid-session")
                f, action = item
                if f >= frame:
                    break
        else:
            action = self.latest_action
        if not 0 <= action < n_actions:
            action = NOOP
        return action

    async def run(self) -> None:
        env = SpaceFortressEnv(config=self.config, scheme=self.scheme,
                               record=True)
        env.reset(seed=self.seed)
        await self.send({
            "t": "config",
            "seed": self.seed,
            "pace": self.pace,
            "scheme": self.scheme,
            "actions": env.n_actions,
            "sim": self.config.to_dict(),
        })
        reader_task = asyncio.create_task(self.reader())
        dt = 1.0 / self.config.fps
        loop = asyncio.get_running_loop()
        next_tick = loop.time()
        try:
            while not env.done:
                await self.send(frame_message(env))
                if self.pace == REAL:
                    next_tick += dt
                    delay = next_tick - loop.time()
                    if delay > 0:
                        await asyncio.sleep(delay)
                action = await self.action_for_frame(env.state.frame,
                                                     env.n_actions)
                env.step(action)
            await self.send(frame_message(env))
            report = replay(env.episode_log)
            info = env.info()
            await self.send({
                "t": "end",
                "score": info["display_score"],
                "fortress_deaths": info["fortress_deaths"],
                "ship_deaths": info["ship_deaths"],
                "missiles": info["missiles_fired"],
                "replay": "exact" if report.exact else report.summary(),
                "log": log_payload(env.episode_log),
            })
        finally:
            reader_task.cancel()


class PlayServer:
    """One live session at a time; extra connections are turned away."""

    def __init__(self, config: SimConfig, scheme: str = "sparse",
                 seed: int | None = None, pace: str = REAL):
        if pace not in (REAL, LOCKSTEP):
            raise ValueError(f"pace must be {REAL!r} or {LOCKSTEP!r}")
        self.config = config
        self.scheme = scheme
        self.seed = seed
        self.pace = pace
        self._busy = False

    async def handler(self, ws) -> None:
        if self._busy:
            await ws.send(json.dumps({"t": "busy"}))
            await ws.close()
            return
        self._busy = True
        try:
            seed = self.seed if self.seed is not None else secrets.randbits(48)
            session = PlaySession(ws, self.config, self.scheme, seed, self.pace)
            await session.run()
        except Exception as exc:  # client went away; next connection starts fresh
            print(f"session ended: {exc!r}")
        finally:
            self._busy = False

    async def serve_forever(self, host: str, port: int) -> None:
        async with ws_serve(self.handler, host, port):
            await asyncio.Future()


def serve(config: SimConfig, scheme: str = "sparse", host: str = "127.0.0.1",
          port: int = 8765, seed: int | None = None, pace: str = REAL) -> None:
    server = PlayServer(config, scheme=scheme, seed=seed, pace=pace)
    print(f"listening on ws://{host}:{port} "
          f"({config.game_version}, {scheme}, pace={pace})")
    try:
        asyncio.run(server.serve_forever(host, port))
    except KeyboardInterrupt:
        print("bye")
