"""Command-line entry point: simulate, train, transfer, replay, serve.

Exit codes: 0 success, 2 flag/usage error, 3 replay divergence.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import __version__
from .agents import OraclePolicy, act
from .config import AUTOTURN, YOUTURN, SimConfig, load_config_file, make_config
from .env import EpisodeLog, SpaceFortressEnv, replay
from .errors import SpaceFortressError
from .observe import FEATURE, PIXEL
from .rewards import SCHEME_KINDS

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DIVERGENCE = 3

AGENTS = ("oracle", "random", "noop")
ARCHES = ("feature-mlp", "feature-gru", "sf-ff", "sf-gru")


def resolve_seed(value: int | None) -> int | None:
    if value is not None:
        return value
    env_seed = os.environ.get("SF_SEED")
    return int(env_seed) if env_seed else None


def build_sim_config(args) -> SimConfig:
    overrides = {}
    if getattr(args, "config", None):
        overrides.update(load_config_file(args.config))
    if getattr(args, "game", None):
        overrides["game_version"] = args.game
    if getattr(args, "interval_ms", None) is not None:
        overrides["critical_interval_ms"] = float(args.interval_ms)
    if getattr(args, "episode_seconds", None) is not None:
        overrides["episode_seconds"] = args.episode_seconds
    return make_config(overrides)


# -- simulate ---------------------------------------------------------------

def aggregate_report(rows: list[dict]) -> dict:
    scores = [r["score"] for r in rows]
    return {
        "episodes": len(rows),
        "Avg. Score": sum(scores) / len(rows),
        "Best Score": max(scores),
        "Fortress Death": sum(r["fortress_deaths"] for r in rows) / len(rows),
        "Ship Death": sum(r["ship_deaths"] for r in rows) / len(rows),
        "Missiles": sum(r["missiles"] for r in rows) / len(rows),
    }


def print_report(rows: list[dict], agg: dict, out=None) -> None:
    out = out if out is not None else sys.stdout
    header = f"{'seed':>20} {'score':>8} {'FD':>5} {'SD':>5} {'missiles':>9}"
    print(header, file=out)
    for r in rows:
        print(f"{r['seed']:>20} {r['score']:>8} {r['fortress_deaths']:>5} "
              f"{r['ship_deaths']:>5} {r['missiles']:>9}", file=out)
    print(f"Avg. Score: {agg['Avg. Score']:.1f}  "
          f"Best Score: {agg['Best Score']}  "
          f"Fortress Death: {agg['Fortress Death']:.3f}", file=out)


def run_episodes(config: SimConfig, agent: str, scheme: str, episodes: int,
                 seed: int | None, record_dir=None, dump_dir=None,
                 obs_mode: str = FEATURE) -> list[dict]:
    base = seed if seed is not None else random.SystemRandom().randrange(2**62)
    rows = []
    policy = OraclePolicy()
    for ep in range(episodes):
        ep_seed = base + ep
        env = SpaceFortressEnv(config=config, scheme=scheme, obs_mode=obs_mode,
                               record=record_dir is not None)
        env.reset(seed=ep_seed)
        rng = random.Random(ep_seed ^ 0x5F5F5F5F)
        frame_idx = 0
        while not env.done:
            env.step(act(agent, env.state, policy, rng))
            if dump_dir is not None:
                path = os.path.join(dump_dir, f"frame_{frame_idx:06d}.pgm")
                with open(path, "wb") as fh:
                    fh.write(env.render_pgm())
                frame_idx += 1
        info = env.info()
        rows.append({"seed": ep_seed, "score": info["display_score"],
                     "fortress_deaths": info["fortress_deaths"],
                     "ship_deaths": info["ship_deaths"],
                     "missiles": info["missiles_fired"]})
        if record_dir is not None:
            env.episode_log.save(os.path.join(record_dir,
                                              f"episode_{ep_seed}.jsonl"))
    return rows


def cmd_simulate(args) -> int:
    config = build_sim_config(args)
    seed = resolve_seed(args.seed)
    for d in (args.record, args.dump_frames):
        if d:
            os.makedirs(d, exist_ok=True)
    rows = run_episodes(config, args.agent, args.reward, args.episodes, seed,
                        record_dir=args.record, dump_dir=args.dump_frames,
                        obs_mode=args.obs)
    agg = aggregate_report(rows)
    print_report(rows, agg)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump({"rows": rows, "aggregates": agg,
                       "config_digest": config.digest()}, fh, indent=2)
    return EXIT_OK


# -- train / transfer --------------------------------------------------------

def cmd_train(args) -> int:
    import spacefortress.rl.train as rl_train
    from .rl.nets import PolicySpec
    from .rl.update import make_train_config

    config = build_sim_config(args)
    seed = resolve_seed(args.seed)
    spec = PolicySpec(kind=args.arch, n_actions=config.n_actions)
    train_config = make_train_config(
        args.algo, total_steps=args.steps, n_workers=args.workers,
        rollout_len=args.rollout, eval_every=args.eval_every,
        eval_episodes=args.eval_episodes, seed=seed if seed is not None else 0)
    result = rl_train.train(train_config, config, args.reward, spec,
                            out_dir=args.out, log=print)
    result.write_curve(os.path.join(args.out, "curve.csv"))
    print(f"final mean score: {result.final_eval.get('mean_score'):.1f}")
    return EXIT_OK


def cmd_transfer(args) -> int:
    import spacefortress.rl.train as rl_train
    from .rl.update import make_train_config

    config = build_sim_config(args)
    seed = resolve_seed(args.seed)
    train_config = make_train_config(
        args.algo, total_steps=args.steps, n_workers=args.workers,
        rollout_len=args.rollout, eval_every=args.eval_every,
        eval_episodes=args.eval_episodes, seed=seed if seed is not None else 0)
    os.makedirs(args.out, exist_ok=True)
    scratch, transfer = rl_train.transfer_init(
        getattr(args, "from"), args.interval_ms, train_config, config,
        args.reward, out_dir=args.out, log=print)
    paired = os.path.join(args.out, "paired_curves.csv")
    rl_train.write_paired_curves(paired, scratch, transfer)
    print(f"paired curves written to {paired}")
    print(f"step-0: scratch {scratch.curve[0].mean_score:.1f} "
          f"transfer {transfer.curve[0].mean_score:.1f}")
    return EXIT_OK


# -- replay / serve ----------------------------------------------------------

def cmd_replay(args) -> int:
    log = EpisodeLog.load(args.log)
    report = replay(log)
    print(report.summary())
    return EXIT_OK if report.exact else EXIT_DIVERGENCE


def cmd_serve(args) -> int:
    from .server import serve
    config = build_sim_config(args)
    seed = resolve_seed(args.seed)
    serve(config, scheme=args.reward, host=args.host, port=args.port,
          seed=seed, pace=args.pace)
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spacefortress",
        description="Space Fortress simulator, oracles, training, and live play")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, episode_seconds=True):
        p.add_argument("--game", choices=(AUTOTURN, YOUTURN), default=AUTOTURN)
        p.add_argument("--reward", choices=SCHEME_KINDS, default="sparse")
        p.add_argument("--seed", type=int, default=None,
                       help="base seed (falls back to $SF_SEED)")
        p.add_argument("--interval-ms", type=float, default=None,
                       help="critical time interval override")
        p.add_argument("--config", default=None, help="key=value config file")
        if episode_seconds:
            p.add_argument("--episode-seconds", type=int, default=None)

    sim = sub.add_parser("simulate", help="run scripted agents and report scores")
    common(sim)
    sim.add_argument("--agent", choices=AGENTS, default="oracle")
    sim.add_argument("-n", "--episodes", type=int, default=1)
    sim.add_argument("--obs", choices=(PIXEL, FEATURE), default=FEATURE)
    sim.add_argument("--record", default=None, metavar="DIR",
                     help="write one episode log per episode")
    sim.add_argument("--dump-frames", default=None, metavar="DIR",
                     help="write rendered frames as PGM files")
    sim.add_argument("--out", default=None, help="write JSON report")
    sim.set_defaults(func=cmd_simulate)

    tr = sub.add_parser("train", help="PPO/A2C training")
    common(tr)
    tr.add_argument("--algo", choices=("ppo", "a2c"), default="ppo")
    tr.add_argument("--arch", choices=ARCHES, default="feature-mlp")
    tr.add_argument("--steps", type=int, default=2_000_000)
    tr.add_argument("--workers", type=int, default=16)
    tr.add_argument("--rollout", type=int, default=1024)
    tr.add_argument("--eval-every", type=int, default=250_000)
    tr.add_argument("--eval-episodes", type=int, default=4)
    tr.add_argument("--out", required=True, help="checkpoint/curve directory")
    tr.set_defaults(func=cmd_train)

    tf = sub.add_parser("transfer",
                        help="warm-start at a new critical interval, with a "
                             "from-scratch control")
    common(tf)
    tf.add_argument("--from", required=True, metavar="CKPT",
                    help="checkpoint to transfer from")
    tf.add_argument("--algo", choices=("ppo", "a2c"), default="ppo")
    tf.add_argument("--steps", type=int, default=500_000)
    tf.add_argument("--workers", type=int, default=16)
    tf.add_argument("--rollout", type=int, default=1024)
    tf.add_argument("--eval-every", type=int, default=100_000)
    tf.add_argument("--eval-episodes", type=int, default=4)
    tf.add_argument("--out", required=True)
    tf.set_defaults(func=cmd_transfer)

    rp = sub.add_parser("replay", help="verify an episode log")
    rp.add_argument("log", help="episode log (.jsonl)")
    rp.set_defaults(func=cmd_replay)

    sv = sub.add_parser("serve", help="websocket server for live play")
    common(sv)
    sv.add_argument("--host", default="127.0.0.1")
    sv.add_argument("--port", type=int, default=8765)
    sv.add_argument("--pace", choices=("real", "lockstep"), default="real",
                    help="real: 30 Hz wall clock; lockstep: wait for each input")
    sv.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "transfer" and args.interval_ms is None:
        parser.error("transfer requires --interval-ms")
    try:
        return args.func(args)
    except SpaceFortressError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
