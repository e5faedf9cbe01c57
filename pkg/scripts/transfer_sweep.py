#!/usr/bin/env python3
"""Critical-interval transfer sweep.

Takes a checkpoint trained at the default 250 ms interval and, for each
target interval (default 125/400/600 ms), trains a warm-started run paired
with a from-scratch control, writing one paired_curves.csv per interval.

    python3 scripts/transfer_sweep.py --from runs/aeci/ckpt_0002000000.bin \
        --steps 500000 --out sweep/
"""

import argparse
import os

import torch

from spacefortress.config import AUTOTURN, YOUTURN, SimConfig
from spacefortress.rl.train import transfer_init, write_paired_curves
from spacefortress.rl.update import make_train_config


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--from", dest="checkpoint", required=True)
    parser.add_argument("--intervals", type=float, nargs="+",
                        default=[125.0, 400.0, 600.0])
    parser.add_argument("--steps", type=int, default=500_000)
    parser.add_argument("--game", choices=(AUTOTURN, YOUTURN), default=AUTOTURN)
    parser.add_argument("--reward", default="aeci")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", required=True)
    args = parser.parse_args()

    torch.set_num_threads(1)
    sim = SimConfig(game_version=args.game)
    for interval in args.intervals:
        out_dir = os.path.join(args.out, f"{interval:g}ms")
        os.makedirs(out_dir, exist_ok=True)
        cfg = make_train_config("ppo", total_steps=args.steps,
                                eval_every=max(args.steps // 5, 1),
                                eval_episodes=5, seed=args.seed)
        print(f"== {interval:g} ms ==")
        scratch, transfer = transfer_init(args.checkpoint, interval, cfg,
                                          sim, args.reward, out_dir=out_dir,
                                          log=print)
        path = os.path.join(out_dir, "paired_curves.csv")
        write_paired_curves(path, scratch, transfer)
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
