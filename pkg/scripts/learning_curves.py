#!/usr/bin/env python3
"""Desk-scale learning curves for the three reward schemes.

Trains one PPO run per scheme on the same budget and writes one
curve.csv per scheme under --out, so the scheme ablation can be eyeballed
side by side.

    python3 scripts/learning_curves.py --steps 2000000 --out runs/
"""

import argparse
import os

import torch

from spacefortress.config import AUTOTURN, YOUTURN, SimConfig
from spacefortress.rewards import SCHEME_KINDS
from spacefortress.rl.nets import PolicySpec
from spacefortress.rl.train import train
from spacefortress.rl.update import make_train_config


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--steps", type=int, default=2_000_000)
    parser.add_argument("--game", choices=(AUTOTURN, YOUTURN), default=AUTOTURN)
    parser.add_argument("--algo", choices=("ppo", "a2c"), default="ppo")
    parser.add_argument("--arch", default="feature-mlp")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--eval-every", type=int, default=250_000)
    parser.add_argument("--out", required=True)
    args = parser.parse_args()

    torch.set_num_threads(1)
    sim = SimConfig(game_version=args.game)
    spec = PolicySpec(kind=args.arch, n_actions=sim.n_actions)
    for scheme in SCHEME_KINDS:
        out_dir = os.path.join(args.out, scheme)
        cfg = make_train_config(args.algo, total_steps=args.steps,
                                eval_every=args.eval_every, eval_episodes=5,
                                seed=args.seed)
        print(f"== {scheme} ==")
        result = train(cfg, sim, scheme, spec, out_dir=out_dir, log=print)
        result.write_curve(os.path.join(out_dir, "curve.csv"))
        print(f"{scheme}: final mean score "
              f"{result.final_eval['mean_score']:.1f}")


if __name__ == "__main__":
    main()
