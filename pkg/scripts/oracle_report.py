#!/usr/bin/env python3
"""Score-band report for the scripted agents.

Plays N full episodes per (agent, game version) cell and prints the same
aggregate columns the CLI uses, plus a JSON dump for downstream tooling.

    python3 scripts/oracle_report.py --episodes 20 --out oracle_report.json
"""

import argparse
import json

from spacefortress.cli import aggregate_report, print_report, run_episodes
from spacefortress.config import AUTOTURN, YOUTURN, SimConfig


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--episodes", type=int, default=20)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", default=None)
    args = parser.parse_args()

    results = {}
    for version in (AUTOTURN, YOUTURN):
        for agent in ("oracle", "random", "noop"):
            config = SimConfig(game_version=version)
            rows = run_episodes(config, agent, "sparse", args.episodes,
                                args.seed)
            agg = aggregate_report(rows)
            print(f"\n== {agent} / {version} ==")
            print_report(rows, agg)
            results[f"{agent}/{version}"] = {"rows": rows, "aggregates": agg}
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(results, fh, indent=2)
        print(f"\nwrote {args.out}")


if __name__ == "__main__":
    main()
