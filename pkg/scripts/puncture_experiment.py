#!/usr/bin/env python3
"""Random-puncturing baseline: sampled relative distances of random point
multisets, compared against the full-evaluation distance 1 - d/q."""

import argparse

from prmcode.oracle import random_puncture_experiment


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--d", type=int, default=1)
    ap.add_argument("--q", type=int, default=11)
    ap.add_argument("--length", type=int, default=40)
    ap.add_argument("--trials", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    report = random_puncture_experiment(
        args.n, args.d, args.q, args.length, args.trials, args.seed
    )
    print(report.render(), end="")
    print(f"full-evaluation reference: 1 - d/q = {1 - args.d / args.q:.6f}")


if __name__ == "__main__":
    main()
