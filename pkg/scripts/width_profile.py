#!/usr/bin/env python3
"""Bag sizes and host sizes produced by both constructions on random k-trees.

For each (k, l) prints the mean and maximum bag size and the mean number of
host nodes, averaged over seeded instances.  Useful for eyeballing how far the
bags are from the (t+1)-clique lower bound.

    python3 scripts/width_profile.py --k 6 --n 150 --trials 20
"""
import argparse
from dataclasses import dataclass
from statistics import mean

from ktreepart.harness import GenSpec, random_ktree
from ktreepart.oriented import OrientedBuildOrder, orient_from_buildorder, theorem2_partition
from ktreepart.partition import theorem1_partition


@dataclass
class ProfileConfig:
    k: int = 4
    n: int = 100
    trials: int = 10
    seed: int = 0
    partial: bool = False


def profile(cfg: ProfileConfig) -> None:
    print(f"k={cfg.k} n={cfg.n} trials={cfg.trials} partial={cfg.partial}")
    print(f"{'l':>3} | {'t':>3} {'mean':>6} {'max':>4} {'nodes':>6} | {'t':>3} {'mean':>6} {'max':>4} {'nodes':>6}")
    instances = [random_ktree(GenSpec(cfg.n, cfg.k, cfg.seed + i, cfg.partial)) for i in range(cfg.trials)]
    for l in range(cfg.k + 1):
        rows = []
        for oriented in (False, True):
            sizes, maxes, nodes = [], [], []
            for g, order in instances:
                if oriented:
                    p = theorem2_partition(orient_from_buildorder(order), OrientedBuildOrder.from_build_order(order), l)
                else:
                    p = theorem1_partition(g, order, l)
                bag_sizes = [len(b) for b in p.bags.values()]
                sizes.extend(bag_sizes)
                maxes.append(max(bag_sizes, default=0))
                nodes.append(len(p.bags))
            t = cfg.k - l if oriented else cfg.k // (l + 1)
            rows.append(f"{t:>3} {mean(sizes or [0]):>6.2f} {max(maxes):>4} {mean(nodes):>6.1f}")
        print(f"{l:>3} | " + " | ".join(rows))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--k", type=int, default=4)
    ap.add_argument("--n", type=int, default=100)
    ap.add_argument("--trials", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--partial", action="store_true")
    profile(ProfileConfig(**vars(ap.parse_args())))


if __name__ == "__main__":
    main()
