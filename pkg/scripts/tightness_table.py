#!/usr/bin/env python3
"""Smallest bag parameter t for which K_{k+1} has an l-tree-partition with
connected t-tree bags, found by brute force, next to floor(k/(l+1)).

    python3 scripts/tightness_table.py --max-k 5
"""
import argparse
from dataclasses import dataclass

from ktreepart.graph import Graph
from ktreepart.harness import oracle_exists_partition


@dataclass
class TableConfig:
    max_k: int = 4


def smallest_t(k: int, l: int) -> int:
    g = Graph.complete(range(k + 1))
    t = 0
    while oracle_exists_partition(g, l, t, cap=k + 1) is None:
        t += 1
    return t


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--max-k", type=int, default=4)
    cfg = TableConfig(**vars(ap.parse_args()))
    print(f"{'k':>3} {'l':>3} {'floor':>6} {'found':>6}")
    for k in range(cfg.max_k + 1):
        for l in range(k + 1):
            bound = k // (l + 1)
            found = smallest_t(k, l)
            flag = "" if found == bound else "  <-- mismatch"
            print(f"{k:>3} {l:>3} {bound:>6} {found:>6}{flag}")


if __name__ == "__main__":
    main()
