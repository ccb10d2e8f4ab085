#!/usr/bin/env python3
"""Run the seeded experiment suites and write a JSON summary.

    python3 scripts/run_suites.py                       # everything, full size
    python3 scripts/run_suites.py --only oracle tightness
    python3 scripts/run_suites.py --count 50 --out results/quick.json
"""
import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from ktreepart import suites

NAMES = ("theorem1", "theorem2", "oracle", "tightness", "mutation")


@dataclass
class RunConfig:
    only: list[str] = field(default_factory=lambda: list(NAMES))
    count: int = 500  # instances per k on the theorem grids
    n_max: int = 200
    max_k: int = 8
    mutation_count: int = 100
    out: str | None = None


def run(cfg: RunConfig) -> list[suites.SuiteResult]:
    ks = range(cfg.max_k + 1)
    table = {
        "theorem1": lambda: suites.theorem1_suite(ks, cfg.count, cfg.n_max),
        "theorem2": lambda: suites.theorem2_suite(ks, cfg.count, cfg.n_max),
        "oracle": suites.oracle_suite,
        "tightness": suites.tightness_suite,
        "mutation": lambda: suites.mutation_suite(cfg.mutation_count),
    }
    results = []
    for name in cfg.only:
        res = table[name]()
        print(res.line(), res.digest[:16], flush=True)
        for msg in res.failures:
            print("   ", msg)
        results.append(res)
    return results


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--only", nargs="+", choices=NAMES, default=list(NAMES))
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--n-max", type=int, default=200)
    ap.add_argument("--max-k", type=int, default=8)
    ap.add_argument("--mutation-count", type=int, default=100)
    ap.add_argument("--out")
    cfg = RunConfig(**vars(ap.parse_args()))
    results = run(cfg)
    if cfg.out:
        summary = {
            "config": asdict(cfg),
            "suites": [
                {"name": r.name, "ok": r.ok, "cases": r.cases, "seconds": round(r.seconds, 2),
                 "digest": r.digest, "counts": r.counts, "failures": r.failures}
                for r in results
            ],
        }
        Path(cfg.out).parent.mkdir(parents=True, exist_ok=True)
        Path(cfg.out).write_text(json.dumps(summary, indent=2) + "\n")
    return 0 if all(r.ok for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
