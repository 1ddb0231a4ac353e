#!/usr/bin/env python3
"""Run every registered suite (or a chosen few) and write one JSON report per suite."""
import argparse
import json
from pathlib import Path

from catlab.suites import REGISTRY, run_suite


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("suites", nargs="*", help="suite names (default: all)")
    p.add_argument("--bounds", type=int, nargs=2, metavar=("OBJECTS", "MORPHISMS"),
                   help="corpus bounds (default: each suite's own)")
    p.add_argument("--values", type=int, nargs=2, default=(1, 2))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--time-budget", type=float, default=None, help="seconds per suite")
    p.add_argument("--out", default="reports")
    args = p.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    summary = {}
    for name in args.suites or sorted(REGISTRY):
        rep = run_suite(name, tuple(args.bounds) if args.bounds else None, seed=args.seed,
                        time_budget=args.time_budget, values=tuple(args.values))
        (out / f"{name}.json").write_text(rep.to_json(), encoding="utf-8")
        print(rep.line(), flush=True)
        summary[name] = {"passed": rep.passed, "instances": rep.instances, "failures": len(rep.failures),
                         "complete": rep.complete, "wall": round(rep.wall, 2)}
    (out / "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
