#!/usr/bin/env python3
"""Tabulate corpus sizes from the fast enumerator next to the brute-force table oracle."""
import argparse
import time

from catlab.enumeration import enumerate_categories
from catlab.oracle import oracle_count


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-objects", type=int, default=2)
    p.add_argument("--max-morphisms", type=int, default=4)
    p.add_argument("--no-oracle", action="store_true", help="skip the slow oracle column")
    args = p.parse_args()

    print(f"{'bounds':>8} {'enumerated':>11} {'oracle':>7} {'seconds':>8}")
    for n in range(args.max_objects + 1):
        for m in range(n, args.max_morphisms + 1):
            t = time.monotonic()
            ours = sum(1 for _ in enumerate_categories(n, m))
            theirs = "-" if args.no_oracle else oracle_count(n, m)
            print(f"{f'({n},{m})':>8} {ours:>11} {theirs:>7} {time.monotonic() - t:>8.1f}", flush=True)


if __name__ == "__main__":
    main()
