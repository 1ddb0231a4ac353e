#!/usr/bin/env python3
"""Search small categories for a prefibration that is not a fibration and save it."""
import argparse

from catlab import io
from catlab.fibrations import is_fibration, is_prefibration
from catlab.generate import exhaustive, functors, shell_tuples


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-objects", type=int, default=4)
    p.add_argument("--max-morphisms", type=int, default=6)
    p.add_argument("-o", "--output", default="prefibration.json")
    args = p.parse_args()

    for n in range(1, args.max_objects + 1):
        cats = [C for C in exhaustive(n, args.max_morphisms) if C.n_objects <= n]
        for _, (i, j) in shell_tuples(len(cats), 2):
            for u in functors(cats[i], cats[j]):
                if is_prefibration(u) and not is_fibration(u, check=False):
                    io.write(args.output, u)
                    print(f"found {u} -> {args.output}")
                    return 0
    print("no witness within bounds")
    return 1


if __name__ == "__main__":
    raise SystemExit(main())
