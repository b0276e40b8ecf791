#!/usr/bin/env python3
"""Compare the nonvanishing criterion with specialized determinants over a parameter grid.

    python3 scripts/vanishing_grid.py --max 5 --e 5 7 inf --p 0 2 3 --n -2 2
"""

import argparse
from collections import Counter

from qwbrauer import enumerate_lambda, parse_params, vanishing_crosscheck


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max", type=int, default=5, help="largest r+t")
    ap.add_argument("--e", nargs="+", default=["5", "7", "inf"])
    ap.add_argument("--p", nargs="+", type=int, default=[0, 2, 3])
    ap.add_argument("--n", nargs=2, type=int, default=[-2, 2], metavar=("LO", "HI"))
    args = ap.parse_args()

    tally: Counter = Counter()
    for e in args.e:
        for p in args.p:
            for n in range(args.n[0], args.n[1] + 1):
                params = parse_params(f"e={e},p={p},n={n}")
                for size in range(1, args.max + 1):
                    for r in range(size + 1):
                        for pt in enumerate_lambda(r, size - r):
                            c = vanishing_crosscheck(pt.f, pt.shape, r, size - r, params)
                            key = {True: "agree", False: "disagree", None: "pole"}[c.agree]
                            tally[key] += 1
                            tally["zero" if c.determinant is False else "nonzero"] += 1
                            if c.agree is False:
                                print("DISAGREE", c.to_json())
    print(" ".join(f"{k}={v}" for k, v in sorted(tally.items())))
    raise SystemExit(1 if tally["disagree"] else 0)


if __name__ == "__main__":
    main()
