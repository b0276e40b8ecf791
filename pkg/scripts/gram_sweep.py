#!/usr/bin/env python3
"""Compute every Gram determinant with r+t <= N by both routes and report timings.

    python3 scripts/gram_sweep.py --max 6 --json sweep.json
"""

import argparse
import json
import time

from qwbrauer import enumerate_lambda, format_factored, gram_det, gram_det_recursive


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max", type=int, default=6, help="largest r+t")
    ap.add_argument("--json", help="write all rows to this file")
    args = ap.parse_args()

    rows, bad = [], 0
    start = time.perf_counter()
    for n in range(args.max + 1):
        for r in range(n + 1):
            t = n - r
            for p in enumerate_lambda(r, t):
                rep = gram_det(p.f, p.shape, r, t)
                same = rep.determinant == gram_det_recursive(p.f, p.shape, r, t)
                bad += not same
                rows.append({"r": r, "t": t, "f": p.f, "shape": str(p.shape), "dim": len(rep.norms),
                             "determinant": format_factored(rep.determinant), "routes_agree": same,
                             "in_base_ring": rep.in_base_ring})
                print(f"{r} {t} {p.f} {str(p.shape):12} {format_factored(rep.determinant)}")
    print(f"# {len(rows)} modules, {bad} route disagreements, {time.perf_counter() - start:.2f}s")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(rows, fh, indent=1)
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
