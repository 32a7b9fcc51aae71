"""How often each closed-form table row fires in a box, and whether all of
them agree with the triangular solve."""
import argparse
from collections import Counter

from precanon import tables
from precanon import theorems as T


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--rank", type=int, choices=[3, 4], default=3)
    ap.add_argument("--box", type=int, default=4)
    args = ap.parse_args()

    H = T.context("A", args.rank)
    hits, bad = Counter(), []
    for lam in H.rs.box(args.box):
        rep = T.table_report(H, lam, args.rank)
        for row in rep.instance["rows"]:
            hits[row] += 1
        if not rep.passed:
            bad.append(rep)
    for row in [0] + [r.row for r in tables.rows_for(args.rank)]:
        name = "generic" if row == 0 else f"row {row}"
        print(f"{name:>8}: {hits[row]}")
    print(f"{len(bad)} mismatches")
    for r in bad:
        print(r.to_json())


if __name__ == "__main__":
    main()
