"""Compare P_i(lam, mu) with the deg_i generating polynomial over a box and
print the pairs where they differ.  Exploratory only."""
import argparse
import json

from precanon import theorems as T


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--rank", type=int, default=4)
    ap.add_argument("--box", type=int, default=2)
    ap.add_argument("--i", type=int, default=2)
    args = ap.parse_args()

    H = T.context("A", args.rank)
    total = equal = dominated = 0
    for lam in H.rs.box(args.box):
        for mu in H.transition(lam, args.i).terms:
            out = T.explore_deg_i(H, lam, mu, args.i)
            total += 1
            equal += out["P"] == out["generating"]
            dominated += out["dominated"]
            if out["P"] != out["generating"]:
                print(json.dumps(out, sort_keys=True))
    print(f"A{args.rank} box {args.box} i={args.i}: {total} pairs, {equal} equal, "
          f"{dominated} with generating - P in N[q]")


if __name__ == "__main__":
    main()
