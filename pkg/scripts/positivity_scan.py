"""Scan every transition N^{i+1} -> N^i over a box (or a random sample of it)
and report any coefficient outside N[q].

    python scripts/positivity_scan.py --rank 5 --box 2
    python scripts/positivity_scan.py --rank 6 --box 2 --sample 300
"""
import argparse
import time

from precanon import theorems as T


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--family", default="A")
    ap.add_argument("--rank", type=int, required=True)
    ap.add_argument("--box", type=int, default=2)
    ap.add_argument("--sample", type=int)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    H = T.context(args.family, args.rank)
    weights = T.sample_weights(H.rs, args.box, args.sample, args.seed)
    t0 = time.perf_counter()
    negative = 0
    for k, lam in enumerate(weights, 1):
        for r in T.positivity_scan(H, [lam]):
            if not r.passed:
                negative += 1
                print(r.to_json())
        if k % 50 == 0:
            print(f"# {k}/{len(weights)} weights, {time.perf_counter() - t0:.0f}s")
    print(f"{H.rs.label}: {len(weights)} weights x {H.m} levels, "
          f"{negative} transitions with a negative coefficient, {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
