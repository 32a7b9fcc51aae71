"""Atomic decomposition in D4: which canonical basis elements have a negative
coefficient in the N-basis, and the smallest such weight."""
import argparse
from collections import Counter

from precanon import theorems as T


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--box", type=int, default=3)
    args = ap.parse_args()

    H = T.context("D", 4)
    rs = H.rs
    box = rs.box(args.box)
    found = []
    for lam in box:
        neg = {mu: p for mu, p in H.atomic_decomposition(lam).terms.items() if not p.is_nonneg()}
        if neg:
            found.append((lam, neg))
    print(f"D4 box {args.box}: {len(found)} of {len(box)} weights have a negative coefficient")
    if not found:
        return
    lam, neg = min(found, key=lambda x: (rs.scaled_height(x[0]), x[0]))
    print(f"smallest: lambda = {lam}")
    for mu, p in sorted(neg.items()):
        print(f"  mu = {mu}: {p}")
    depth = Counter(min(rs.scaled_height(lam) - rs.scaled_height(mu) for mu in neg) for lam, neg in found)
    print("distance (scaled height) to the nearest negative term:", dict(sorted(depth.items())))


if __name__ == "__main__":
    main()
