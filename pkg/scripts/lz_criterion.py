"""Compare algebraicity over left zero semigroups with the pairwise projection test.

The projection test accepts a set when every projection onto two coordinates is
the full square or the diagonal.  For n >= 3 it also accepts sets that are not
algebraic, for example a union of two diagonal hyperplanes.  The exact test is
whether the set equals the solutions of the coordinate equalities it satisfies.
"""
import argparse
import itertools
import random

from uag.finalg import left_zero
from uag.geometry import is_algebraic


def projection_test(points, m, n):
    full = set(itertools.product(range(m), repeat=2))
    diag = {(a, a) for a in range(m)}
    return all({(p[i], p[j]) for p in points} in (full, diag) for i, j in itertools.combinations(range(n), 2))


def equality_test(points, m, n):
    eqs = [(i, j) for i, j in itertools.combinations(range(n), 2) if all(p[i] == p[j] for p in points)]
    return {p for p in itertools.product(range(m), repeat=n) if all(p[i] == p[j] for i, j in eqs)} == set(points)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, default=2)
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--samples", type=int, default=200, help="random subsets when the power set is too large")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--show", type=int, default=5)
    args = ap.parse_args()

    a = left_zero(args.m)
    space = list(itertools.product(range(args.m), repeat=args.n))
    if len(space) <= 10:
        subsets = [c for r in range(len(space) + 1) for c in itertools.combinations(space, r)]
    else:
        rng = random.Random(args.seed)
        subsets = [tuple(p for p in space if rng.random() < 0.5) for _ in range(args.samples)]
    proj_bad, eq_bad, shown = 0, 0, 0
    for pts in subsets:
        alg = is_algebraic(pts, a, args.n)
        if projection_test(pts, args.m, args.n) != alg:
            proj_bad += 1
            if shown < args.show:
                print("projection test accepts a non-algebraic set:", pts)
                shown += 1
        eq_bad += equality_test(pts, args.m, args.n) != alg
    print(f"LZ{args.m}^{args.n}: {len(subsets)} subsets, projection test wrong on {proj_bad}, equality test wrong on {eq_bad}")


if __name__ == "__main__":
    main()
