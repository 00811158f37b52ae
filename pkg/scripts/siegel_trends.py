"""Trend labels of gamma_Q for seeded random rational frequency vectors.

For n = 2 the running minimum only improves at continued-fraction
denominators, so a single decade is often flat; n = 3 decays like Q^-(3/2)
and is labelled reliably.
"""
import argparse
import random
from collections import Counter
from fractions import Fraction as F

from dioph.classifier import siegel_gamma


def omegas(n, count, seed):
    rng = random.Random(seed)
    for _ in range(count):
        yield [F(1)] + [F(rng.randrange(1, D), D) for D in (rng.randrange(2 ** 31, 2 ** 32) for _ in range(n - 1))]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--nu", default="1/2")
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--seeds", type=int, default=4)
    ap.add_argument("--qmax", type=int, nargs="+", default=[100, 1000])
    args = ap.parse_args()
    nu = F(args.nu)
    print("n\tqmax\tseed\tDecaying+HitZero\ttally")
    for n in args.n:
        for qmax in args.qmax:
            if n >= 3 and qmax > 300:
                continue
            for seed in range(args.seeds):
                tally = Counter(siegel_gamma(w, nu, qmax).trend for w in omegas(n, args.count, seed))
                good = tally["Decaying"] + tally["HitZero"]
                print(f"{n}\t{qmax}\t{seed}\t{good}/{args.count}\t{dict(sorted(tally.items()))}")


if __name__ == "__main__":
    main()
