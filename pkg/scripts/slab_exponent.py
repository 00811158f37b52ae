"""Exact slab-cover counts per shell and their log-log exponent."""
import argparse
from fractions import Fraction

from dioph.netmeasure import slab_exponent


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--nu", default="2")
    ap.add_argument("--shells", default="4,8,16,32")
    args = ap.parse_args()
    nu = Fraction(args.nu)
    shells = [int(x) for x in args.shells.split(",")]
    r = slab_exponent(args.n, nu, shells)
    print(f"# n={args.n} nu={nu} expected exponent {(args.n - 1) * (nu + 1)}")
    print("Q\tmax_count\tbeta")
    for Q, c, b in zip(r.shells, r.max_counts, r.betas):
        print(f"{Q}\t{c}\t{b:.6f}")
    print(f"# slope {r.slope:.6f}, beta max/min {r.beta_spread:.4f}")


if __name__ == "__main__":
    main()
