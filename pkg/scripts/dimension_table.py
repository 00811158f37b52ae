"""Dimension formulas next to the numerically located series threshold."""
import argparse
from fractions import Fraction as F

from dioph.dichotomy import (DiophantineType, Khintchine, Resonant, _numeric_threshold, describe, dimension_of,
                             factor_exponent, h_class, series_shape)
from dioph.gauge import Id


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--qmax", type=int, default=10 ** 6)
    args = ap.parse_args()
    rows = [Resonant(n, nu) for n in (2, 3, 4) for nu in (F(n - 1) + F(1, 2), F(n), F(2 * n))]
    rows += [DiophantineType(s) for s in (F(1, 2), F(1), F(2), F(3))]
    rows += [Khintchine(m, Id(tau)) for m, tau in ((1, F(3)), (1, F(7, 2)), (2, F(2)), (2, F(3)))]
    print("set\texact\tnumeric_bracket")
    for desc in rows:
        exact = dimension_of(desc).value
        k = factor_exponent(desc)
        lo, hi = _numeric_threshold(series_shape(desc), h_class(desc), args.qmax)
        print(f"{describe(desc)}\t{exact}\t[{k + lo:.4f}, {k + hi:.4f}]")


if __name__ == "__main__":
    main()
