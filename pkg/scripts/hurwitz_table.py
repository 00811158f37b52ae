"""K_Q tables and irrationality exponents for a few classical reals."""
import argparse

from dioph.classifier import diophantine_type, irrationality_exponent, parse_real

DEFAULT = ["surd:1,1,5,2", "surd:0,1,2", "dec:2.718281828459045235360287@24", "dec:3.14159265358979323846@20"]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("reals", nargs="*", default=DEFAULT)
    ap.add_argument("--qmax", type=int, default=10 ** 5)
    ap.add_argument("--sigma", default="0")
    args = ap.parse_args()
    for text in args.reals:
        x = parse_real(text)
        rep = diophantine_type(x, args.sigma, args.qmax)
        mu = irrationality_exponent(x, 20)
        print(f"# {text}: mu estimate {mu.estimate:.6f} (raw tail max {mu.raw_tail_max:.4f}) {rep.caveat}")
        print("Q\tk_min\tk_tail\ttail_argmin")
        for r in rep.rows:
            print(f"{r.Q}\t{r.k_min:.6f}\t{r.k_tail:.6f}\t{r.tail_argmin}")


if __name__ == "__main__":
    main()
