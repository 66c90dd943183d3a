"""Show that removing the top level of an odd-N mirror chain yields an even-family chain."""

import argparse
from fractions import Fraction

from hahnpst import verify_christoffel_link


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--N", default="3,5,11,21")
    ap.add_argument("--alpha", type=Fraction, default=Fraction(2))
    a = ap.parse_args()
    for N in (int(n) for n in a.N.split(",")):
        link = verify_christoffel_link(N, a.alpha)
        print(f"N={N:>3} -> N'={N - 1:>3}  alpha'={link.even.alpha}  shift={link.shift}  "
              f"residual={link.residual}  spectrum err={link.spectrum_residual:.1e}")


if __name__ == "__main__":
    main()
