#!/usr/bin/env python3
"""Write ordinates of the nontrivial zeros of zeta up to a given height.

Output is the zeta-heights format read by load_zeros: one positive
ordinate per line, with a mandatory "# complete_to <H>" header.
"""
import argparse

import mpmath


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--height", type=float, default=1000.0)
    ap.add_argument("--out", required=True)
    args = ap.parse_args()
    mpmath.mp.dps = 20

    ordinates = []
    n = 1
    while True:
        g = mpmath.zetazero(n).imag
        if g > args.height:
            break
        ordinates.append(g)
        n += 1

    with open(args.out, "w") as f:
        f.write("# nontrivial zeros of zeta(s), beta = 1/2, computed with mpmath.zetazero\n")
        f.write(f"# complete_to {args.height:g}\n")
        for g in ordinates:
            f.write(mpmath.nstr(g, 15, min_fixed=-1, max_fixed=20) + "\n")


if __name__ == "__main__":
    main()
