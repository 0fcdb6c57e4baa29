#!/usr/bin/env python3
"""Locate zeros of Dirichlet L-functions on the critical line with mpmath.

Character tables come from `shiftedprime characters --q Q --out table.json`, so the
"q index" labels in the output match the C++ labelling exactly. For each primitive
character the completed L-function, rotated by the square root of its root number, is
real on the critical line; zeros are bracketed by sign changes on a fine grid and then
refined. Output is the tabular zero format with "# complete_to" and
"# covers_moduli_upto" headers.
"""
import argparse
import json
import math

import mpmath


def completed_l(chi_values, q, parity, t):
    s = mpmath.mpc(0.5, t)
    gamma_part = mpmath.power(q / mpmath.pi, (s + parity) / 2) * mpmath.gamma((s + parity) / 2)
    return gamma_part * mpmath.dirichlet(s, chi_values)


def zeros_of(chi_values, q, height, step):
    parity = 0 if abs(chi_values[q - 1] - 1) < 1e-9 else 1
    is_real = all(abs(v.imag) < 1e-12 for v in chi_values)

    # Root number rotation: the phase of Lambda on the line is constant mod pi.
    probe = completed_l(chi_values, q, parity, 0.3)
    rotation = mpmath.exp(-1j * mpmath.arg(probe))

    def z(t):
        return (rotation * completed_l(chi_values, q, parity, t)).real

    lo = 0.0 if is_real else -height
    ts = [lo + i * step for i in range(int(round((height - lo) / step)) + 1)]
    vals = [z(t) for t in ts]
    found = []
    for (t0, v0), (t1, v1) in zip(zip(ts, vals), zip(ts[1:], vals[1:])):
        if v0 == 0:
            found.append(t0)
        elif v0 * v1 < 0:
            found.append(float(mpmath.findroot(z, (t0, t1), solver="anderson")))
    return parity, is_real, found


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--tables", nargs="+", required=True, help="JSON tables from `shiftedprime characters`")
    ap.add_argument("--height", type=float, default=40.0)
    ap.add_argument("--step", type=float, default=0.1)
    ap.add_argument("--covers", type=int, required=True)
    ap.add_argument("--out", required=True)
    args = ap.parse_args()
    mpmath.mp.dps = 15

    rows = []
    for path in args.tables:
        with open(path) as f:
            table = json.load(f)
        q = table["modulus"]
        for chi in table["characters"]:
            if not chi["primitive"] or q == 1:
                continue
            values = [complex(re, im) for re, im in chi["values"]]
            parity, is_real, found = zeros_of(values, q, args.height, args.step)
            index = chi["id"].split(":")[1]
            expected = args.height / math.pi * math.log(q * args.height / (2 * math.pi * math.e))
            count = 2 * len(found) if is_real else len(found)
            print(f"{chi['id']}: parity {parity}, {count} zeros with |gamma| <= {args.height:g}"
                  f" (smooth count {expected:.1f})", flush=True)
            rows.extend((q, index, g) for g in found)

    with open(args.out, "w") as f:
        f.write("# zeros of L(s, chi) for primitive chi, all on beta = 1/2; located with mpmath\n")
        f.write("# real characters list gamma > 0 only; conjugates are synthesized on load\n")
        f.write(f"# complete_to {args.height:g}\n")
        f.write(f"# covers_moduli_upto {args.covers}\n")
        for q, index, g in rows:
            f.write(f"{q} {index} 0.5 {g:.12f}\n")


if __name__ == "__main__":
    main()
