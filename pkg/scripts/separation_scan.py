#!/usr/bin/env python3
"""Scan rational parameters b = p/q for finite-depth projection coincidences.

Parameters where two distinct words project to the same point fail the
minimal-gap certificate at finite depth (b = 1/3, 1/2, 3/5 are such examples:
the pairs (13,23), (132,221), (1133,2211) collide there).  The scan reports
the certificate verdict and fitted gap rate for every reduced p/q.
"""

import argparse
import csv
import sys
from fractions import Fraction
from math import gcd

from okamoto.separation import verify_sesc


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-den", type=int, default=12, help="largest denominator q")
    ap.add_argument("--depth", type=int, default=8)
    ap.add_argument("--out", default=None, help="CSV path (stdout when omitted)")
    args = ap.parse_args()

    rows = []
    for q in range(2, args.max_den + 1):
        for p in range(1, q):
            if gcd(p, q) != 1:
                continue
            report = verify_sesc(Fraction(p, q), n_max=args.depth)
            witness = "" if report.witness is None else "|".join(
                "".join(map(str, w)) for w in report.witness
            )
            rows.append([f"{p}/{q}", report.passed, f"{report.epsilon:.6f}", witness])

    out = open(args.out, "w", newline="") if args.out else sys.stdout
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["b", "passes", "epsilon", "coincidence_witness"])
    writer.writerows(rows)
    if args.out:
        out.close()
        failures = sum(1 for r in rows if not r[1])
        print(f"{len(rows)} parameters scanned, {failures} finite-depth coincidences -> {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
