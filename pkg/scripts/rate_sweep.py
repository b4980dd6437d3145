#!/usr/bin/env python3
"""Sweep the growth-rate probe over a (p, q) grid for one function and print
a CSV table of fitted exponents and product decay, suitable for plotting.

Usage:
    python scripts/rate_sweep.py --fn binom:0.9 --ps 1,2 --qs 0.5,1,2
"""

import argparse
import sys

from hardylab.asymptotics import rate_probe
from hardylab.fields import MeanParams
from hardylab.functions import MembershipHint, membership_hint
from hardylab.parsing import parse_function
from hardylab.quadrature import QuadratureSpec


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fn", default="poly:0,0,1")
    ap.add_argument("--ps", default="0.5,1,2,3")
    ap.add_argument("--qs", default="0,0.5,1,2")
    ap.add_argument("--tol", type=float, default=1e-7)
    args = ap.parse_args()

    f = parse_function(args.fn)
    spec = QuadratureSpec(rel_tol=args.tol)
    print("fn,p,q,beta,beta_stderr,first_product,last_product,verdict")
    for p_text in args.ps.split(","):
        for q_text in args.qs.split(","):
            p, q = float(p_text), float(q_text)
            if membership_hint(f, p, q) != MembershipHint.MEMBER:
                print(f"{args.fn},{p!r},{q!r},,,,,skipped-non-member")
                continue
            res = rate_probe(f, MeanParams(p, q), spec)
            first = res.products[0] if res.products else float("nan")
            last = res.products[-1] if res.products else float("nan")
            print(
                f"{args.fn},{p!r},{q!r},{res.beta!r},{res.beta_stderr!r},"
                f"{first!r},{last!r},{res.verdict}"
            )
    return 0


if __name__ == "__main__":
    sys.exit(main())
