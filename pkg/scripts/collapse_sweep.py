#!/usr/bin/env python3
"""Exhaustive agreement check between the two semantics on small models.

Enumerates every constant-domain Kripke model within the bounds (one
unary predicate P, two propositional symbols p and q, one preorder per
isomorphism class) and every formula of bounded depth over a monotonic
signature, comparing the Kripke value against the classical value in the
per-world projection. Expected outcome: exact agreement everywhere.

The default bounds reproduce the full desk-scale check in a couple of
minutes:

    python scripts/collapse_sweep.py
    python scripts/collapse_sweep.py --max-worlds 2 --depth 2   # seconds
"""

import argparse
import sys
import time

from cdkripke.collapse import run_collapse_sweep
from cdkripke.truthfn import standard_signature


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-worlds", type=int, default=3)
    parser.add_argument("--max-domain", type=int, default=2)
    parser.add_argument("--depth", type=int, default=3)
    parser.add_argument("--labeled-frames", action="store_true",
                        help="enumerate labeled preorders instead of one per iso class")
    args = parser.parse_args()

    sig = standard_signature("and", "or")
    start = time.monotonic()
    report = run_collapse_sweep(
        sig,
        max_worlds=args.max_worlds,
        max_domain=args.max_domain,
        depth=args.depth,
        up_to_iso=not args.labeled_frames,
    )
    elapsed = time.monotonic() - start
    print(report.render())
    print(f"elapsed: {elapsed:.1f}s")
    return 0 if report.agreement else 1


if __name__ == "__main__":
    sys.exit(main())
