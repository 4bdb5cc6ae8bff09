#!/usr/bin/env python3
"""Sweep every truth table up to a given arity through the separator.

For each non-monotonic table this builds the separating sequent, runs the
full verification (classical validity by enumeration, refutation in the
two-world chain, expected-table re-derivation), and tallies cases: a
quick demonstration that the synthesis covers the whole small-arity
space, with per-case example output.

    python scripts/separate_all_small_tables.py --max-arity 3 --show-examples
"""

import argparse
import sys
import time
from collections import Counter

from cdkripke.separator import AllMonotone, render_separation, separate
from cdkripke.syntax import print_sequent
from cdkripke.truthfn import Signature, all_tables


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-arity", type=int, default=3)
    parser.add_argument("--show-examples", action="store_true",
                        help="print one full rendering per case/subcase")
    args = parser.parse_args()

    counts = Counter()
    examples = {}
    start = time.monotonic()
    for arity in range(1, args.max_arity + 1):
        for table in all_tables(arity):
            result = separate(Signature.of(table))
            if isinstance(result, AllMonotone):
                counts[("monotone", arity)] += 1
                continue
            key = (result.case, result.subcase)
            counts[(key, arity)] += 1
            examples.setdefault(key, result)
            print(
                f"arity {arity} bits {table.bits()}: case {result.case}"
                f"{result.subcase or ''} -> {print_sequent(result.sequent)}"
            )
    elapsed = time.monotonic() - start

    print()
    print(f"finished in {elapsed:.1f}s")
    for key in sorted(counts, key=str):
        print(f"  {key}: {counts[key]}")
    if args.show_examples:
        for key in sorted(examples, key=str):
            print()
            print(f"=== example for case {key} ===")
            print(render_separation(examples[key]))
    return 0


if __name__ == "__main__":
    sys.exit(main())
