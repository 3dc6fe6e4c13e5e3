#!/usr/bin/env python3
"""Hunt for the smallest annihilating operator of each corpus entry.

Computes the canonical constant-term series of selected entries, sweeps
operator bidegrees up to the given bounds, and prints the smallest
(order, t-degree) pair whose recurrence kills the series, together with
the operator itself when the nullspace is one-dimensional.

Higher-degree entries need more terms and a larger ansatz than the
defaults; widen --max-order/--max-degree/--terms for them at the price
of longer runtimes.

Usage:
    python3 scripts/operator_sweep.py [--entries 13,15,17] [--terms N]
"""

from __future__ import annotations

import argparse
import sys
import time

from weaklg.annihilator import apply_operator, find_minimal_annihilator
from weaklg.corpus import get_entry
from weaklg.laurent import LaurentPolynomial
from weaklg.series import constant_term_series


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--entries", default="13,15,16,17", help="comma-separated ids")
    ap.add_argument("--terms", type=int, default=40, help="series truncation order")
    ap.add_argument("--max-order", type=int, default=4)
    ap.add_argument("--max-degree", type=int, default=8)
    args = ap.parse_args()

    ids = [int(part) for part in args.entries.split(",") if part.strip()]
    found_any = False
    for entry_id in ids:
        entry = get_entry(entry_id)
        f = entry.laurent()
        shift = f.constant_term()
        if shift:
            f = f - LaurentPolynomial(3, {(0, 0, 0): shift})
        t0 = time.monotonic()
        s = constant_term_series(f, args.terms)
        result = find_minimal_annihilator(s, args.max_order, args.max_degree)
        dt = time.monotonic() - t0
        if result is None:
            print(
                f"entry {entry_id}: no operator with order <= {args.max_order}, "
                f"degree <= {args.max_degree} at T={args.terms} ({dt:.1f}s)"
            )
            continue
        found_any = True
        order, degree, ops = result
        residual = set(apply_operator(ops[0], s))
        verdict = "verified" if residual == {0} else "RESIDUAL NONZERO"
        print(f"entry {entry_id}: order {order}, degree {degree}, "
              f"nullspace {len(ops)} ({dt:.1f}s, {verdict})")
        if len(ops) == 1:
            print(f"    {ops[0].pretty()}")
    return 0 if found_any else 1


if __name__ == "__main__":
    sys.exit(main())
