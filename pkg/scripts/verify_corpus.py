#!/usr/bin/env python3
"""Sweep the bundled corpus and print a verification table.

For every entry this reports the series shift, the first few canonical
coefficients, which cross-checks ran (reference data, closed form,
alternate models), and the dual-polytope volume against the anticanonical
degree.  Exits nonzero if any entry fails.

Usage:
    python3 scripts/verify_corpus.py [--terms N] [--corpus FILE]
"""

from __future__ import annotations

import argparse
import sys
import time

from weaklg.corpus import load_corpus, verify_entry


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--terms", type=int, default=12, help="series truncation order")
    ap.add_argument("--corpus", default=None, help="alternate corpus file")
    args = ap.parse_args()

    entries = load_corpus(args.corpus)
    width = 78
    print(f"{'id':>3} {'idx':>3} {'deg':>4} {'shift':>5} {'checks':<24} {'vol':>5} status")
    print("-" * width)
    failures = 0
    started = time.monotonic()
    for entry in entries:
        t0 = time.monotonic()
        report = verify_entry(entry, terms=args.terms)
        dt = time.monotonic() - t0
        checks = []
        if report.reference is not None:
            checks.append("ref" + ("+" if report.reference.matched else "!"))
        if report.ci is not None:
            checks.append("ci" + ("+" if report.ci.matched else "!"))
        for m in report.alternates:
            checks.append("alt" + ("+" if m.matched else "!"))
        checks.append("semi" + ("+" if report.semiweak.ok else "!"))
        vol = report.semiweak.dual_volume
        status = "pass" if report.passed else "FAIL"
        if not report.passed:
            failures += 1
        print(
            f"{entry.id:>3} {entry.fano_index:>3} {entry.degree:>4} "
            f"{report.shift:>5} {' '.join(checks):<24} {str(vol):>5} "
            f"{status} ({dt:.2f}s)"
        )
    total = time.monotonic() - started
    print("-" * width)
    print(f"{len(entries) - failures}/{len(entries)} entries pass at T={args.terms} in {total:.1f}s")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
