#!/usr/bin/env python3
"""Run the whole check registry and print a summary table.

Usage: python scripts/run_all_checks.py [--seed N] [--json out.json] [-v]
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from kripkebench.checks import DEFAULT_SEED, report_json, run_all


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--json", help="write the machine-readable report here")
    ap.add_argument("-v", "--verbose", action="store_true",
                    help="print transcripts of failing checks")
    args = ap.parse_args()

    t0 = time.monotonic()
    records = run_all(seed=args.seed)
    elapsed = time.monotonic() - t0

    width = max(len(r.id) for r in records)
    for r in records:
        print(f"{r.id:<{width}}  {r.status:<20}  {r.anchor[:90]}")
        if args.verbose and r.status == "fail":
            for line in r.transcript:
                print(f"    {line}")
    counts = {}
    for r in records:
        counts[r.status] = counts.get(r.status, 0) + 1
    print(f"\n{len(records)} checks in {elapsed:.1f}s: " +
          ", ".join(f"{v} {k}" for k, v in sorted(counts.items())))
    if args.json:
        Path(args.json).write_bytes(report_json(records))
        print(f"report written to {args.json}")
    return 0 if counts.get("fail", 0) == 0 else 1


if __name__ == "__main__":
    raise SystemExit(main())
