"""Run the four theorem sweeps on the default grid and write the reports.

Usage: python3 scripts/run_sweeps.py [OUT_DIR] [--format csv|json]
"""

import argparse
import json
import time
from pathlib import Path

from clausen_verify.report import format_verdicts
from clausen_verify.theorems import SweepGrid, run_sweep


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("out_dir", nargs="?", default="sweep_reports")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    args = parser.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    grid = SweepGrid()
    summaries = []
    for which in (1, 2, 3, 4):
        start = time.perf_counter()
        result = run_sweep(which, grid)
        summary = result.summary()
        summary["seconds"] = round(time.perf_counter() - start, 3)
        (out / f"theorem{which}.{args.format}").write_text(format_verdicts(result, which, args.format))
        summaries.append(summary)
        print(
            f"theorem {which}: {summary['points']:5d} points  "
            f"violations {summary['violations']:4d}  "
            f"stated/derived mismatches {summary['stated_vs_derived_mismatches']:4d}  "
            f"({summary['seconds']:.2f}s)"
        )
    (out / "summary.json").write_text(json.dumps(summaries, indent=2, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
