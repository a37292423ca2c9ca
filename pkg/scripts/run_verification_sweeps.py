#!/usr/bin/env python3
"""Run sandwich verifications and monotonicity scans for a battery of
parameter sets across all three Gamma deformations, writing one report
file per sweep and printing a summary table.

Usage:
    python scripts/run_verification_sweeps.py --outdir results [--format json]
"""

import argparse
import pathlib
import sys

from gammagen.cli import SweepConfig, render_reports_csv, render_reports_json
from gammagen.gen_gamma import KParam, PParam, QParam
from gammagen.inequality_engine import (
    GenParams,
    check_sandwich_k,
    check_sandwich_p,
    check_sandwich_q,
    family_callables,
    scan_monotone,
)

SANDWICH_GRID = tuple(0.05 * i for i in range(1, 20))
SCAN_GRID = tuple(0.01 + 0.01 * i for i in range(500))

BATTERY = [
    ("p", GenParams(1.0, 1.0, 1.5, 1.0), 5),
    ("p", GenParams(2.0, 0.5, 1.0, 0.7), 50),
    ("p", GenParams(0.4, 1.8, 2.2, 1.3), 1),
    ("q", GenParams(1.0, 1.0, 1.5, 1.0), 0.5),
    ("q", GenParams(1.2, 0.7, 1.0, 0.9), 0.9),
    ("q", GenParams(0.5, 2.0, 3.0, 1.0), 0.1),
    ("k", GenParams(1.0, 1.0, 1.5, 1.0), 1.0),
    ("k", GenParams(2.0, 1.0, 1.5, 0.5), 3.0),
    ("k", GenParams(3.0, 0.3, 0.8, 1.1), 8.0),
]

CHECKERS = {"p": check_sandwich_p, "q": check_sandwich_q, "k": check_sandwich_k}
PARAM_TYPES = {"p": PParam, "q": QParam, "k": KParam}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="results")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    args = parser.parse_args(argv)

    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    all_ok = True
    print(f"{'sweep':<28} {'sandwich':>12} {'min margin':>12} {'scan fwd':>12}")
    for i, (family, gp, param) in enumerate(BATTERY):
        rows = CHECKERS[family](gp, param, SANDWICH_GRID)
        config = SweepConfig(
            family=family, gen_params=gp, family_param=PARAM_TYPES[family](param),
            grid=SANDWICH_GRID, grid_spec="0.05:0.95:0.05", seed=0,
            tol=1e-12, tol_report=1e-9,
            output_path=None, format=args.format)
        name = f"sweep{i:02d}_{family}"
        path = outdir / f"{name}.{args.format}"
        content = (render_reports_csv(rows) if args.format == "csv"
                   else render_reports_json(config, rows))
        path.write_text(content)

        fn, ld = family_callables(family, gp, param)
        scan = scan_monotone(fn, ld, SCAN_GRID)

        n_pass = sum(r.passed for r in rows)
        margin = min(min(r.lower_margin for r in rows),
                     min(r.upper_margin for r in rows))
        ok = n_pass == len(rows) and scan.min_forward_diff >= -1e-9
        all_ok = all_ok and ok
        print(f"{name:<28} {n_pass:>9}/{len(rows)} {margin:>12.3e} "
              f"{scan.min_forward_diff:>12.3e}")

    print("all sweeps passed" if all_ok else "SOME SWEEPS FAILED")
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
