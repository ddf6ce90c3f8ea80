"""Upper grid thresholds against lower-bound constructions, with optional extraction runs.

    python3 scripts/sweep_bounds.py --kind genus --r 1 2 3 --values 2 3 4 5 6 7 8 9 10 --out bounds.csv
"""

import argparse
import sys

from apexminor.report import SweepConfig, emit_report, sweep


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--kind", choices=("genus", "k3t"), default="genus")
    ap.add_argument("--r", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--values", type=int, nargs="+", default=list(range(2, 11)))
    ap.add_argument("--extract", action="store_true", help="run K_{3,t} extraction on each lower-bound graph")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out")
    args = ap.parse_args(argv)
    cfg = SweepConfig(args.kind, tuple(args.r), tuple(args.values), args.extract, args.seed)
    text = emit_report(sweep(cfg), args.out)
    if args.out is None:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
