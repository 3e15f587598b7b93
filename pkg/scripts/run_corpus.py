"""Run the theorem catalogue and print the results table."""
import argparse
import sys

from tribauto.corpus import format_table, run_all


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("ids", nargs="*", type=int, help="case ids (default: all)")
    ap.add_argument("--skip-slow", action="store_true")
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    reports = run_all(skip_slow=args.skip_slow, jobs=args.jobs, ids=args.ids or None,
                      progress=lambda r: print(r.line(), flush=True))
    print(format_table(reports))
    return 0 if all(r.passed for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
