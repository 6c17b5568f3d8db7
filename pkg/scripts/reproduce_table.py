"""Recompute the 17-row sizing table and print it next to the published values."""

import sys

from swarmtrack.report import PUBLISHED_TABLE, check_table


def main() -> int:
    rows, diff = check_table()
    print(f"{'area':>6} {'r':>3} {'R':>3} {'n':>4} {'pub n':>5} {'k':>7} {'pub k':>6}  case")
    for got, want in zip(rows, PUBLISHED_TABLE):
        print(
            f"{got.area:>6g} {got.r:>3g} {got.R:>3g} {got.n:>4} {want.n:>5} "
            f"{got.k:>7.4f} {want.k:>6.2f}  {got.case.label}"
        )
    for line in diff:
        print("MISMATCH", line, file=sys.stderr)
    print(f"{len(rows) - len(diff)}/{len(rows)} rows match")
    return 1 if diff else 0


if __name__ == "__main__":
    sys.exit(main())
