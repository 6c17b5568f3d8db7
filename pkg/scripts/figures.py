"""K and n sweeps over field area and primary radius, written as CSV + SVG.

    python3 scripts/figures.py [outdir]
"""

import sys
from pathlib import Path

from swarmtrack.cli import main as cli

SWEEPS = {
    "k_vs_area": ["sweep", "area", "--r", "2", "--R", "4", "--start", "10", "--stop", "1e6", "--num", "60", "--log"],
    "n_vs_area": ["sweep", "area", "--r", "2", "--R", "4", "--start", "10", "--stop", "1e4", "--num", "60", "--y", "n"],
    "k_vs_radius": ["sweep", "radius", "--area", "1000", "--r-start", "1", "--r-stop", "7"],
}


def main(outdir: str = "figures") -> int:
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    for name, args in SWEEPS.items():
        code = cli(args + ["--out", str(out / f"{name}.csv"), "--svg", str(out / f"{name}.svg")])
        if code:
            return code
        print(out / f"{name}.svg")
    return 0


if __name__ == "__main__":
    sys.exit(main(*sys.argv[1:]))
