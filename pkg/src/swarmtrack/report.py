"""Published sizing table, CSV emitters and sweep charts."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

from swarmtrack.engine import Metrics
from swarmtrack.geometry import Rect
from swarmtrack.planner import Case, SensorSpec, SweepRow, optimal_plan
from swarmtrack.tracking import Event

TABLE_HEADER = ("area", "r", "R", "primary_area", "secondary_area", "n", "k", "case")
SWEEP_HEADER = ("x", "n", "k", "case")
METRICS_HEADER = ("step", "in_field", "owned", "coverage_ratio", "handoffs_cum")
EVENTS_HEADER = ("step", "kind", "target_id", "from_sensor", "to_sensor")

K_TOL = 0.005
AREA_TOL = 0.001


@dataclass(frozen=True)
class TableRow:
    area: float
    r: float
    R: float
    primary_area: float
    secondary_area: float
    n: int
    k: float
    case: Case

    def cells(self) -> list[str]:
        return [
            f"{self.area:g}",
            f"{self.r:g}",
            f"{self.R:g}",
            f"{self.primary_area:.3f}",
            f"{self.secondary_area:.3f}",
            str(self.n),
            f"{self.k:.2f}",
            str(self.case),
        ]


# (area, r, R, primary area, secondary area, n, K, case) as published
PUBLISHED_TABLE = [
    TableRow(4, 2, 4, 12.566, 50.265, 1, 0.32, Case.CASE1),
    TableRow(10, 2, 4, 12.566, 50.265, 1, 0.8, Case.CASE3),
    TableRow(20, 2, 4, 12.566, 50.265, 2, 0.8, Case.CASE3),
    TableRow(40, 2, 4, 12.566, 50.265, 4, 0.8, Case.CASE3),
    TableRow(50, 2, 4, 12.566, 50.265, 4, 0.99, Case.CASE3),
    TableRow(80, 2, 4, 12.566, 50.265, 6, 1.06, Case.CASE3),
    TableRow(90, 2, 4, 12.566, 50.265, 6, 1.19, Case.CASE3),
    TableRow(160, 2, 4, 12.566, 50.265, 10, 1.27, Case.CASE3),
    TableRow(210, 2, 4, 12.566, 50.265, 12, 1.39, Case.CASE3),
    TableRow(250, 2, 4, 12.566, 50.265, 14, 1.42, Case.CASE3),
    TableRow(1000, 1, 3, 3.142, 28.274, 80, 3.98, Case.CASE3),
    TableRow(1000, 2, 4, 12.566, 50.265, 54, 1.47, Case.CASE3),
    TableRow(1000, 3, 5, 28.274, 78.54, 40, 0.88, Case.CASE3),
    TableRow(1000, 4, 6, 50.265, 113.097, 32, 0.62, Case.CASE3),
    TableRow(1000, 5, 7, 78.54, 153.938, 28, 0.45, Case.CASE1),
    TableRow(1000, 6, 8, 113.097, 201.062, 24, 0.37, Case.CASE1),
    TableRow(1000, 7, 9, 153.938, 254.469, 20, 0.32, Case.CASE1),
]


def table_row(area: float, r: float, R: float, field: Optional[Rect] = None) -> TableRow:
    spec = SensorSpec(r, R)
    plan = optimal_plan(field or Rect.square(area), spec)
    return TableRow(area, r, R, spec.primary_area, spec.secondary_area, plan.n, plan.k, plan.case)


def compute_table(expected: list[TableRow] = PUBLISHED_TABLE) -> list[TableRow]:
    return [table_row(e.area, e.r, e.R) for e in expected]


def row_mismatches(got: TableRow, want: TableRow) -> list[str]:
    bad = []
    if got.n != want.n:
        bad.append(f"n {got.n} != {want.n}")
    if abs(got.k - want.k) > K_TOL:
        bad.append(f"k {got.k:.4f} != {want.k} (+-{K_TOL})")
    if abs(got.primary_area - want.primary_area) > AREA_TOL:
        bad.append(f"primary_area {got.primary_area:.4f} != {want.primary_area}")
    if abs(got.secondary_area - want.secondary_area) > AREA_TOL:
        bad.append(f"secondary_area {got.secondary_area:.4f} != {want.secondary_area}")
    if got.case is not want.case:
        bad.append(f"case {got.case.label} != {want.case.label}")
    return bad


def check_table(expected: list[TableRow] = PUBLISHED_TABLE) -> tuple[list[TableRow], list[str]]:
    """Recompute every expected row; return the rows and a diff (empty when all match)."""
    rows = compute_table(expected)
    diff = []
    for i, (got, want) in enumerate(zip(rows, expected), start=1):
        bad = row_mismatches(got, want)
        if bad:
            diff.append(f"row {i} (area={want.area:g}, r={want.r:g}, R={want.R:g}): " + "; ".join(bad))
    return rows, diff


def read_table_csv(path: Path) -> list[TableRow]:
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        if tuple(reader.fieldnames or ()) != TABLE_HEADER:
            raise ValueError(f"expected header {','.join(TABLE_HEADER)}")
        return [
            TableRow(
                float(d["area"]),
                float(d["r"]),
                float(d["R"]),
                float(d["primary_area"]),
                float(d["secondary_area"]),
                int(d["n"]),
                float(d["k"]),
                Case(d["case"].replace(" ", "")),
            )
            for d in reader
        ]


def _writer(f) -> csv.writer:
    return csv.writer(f, lineterminator="\n")


def to_csv(header: Iterable[str], rows: Iterable[Iterable]) -> str:
    buf = io.StringIO()
    w = _writer(buf)
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def table_csv(rows: list[TableRow]) -> str:
    return to_csv(TABLE_HEADER, (r.cells() for r in rows))


def sweep_csv(rows: list[SweepRow]) -> str:
    return to_csv(SWEEP_HEADER, ([f"{r.x:g}", r.n, repr(r.k), str(r.case)] for r in rows))


def metrics_csv(m: Metrics) -> str:
    rows = (
        [i, f, o, repr(c), h]
        for i, (f, o, c, h) in enumerate(zip(m.in_field, m.owned, m.coverage_ratio, m.handoffs_cum))
    )
    return to_csv(METRICS_HEADER, rows)


def _opt(v: Optional[int]) -> str:
    return "" if v is None else str(v)


def events_csv(events: list[Event]) -> str:
    rows = ([e.step, e.kind, e.target_id, _opt(e.from_sensor), _opt(e.to_sensor)] for e in events)
    return to_csv(EVENTS_HEADER, rows)


def summary_line(m: Metrics) -> str:
    mc = m.mean_continuity
    mc_txt = "nan" if math.isnan(mc) else f"{mc:.4f}"
    return f"mean_continuity={mc_txt} total_handoffs={m.total_handoffs} missed={m.missed}"


def sweep_svg(rows: list[SweepRow], path: Path, xlabel: str, y: str = "k", logx: bool = False) -> None:
    """Static line chart of ``k`` or ``n`` against the sweep variable."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    matplotlib.rcParams["svg.hashsalt"] = "swarmtrack"
    xs = [r.x for r in rows]
    ys = [r.k if y == "k" else r.n for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(xs, ys, marker="o", markersize=3)
    if logx:
        ax.set_xscale("log")
    ax.set_xlabel(xlabel)
    ax.set_ylabel("K value" if y == "k" else "number of sensors")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
