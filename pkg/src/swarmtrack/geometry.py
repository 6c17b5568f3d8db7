"""Planar primitives: points, the rectangular field, disk areas and covers."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.spatial import cKDTree

from swarmtrack.rng import substream

DEFAULT_SAMPLES = 100_000
_CHUNK = 1 << 16
_MAX_CELLS = 1 << 16
_OUTSIDE, _INSIDE, _BOUNDARY = 0, 1, 2


@dataclass(frozen=True)
class Vec2:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite Vec2 ({self.x}, {self.y})")

    def __add__(self, other: Vec2) -> Vec2:
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: Vec2) -> Vec2:
        return Vec2(self.x - other.x, self.y - other.y)

    def __mul__(self, c: float) -> Vec2:
        return Vec2(self.x * c, self.y * c)

    __rmul__ = __mul__

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def dist(self, other: Vec2) -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def as_tuple(self) -> tuple[float, float]:
        return (self.x, self.y)


@dataclass(frozen=True)
class Rect:
    """Field anchored at the origin; ``length`` runs along x (entry at x=0)."""

    length: float
    breadth: float

    def __post_init__(self):
        if not (self.length > 0 and self.breadth > 0):
            raise ValueError(f"field sides must be positive, got {self.length}x{self.breadth}")
        if not (math.isfinite(self.length) and math.isfinite(self.breadth)):
            raise ValueError("field sides must be finite")

    @property
    def area(self) -> float:
        return self.length * self.breadth

    @classmethod
    def square(cls, area: float) -> Rect:
        side = math.sqrt(area)
        return cls(side, side)


@dataclass(frozen=True)
class Disk:
    center: Vec2
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError(f"disk radius must be positive, got {self.radius}")

    @property
    def area(self) -> float:
        return disk_area(self.radius)

    def contains(self, p: Vec2) -> bool:
        return self.center.dist(p) <= self.radius


def disk_area(r: float) -> float:
    if not r > 0:
        raise ValueError(f"radius must be positive, got {r}")
    return math.pi * r * r


def lattice_spacing(r: float) -> float:
    # side of the square inscribed in a disk of radius r
    return r * math.sqrt(2.0)


def _lattice_axis(extent: float, count: int, s: float) -> list[float]:
    coords = []
    for i in range(count):
        c = s / 2 + i * s
        coords.append(min(c, extent - s / 2) if extent >= s else extent / 2)
    return coords


def lattice_count(field: Rect, r: float) -> int:
    s = lattice_spacing(r)
    return math.ceil(field.length / s) * math.ceil(field.breadth / s)


def cover_rectangle(field: Rect, r: float) -> list[Vec2]:
    """Square-lattice centres whose radius-``r`` disks cover ``field``.

    Spacing is ``r*sqrt(2)``; centres sit half a cell from the edges and the
    last row/column is clamped inward, so the count is always
    ``ceil(l/s) * ceil(b/s)``.
    """
    if not r > 0:
        raise ValueError(f"radius must be positive, got {r}")
    s = lattice_spacing(r)
    cols = math.ceil(field.length / s)
    rows = math.ceil(field.breadth / s)
    xs = _lattice_axis(field.length, cols, s)
    ys = _lattice_axis(field.breadth, rows, s)
    return [Vec2(x, y) for x in xs for y in ys]


def cover_strip(breadth: float, r: float, budget: int, max_depth: float = math.inf) -> tuple[list[Vec2], float]:
    """Deepest full-breadth strip ``[0, depth] x [0, breadth]`` that ``budget`` disks cover.

    Tries every row count: ``rows`` rows of height ``h = breadth/rows`` leave
    a column pitch of ``2*sqrt(r^2 - (h/2)^2)``, and ``budget // rows``
    columns fit. Depth is capped at ``max_depth``. Returns the centres and
    the covered depth, or ``([], 0.0)`` when the budget cannot span the
    breadth.
    """
    if not r > 0:
        raise ValueError(f"radius must be positive, got {r}")
    best = (0.0, 0, 0, 0.0)
    for rows in range(1, budget + 1):
        h = breadth / rows
        if h >= 2 * r:
            continue
        w = 2.0 * math.sqrt(r * r - (h / 2) ** 2)
        cols = budget // rows
        if math.isfinite(max_depth):
            cols = min(cols, math.ceil(max_depth / w))
        depth = min(cols * w, max_depth)
        # fewer sensors wins a tie in depth
        if depth > best[0] + 1e-12 or (abs(depth - best[0]) <= 1e-12 and rows * cols < best[1] * best[2]):
            best = (depth, rows, cols, w)
    depth, rows, cols, w = best
    if rows == 0:
        return [], 0.0
    h = breadth / rows
    xs = [min((j + 0.5) * w, depth - w / 2) if depth >= w else depth / 2 for j in range(cols)]
    return [Vec2(x, (i + 0.5) * h) for x in xs for i in range(rows)], depth


class _CellFilter:
    """Coarse grid that settles most samples without a per-sample tree query.

    Nearest-centre distance is 1-Lipschitz, so a cell whose centre sits at
    distance ``d`` is entirely covered when ``d <= r - delta`` and entirely
    uncovered when ``d > r + delta`` (``delta`` = half the cell diagonal).
    Only samples in the remaining boundary cells hit the tree.
    """

    def __init__(self, tree: Optional[cKDTree], r: float, field: Rect):
        self.tree = tree
        self.r = r
        a = max(math.sqrt(field.area / _MAX_CELLS), r / 8)
        self.nx = max(1, math.ceil(field.length / a))
        self.ny = max(1, math.ceil(field.breadth / a))
        self.ax = field.length / self.nx
        self.ay = field.breadth / self.ny
        if tree is None:
            self.state = np.zeros(self.nx * self.ny, dtype=np.int8)
            return
        # margin absorbs rounding when a sample is binned
        delta = 0.5 * math.hypot(self.ax, self.ay) * (1 + 1e-9) + 1e-12
        gx = (np.arange(self.nx) + 0.5) * self.ax
        gy = (np.arange(self.ny) + 0.5) * self.ay
        cells = np.stack(np.meshgrid(gx, gy, indexing="ij"), axis=-1).reshape(-1, 2)
        d, _ = tree.query(cells, k=1, distance_upper_bound=r + 2 * delta)
        self.state = np.where(d <= r - delta, _INSIDE, np.where(d > r + delta, _OUTSIDE, _BOUNDARY)).astype(np.int8)

    def covered_count(self, pts: np.ndarray) -> int:
        ix = np.minimum((pts[:, 0] / self.ax).astype(np.int64), self.nx - 1)
        iy = np.minimum((pts[:, 1] / self.ay).astype(np.int64), self.ny - 1)
        s = self.state[ix * self.ny + iy]
        hits = int(np.count_nonzero(s == _INSIDE))
        edge = s == _BOUNDARY
        if edge.any():
            d, _ = self.tree.query(pts[edge], k=1, distance_upper_bound=self.r * (1 + 1e-12))
            hits += int(np.count_nonzero(d <= self.r))
        return hits


def coverage_fraction(
    centers: list[Vec2],
    r: float,
    field: Rect,
    sample_seed: int = 0,
    samples: int = DEFAULT_SAMPLES,
    workers: int = 1,
) -> float:
    """Monte Carlo estimate of the share of ``field`` within ``r`` of a centre.

    Samples are drawn in fixed-size chunks, each from its own substream of
    ``sample_seed``, so the estimate does not depend on ``workers``.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    c = np.array([p.as_tuple() for p in centers], dtype=float).reshape(-1, 2)
    cells = _CellFilter(cKDTree(c) if len(c) else None, r, field)
    n_chunks = math.ceil(samples / _CHUNK)
    seeds = substream(sample_seed, "montecarlo").spawn(n_chunks)

    def run_chunk(i: int) -> int:
        size = min(_CHUNK, samples - i * _CHUNK)
        g = np.random.Generator(np.random.PCG64(seeds[i]))
        pts = g.random((size, 2)) * (field.length, field.breadth)
        return cells.covered_count(pts)

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            hits = list(pool.map(run_chunk, range(n_chunks)))
    else:
        hits = [run_chunk(i) for i in range(n_chunks)]
    return sum(hits) / samples
