"""Sensor fleet placement, the secondary-zone neighbour graph, and observation."""

from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass, field as dc_field

import numpy as np

from swarmtrack.geometry import Rect, Vec2, cover_rectangle, cover_strip
from swarmtrack.planner import Case, InfeasibleError, Plan, SensorSpec
from swarmtrack.targets import Target

NOT_POSSIBLE = "tracking will not be possible"


class Role(enum.Enum):
    FRONT_COVER = "FrontCover"
    REAR_RELAY = "RearRelay"
    RESTING = "Resting"


@dataclass(frozen=True)
class Sensor:
    id: int
    pos: Vec2
    spec: SensorSpec
    role: Role
    secondary_active: bool = False

    @property
    def observing(self) -> bool:
        return self.role is not Role.RESTING


@dataclass
class Deployment:
    """Placed fleet plus the depth of the strip that the front sensors fully cover.

    ``front_depth`` equals the field length for whole-field covers.
    """

    plan: Plan
    sensors: list[Sensor]
    front_depth: float
    rear_layout: tuple[int, ...] = dc_field(default_factory=tuple)


def _exit_edge_positions(field: Rect, count: int) -> list[Vec2]:
    return [Vec2(field.length, (i + 0.5) * field.breadth / count) for i in range(count)]


def rear_grid(origin_x: float, length: float, breadth: float, m: int) -> tuple[list[Vec2], tuple[int, ...]]:
    """Spread ``m`` relays over ``[origin_x, origin_x+length] x [0, breadth]``.

    Columns are chosen so cells are near-square; column sizes differ by at
    most one. Returns the positions and the per-column counts.
    """
    if m < 1:
        return [], ()
    cols = max(1, min(m, round(math.sqrt(m * length / breadth))))
    base, extra = divmod(m, cols)
    counts = tuple(base + (1 if j < extra else 0) for j in range(cols))
    dx = length / cols
    pts = []
    for j, c in enumerate(counts):
        x = origin_x + (j + 0.5) * dx
        pts.extend(Vec2(x, (i + 0.5) * breadth / c) for i in range(c))
    return pts, counts


def deploy(plan: Plan) -> Deployment:
    """Place ``plan.n`` sensors according to the plan's case.

    Whole-field covers (Case 1/2) use the square lattice, or the tighter
    rectangular strip lattice when the square one needs more than ``n``;
    sensors beyond the cover rest at the exit edge. In the split case ``ceil(n/2)``
    sensors cover the deepest full-breadth strip they can from the entry
    edge, and every other sensor becomes a stationary rear relay on a
    uniform grid over the rest of the field.
    """
    field, spec, n = plan.field, plan.spec, plan.n
    if plan.case is Case.CASE4:
        raise InfeasibleError(f"fleet too small for the field: {NOT_POSSIBLE}", plan)

    if plan.case in (Case.CASE1, Case.CASE2):
        cover = cover_rectangle(field, spec.r)
        if len(cover) > n:
            # thin fields: a rectangular lattice can need fewer disks than the square one
            strip, depth = cover_strip(field.breadth, spec.r, n, field.length)
            if depth >= field.length:
                cover = strip
        if len(cover) > n:
            raise InfeasibleError(
                f"whole-field cover needs {len(cover)} sensors but only {n} available: {NOT_POSSIBLE}",
                plan,
            )
        sensors = [Sensor(i, p, spec, Role.FRONT_COVER) for i, p in enumerate(cover)]
        rest = _exit_edge_positions(field, n - len(cover))
        sensors += [Sensor(len(cover) + i, p, spec, Role.RESTING) for i, p in enumerate(rest)]
        return Deployment(plan, sensors, field.length)

    budget = math.ceil(n / 2)
    front, depth = cover_strip(field.breadth, spec.r, budget, field.length)
    if not front:
        raise InfeasibleError(
            f"{budget} front sensors cannot span the field breadth {field.breadth:g}: {NOT_POSSIBLE}",
            plan,
        )
    sensors = [Sensor(i, p, spec, Role.FRONT_COVER) for i, p in enumerate(front)]
    m = n - len(front)
    rear_len = field.length - depth
    if rear_len <= 0:
        rest = _exit_edge_positions(field, m)
        sensors += [Sensor(len(front) + i, p, spec, Role.RESTING) for i, p in enumerate(rest)]
        return Deployment(plan, sensors, depth)

    rear, layout = rear_grid(depth, rear_len, field.breadth, m)
    sensors += [
        Sensor(len(front) + i, p, spec, Role.REAR_RELAY, secondary_active=True)
        for i, p in enumerate(rear)
    ]
    relays = [x for x in sensors if x.role is Role.REAR_RELAY]
    if not is_connected(neighbor_graph(relays)):
        raise InfeasibleError(
            f"rear relays' secondary zones cannot overlap: {NOT_POSSIBLE}", plan
        )
    return Deployment(plan, sensors, depth, layout)


def neighbor_graph(sensors: list[Sensor]) -> dict[int, set[int]]:
    """Adjacency over non-resting sensors; an edge means the secondary zones overlap."""
    active = [x for x in sensors if x.observing]
    graph: dict[int, set[int]] = {x.id: set() for x in active}
    for i, a in enumerate(active):
        for b in active[i + 1 :]:
            if a.pos.dist(b.pos) <= a.spec.R + b.spec.R:
                graph[a.id].add(b.id)
                graph[b.id].add(a.id)
    return graph


def is_connected(graph: dict[int, set[int]]) -> bool:
    if not graph:
        return True
    start = next(iter(graph))
    seen = {start}
    queue = deque([start])
    while queue:
        for nb in graph[queue.popleft()]:
            if nb not in seen:
                seen.add(nb)
                queue.append(nb)
    return len(seen) == len(graph)


def observed_targets(sensor: Sensor, targets: list[Target]) -> list[int]:
    """Ids of live targets in the primary zone, nearest first, capped at capacity."""
    if not sensor.observing:
        raise ValueError(f"sensor {sensor.id} is resting")
    live = [t for t in targets if t.alive]
    if not live:
        return []
    d = distance_matrix([sensor], live)[0]
    return select_observed(d, [t.id for t in live], sensor.spec.r, sensor.spec.capacity)


def select_observed(dists: np.ndarray, ids: list[int], r: float, capacity: int) -> list[int]:
    hits = sorted((float(dists[j]), ids[j]) for j in np.flatnonzero(dists <= r))
    return [tid for _, tid in hits[:capacity]]


def distance_matrix(sensors: list[Sensor], targets: list[Target]) -> np.ndarray:
    sp = np.array([x.pos.as_tuple() for x in sensors], dtype=float).reshape(-1, 2)
    tp = np.array([t.pos.as_tuple() for t in targets], dtype=float).reshape(-1, 2)
    return np.hypot(sp[:, None, 0] - tp[None, :, 0], sp[:, None, 1] - tp[None, :, 1])
