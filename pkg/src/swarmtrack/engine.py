"""Discrete-time simulation loop and run metrics.

Each step runs the same phases in the same order: spawn due targets, move
the flock, observe, update ownership, record metrics. The loop is a pure
function of the config; ``workers`` only fans out the observation phase.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from swarmtrack.geometry import Rect
from swarmtrack.network import Deployment, Sensor, deploy, distance_matrix, neighbor_graph, select_observed
from swarmtrack.planner import Case, InfeasibleError, Plan, SensorSpec, optimal_plan, plan_for
from swarmtrack.rng import generator
from swarmtrack.targets import FlockParams, Target, flock_step, spawn_wave
from swarmtrack.tracking import DEFAULT_WINDOW, Event, Tracker

log = logging.getLogger(__name__)

PHASES = ("spawn", "flock", "observe", "track", "metrics")


@dataclass(frozen=True)
class SimConfig:
    field: Rect
    spec: SensorSpec
    sensor_count: Union[int, str] = "auto"
    flock: FlockParams = FlockParams()
    target_count: int = 20
    spawn_schedule: Optional[tuple[tuple[int, int], ...]] = None
    dt: float = 0.1
    steps: int = 2000
    seed: int = 0
    window: int = DEFAULT_WINDOW
    continuity_threshold: float = 0.9
    workers: int = 1

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError("dt must be positive")
        if self.steps < 1:
            raise ValueError("steps must be >= 1")
        if self.target_count < 0:
            raise ValueError("target_count must be >= 0")
        if self.sensor_count != "auto" and not (isinstance(self.sensor_count, int) and self.sensor_count >= 1):
            raise ValueError(f"sensor_count must be 'auto' or a positive integer, got {self.sensor_count!r}")
        if self.window < 2:
            raise ValueError("strength window must be >= 2")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    def schedule(self) -> dict[int, int]:
        sched = self.spawn_schedule if self.spawn_schedule is not None else ((0, self.target_count),)
        out: dict[int, int] = {}
        for step, count in sched:
            out[step] = out.get(step, 0) + count
        return out


def wave_schedule(total: int, wave_size: int, interval: int) -> tuple[tuple[int, int], ...]:
    """Split ``total`` targets into waves of ``wave_size`` every ``interval`` steps."""
    if wave_size <= 0 or interval <= 0 or wave_size >= total:
        return ((0, total),)
    waves = []
    step = 0
    left = total
    while left > 0:
        waves.append((step, min(wave_size, left)))
        left -= wave_size
        step += interval
    return tuple(waves)


@dataclass
class Metrics:
    coverage_ratio: list[float] = field(default_factory=list)
    in_field: list[int] = field(default_factory=list)
    owned: list[int] = field(default_factory=list)
    handoffs_cum: list[int] = field(default_factory=list)
    # per exited target id
    continuity: dict[int, float] = field(default_factory=dict)
    front_continuity: dict[int, float] = field(default_factory=dict)
    continuity_threshold: float = 0.9

    @property
    def unowned(self) -> list[int]:
        return [f - o for f, o in zip(self.in_field, self.owned)]

    @property
    def total_handoffs(self) -> int:
        return self.handoffs_cum[-1] if self.handoffs_cum else 0

    @property
    def mean_continuity(self) -> float:
        if not self.continuity:
            return float("nan")
        return sum(self.continuity.values()) / len(self.continuity)

    @property
    def mean_front_continuity(self) -> float:
        if not self.front_continuity:
            return float("nan")
        return sum(self.front_continuity.values()) / len(self.front_continuity)

    @property
    def missed(self) -> int:
        return sum(1 for c in self.continuity.values() if c < self.continuity_threshold)


@dataclass
class WorldState:
    config: SimConfig
    plan: Plan
    deployment: Deployment
    step: int
    sensors: list[Sensor]
    targets: list[Target]
    graph: dict[int, set[int]]
    tracker: Tracker
    rng: np.random.Generator
    schedule: dict[int, int] = field(default_factory=dict)
    next_id: int = 0
    events: list[Event] = field(default_factory=list)
    metrics: Metrics = field(default_factory=Metrics)
    phase_log: list[str] = field(default_factory=list)
    # target id -> [steps inside the front strip, of which owned]
    front_counts: dict[int, list[int]] = field(default_factory=dict)

    @property
    def tracks(self):
        return self.tracker.tracks

    @property
    def spawned(self) -> int:
        return len(self.targets)

    @property
    def alive(self) -> int:
        return sum(1 for t in self.targets if t.alive)

    @property
    def exited(self) -> int:
        return sum(1 for t in self.targets if not t.alive)


def make_plan(config: SimConfig) -> Plan:
    if config.sensor_count == "auto":
        return optimal_plan(config.field, config.spec)
    return plan_for(config.field, config.spec, int(config.sensor_count))


def init(config: SimConfig) -> WorldState:
    plan = make_plan(config)
    if plan.case is Case.CASE4:
        raise InfeasibleError("fleet too small for the field: tracking will not be possible", plan)
    dep = deploy(plan)
    graph = neighbor_graph(dep.sensors)
    log.info("plan n=%d k=%.3f %s, front strip %.3f", plan.n, plan.k, plan.case, dep.front_depth)
    return WorldState(
        config=config,
        plan=plan,
        deployment=dep,
        step=0,
        sensors=dep.sensors,
        targets=[],
        graph=graph,
        tracker=Tracker(dep.sensors, graph, config.window),
        rng=generator(config.seed, "spawn"),
        schedule=config.schedule(),
        metrics=Metrics(continuity_threshold=config.continuity_threshold),
    )


def observe(sensors: list[Sensor], targets: list[Target], workers: int = 1) -> dict[int, list[int]]:
    """Each active sensor's observed target ids, keyed by sensor id."""
    live = [t for t in targets if t.alive]
    active = [s for s in sensors if s.observing]
    if not live or not active:
        return {s.id: [] for s in active}
    d = distance_matrix(active, live)
    ids = [t.id for t in live]

    def one(i: int) -> list[int]:
        s = active[i]
        return select_observed(d[i], ids, s.spec.r, s.spec.capacity)

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            rows = list(pool.map(one, range(len(active))))
    else:
        rows = [one(i) for i in range(len(active))]
    return {s.id: row for s, row in zip(active, rows)}


def step(world: WorldState) -> WorldState:
    """Advance ``world`` by one tick in place and return it."""
    cfg = world.config
    n = world.step
    world.phase_log.append("spawn")
    due = world.schedule.get(n, 0)
    if due:
        new = spawn_wave(world.rng, due, cfg.field, cfg.flock, world.next_id)
        world.next_id += due
        world.targets.extend(new)
        world.events.extend(Event(n, "SPAWN", t.id) for t in new)

    world.phase_log.append("flock")
    was_alive = {t.id for t in world.targets if t.alive}
    world.targets = flock_step(world.targets, cfg.flock, cfg.field, cfg.dt)
    gone = [t for t in world.targets if t.id in was_alive and not t.alive]
    for t in gone:
        rec = world.tracker.tracks.get(t.id)
        world.events.append(Event(n, "EXIT", t.id, rec.owner if rec else None))

    world.phase_log.append("observe")
    obs = observe(world.sensors, world.targets, cfg.workers)

    world.phase_log.append("track")
    world.events.extend(world.tracker.update(n, world.targets, obs))

    world.phase_log.append("metrics")
    m = world.metrics
    depth = world.deployment.front_depth
    in_field = owned = 0
    for t in world.targets:
        if not t.alive:
            continue
        in_field += 1
        is_owned = world.tracker.tracks[t.id].owner is not None
        owned += is_owned
        if t.pos.x <= depth:
            fc = world.front_counts.setdefault(t.id, [0, 0])
            fc[0] += 1
            fc[1] += is_owned
    for t in gone:
        m.continuity[t.id] = world.tracker.tracks[t.id].continuity
        fc = world.front_counts.get(t.id)
        if fc and fc[0]:
            m.front_continuity[t.id] = fc[1] / fc[0]
    handoffs = sum(len(r.handoffs) for r in world.tracker.tracks.values())
    m.in_field.append(in_field)
    m.owned.append(owned)
    m.coverage_ratio.append(owned / in_field if in_field else 1.0)
    m.handoffs_cum.append(handoffs)
    world.step += 1
    return world


def run(config: SimConfig) -> tuple[Metrics, WorldState]:
    world = init(config)
    for _ in range(config.steps):
        step(world)
    return world.metrics, world
