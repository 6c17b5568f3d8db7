"""Zonal strength, the handoff trigger, and per-target ownership records."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from swarmtrack.network import Sensor
from swarmtrack.targets import Target

DEFAULT_WINDOW = 3


class NotReadyError(Exception):
    """A strength window holds too few samples to show a trend."""


class StrengthWindow:
    """The last ``size`` strengths of one sensor with respect to one target."""

    def __init__(self, size: int = DEFAULT_WINDOW, samples=()):
        if size < 2:
            raise ValueError("window must hold at least two samples")
        self.samples: deque[float] = deque(maxlen=size)
        for s in samples:
            self.push(s)

    def push(self, value: float) -> None:
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"strength {value} outside [0, 1]")
        self.samples.append(value)

    @property
    def latest(self) -> float:
        return self.samples[-1]

    def __len__(self) -> int:
        return len(self.samples)

    def __repr__(self) -> str:
        return f"StrengthWindow({list(self.samples)})"

    def decreasing(self) -> bool:
        s = self.samples
        return all(a > b for a, b in zip(s, list(s)[1:]))

    def increasing(self) -> bool:
        s = self.samples
        return all(a < b for a, b in zip(s, list(s)[1:]))


def zonal_strength(sensor: Sensor, target: Target) -> float:
    d = sensor.pos.dist(target.pos)
    return max(0.0, 1.0 - d / sensor.spec.r)


def should_handoff(current: StrengthWindow, candidate: StrengthWindow, candidate_has_capacity: bool) -> bool:
    """Owner's strength falling while the candidate's rises past it."""
    if len(current) < 2 or len(candidate) < 2:
        raise NotReadyError("need two samples in both windows")
    return (
        current.decreasing()
        and candidate.increasing()
        and candidate.latest > current.latest
        and candidate_has_capacity
    )


@dataclass
class TrackRecord:
    target_id: int
    owner: Optional[int] = None
    strength_history: Optional[StrengthWindow] = None
    handoffs: list[tuple[int, int, int]] = field(default_factory=list)
    observed_steps: int = 0
    total_in_field_steps: int = 0

    @property
    def continuity(self) -> float:
        if self.total_in_field_steps == 0:
            return 1.0
        return self.observed_steps / self.total_in_field_steps


@dataclass(frozen=True)
class Event:
    step: int
    kind: str
    target_id: int
    from_sensor: Optional[int] = None
    to_sensor: Optional[int] = None


class Tracker:
    """Ownership state for every target, advanced once per simulation step.

    Per step, with targets visited in ascending id: strength windows are
    refreshed from this step's observations, owners hand off to a rising
    neighbour, owners that lost the target release it, unowned targets are
    claimed by the strongest observer with spare capacity, and the
    continuity counters advance.
    """

    def __init__(self, sensors: list[Sensor], graph: dict[int, set[int]], window: int = DEFAULT_WINDOW):
        self.sensors = {s.id: s for s in sensors}
        self.graph = graph
        self.window = window
        self.tracks: dict[int, TrackRecord] = {}
        self.windows: dict[tuple[int, int], StrengthWindow] = {}
        self.load: dict[int, int] = {s.id: 0 for s in sensors}

    def _has_capacity(self, sid: int) -> bool:
        return self.load[sid] < self.sensors[sid].spec.capacity

    def _assign(self, rec: TrackRecord, sid: Optional[int]) -> None:
        if rec.owner is not None:
            self.load[rec.owner] -= 1
        rec.owner = sid
        if sid is None:
            rec.strength_history = None
        else:
            self.load[sid] += 1
            rec.strength_history = self.windows[(sid, rec.target_id)]

    def update(self, step: int, targets: list[Target], observations: dict[int, list[int]]) -> list[Event]:
        by_id = {t.id: t for t in targets}
        for t in targets:
            self.tracks.setdefault(t.id, TrackRecord(t.id))

        seen: dict[int, list[int]] = {}
        fresh: dict[tuple[int, int], StrengthWindow] = {}
        for sid in sorted(observations):
            for tid in observations[sid]:
                key = (sid, tid)
                w = self.windows.get(key) or StrengthWindow(self.window)
                w.push(zonal_strength(self.sensors[sid], by_id[tid]))
                fresh[key] = w
                seen.setdefault(tid, []).append(sid)
        self.windows = fresh

        events: list[Event] = []
        for tid in sorted(self.tracks):
            rec = self.tracks[tid]
            t = by_id.get(tid)
            if rec.owner is None or t is None or not t.alive:
                continue
            own = self.windows.get((rec.owner, tid))
            if own is None or len(own) < 2:
                continue
            best = None
            for cand in sorted(self.graph.get(rec.owner, ())):
                w = self.windows.get((cand, tid))
                if w is None or len(w) < 2:
                    continue
                if should_handoff(own, w, self._has_capacity(cand)):
                    if best is None or w.latest > best[1]:
                        best = (cand, w.latest)
            if best is not None:
                src = rec.owner
                self._assign(rec, best[0])
                rec.handoffs.append((step, src, best[0]))
                events.append(Event(step, "HANDOFF", tid, src, best[0]))

        for tid in sorted(self.tracks):
            rec = self.tracks[tid]
            if rec.owner is None:
                continue
            t = by_id.get(tid)
            w = self.windows.get((rec.owner, tid))
            if t is None or not t.alive or w is None or w.latest <= 0.0:
                src = rec.owner
                self._assign(rec, None)
                events.append(Event(step, "RELEASE", tid, src, None))

        for tid in sorted(self.tracks):
            rec = self.tracks[tid]
            t = by_id.get(tid)
            if rec.owner is not None or t is None or not t.alive:
                continue
            best = None
            for sid in seen.get(tid, ()):
                s = self.windows[(sid, tid)].latest
                if s > 0.0 and self._has_capacity(sid):
                    if best is None or s > best[1] or (s == best[1] and sid < best[0]):
                        best = (sid, s)
            if best is not None:
                self._assign(rec, best[0])
                events.append(Event(step, "CLAIM", tid, None, best[0]))

        for tid in sorted(self.tracks):
            t = by_id.get(tid)
            if t is not None and t.alive:
                rec = self.tracks[tid]
                rec.total_in_field_steps += 1
                if rec.owner is not None:
                    rec.observed_steps += 1
        return events

    def owned_count(self) -> int:
        return sum(1 for r in self.tracks.values() if r.owner is not None)
