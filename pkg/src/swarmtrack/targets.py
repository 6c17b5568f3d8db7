"""Target swarm: boids that enter at x=0 and drift toward the exit edge x=l."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from swarmtrack.geometry import Rect, Vec2

# spawn velocity jitter, as a fraction of cruise speed per component
JITTER = 0.1


@dataclass(frozen=True)
class Target:
    id: int
    pos: Vec2
    vel: Vec2
    alive: bool = True


@dataclass(frozen=True)
class FlockParams:
    neighbor_radius: float = 5.0
    sep_radius: float = 1.0
    w_cohesion: float = 1.0
    w_alignment: float = 1.0
    w_separation: float = 1.5
    w_drift: float = 0.5
    v_cruise: float = 1.0
    v_max: float = 2.0
    drift: Vec2 = Vec2(1.0, 0.0)

    def __post_init__(self):
        if not (self.neighbor_radius > 0 and self.sep_radius > 0):
            raise ValueError("flock radii must be positive")
        if self.sep_radius > self.neighbor_radius:
            raise ValueError("sep_radius must not exceed neighbor_radius")
        if not 0 <= self.v_cruise <= self.v_max:
            raise ValueError("need 0 <= v_cruise <= v_max")
        weights = (self.w_cohesion, self.w_alignment, self.w_separation, self.w_drift)
        if min(weights) < 0:
            raise ValueError("flock weights must be non-negative")
        if abs(self.drift.norm() - 1.0) > 1e-9:
            raise ValueError("drift must be a unit vector")


def _clamp_speed(v: np.ndarray, v_max: float) -> np.ndarray:
    speed = np.hypot(v[:, 0], v[:, 1])
    over = speed > v_max
    if over.any():
        v = v.copy()
        v[over] *= (v_max / speed[over])[:, None]
    return v


def spawn_wave(
    rng: np.random.Generator, count: int, field: Rect, params: FlockParams, first_id: int = 0
) -> list[Target]:
    """Place ``count`` targets in the entry band ``x in [0, sep_radius]``.

    Ids run ``first_id, first_id+1, ...``; the caller owns the counter.
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    if count == 0:
        return []
    depth = min(params.sep_radius, field.length)
    xs = rng.uniform(0.0, depth, count)
    ys = rng.uniform(0.0, field.breadth, count)
    jitter = rng.uniform(-JITTER, JITTER, (count, 2)) * params.v_cruise
    base = np.array(params.drift.as_tuple()) * params.v_cruise
    vel = _clamp_speed(base + jitter, params.v_max)
    return [
        Target(first_id + i, Vec2(float(xs[i]), float(ys[i])), Vec2(*map(float, vel[i])))
        for i in range(count)
    ]


def _steering(pos: np.ndarray, vel: np.ndarray, p: FlockParams) -> np.ndarray:
    diff = pos[:, None, :] - pos[None, :, :]  # diff[i, j] = pos_i - pos_j
    d2 = np.einsum("ijk,ijk->ij", diff, diff)
    np.fill_diagonal(d2, np.inf)
    near = d2 <= p.neighbor_radius**2
    close = d2 <= p.sep_radius**2
    counts = near.sum(axis=1)
    has = counts > 0
    safe = np.where(has, counts, 1)[:, None]

    centroid = (near[:, :, None] * pos[None, :, :]).sum(axis=1) / safe
    mean_vel = (near[:, :, None] * vel[None, :, :]).sum(axis=1) / safe
    cohesion = np.where(has[:, None], centroid - pos, 0.0)
    alignment = np.where(has[:, None], mean_vel - vel, 0.0)

    # co-located pairs have no defined push direction and are skipped
    inv = np.where(close & (d2 > 0), 1.0 / np.where(d2 > 0, d2, 1.0), 0.0)
    separation = (diff * inv[:, :, None]).sum(axis=1)

    desired = np.array(p.drift.as_tuple()) * p.v_cruise
    return (
        p.w_cohesion * cohesion
        + p.w_alignment * alignment
        + p.w_separation * separation
        + p.w_drift * (desired - vel)
    )


def flock_step(targets: list[Target], params: FlockParams, field: Rect, dt: float) -> list[Target]:
    """Advance live targets one synchronous boids step.

    Lateral walls (and the entry edge) reflect; crossing ``x > l`` marks the
    target as exited. Dead targets are carried through unchanged.
    """
    if not dt > 0:
        raise ValueError("dt must be positive")
    live = [t for t in targets if t.alive]
    if not live:
        return list(targets)
    pos = np.array([t.pos.as_tuple() for t in live], dtype=float)
    vel = np.array([t.vel.as_tuple() for t in live], dtype=float)

    vel = _clamp_speed(vel + _steering(pos, vel, params) * dt, params.v_max)
    pos = pos + vel * dt

    b = field.breadth
    low = pos[:, 1] < 0
    pos[low, 1] = -pos[low, 1]
    vel[low, 1] = -vel[low, 1]
    high = pos[:, 1] > b
    pos[high, 1] = 2 * b - pos[high, 1]
    vel[high, 1] = -vel[high, 1]
    back = pos[:, 0] < 0
    pos[back, 0] = -pos[back, 0]
    vel[back, 0] = -vel[back, 0]
    # a step longer than the field breadth could overshoot a second wall
    np.clip(pos[:, 1], 0.0, b, out=pos[:, 1])
    exited = pos[:, 0] > field.length

    updated = {
        t.id: Target(t.id, Vec2(*map(float, pos[i])), Vec2(*map(float, vel[i])), not bool(exited[i]))
        for i, t in enumerate(live)
    }
    return [updated.get(t.id, t) if t.alive else t for t in targets]
