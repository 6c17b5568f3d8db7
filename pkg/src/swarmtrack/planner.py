"""Fleet sizing and case classification for dual-zone sensors.

The sensor count equates the secondary-annulus area of half the fleet with
the field area; the K value is the ratio of field area to the fleet's
aggregate primary-zone area and drives the case decision.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from swarmtrack.geometry import Rect, disk_area, lattice_count

CASE1_MAX_K = 0.5
CASE2_MAX_K = 0.25


class InfeasibleError(Exception):
    """Raised when the fleet cannot track targets over the field."""

    def __init__(self, message: str, plan: Optional[Plan] = None):
        super().__init__(message)
        self.plan = plan


class Case(enum.Enum):
    CASE1 = "Case1"
    CASE2 = "Case2"
    CASE3 = "Case3"
    CASE4 = "Case4"

    def __str__(self) -> str:
        return self.value

    @property
    def label(self) -> str:
        """Human form used in the published table, e.g. ``"Case 3"``."""
        return f"Case {self.value[-1]}"


@dataclass(frozen=True)
class SensorSpec:
    primary_radius: float
    secondary_radius: float
    capacity: int = 5

    def __post_init__(self):
        if not 0 < self.primary_radius < self.secondary_radius:
            raise ValueError(
                f"need 0 < r < R, got r={self.primary_radius}, R={self.secondary_radius}"
            )
        if self.capacity < 1:
            raise ValueError("capacity must be >= 1")

    @property
    def r(self) -> float:
        return self.primary_radius

    @property
    def R(self) -> float:
        return self.secondary_radius

    @property
    def primary_area(self) -> float:
        return disk_area(self.primary_radius)

    @property
    def secondary_area(self) -> float:
        return disk_area(self.secondary_radius)


@dataclass(frozen=True)
class Plan:
    field: Rect
    spec: SensorSpec
    n: int
    k: float
    case: Case
    front_depth: Optional[float] = None
    surplus: int = 0


def required_sensor_count(field: Rect, spec: SensorSpec) -> int:
    """Fleet size from ``2A / (pi (R^2 - r^2))``, rounded up to an even count.

    Even because the split case divides the fleet in halves; a single sensor
    is left as is.
    """
    raw = 2.0 * field.area / (math.pi * (spec.R**2 - spec.r**2))
    n = math.ceil(raw)
    if n > 1 and n % 2:
        n += 1
    return max(n, 1)


def k_value(area: float, n: int, r: float) -> float:
    if n < 1 or not r > 0 or not area > 0:
        raise ValueError(f"invalid K inputs area={area}, n={n}, r={r}")
    return area / (n * math.pi * r * r)


def rear_pitch(area: float, k: float, n: int) -> float:
    """Grid pitch of the rear relays when half the fleet spreads over the rear area."""
    rear_area = area * (2 * k - 1) / (2 * k)
    m = max(1, n // 2)
    return math.sqrt(rear_area / m)


def classify(field: Rect, spec: SensorSpec, n: int) -> Case:
    k = k_value(field.area, n, spec.r)
    if k <= CASE2_MAX_K:
        return Case.CASE2
    if k <= CASE1_MAX_K:
        return Case.CASE1
    # secondary zones of grid neighbours overlap iff pitch <= 2R
    if rear_pitch(field.area, k, n) <= 2 * spec.R:
        return Case.CASE3
    return Case.CASE4


def plan_for(field: Rect, spec: SensorSpec, n: int) -> Plan:
    """Plan for a caller-chosen fleet size."""
    if n < 1:
        raise ValueError("sensor count must be >= 1")
    k = k_value(field.area, n, spec.r)
    case = classify(field, spec, n)
    front_depth = None
    surplus = 0
    if case is Case.CASE3:
        front_depth = field.length / (2 * k)
    elif case is Case.CASE2:
        surplus = max(0, n - lattice_count(field, spec.r))
    return Plan(field, spec, n, k, case, front_depth, surplus)


def optimal_plan(field: Rect, spec: SensorSpec) -> Plan:
    return plan_for(field, spec, required_sensor_count(field, spec))


@dataclass(frozen=True)
class SweepRow:
    x: float
    n: int
    k: float
    case: Case


def sweep_area(spec: SensorSpec, areas: list[float]) -> list[SweepRow]:
    if not areas:
        raise ValueError("empty area list")
    rows = []
    for a in areas:
        p = optimal_plan(Rect.square(a), spec)
        rows.append(SweepRow(a, p.n, p.k, p.case))
    return rows


def sweep_radius(area: float, specs: list[SensorSpec]) -> list[SweepRow]:
    if not specs:
        raise ValueError("empty spec list")
    field = Rect.square(area)
    rows = []
    for s in specs:
        p = optimal_plan(field, s)
        rows.append(SweepRow(s.r, p.n, p.k, p.case))
    return rows
