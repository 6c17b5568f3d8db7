"""Multi-target tracking with swarms of dual-zone mobile sensors."""

from swarmtrack.geometry import Disk, Rect, Vec2, cover_rectangle, coverage_fraction, disk_area
from swarmtrack.planner import Case, InfeasibleError, Plan, SensorSpec, classify, k_value, optimal_plan, required_sensor_count

__all__ = [
    "Case",
    "Disk",
    "InfeasibleError",
    "Plan",
    "Rect",
    "SensorSpec",
    "Vec2",
    "classify",
    "cover_rectangle",
    "coverage_fraction",
    "disk_area",
    "k_value",
    "optimal_plan",
    "required_sensor_count",
]
