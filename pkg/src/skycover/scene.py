"""Road scene geometry and vehicle generation.

Three straight road rectangles with linear elevation grades form the scene;
the first road is an elevated viaduct crossing above the other two. Vehicles
spawn uniformly on the pavement and demand an uplink rate drawn from a band
keyed to the road elevation at their position.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

ELEVATION_MAX_M = 900.0

# (low_elev, high_elev) -> (rate_low, rate_high) in Mbps; bands are half-open
# on the left edge except the last, which includes 900.
RATE_BANDS_MBPS = (
    (0.0, 300.0, 0.0, 2.0),
    (300.0, 600.0, 2.0, 3.5),
    (600.0, ELEVATION_MAX_M, 3.5, 5.0),
)


@dataclass(frozen=True)
class RoadSpec:
    """One straight road rectangle with a linear elevation grade.

    A point on the road is origin + s * heading + t * perp, where perp is the
    heading rotated 90 degrees counter-clockwise, s in [0, length_m] and
    t in [0, width_m]. Elevation interpolates linearly in s.
    """

    origin_xy: tuple[float, float]
    heading: tuple[float, float]
    length_m: float
    width_m: float
    elevation_start_m: float
    elevation_end_m: float
    layer_tag: str = "lower"

    def __post_init__(self) -> None:
        if self.length_m <= 0:
            raise ValueError("road length must be positive, got %r" % self.length_m)
        if self.width_m <= 0:
            raise ValueError("road width must be positive, got %r" % self.width_m)
        for elev in (self.elevation_start_m, self.elevation_end_m):
            if not 0.0 <= elev <= ELEVATION_MAX_M:
                raise ValueError(
                    "road elevation must lie in [0, %g] m, got %r"
                    % (ELEVATION_MAX_M, elev)
                )
        if self.layer_tag not in ("upper", "lower"):
            raise ValueError("layer_tag must be 'upper' or 'lower', got %r" % self.layer_tag)
        hx, hy = self.heading
        norm = math.hypot(hx, hy)
        if norm == 0.0:
            raise ValueError("heading must be a nonzero direction")
        if not math.isclose(norm, 1.0, abs_tol=1e-9):
            object.__setattr__(self, "heading", (hx / norm, hy / norm))

    @property
    def perp(self) -> tuple[float, float]:
        hx, hy = self.heading
        return (-hy, hx)

    def point_at(self, s: float, t: float) -> tuple[float, float]:
        """Plan-view position at longitudinal offset s and lateral offset t."""
        ox, oy = self.origin_xy
        hx, hy = self.heading
        px, py = self.perp
        return (ox + s * hx + t * px, oy + s * hy + t * py)

    def elevation_at(self, s: float) -> float:
        frac = s / self.length_m
        return self.elevation_start_m + frac * (self.elevation_end_m - self.elevation_start_m)

    def corners(self) -> list[tuple[float, float]]:
        return [
            self.point_at(0.0, 0.0),
            self.point_at(self.length_m, 0.0),
            self.point_at(self.length_m, self.width_m),
            self.point_at(0.0, self.width_m),
        ]

    def local_coords(self, x: float, y: float) -> tuple[float, float]:
        """Invert point_at: return (s, t) for a plan-view point."""
        ox, oy = self.origin_xy
        dx, dy = x - ox, y - oy
        hx, hy = self.heading
        px, py = self.perp
        return (dx * hx + dy * hy, dx * px + dy * py)

    def contains(self, x: float, y: float, tol: float = 1e-9) -> bool:
        s, t = self.local_coords(x, y)
        return -tol <= s <= self.length_m + tol and -tol <= t <= self.width_m + tol


def _projected_interval(corners: Sequence[tuple[float, float]], axis: tuple[float, float]):
    vals = [c[0] * axis[0] + c[1] * axis[1] for c in corners]
    return min(vals), max(vals)


def footprints_overlap(a: RoadSpec, b: RoadSpec, tol: float = 1e-9) -> bool:
    """Plan-view overlap test for two road rectangles (separating axis)."""
    ca, cb = a.corners(), b.corners()
    for axis in (a.heading, a.perp, b.heading, b.perp):
        lo_a, hi_a = _projected_interval(ca, axis)
        lo_b, hi_b = _projected_interval(cb, axis)
        if min(hi_a, hi_b) - max(lo_a, lo_b) <= tol:
            return False
    return True


@dataclass(frozen=True)
class RoadScene:
    roads: tuple[RoadSpec, ...]
    bounds: tuple[float, float, float] = (3000.0, 3000.0, 3000.0)

    @property
    def upper_road(self) -> RoadSpec:
        return self.roads[0]


def build_scene(
    roads: Sequence[RoadSpec],
    bounds: tuple[float, float, float] = (3000.0, 3000.0, 3000.0),
) -> RoadScene:
    """Validate road geometry and assemble the scene.

    Requires exactly three roads, the first tagged 'upper' and overlapping the
    other two in plan view, with every footprint inside the bounding box.
    """
    roads = tuple(roads)
    if len(roads) != 3:
        raise ValueError("scene requires exactly 3 roads, got %d" % len(roads))
    if roads[0].layer_tag != "upper":
        raise ValueError("roads[0] must carry layer_tag 'upper'")
    bx, by, bz = bounds
    for k, road in enumerate(roads):
        for x, y in road.corners():
            if not (-1e-9 <= x <= bx + 1e-9 and -1e-9 <= y <= by + 1e-9):
                raise ValueError("road %d escapes scene bounds at (%.1f, %.1f)" % (k, x, y))
        if max(road.elevation_start_m, road.elevation_end_m) > bz:
            raise ValueError("road %d elevation exceeds scene height bound" % k)
    for k in (1, 2):
        if not footprints_overlap(roads[0], roads[k]):
            raise ValueError("upper road must cross road %d in plan view" % k)
    return RoadScene(roads=roads, bounds=(float(bx), float(by), float(bz)))


def default_scene() -> RoadScene:
    """Canonical scene fixture used by all presets.

    One 2100 m viaduct (road 0) climbing 450 m to 850 m crosses two ground
    roads running south to north. The geometry is an invented fixture: long
    enough that no single service cone spans a ground road, with the viaduct
    demand dense enough to require splitting by capacity.
    """
    return build_scene(
        [
            RoadSpec(
                origin_xy=(450.0, 1500.0),
                heading=(1.0, 0.0),
                length_m=2100.0,
                width_m=36.0,
                elevation_start_m=450.0,
                elevation_end_m=850.0,
                layer_tag="upper",
            ),
            RoadSpec(
                origin_xy=(1250.0, 700.0),
                heading=(0.0, 1.0),
                length_m=1600.0,
                width_m=24.0,
                elevation_start_m=0.0,
                elevation_end_m=300.0,
            ),
            RoadSpec(
                origin_xy=(1750.0, 850.0),
                heading=(0.0, 1.0),
                length_m=1250.0,
                width_m=24.0,
                elevation_start_m=0.0,
                elevation_end_m=330.0,
            ),
        ]
    )


@dataclass(frozen=True)
class Vehicle:
    id: int
    x: float
    y: float
    elevation_m: float
    rate_mbps: float
    road_index: int
    under_bridge: bool = False

    @property
    def pos(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.elevation_m)


def assign_data_rate(height_m: float, rng: np.random.Generator) -> float:
    """Draw a demanded rate from the band matching the road elevation."""
    if not 0.0 <= height_m <= ELEVATION_MAX_M:
        raise ValueError("height %r m outside [0, %g]" % (height_m, ELEVATION_MAX_M))
    for low, high, rate_low, rate_high in RATE_BANDS_MBPS:
        if height_m < high or high == ELEVATION_MAX_M:
            return float(rng.uniform(rate_low, rate_high))
    raise AssertionError("unreachable")


def spawn_vehicles(scene: RoadScene, count: int, rng_seed: int) -> list[Vehicle]:
    """Place vehicles uniformly on the roads, deterministically per seed.

    Per vehicle the draws are: road index, longitudinal offset, lateral
    offset, then the rate band sample.
    """
    if count < 1:
        raise ValueError("count must be >= 1, got %r" % count)
    rng = np.random.default_rng(rng_seed)
    upper = scene.upper_road
    vehicles = []
    for i in range(count):
        road_index = int(rng.integers(len(scene.roads)))
        road = scene.roads[road_index]
        s = float(rng.uniform(0.0, road.length_m))
        t = float(rng.uniform(0.0, road.width_m))
        x, y = road.point_at(s, t)
        elevation = road.elevation_at(s)
        rate = assign_data_rate(elevation, rng)
        under = road.layer_tag == "lower" and upper.contains(x, y)
        vehicles.append(
            Vehicle(
                id=i,
                x=x,
                y=y,
                elevation_m=elevation,
                rate_mbps=rate,
                road_index=road_index,
                under_bridge=under,
            )
        )
    return vehicles


class VehicleSet:
    """Column view of a vehicle list for vectorised evaluation."""

    __slots__ = ("xs", "ys", "elevations", "rates", "under_bridge")

    def __init__(self, xs, ys, elevations, rates, under_bridge) -> None:
        self.xs = np.asarray(xs, dtype=float)
        self.ys = np.asarray(ys, dtype=float)
        self.elevations = np.asarray(elevations, dtype=float)
        self.rates = np.asarray(rates, dtype=float)
        self.under_bridge = np.asarray(under_bridge, dtype=bool)

    @classmethod
    def from_vehicles(cls, vehicles: Sequence[Vehicle]) -> "VehicleSet":
        return cls(
            [v.x for v in vehicles],
            [v.y for v in vehicles],
            [v.elevation_m for v in vehicles],
            [v.rate_mbps for v in vehicles],
            [v.under_bridge for v in vehicles],
        )

    @classmethod
    def coerce(cls, vehicles) -> "VehicleSet":
        if isinstance(vehicles, cls):
            return vehicles
        return cls.from_vehicles(vehicles)

    def horizontal_positions(self) -> np.ndarray:
        return np.column_stack([self.xs, self.ys])

    def __len__(self) -> int:
        return self.xs.shape[0]
