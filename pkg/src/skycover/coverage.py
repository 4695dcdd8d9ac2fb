"""Conical service footprints, nearest-relay assignment, and the constrained
fitness evaluator.

A relay at altitude H serves a ground disc of radius H * h_alpha / tan(v/2).
Vehicles are forced onto the nearest in-range relay; a plan is worth the
number of vehicles served unless any relay breaks its capacity or per-vehicle
rate floor, in which case the whole plan scores the penalty value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .channel import ChannelParams, uplink_rate_mbps
from .scene import RoadScene, VehicleSet

PENALTY_FITNESS = -100.0


@dataclass(frozen=True)
class CoverageParams:
    view_angle_deg: float = 45.0
    h_alpha: float = 0.15
    h_min_m: float = 1000.0
    h_max_m: float = 1800.0

    def __post_init__(self) -> None:
        if not 0.0 < self.view_angle_deg < 180.0:
            raise ValueError("view_angle_deg must lie in (0, 180)")
        if self.h_alpha <= 0:
            raise ValueError("h_alpha must be positive")
        if not 0.0 < self.h_min_m <= self.h_max_m:
            raise ValueError("need 0 < h_min_m <= h_max_m")


@dataclass(frozen=True)
class UavPlacement:
    x: float
    y: float
    h: float
    capacity_mbps: float = 40.0

    def __post_init__(self) -> None:
        if self.capacity_mbps <= 0:
            raise ValueError("capacity_mbps must be positive")

    @property
    def pos(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.h)


@dataclass(frozen=True)
class DeploymentPlan:
    uavs: tuple[UavPlacement, ...]

    def __len__(self) -> int:
        return len(self.uavs)

    def as_array(self) -> np.ndarray:
        return np.array([[u.x, u.y, u.h] for u in self.uavs], dtype=float)

    @classmethod
    def from_array(cls, genome: np.ndarray, capacity_mbps: float = 40.0) -> "DeploymentPlan":
        genome = np.asarray(genome, dtype=float)
        return cls(
            tuple(
                UavPlacement(float(x), float(y), float(h), capacity_mbps)
                for x, y, h in genome.reshape(-1, 3)
            )
        )


@dataclass(frozen=True)
class Violation:
    kind: str  # "capacity" or "qos"
    uav_index: int


@dataclass(frozen=True)
class EvalResult:
    assignment: tuple[int, ...]  # per vehicle, relay index or -1
    per_uav_members: tuple[tuple[int, ...], ...]
    per_uav_counts: tuple[int, ...]
    fitness: float
    feasible: bool
    violation: Optional[Violation]


def coverage_radius(h_uav_m, params: CoverageParams):
    """Ground radius of the service cone at the given absolute altitude."""
    h = np.asarray(h_uav_m, dtype=float)
    if np.any(h < 0):
        raise ValueError("altitude must be >= 0")
    return h * params.h_alpha / math.tan(math.radians(params.view_angle_deg / 2.0))


def assign_vehicles(plan: DeploymentPlan, vehicles, coverage_params: CoverageParams) -> np.ndarray:
    """Nearest in-range relay per vehicle (-1 when out of range everywhere).

    Distances are horizontal; ties go to the lowest relay index.
    """
    if len(plan) == 0:
        raise ValueError("plan must contain at least one relay")
    vs = VehicleSet.coerce(vehicles)
    genome = plan.as_array()
    radii = coverage_radius(genome[:, 2], coverage_params)
    dx = vs.xs[:, None] - genome[None, :, 0]
    dy = vs.ys[:, None] - genome[None, :, 1]
    dist = np.sqrt(dx * dx + dy * dy)
    eligible = dist <= radii[None, :]
    masked = np.where(eligible, dist, np.inf)
    nearest = np.argmin(masked, axis=1)
    assignment = np.where(eligible.any(axis=1), nearest, -1)
    return assignment.astype(int)


def evaluate_plan(
    plan: DeploymentPlan,
    vehicles,
    channel_params: ChannelParams,
    coverage_params: CoverageParams,
) -> EvalResult:
    """Score a plan: served-vehicle count, or the penalty on any violation.

    Relays are checked in index order, capacity before rate floor; the first
    failing relay is recorded and the whole plan takes PENALTY_FITNESS.
    """
    vs = VehicleSet.coerce(vehicles)
    assignment = assign_vehicles(plan, vs, coverage_params)
    members = tuple(
        tuple(int(i) for i in np.flatnonzero(assignment == j)) for j in range(len(plan))
    )
    counts = tuple(len(m) for m in members)

    violation = None
    veh_pos = np.column_stack([vs.xs, vs.ys, vs.elevations])
    for j, uav in enumerate(plan.uavs):
        idx = np.fromiter(members[j], dtype=int) if members[j] else np.empty(0, dtype=int)
        if idx.size == 0:
            continue
        if float(np.sum(vs.rates[idx])) > uav.capacity_mbps:
            violation = Violation("capacity", j)
            break
        rates = uplink_rate_mbps(
            veh_pos[idx],
            np.array(uav.pos, dtype=float),
            idx.size,
            channel_params,
            vs.under_bridge[idx],
        )
        if np.any(rates < channel_params.r_min_mbps):
            violation = Violation("qos", j)
            break

    feasible = violation is None
    fitness = float(sum(counts)) if feasible else PENALTY_FITNESS
    return EvalResult(
        assignment=tuple(int(a) for a in assignment),
        per_uav_members=members,
        per_uav_counts=counts,
        fitness=fitness,
        feasible=feasible,
        violation=violation,
    )


def _scalar_rate_mbps(vehicle, uav: UavPlacement, n_competing: int, ch: ChannelParams) -> float:
    """Plain-math uplink rate used by the independent constraint check."""
    dx = vehicle.x - uav.x
    dy = vehicle.y - uav.y
    dz = uav.h - vehicle.elevation_m
    if dz <= 0:
        # no downward link from a relay at or below the vehicle
        return 0.0
    d3 = math.sqrt(dx * dx + dy * dy + dz * dz)
    d_h = math.hypot(dx, dy)
    if ch.elevation_mode == "corrected":
        elev = math.degrees(math.atan2(dz, d_h))
    else:
        elev = 90.0 - math.degrees(math.atan(dz / d3)) if d3 > 0 else 45.0
    p_los = 1.0 / (1.0 + ch.alpha * math.exp(-ch.beta * (elev - ch.alpha)))
    if ch.forced_nlos_under_bridge and vehicle.under_bridge:
        p_los = 0.0
    fspl = 20.0 * math.log10(4.0 * math.pi * ch.carrier_hz * d3 / ch.light_speed)
    loss_db = p_los * (fspl + ch.eta_los_db) + (1.0 - p_los) * (fspl + ch.eta_nlos_db)
    if ch.gain_model == "per_distance":
        power = ch.ref_gain / d3 * ch.tx_power_w
    else:
        power = ch.ref_gain * ch.tx_power_w
    snr = power / (ch.noise_power_w * ch.snr_gap * 10.0 ** (loss_db / 10.0))
    bandwidth = ch.total_bandwidth_hz * ch.util_a * math.exp(-ch.util_b * n_competing)
    return bandwidth * math.log2(1.0 + snr) / 1.0e6


def validate_constraints(
    plan: DeploymentPlan,
    vehicles: Sequence,
    result: EvalResult,
    *,
    scene: RoadScene,
    channel_params: ChannelParams,
    coverage_params: CoverageParams,
    slack: float = 1e-9,
) -> list[str]:
    """Recheck the evaluator's verdict from scratch; return violated tags.

    Deliberately avoids the vectorised evaluation path: geometry and rates
    are recomputed with plain scalar arithmetic so a shared bug cannot hide.
    Tags: bounds, C1 (on-road), C2 (rate floor), C3 (in-range), C4
    (capacity), C5 (single assignment).
    """
    tags = set()
    bx, by, _ = scene.bounds
    for u in plan.uavs:
        if not (-slack <= u.x <= bx + slack and -slack <= u.y <= by + slack):
            tags.add("bounds")
        if not (coverage_params.h_min_m - slack <= u.h <= coverage_params.h_max_m + slack):
            tags.add("bounds")

    for v in vehicles:
        if v.road_index < 0:
            continue  # externally supplied vehicle, no road provenance
        if not scene.roads[v.road_index].contains(v.x, v.y, tol=1e-6):
            tags.add("C1")

    seen = {}
    for j, member_ids in enumerate(result.per_uav_members):
        for i in member_ids:
            if i in seen:
                tags.add("C5")
            seen[i] = j

    tan_half = math.tan(math.radians(coverage_params.view_angle_deg / 2.0))
    for j, uav in enumerate(plan.uavs):
        member_ids = result.per_uav_members[j] if j < len(result.per_uav_members) else ()
        if not member_ids:
            continue
        radius = uav.h * coverage_params.h_alpha / tan_half
        demand = math.fsum(vehicles[i].rate_mbps for i in member_ids)
        if demand > uav.capacity_mbps + slack:
            tags.add("C4")
        n = len(member_ids)
        for i in member_ids:
            v = vehicles[i]
            if math.hypot(v.x - uav.x, v.y - uav.y) > radius + slack:
                tags.add("C3")
            if _scalar_rate_mbps(v, uav, n, channel_params) < channel_params.r_min_mbps - slack:
                tags.add("C2")

    return sorted(tags)
