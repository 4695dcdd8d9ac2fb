"""Statistical air-to-ground channel.

Sigmoid line-of-sight probability over elevation angle, free-space path loss
with LoS/NLoS excess terms, a 1/D received-power gain, and a shared-bandwidth
uplink rate where the usable bandwidth decays exponentially with the number
of competing vehicles. Every function accepts scalars or numpy arrays and is
pure; the constrained evaluator and the independent constraint checker both
rest on these.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

ELEVATION_MODES = ("corrected", "slant_complement")
GAIN_MODELS = ("per_distance", "constant")


@dataclass(frozen=True)
class ChannelParams:
    """Radio constants.

    ref_gain is the dimensionless link gain constant; the shipped default is
    calibrated so the bundled scene is serviceable at the default rate floor
    (see README), not a measured value.
    """

    alpha: float = 9.61
    beta: float = 0.16
    eta_los_db: float = 1.0
    eta_nlos_db: float = 20.0
    carrier_hz: float = 2.0e9
    light_speed: float = 3.0e8
    tx_power_w: float = 0.05
    ref_gain: float = 210.0
    noise_power_w: float = 1.0e-13
    snr_gap: float = 2.0
    total_bandwidth_hz: float = 3.6e6
    util_a: float = 1.0
    util_b: float = 0.01
    r_min_mbps: float = 3.2
    elevation_mode: str = "corrected"
    gain_model: str = "per_distance"
    forced_nlos_under_bridge: bool = False

    def __post_init__(self) -> None:
        if self.alpha <= 0 or self.beta <= 0:
            raise ValueError("alpha and beta must be positive")
        if self.carrier_hz <= 0 or self.light_speed <= 0:
            raise ValueError("carrier_hz and light_speed must be positive")
        if self.total_bandwidth_hz <= 0:
            raise ValueError("total_bandwidth_hz must be positive")
        if self.noise_power_w <= 0:
            raise ValueError("noise_power_w must be positive")
        if self.snr_gap <= 0:
            raise ValueError("snr_gap must be positive")
        if self.util_a != 1.0:
            raise ValueError("util_a is fixed at 1 (full utilisation of an empty channel)")
        if self.util_b < 0:
            raise ValueError("util_b must be >= 0")
        if self.r_min_mbps < 0:
            raise ValueError("r_min_mbps must be >= 0")
        if self.tx_power_w < 0:
            raise ValueError("tx_power_w must be >= 0")
        if self.ref_gain <= 0:
            raise ValueError("ref_gain must be positive")
        if self.elevation_mode not in ELEVATION_MODES:
            raise ValueError("elevation_mode must be one of %r" % (ELEVATION_MODES,))
        if self.gain_model not in GAIN_MODELS:
            raise ValueError("gain_model must be one of %r" % (GAIN_MODELS,))


def euclid_3d(p, q):
    """3D Euclidean distance; inputs broadcast over a trailing xyz axis."""
    diff = np.asarray(p, dtype=float) - np.asarray(q, dtype=float)
    return np.sqrt(np.sum(diff * diff, axis=-1))


def horizontal_distance(p, q):
    diff = np.asarray(p, dtype=float)[..., :2] - np.asarray(q, dtype=float)[..., :2]
    return np.sqrt(np.sum(diff * diff, axis=-1))


def elevation_from_offsets(d_horizontal, dz, mode: str = "corrected"):
    """Elevation angle in degrees from horizontal range and height gap.

    'corrected' measures the angle above the horizontal plane and goes to 90
    directly overhead. 'slant_complement' returns 90 minus the angle computed
    against the slant range, retained for fidelity comparisons.
    """
    d_h = np.asarray(d_horizontal, dtype=float)
    dz = np.asarray(dz, dtype=float)
    if np.any(dz < 0):
        raise ValueError("relay below vehicle: negative height gap")
    if mode == "corrected":
        return np.degrees(np.arctan2(dz, d_h))
    if mode == "slant_complement":
        d3 = np.sqrt(d_h * d_h + dz * dz)
        with np.errstate(invalid="ignore"):
            ratio = np.where(d3 > 0, dz / np.where(d3 > 0, d3, 1.0), 1.0)
        return 90.0 - np.degrees(np.arctan(ratio))
    raise ValueError("unknown elevation mode %r" % mode)


def elevation_deg(vehicle_pos, uav_pos, mode: str = "corrected"):
    d_h = horizontal_distance(vehicle_pos, uav_pos)
    dz = np.asarray(uav_pos, dtype=float)[..., 2] - np.asarray(vehicle_pos, dtype=float)[..., 2]
    return elevation_from_offsets(d_h, dz, mode)


def los_probability(elev_deg, params: ChannelParams):
    """Sigmoid LoS probability, monotone non-decreasing in elevation."""
    elev = np.asarray(elev_deg, dtype=float)
    if np.any(elev < 0) or np.any(elev > 90):
        raise ValueError("elevation must lie in [0, 90] degrees")
    return 1.0 / (1.0 + params.alpha * np.exp(-params.beta * (elev - params.alpha)))


def path_loss_db(distance_m, params: ChannelParams, link: str = "los"):
    """Free-space loss plus the excess term for the link state."""
    if link == "los":
        eta = params.eta_los_db
    elif link == "nlos":
        eta = params.eta_nlos_db
    else:
        raise ValueError("link must be 'los' or 'nlos', got %r" % link)
    d = np.asarray(distance_m, dtype=float)
    if np.any(d <= 0):
        raise ValueError("distance must be positive")
    return 20.0 * np.log10(4.0 * math.pi * params.carrier_hz * d / params.light_speed) + eta


def avg_path_loss_db(vehicle_pos, uav_pos, params: ChannelParams, under_bridge=False):
    """LoS-probability-weighted mean of the LoS and NLoS losses in dB.

    With forced_nlos_under_bridge set, vehicles flagged as shadowed by the
    viaduct are treated as pure NLoS.
    """
    d3 = euclid_3d(vehicle_pos, uav_pos)
    elev = elevation_deg(vehicle_pos, uav_pos, params.elevation_mode)
    p_los = los_probability(elev, params)
    if params.forced_nlos_under_bridge:
        p_los = np.where(np.asarray(under_bridge, dtype=bool), 0.0, p_los)
    return p_los * path_loss_db(d3, params, "los") + (1.0 - p_los) * path_loss_db(d3, params, "nlos")


def received_power_w(distance_m, params: ChannelParams):
    """Received power under the 1/D gain model."""
    d = np.asarray(distance_m, dtype=float)
    if np.any(d <= 0):
        raise ValueError("distance must be positive")
    return params.ref_gain / d * params.tx_power_w


def channel_utilization(n_competing, params: ChannelParams):
    """Fraction of the band usable when n vehicles share the relay."""
    n = np.asarray(n_competing, dtype=float)
    if np.any(n < 0):
        raise ValueError("competing count must be >= 0")
    return params.util_a * np.exp(-params.util_b * n)


def uplink_rate_mbps(vehicle_pos, uav_pos, n_competing, params: ChannelParams, under_bridge=False):
    """Shared-bandwidth Shannon rate in Mbps.

    The SNR numerator follows gain_model: 'per_distance' applies the 1/D
    received-power gain on top of the probabilistic path loss, 'constant'
    applies ref_gain * tx_power only, leaving distance decay to the loss term.

    A relay at or below a vehicle's own elevation has no downward link; those
    entries come back as exactly 0 instead of tripping the elevation domain.
    """
    v = np.asarray(vehicle_pos, dtype=float)
    u = np.asarray(uav_pos, dtype=float)
    dz = u[..., 2] - v[..., 2]
    if np.any(dz <= 0):
        shape = np.broadcast_shapes(v.shape, u.shape)
        vb = np.broadcast_to(v, shape).copy()
        ub = np.broadcast_to(u, shape).copy()
        dead = dz <= 0
        ub[..., 2] = np.where(dead, vb[..., 2] + 1.0, ub[..., 2])
        lifted = uplink_rate_mbps(vb, ub, n_competing, params, under_bridge)
        return np.where(dead, 0.0, lifted)
    d3 = euclid_3d(vehicle_pos, uav_pos)
    loss_db = avg_path_loss_db(vehicle_pos, uav_pos, params, under_bridge)
    loss_lin = np.power(10.0, loss_db / 10.0)
    if params.gain_model == "per_distance":
        power = received_power_w(d3, params)
    else:
        power = params.ref_gain * params.tx_power_w
    snr = power / (params.noise_power_w * params.snr_gap * loss_lin)
    bandwidth = params.total_bandwidth_hz * channel_utilization(n_competing, params)
    return bandwidth * np.log2(1.0 + snr) / 1.0e6
