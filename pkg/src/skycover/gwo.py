"""Pack-hierarchy search over horizontal positions.

A fixed-size pack of candidate points moves toward the three best candidates
found so far (the leaders). The step size envelope decays quadratically over
the run, trading exploration for exploitation. Seeded from cluster centers,
the search returns one refined horizontal position whose score is the
negated sum of distances to all vehicles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

Bounds = tuple[tuple[float, float], tuple[float, float]]


@dataclass(frozen=True)
class GwoParams:
    n_wolves: int = 20
    max_iter: int = 50
    bounds: Bounds = ((0.0, 3000.0), (0.0, 3000.0))

    def __post_init__(self) -> None:
        if self.n_wolves < 3:
            raise ValueError("need at least 3 wolves for the leader hierarchy")
        if self.max_iter < 0:
            raise ValueError("max_iter must be >= 0")
        (x0, x1), (y0, y1) = self.bounds
        if x1 <= x0 or y1 <= y0:
            raise ValueError("bounds must span a positive area")


@dataclass
class WolfState:
    positions: np.ndarray  # (W, 2)
    alpha_pos: np.ndarray
    beta_pos: np.ndarray
    delta_pos: np.ndarray
    alpha_score: float = -math.inf
    beta_score: float = -math.inf
    delta_score: float = -math.inf


def wolf_fitness(position, vehicles_xy) -> float:
    """Negated total distance to every vehicle; 0 is the best possible."""
    pos = np.asarray(position, dtype=float)
    pts = np.asarray(vehicles_xy, dtype=float)
    return float(-np.sum(np.sqrt(np.sum((pts - pos) ** 2, axis=-1))))


def _pack_fitness(positions: np.ndarray, vehicles_xy: np.ndarray) -> np.ndarray:
    diff = positions[:, None, :] - vehicles_xy[None, :, :]
    return -np.sum(np.sqrt(np.sum(diff * diff, axis=-1)), axis=1)


def control_vector(t: int, params: GwoParams) -> float:
    """Step envelope e(t) = 2 (1 - (t / T)^2), from 2 down to 0."""
    if params.max_iter < 1:
        raise ValueError("control vector undefined for a zero-iteration run")
    if not 0 <= t <= params.max_iter:
        raise ValueError("iteration %d outside [0, %d]" % (t, params.max_iter))
    return 2.0 * (1.0 - (t / params.max_iter) ** 2)


def initialize_wolves(init_centers, n_wolves: int) -> np.ndarray:
    """Cycle the provided centers to fill the pack, without perturbation."""
    centers = np.asarray(init_centers, dtype=float).reshape(-1, 2)
    if centers.shape[0] < 1:
        raise ValueError("need at least one init center")
    return centers[np.arange(n_wolves) % centers.shape[0]].copy()


def clamp_positions(positions: np.ndarray, bounds: Bounds) -> np.ndarray:
    (x0, x1), (y0, y1) = bounds
    out = positions.copy()
    out[:, 0] = np.clip(out[:, 0], x0, x1)
    out[:, 1] = np.clip(out[:, 1], y0, y1)
    return out


def update_leaders(state: WolfState, scores: np.ndarray) -> None:
    """Fold pack scores into the leader triple, in pack order.

    Strict improvement only, and a wolf enters exactly one slot, so the
    ordering alpha >= beta >= delta is preserved.
    """
    for w in range(state.positions.shape[0]):
        s = float(scores[w])
        if s > state.alpha_score:
            state.alpha_score = s
            state.alpha_pos = state.positions[w].copy()
        elif s > state.beta_score:
            state.beta_score = s
            state.beta_pos = state.positions[w].copy()
        elif s > state.delta_score:
            state.delta_score = s
            state.delta_pos = state.positions[w].copy()


def update_positions(
    state: WolfState, e: float, rng: np.random.Generator, bounds: Bounds
) -> np.ndarray:
    """One move: average of the three leader-guided candidate points.

    Fresh uniform draws a1, a2 are taken per wolf, per leader, per
    coordinate; e scales the signed step coefficient 2 e a1 - e.
    """
    w = state.positions.shape[0]
    a1 = rng.random((w, 3, 2))
    a2 = rng.random((w, 3, 2))
    leaders = np.stack([state.alpha_pos, state.beta_pos, state.delta_pos])  # (3, 2)
    coeff_e = 2.0 * e * a1 - e
    coeff_c = 2.0 * a2
    spread = np.abs(coeff_c * leaders[None, :, :] - state.positions[:, None, :])
    candidates = leaders[None, :, :] - coeff_e * spread
    return clamp_positions(candidates.mean(axis=1), bounds)


def gwo_search(vehicles_xy, init_centers, params: GwoParams, rng_seed: int) -> np.ndarray:
    """Run the pack search and return the best horizontal position found.

    Each iteration clamps, scores, refreshes the leaders, then moves the
    pack; the final move is left unscored, so the returned alpha always
    carries an evaluated score. max_iter=0 degenerates to scoring the
    initial pack.
    """
    pts = np.asarray(vehicles_xy, dtype=float).reshape(-1, 2)
    rng = np.random.default_rng(rng_seed)
    positions = initialize_wolves(init_centers, params.n_wolves)
    state = WolfState(
        positions=positions,
        alpha_pos=positions[0].copy(),
        beta_pos=positions[1].copy(),
        delta_pos=positions[2].copy(),
    )

    if params.max_iter == 0:
        state.positions = clamp_positions(state.positions, params.bounds)
        update_leaders(state, _pack_fitness(state.positions, pts))
        return state.alpha_pos.copy()

    for t in range(1, params.max_iter + 1):
        state.positions = clamp_positions(state.positions, params.bounds)
        update_leaders(state, _pack_fitness(state.positions, pts))
        e = control_vector(t, params)
        state.positions = update_positions(state, e, rng, params.bounds)
    return state.alpha_pos.copy()
