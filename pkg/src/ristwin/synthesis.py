"""Beam synthesis: per-element phase targets that turn the feed's spherical
wavefront into a planar one, quantization onto the element's four states,
and a phase-only shaped-beam synthesizer (alternating projections).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .element import ElementState, ModelKind, available_phases_deg
from .surface import Codeword, SurfaceLayout, active_mask_array, element_positions

SPEED_OF_LIGHT = 299_792_458.0

#: Documented scanning validity of the surface, degrees off broadside.
SCAN_LIMIT_DEG = 60.0


@dataclass(frozen=True)
class SteeringTarget:
    """Beam direction: theta off broadside (0..90), phi azimuth."""

    theta_deg: float
    phi_deg: float = 0.0

    def __post_init__(self) -> None:
        if not (0.0 <= self.theta_deg < 90.0):
            raise ValueError(f"theta must lie in [0, 90), got {self.theta_deg}")
        object.__setattr__(self, "phi_deg", self.phi_deg % 360.0)

    def unit_vector(self) -> np.ndarray:
        th = math.radians(self.theta_deg)
        ph = math.radians(self.phi_deg)
        return np.array(
            [math.sin(th) * math.cos(ph), math.sin(th) * math.sin(ph), math.cos(th)]
        )


def wavenumber(frequency_hz: float) -> float:
    if frequency_hz <= 0.0:
        raise ValueError(f"frequency must be positive, got {frequency_hz}")
    return 2.0 * math.pi * frequency_hz / SPEED_OF_LIGHT


def fold_deg(delta):
    """Fold angle differences into [-180, 180)."""
    return (np.asarray(delta) + 180.0) % 360.0 - 180.0


def required_phases(
    layout: SurfaceLayout, target: SteeringTarget, frequency_hz: float
) -> np.ndarray:
    """Required added phase for every grid cell, degrees in [0, 360).

    phi_req = k*|feed - r| - k*(r . u), i.e. cancel the feed path delay,
    then apply the progressive phase that steers to the target.
    Returned row-major as a (rows, cols) array; masked cells are computed
    like any other (callers apply the mask).
    """
    k = wavenumber(frequency_hz)
    pos = element_positions(layout)
    feed = np.asarray(layout.feed_position_m)
    d_feed = np.linalg.norm(feed[None, :] - pos, axis=1)
    steer = pos @ target.unit_vector()
    phase_deg = np.degrees(k * (d_feed - steer)) % 360.0
    return phase_deg.reshape(layout.rows, layout.cols)


def required_phase(
    layout: SurfaceLayout,
    row: int,
    col: int,
    target: SteeringTarget,
    frequency_hz: float,
) -> float:
    """Required added phase of one active element, degrees in [0, 360)."""
    if layout.is_masked(row, col):
        raise ValueError(f"element ({row}, {col}) is masked")
    if not (0 <= row < layout.rows and 0 <= col < layout.cols):
        raise ValueError(f"element index ({row}, {col}) out of range")
    return float(required_phases(layout, target, frequency_hz)[row, col])


def quantize_phase(phi_req_deg: float, available_deg) -> tuple[int, float]:
    """Nearest available phase by circular distance.

    Returns (index, signed residual) with the residual folded to
    [-180, 180); ties break toward the lowest index.
    """
    avail = np.asarray(available_deg, dtype=float)
    if avail.size == 0:
        raise ValueError("available phase list must be non-empty")
    err = fold_deg(phi_req_deg - avail)
    idx = int(np.argmin(np.abs(err)))
    return idx, float(err[idx])


def _quantize_grid(phases_deg: np.ndarray, available_deg) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized quantize_phase over an array; returns (indices, errors)."""
    avail = np.asarray(available_deg, dtype=float)
    err = fold_deg(phases_deg[..., None] - avail)
    idx = np.argmin(np.abs(err), axis=-1)
    chosen = np.take_along_axis(err, idx[..., None], axis=-1)[..., 0]
    return idx, chosen


def synthesize_pencil(
    layout: SurfaceLayout,
    target: SteeringTarget,
    kind: ModelKind = ModelKind.MEASURED,
    frequency_hz: float | None = None,
    force: bool = False,
) -> Codeword:
    """Codeword focusing the reflected beam toward the target.

    Each active element takes the state whose reflection phase is
    circularly nearest its required phase; masked elements stay MASKED.
    Targets beyond the documented +/-60 degree validity raise unless
    force is set.
    """
    if target.theta_deg > SCAN_LIMIT_DEG and not force:
        raise ValueError(
            f"target {target.theta_deg:.1f} deg exceeds the +/-{SCAN_LIMIT_DEG:.0f} "
            "deg scanning validity (pass force=True to override)"
        )
    if frequency_hz is None:
        frequency_hz = layout.design_frequency_hz
    req = required_phases(layout, target, frequency_hz)
    idx, _ = _quantize_grid(req, available_phases_deg(kind))
    live = active_mask_array(layout)
    grid = np.where(live, idx.astype(np.int8), np.int8(ElementState.MASKED))
    return Codeword.from_int_array(grid)


def steering_residuals(
    layout: SurfaceLayout,
    codeword: Codeword,
    target: SteeringTarget,
    kind: ModelKind = ModelKind.MEASURED,
    frequency_hz: float | None = None,
) -> np.ndarray:
    """Signed phase residual (degrees) of each active element."""
    codeword.validate_against(layout)
    if frequency_hz is None:
        frequency_hz = layout.design_frequency_hz
    req = required_phases(layout, target, frequency_hz)
    avail = np.asarray(available_phases_deg(kind))
    codes = codeword.to_int_array()
    live = codes >= 0
    return fold_deg(req[live] - avail[codes[live]])


@dataclass(frozen=True)
class ShapedBeamSpec:
    """Magnitude mask for shaped-beam synthesis on a (theta, phi) grid.

    target_mag holds the desired relative field magnitude per cell;
    weight marks which cells are constrained (0 leaves a cell free).
    """

    theta_deg: np.ndarray
    phi_deg: np.ndarray
    target_mag: np.ndarray
    weight: np.ndarray
    max_iterations: int = 100
    tolerance: float = 1e-4

    def __post_init__(self) -> None:
        th = np.atleast_1d(np.asarray(self.theta_deg, dtype=float))
        ph = np.atleast_1d(np.asarray(self.phi_deg, dtype=float))
        tm = np.asarray(self.target_mag, dtype=float)
        w = np.asarray(self.weight, dtype=float)
        if tm.shape != (th.size, ph.size) or w.shape != tm.shape:
            raise ValueError("target/weight shape must be (len(theta), len(phi))")
        if np.any(tm < 0.0) or np.any(w < 0.0):
            raise ValueError("target magnitudes and weights must be non-negative")
        if not np.any(w > 0.0):
            raise ValueError("at least one mask cell must carry positive weight")
        if self.max_iterations < 1:
            raise ValueError("iteration limit must be >= 1")
        object.__setattr__(self, "theta_deg", th)
        object.__setattr__(self, "phi_deg", ph)
        object.__setattr__(self, "target_mag", tm)
        object.__setattr__(self, "weight", w)


@dataclass
class ShapedSynthesisResult:
    codeword: Codeword
    converged: bool
    iterations: int
    objective: float
    objective_history: list = field(default_factory=list)


def _mask_centroid_target(spec: ShapedBeamSpec) -> SteeringTarget:
    th = np.radians(spec.theta_deg)[:, None]
    ph = np.radians(spec.phi_deg)[None, :]
    w = spec.weight * spec.target_mag
    if not np.any(w > 0):
        w = spec.weight
    ux = float(np.sum(w * np.sin(th) * np.cos(ph)))
    uy = float(np.sum(w * np.sin(th) * np.sin(ph)))
    uz = float(np.sum(w * np.cos(th) * np.ones_like(ph)))
    norm = math.sqrt(ux * ux + uy * uy + uz * uz)
    if norm < 1e-12 or uz <= 0:
        return SteeringTarget(0.0, 0.0)
    theta = math.degrees(math.acos(min(1.0, uz / norm)))
    phi = math.degrees(math.atan2(uy, ux)) % 360.0
    return SteeringTarget(min(theta, 89.9), phi)


def synthesize_shaped(
    layout: SurfaceLayout,
    spec: ShapedBeamSpec,
    kind: ModelKind = ModelKind.MEASURED,
    frequency_hz: float | None = None,
    seed: int | None = None,
) -> ShapedSynthesisResult:
    """Phase-only shaped-beam synthesis by alternating projections.

    Starting from the pencil solution toward the mask centroid, repeat:
    radiate onto the mask grid, impose the target magnitude on weighted
    cells (keeping phase), back-project through the adjoint operator, and
    re-extract element phases.  A damped safeguard keeps the mask-region
    deviation non-increasing; each iteration's phases are quantized to the
    available states and the best quantized codeword is kept.  The loop is
    deterministic; the seed is accepted for interface stability and future
    stochastic restarts.
    """
    del seed  # deterministic loop, no stochastic steps yet
    from . import farfield  # local import: farfield also imports this module

    if frequency_hz is None:
        frequency_hz = layout.design_frequency_hz
    fwd = farfield.forward_operator(
        layout, frequency_hz, spec.theta_deg, spec.phi_deg, kind
    )  # (cells, active) complex
    n_cells, n_active = fwd.shape
    w = spec.weight.ravel()
    t = spec.target_mag.ravel()
    avail = np.asarray(available_phases_deg(kind))

    start = _mask_centroid_target(spec)
    psi = np.radians(
        required_phases(layout, start, frequency_hz)[active_mask_array(layout)]
    )

    def mask_objective(mag: np.ndarray) -> tuple[float, float]:
        wt = w * t
        denom = float(np.sum(wt * t))
        scale = float(np.sum(w * t * mag)) / denom if denom > 0 else 1.0
        ref = float(np.sum(w * (scale * t) ** 2))
        if ref <= 0.0:
            return 0.0, scale
        dev = float(np.sum(w * (mag - scale * t) ** 2))
        return dev / ref, scale

    def quantized_codeword(phases_rad: np.ndarray) -> tuple[Codeword, float]:
        idx, _ = _quantize_grid(np.degrees(phases_rad) % 360.0, avail)
        live = active_mask_array(layout)
        grid = np.full((layout.rows, layout.cols), int(ElementState.MASKED), dtype=np.int8)
        grid[live] = idx.astype(np.int8)
        cw = Codeword.from_int_array(grid)
        e_q = fwd @ np.exp(1j * np.radians(avail[idx]))
        obj_q, _ = mask_objective(np.abs(e_q))
        return cw, obj_q

    history: list[float] = []
    best_cw, best_obj = quantized_codeword(psi)
    converged = False
    iterations = 0
    prev_mag = None
    for iterations in range(1, spec.max_iterations + 1):
        field_now = fwd @ np.exp(1j * psi)
        mag = np.abs(field_now)
        obj, scale = mask_objective(mag)
        history.append(obj)

        cw, obj_q = quantized_codeword(psi)
        if obj_q < best_obj:
            best_cw, best_obj = cw, obj_q

        if prev_mag is not None:
            peak = float(np.max(mag))
            change = float(np.max(np.abs(mag - prev_mag))) / peak if peak > 0 else 0.0
            if change < spec.tolerance:
                converged = True
                break
        prev_mag = mag

        # Impose the target magnitude on constrained cells, keep the phase.
        phase = np.where(mag > 0, field_now / np.where(mag > 0, mag, 1.0), 1.0)
        constrained = w > 0
        desired = field_now.copy()
        desired[constrained] = scale * t[constrained] * phase[constrained]

        # Back-project and re-extract phases, damping if the step regresses.
        back = fwd.conj().T @ (w * desired)
        psi_new = np.angle(back)
        beta = 1.0
        accepted = False
        for _ in range(6):
            blend = np.angle(
                (1.0 - beta) * np.exp(1j * psi) + beta * np.exp(1j * psi_new)
            )
            trial_obj, _ = mask_objective(np.abs(fwd @ np.exp(1j * blend)))
            if trial_obj <= obj + 1e-12:
                psi = blend
                accepted = True
                break
            beta *= 0.5
        if not accepted:
            converged = True  # local fixed point of the projection pair
            break

    cw, obj_q = quantized_codeword(psi)
    if obj_q < best_obj:
        best_cw, best_obj = cw, obj_q
    return ShapedSynthesisResult(
        codeword=best_cw,
        converged=converged,
        iterations=iterations,
        objective=best_obj,
        objective_history=history,
    )
