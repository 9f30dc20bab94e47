"""Radiation-pattern engine and metric extraction.

The forward model is the usual reflectarray sum: every active element is
excited by the feed with a cos^q_f power-pattern taper and spherical
spreading/phase, reflects with its state's complex coefficient, and
re-radiates with a cos^q_e element factor:

    E(theta, phi) = cos^q_e(theta) * sum_mn
        [cos^q_f(theta_f_mn) / d_mn] * exp(-j k d_mn)
        * Gamma_mn * exp(+j k (r_mn . u(theta, phi)))

Back radiation is suppressed by the ground plane, so patterns live on the
front hemisphere (theta in [0, 90]) and the back half contributes nothing
to the power integrals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .element import ElementState, ModelKind, element_response
from .surface import Codeword, SurfaceLayout, active_mask_array, element_positions
from .synthesis import (
    SPEED_OF_LIGHT,
    SteeringTarget,
    required_phases,
    synthesize_pencil,
    wavenumber,
)

DEFAULT_THETA_STEP_DEG = 0.5
DEFAULT_PHI_STEP_DEG = 0.5

_CHUNK = 8192  # grid points per matmul block; bounds peak memory


class DomainError(ValueError):
    pass


def default_grids(
    theta_step_deg: float = DEFAULT_THETA_STEP_DEG,
    phi_step_deg: float = DEFAULT_PHI_STEP_DEG,
):
    """Front-hemisphere (theta, phi) grids; phi is periodic, 360 excluded."""
    n_th = int(round(90.0 / theta_step_deg))
    n_ph = int(round(360.0 / phi_step_deg))
    theta = np.linspace(0.0, 90.0, n_th + 1)
    phi = np.arange(n_ph) * (360.0 / n_ph)
    return theta, phi


@dataclass(frozen=True)
class FarFieldPattern:
    theta_deg: np.ndarray
    phi_deg: np.ndarray
    field: np.ndarray  # complex, shape (len(theta), len(phi))
    frequency_hz: float
    layout_note: str = ""

    def __post_init__(self) -> None:
        th = np.asarray(self.theta_deg, dtype=float)
        ph = np.asarray(self.phi_deg, dtype=float)
        f = np.asarray(self.field)
        if th.ndim != 1 or ph.ndim != 1:
            raise ValueError("theta and phi grids must be one-dimensional")
        if np.any(np.diff(th) <= 0) or (ph.size > 1 and np.any(np.diff(ph) <= 0)):
            raise ValueError("grids must be strictly increasing")
        if th[0] < 0.0 or th[-1] > 90.0 + 1e-9:
            raise ValueError("theta grid must lie within [0, 90] degrees")
        if f.shape != (th.size, ph.size):
            raise ValueError(
                f"field shape {f.shape} does not match grid {(th.size, ph.size)}"
            )
        object.__setattr__(self, "theta_deg", th)
        object.__setattr__(self, "phi_deg", ph)
        object.__setattr__(self, "field", f)

    @property
    def magnitude_db(self) -> np.ndarray:
        mag = np.abs(self.field)
        peak = mag.max()
        if peak == 0:
            raise DomainError("pattern is identically zero")
        floor = peak * 1e-12
        return 20.0 * np.log10(np.maximum(mag, floor) / peak)


def _feed_geometry(layout: SurfaceLayout):
    """Per-element feed distance and feed-boresight cosine, row-major."""
    pos = element_positions(layout)
    feed = np.asarray(layout.feed_position_m)
    vec = pos - feed[None, :]
    d = np.linalg.norm(vec, axis=1)
    boresight = -feed / np.linalg.norm(feed)  # feed aimed at the grid center
    cos_tf = np.clip((vec @ boresight) / d, -1.0, 1.0)
    return d, cos_tf


def illumination_amplitudes(layout: SurfaceLayout) -> np.ndarray:
    """Feed-taper amplitude cos^q_f(theta_f)/d at every element, row-major."""
    d, cos_tf = _feed_geometry(layout)
    return np.power(np.maximum(cos_tf, 0.0), layout.q_feed) / d


def _active_excitations(
    layout: SurfaceLayout,
    codeword: Codeword,
    frequency_hz: float,
    kind: ModelKind,
):
    """(positions, complex excitation) of the active elements."""
    codeword.validate_against(layout)
    k = wavenumber(frequency_hz)
    pos = element_positions(layout)
    d, cos_tf = _feed_geometry(layout)
    amp = np.power(np.maximum(cos_tf, 0.0), layout.q_feed) / d
    live = active_mask_array(layout).ravel()
    codes = codeword.to_int_array().ravel()
    gamma = np.array(
        [element_response(ElementState(int(c)), frequency_hz, kind) for c in codes[live]]
    )
    excitation = amp[live] * np.exp(-1j * k * d[live]) * gamma
    return pos[live], excitation


def _direction_grid(theta_deg, phi_deg):
    """Unit observation vectors for every (theta, phi) grid cell, flattened."""
    th = np.radians(np.asarray(theta_deg, dtype=float))
    ph = np.radians(np.asarray(phi_deg, dtype=float))
    st, ct = np.sin(th), np.cos(th)
    u = np.empty((th.size, ph.size, 3))
    u[..., 0] = st[:, None] * np.cos(ph)[None, :]
    u[..., 1] = st[:, None] * np.sin(ph)[None, :]
    u[..., 2] = ct[:, None]
    return u.reshape(-1, 3)


def radiate(
    layout: SurfaceLayout,
    codeword: Codeword,
    frequency_hz: float,
    theta_deg=None,
    phi_deg=None,
    kind: ModelKind = ModelKind.MEASURED,
) -> FarFieldPattern:
    """Far-field pattern of a codeword on a (theta, phi) grid."""
    if theta_deg is None or phi_deg is None:
        theta_default, phi_default = default_grids()
        theta_deg = theta_default if theta_deg is None else theta_deg
        phi_deg = phi_default if phi_deg is None else phi_deg
    theta_deg = np.atleast_1d(np.asarray(theta_deg, dtype=float))
    phi_deg = np.atleast_1d(np.asarray(phi_deg, dtype=float))
    pos, excitation = _active_excitations(layout, codeword, frequency_hz, kind)
    k = wavenumber(frequency_hz)
    u = _direction_grid(theta_deg, phi_deg)
    xy = pos[:, :2]
    field = np.empty(u.shape[0], dtype=complex)
    for lo in range(0, u.shape[0], _CHUNK):
        hi = min(lo + _CHUNK, u.shape[0])
        phase = np.exp(1j * k * (u[lo:hi, :2] @ xy.T))
        field[lo:hi] = phase @ excitation
    field = field.reshape(theta_deg.size, phi_deg.size)
    if layout.q_element != 0.0:
        elem = np.power(np.cos(np.radians(theta_deg)), layout.q_element)
        field = field * elem[:, None]
    note = (
        f"{layout.rows}x{layout.cols} grid, {layout.spacing_m * 1e3:.0f} mm pitch, "
        f"{len(layout.mask)} masked, {kind.value} element model"
    )
    return FarFieldPattern(theta_deg, phi_deg, field, frequency_hz, note)


def forward_operator(
    layout: SurfaceLayout,
    frequency_hz: float,
    theta_deg,
    phi_deg,
    kind: ModelKind = ModelKind.MEASURED,
) -> np.ndarray:
    """(grid cells, active elements) matrix mapping unit-magnitude element
    phasors to the far field; used by the shaped-beam synthesizer."""
    del kind  # quantization happens on phases; magnitudes are state-common here
    theta_deg = np.atleast_1d(np.asarray(theta_deg, dtype=float))
    phi_deg = np.atleast_1d(np.asarray(phi_deg, dtype=float))
    k = wavenumber(frequency_hz)
    pos = element_positions(layout)
    d, cos_tf = _feed_geometry(layout)
    amp = np.power(np.maximum(cos_tf, 0.0), layout.q_feed) / d
    live = active_mask_array(layout).ravel()
    base = amp[live] * np.exp(-1j * k * d[live])
    u = _direction_grid(theta_deg, phi_deg)
    op = np.exp(1j * k * (u[:, :2] @ pos[live][:, :2].T)) * base[None, :]
    if layout.q_element != 0.0:
        elem = np.power(
            np.cos(np.radians(theta_deg)), layout.q_element
        ).repeat(phi_deg.size)
        op = op * elem[:, None]
    return op


class DirectivityResult(NamedTuple):
    dbi: float
    peak_theta_deg: float
    peak_phi_deg: float


def _check_hemisphere_grid(pattern: FarFieldPattern) -> None:
    th, ph = pattern.theta_deg, pattern.phi_deg
    if th.size < 3 or ph.size < 3:
        raise DomainError("hemisphere grid required (theta and phi sweeps)")
    dth = np.diff(th)
    dph = np.diff(ph)
    if dth.max() > 1.0 + 1e-9 or dph.max() > 1.0 + 1e-9:
        raise DomainError("directivity requires grid steps of at most 1 degree")
    if th[0] > 1e-9 or th[-1] < 90.0 - 1e-9:
        raise DomainError("theta grid must cover 0..90 degrees")
    if ph[0] > 1e-9 or (360.0 - (ph[-1] - ph[0])) > 1.5 * dph.max():
        raise DomainError("phi grid must cover the full 0..360 degrees")


def directivity(pattern: FarFieldPattern) -> DirectivityResult:
    """Peak directivity in dBi by trapezoidal quadrature over the stored
    hemisphere grid; the back hemisphere contributes zero."""
    _check_hemisphere_grid(pattern)
    power = np.abs(pattern.field) ** 2
    if not np.any(power > 0):
        raise DomainError("pattern is identically zero")
    th_rad = np.radians(pattern.theta_deg)
    ph_rad = np.radians(pattern.phi_deg)
    # phi is periodic and uniform: rectangle rule; theta: trapezoid.
    dph = (ph_rad[-1] - ph_rad[0]) / (ph_rad.size - 1)
    az_integral = power.sum(axis=1) * dph
    total = np.trapezoid(az_integral * np.sin(th_rad), th_rad)
    ti, pi = np.unravel_index(np.argmax(power), power.shape)
    d_lin = 4.0 * math.pi * power[ti, pi] / total
    return DirectivityResult(
        10.0 * math.log10(d_lin),
        float(pattern.theta_deg[ti]),
        float(pattern.phi_deg[pi]),
    )


def spillover_efficiency(layout: SurfaceLayout, subdiv: int = 8) -> float:
    """Fraction of the cos^{2 q_f} feed power intercepted by the live
    aperture cells.  Masked cells are holes: power landing there is lost
    exactly like power missing the panel."""
    s = layout.spacing_m
    # Subdivide every element cell; integrate the feed power density over
    # live cells only.  dOmega = (feed_z / d) dA / d^2.
    offsets = ((np.arange(subdiv) + 0.5) / subdiv - 0.5) * s
    ox, oy = np.meshgrid(offsets, offsets)
    centers = element_positions(layout)
    live = active_mask_array(layout).ravel()
    xx = centers[live, 0][:, None, None] + ox[None, :, :]
    yy = centers[live, 1][:, None, None] + oy[None, :, :]
    feed = np.asarray(layout.feed_position_m)
    vec = np.stack([xx - feed[0], yy - feed[1], -feed[2] * np.ones_like(xx)], axis=-1)
    d = np.linalg.norm(vec, axis=-1)
    boresight = -feed / np.linalg.norm(feed)
    cos_tf = np.clip((vec @ boresight) / d, 0.0, 1.0)
    cell = (s / subdiv) ** 2
    intercepted = np.sum(cos_tf ** (2 * layout.q_feed) * feed[2] / d**3) * cell
    total = 2.0 * math.pi / (2.0 * layout.q_feed + 1.0)
    return float(intercepted / total)


@dataclass(frozen=True)
class GainBreakdown:
    directivity_dbi: float
    element_loss_db: float
    spillover_db: float
    spillover_applied: bool

    @property
    def gain_dbi(self) -> float:
        total = self.directivity_dbi + self.element_loss_db
        if self.spillover_applied:
            total += self.spillover_db
        return total

    @property
    def gain_with_spillover_dbi(self) -> float:
        return self.directivity_dbi + self.element_loss_db + self.spillover_db

    @property
    def gain_no_spillover_dbi(self) -> float:
        return self.directivity_dbi + self.element_loss_db


def gain_breakdown(
    pattern: FarFieldPattern,
    layout: SurfaceLayout,
    codeword: Codeword,
    kind: ModelKind = ModelKind.MEASURED,
    include_spillover: bool = True,
) -> GainBreakdown:
    """Gain terms: directivity, illumination-weighted element magnitude
    loss, and (optionally) spillover.  Both spillover conventions are
    exposed so either total can be reported."""
    d = directivity(pattern)
    codeword.validate_against(layout)
    amp = illumination_amplitudes(layout).ravel()
    live = active_mask_array(layout).ravel()
    codes = codeword.to_int_array().ravel()
    mags = np.array(
        [
            abs(element_response(ElementState(int(c)), pattern.frequency_hz, kind))
            for c in codes[live]
        ]
    )
    a = amp[live]
    element_loss_db = 20.0 * math.log10(float(np.sum(a * mags) / np.sum(a)))
    spill_db = 10.0 * math.log10(spillover_efficiency(layout))
    return GainBreakdown(
        directivity_dbi=d.dbi,
        element_loss_db=element_loss_db,
        spillover_db=spill_db,
        spillover_applied=include_spillover,
    )


def gain(
    pattern: FarFieldPattern,
    layout: SurfaceLayout,
    codeword: Codeword,
    kind: ModelKind = ModelKind.MEASURED,
    include_spillover: bool = True,
) -> float:
    return gain_breakdown(pattern, layout, codeword, kind, include_spillover).gain_dbi


@dataclass(frozen=True)
class PatternMetrics:
    peak_theta_deg: float
    peak_phi_deg: float
    directivity_dbi: float
    hpbw_deg: tuple
    sidelobe_db: float
    peak_on_boundary: bool
    gain_dbi: float | None = None
    aperture_efficiency: float | None = None


def _principal_cut(pattern: FarFieldPattern, phi_value: float):
    """Great-circle cut through the phi_value plane: theta runs from
    -max..+max using the phi and phi+180 half-planes."""
    ph = pattern.phi_deg
    idx_fwd = int(np.argmin(np.abs((ph - phi_value + 180.0) % 360.0 - 180.0)))
    back_value = (phi_value + 180.0) % 360.0
    idx_bwd = int(np.argmin(np.abs((ph - back_value + 180.0) % 360.0 - 180.0)))
    mag_fwd = np.abs(pattern.field[:, idx_fwd])
    mag_bwd = np.abs(pattern.field[:, idx_bwd])
    angles = np.concatenate([-pattern.theta_deg[:0:-1], pattern.theta_deg])
    values = np.concatenate([mag_bwd[:0:-1], mag_fwd])
    return angles, values


def _conical_cut(pattern: FarFieldPattern, theta_value: float):
    """Cut at fixed theta across phi; arc length scaled by sin(theta)."""
    ti = int(np.argmin(np.abs(pattern.theta_deg - theta_value)))
    mag = np.abs(pattern.field[ti, :])
    pi = int(np.argmax(mag))
    # Center the cut on the peak so both lobe flanks are contiguous.
    shift = len(mag) // 2 - pi
    mag = np.roll(mag, shift)
    dphi = pattern.phi_deg[1] - pattern.phi_deg[0]
    arc = (np.arange(len(mag)) - len(mag) // 2) * dphi * math.sin(
        math.radians(max(pattern.theta_deg[ti], 1e-6))
    )
    return arc, mag


def _hpbw_from_cut(angles: np.ndarray, values: np.ndarray) -> float:
    peak_idx = int(np.argmax(values))
    peak = values[peak_idx]
    if peak <= 0:
        raise DomainError("cut has no power")
    half = peak / math.sqrt(2.0)  # -3 dB in field magnitude

    def crossing(direction: int) -> float:
        i = peak_idx
        while 0 <= i + direction < len(values) and values[i + direction] >= half:
            i += direction
        j = i + direction
        if j < 0 or j >= len(values):
            return angles[i]  # beam wider than the cut; clamp
        # Linear interpolation between samples i and j.
        v0, v1 = values[i], values[j]
        frac = (v0 - half) / (v0 - v1) if v0 != v1 else 0.0
        return angles[i] + frac * (angles[j] - angles[i])

    return float(crossing(+1) - crossing(-1))


def _sll_from_cut(values: np.ndarray) -> float:
    peak_idx = int(np.argmax(values))
    peak = values[peak_idx]
    # Main lobe bounded by the first local minima on either side.
    left = peak_idx
    while left > 0 and values[left - 1] < values[left]:
        left -= 1
    right = peak_idx
    while right < len(values) - 1 and values[right + 1] < values[right]:
        right += 1
    outside = np.concatenate([values[:left], values[right + 1 :]])
    if outside.size == 0:
        return -math.inf
    side = float(outside.max())
    if side <= 0:
        return -math.inf
    return 20.0 * math.log10(side / peak)


def metrics(
    pattern: FarFieldPattern,
    layout: SurfaceLayout | None = None,
    gain_dbi: float | None = None,
) -> PatternMetrics:
    """Peak direction, directivity, HPBW on the two principal cuts, and
    sidelobe level (worst of the cuts, main lobe bounded by first nulls)."""
    power = np.abs(pattern.field) ** 2
    if not np.any(power > 0):
        raise DomainError("pattern is identically zero")
    ti, pi = np.unravel_index(np.argmax(power), power.shape)
    peak_theta = float(pattern.theta_deg[ti])
    peak_phi = float(pattern.phi_deg[pi])
    on_boundary = ti == pattern.theta_deg.size - 1
    d = directivity(pattern)

    theta_step = float(np.max(np.diff(pattern.theta_deg)))
    cut1 = _principal_cut(pattern, peak_phi)
    if peak_theta <= theta_step + 1e-9:
        cut2 = _principal_cut(pattern, peak_phi + 90.0)
    else:
        cut2 = _conical_cut(pattern, peak_theta)
    hpbw = (_hpbw_from_cut(*cut1), _hpbw_from_cut(*cut2))
    sll = max(_sll_from_cut(cut1[1]), _sll_from_cut(cut2[1]))

    eff = None
    if gain_dbi is not None and layout is not None:
        area = layout.rows * layout.cols * layout.spacing_m**2
        eff = aperture_efficiency(gain_dbi, area, pattern.frequency_hz)
    return PatternMetrics(
        peak_theta_deg=peak_theta,
        peak_phi_deg=peak_phi,
        directivity_dbi=d.dbi,
        hpbw_deg=hpbw,
        sidelobe_db=sll,
        peak_on_boundary=bool(on_boundary),
        gain_dbi=gain_dbi,
        aperture_efficiency=eff,
    )


def aperture_efficiency(
    gain_dbi: float, aperture_area_m2: float, frequency_hz: float
) -> float:
    """eta = G * lambda^2 / (4 pi A)."""
    if aperture_area_m2 <= 0.0:
        raise ValueError("aperture area must be positive")
    if frequency_hz <= 0.0:
        raise ValueError("frequency must be positive")
    lam = SPEED_OF_LIGHT / frequency_hz
    return 10.0 ** (gain_dbi / 10.0) * lam**2 / (4.0 * math.pi * aperture_area_m2)


def eirp(transmit_power_dbm: float, gain_dbi: float) -> float:
    """Equivalent isotropic radiated power: transmit power plus gain."""
    return transmit_power_dbm + gain_dbi


@dataclass(frozen=True)
class SweepPoint:
    frequency_hz: float
    gain_dbi: float


@dataclass(frozen=True)
class SweepResult:
    points: tuple
    peak_frequency_hz: float
    peak_gain_dbi: float
    bandwidth_1db_hz: float
    fractional_bandwidth: float
    degenerate: bool
    edge_limited: bool


def frequency_sweep(
    layout: SurfaceLayout,
    codeword: Codeword,
    f_start_hz: float,
    f_stop_hz: float,
    f_step_hz: float,
    kind: ModelKind = ModelKind.MEASURED,
    theta_step_deg: float = 1.0,
    phi_step_deg: float = 1.0,
    include_spillover: bool = True,
) -> SweepResult:
    """Gain versus frequency with the codeword held fixed; only the
    electrical path length varies.  Reports the 1-dB gain bandwidth
    around the sweep peak with linearly interpolated endpoints."""
    if f_stop_hz < f_start_hz or f_step_hz <= 0:
        raise ValueError("need f_start <= f_stop and a positive step")
    freqs = np.arange(f_start_hz, f_stop_hz + f_step_hz / 2, f_step_hz)
    theta, phi = default_grids(theta_step_deg, phi_step_deg)
    gains = []
    for f in freqs:
        pat = radiate(layout, codeword, float(f), theta, phi, kind)
        gains.append(gain(pat, layout, codeword, kind, include_spillover))
    gains = np.asarray(gains)
    points = tuple(SweepPoint(float(f), float(g)) for f, g in zip(freqs, gains))

    peak_i = int(np.argmax(gains))
    peak_f, peak_g = float(freqs[peak_i]), float(gains[peak_i])
    if freqs.size == 1:
        return SweepResult(points, peak_f, peak_g, 0.0, 0.0, True, True)

    threshold = peak_g - 1.0

    def edge(direction: int) -> tuple[float, bool]:
        i = peak_i
        while 0 <= i + direction < len(gains) and gains[i + direction] >= threshold:
            i += direction
        j = i + direction
        if j < 0 or j >= len(gains):
            return float(freqs[i]), True  # window clipped by the sweep band
        g0, g1 = gains[i], gains[j]
        frac = (g0 - threshold) / (g0 - g1) if g0 != g1 else 0.0
        return float(freqs[i] + frac * (freqs[j] - freqs[i])), False

    lo, lo_clip = edge(-1)
    hi, hi_clip = edge(+1)
    bw = hi - lo
    return SweepResult(
        points=points,
        peak_frequency_hz=peak_f,
        peak_gain_dbi=peak_g,
        bandwidth_1db_hz=bw,
        fractional_bandwidth=bw / layout.design_frequency_hz,
        degenerate=False,
        edge_limited=lo_clip or hi_clip,
    )


@dataclass(frozen=True)
class ScanPoint:
    theta_cmd_deg: float
    gain_dbi: float
    scan_loss_db: float
    peak_theta_deg: float
    peak_phi_deg: float


def scan_study(
    layout: SurfaceLayout,
    scan_angles_deg,
    kind: ModelKind = ModelKind.MEASURED,
    phi_deg: float = 0.0,
    theta_step_deg: float = DEFAULT_THETA_STEP_DEG,
    phi_step_deg: float = DEFAULT_PHI_STEP_DEG,
    include_spillover: bool = True,
    frequency_hz: float | None = None,
) -> tuple[ScanPoint, ...]:
    """Gain and achieved peak direction for each commanded scan angle;
    scan loss is referenced to the broadside beam."""
    angles = [float(a) for a in scan_angles_deg]
    if any(a < 0 or a > 60.0 for a in angles):
        raise ValueError("scan angles must lie within 0..60 degrees")
    if frequency_hz is None:
        frequency_hz = layout.design_frequency_hz
    theta, phi = default_grids(theta_step_deg, phi_step_deg)

    def one(theta_cmd: float) -> tuple[float, float, float]:
        cw = synthesize_pencil(
            layout, SteeringTarget(theta_cmd, phi_deg), kind, frequency_hz
        )
        pat = radiate(layout, cw, frequency_hz, theta, phi, kind)
        g = gain(pat, layout, cw, kind, include_spillover)
        d = directivity(pat)
        return g, d.peak_theta_deg, d.peak_phi_deg

    broadside = one(0.0)
    g0 = broadside[0]
    out = []
    for a in angles:
        g, pk_t, pk_p = broadside if a == 0.0 else one(a)
        out.append(ScanPoint(a, g, g0 - g, pk_t, pk_p))
    return tuple(out)


@dataclass(frozen=True)
class QuantizationLossResult:
    bits: int | None  # None means the continuous reference
    trials: int
    mean_loss_db: float
    std_loss_db: float
    closed_form_db: float


def quantization_loss(
    bits: int | None,
    trials: int,
    seed: int,
    layout: SurfaceLayout,
) -> QuantizationLossResult:
    """Monte-Carlo broadside gain loss of n-bit phase quantization against
    continuous phases.

    Each trial shifts the required phase front by a uniform random offset,
    quantizes to the ideal n-bit grid, and evaluates the coherent
    (illumination-weighted) broadside field ratio.  The closed-form
    reference 20*log10(sinc(pi/2^n)) is reported alongside.
    """
    if trials < 100:
        raise ValueError("need at least 100 Monte-Carlo trials")
    if bits is not None and bits < 1:
        raise ValueError("bits must be >= 1 (or None for continuous)")
    live = active_mask_array(layout).ravel()
    amp = illumination_amplitudes(layout).ravel()[live]
    if bits is None:
        return QuantizationLossResult(None, trials, 0.0, 0.0, 0.0)
    req = np.radians(
        required_phases(
            layout, SteeringTarget(0.0, 0.0), layout.design_frequency_hz
        ).ravel()[live]
    )
    rng = np.random.default_rng(seed)
    offsets = rng.uniform(0.0, 2.0 * math.pi, size=trials)
    step = 2.0 * math.pi / (2**bits)
    total = req[None, :] + offsets[:, None]
    err = np.round(total / step) * step - total
    coherent = np.abs(np.exp(1j * err) @ amp) / amp.sum()
    losses = -20.0 * np.log10(coherent)
    x = math.pi / (2**bits)
    closed = -20.0 * math.log10(math.sin(x) / x)
    return QuantizationLossResult(
        bits=bits,
        trials=trials,
        mean_loss_db=float(losses.mean()),
        std_loss_db=float(losses.std()),
        closed_form_db=closed,
    )
