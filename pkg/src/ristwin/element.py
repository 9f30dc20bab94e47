"""Single 2-bit reflecting element: PIN-diode circuit model, the four
switchable configurations, and the complex reflection response.

The element carries five PIN diodes.  PIN1/PIN2 are driven complementarily
and reverse the induced surface current (a 180 degree phase step); PIN3-5
switch together and change the slot resonant length (a further 90 degree
step).  Four configurations result, giving 2-bit phase control.

Two response models are provided:

``measured``
    The simulated S-band responses at 2.3 GHz, held flat across the
    2.0-2.6 GHz validity band (the published curves are stable there).
``ideal``
    Lossless textbook 2-bit states at exact 90 degree increments, valid
    at any frequency.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

TWO_PI = 2.0 * math.pi

# Diode lumped-circuit values (Skyworks SMP1340-040LF).
DEFAULT_R_ON_OHM = 0.8
DEFAULT_L_SERIES_H = 780e-12
DEFAULT_C_OFF_F = 202e-15
DEFAULT_R_OFF_OHM = 10.0

# Validity band of the measured response model, Hz.
MEASURED_BAND_HZ = (2.0e9, 2.6e9)


class DiodeState(enum.Enum):
    ON = "on"
    OFF = "off"


class ModelKind(enum.Enum):
    MEASURED = "measured"
    IDEAL = "ideal"


@dataclass(frozen=True)
class PinDiodeModel:
    """Series lumped model of one PIN diode in its two bias states.

    ON:  r_on + j*w*l_series
    OFF: r_off + j*(w*l_series - 1/(w*c_off))
    """

    r_on_ohm: float = DEFAULT_R_ON_OHM
    l_series_h: float = DEFAULT_L_SERIES_H
    c_off_f: float = DEFAULT_C_OFF_F
    r_off_ohm: float = DEFAULT_R_OFF_OHM

    def __post_init__(self) -> None:
        for name in ("r_on_ohm", "l_series_h", "c_off_f", "r_off_ohm"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"PinDiodeModel.{name} must be strictly positive")


class ElementState(enum.IntEnum):
    """Logical 2-bit element code, plus a marker for removed elements.

    Codes are ordered by ascending reflection phase (mod 360) of the
    measured model, so consecutive codes step by roughly 90 degrees.
    The MASKED value marks elements removed for bias-line routing and
    never maps to diode settings.
    """

    S0 = 0
    S1 = 1
    S2 = 2
    S3 = 3
    MASKED = -1


#: Hardware configuration number (1..4) behind each logical code.
CONFIGURATION_OF_CODE = {
    ElementState.S0: 3,
    ElementState.S1: 1,
    ElementState.S2: 4,
    ElementState.S3: 2,
}

CODE_OF_CONFIGURATION = {cfg: code for code, cfg in CONFIGURATION_OF_CODE.items()}


class PinSettings(NamedTuple):
    pin1: DiodeState
    pin2: DiodeState
    pin3: DiodeState
    pin4: DiodeState
    pin5: DiodeState


_ON = DiodeState.ON
_OFF = DiodeState.OFF

# Diode states per configuration: PIN1/PIN2 complementary, PIN3-5 ganged.
_PINS_OF_CONFIGURATION = {
    1: PinSettings(_ON, _OFF, _ON, _ON, _ON),
    2: PinSettings(_OFF, _ON, _ON, _ON, _ON),
    3: PinSettings(_ON, _OFF, _OFF, _OFF, _OFF),
    4: PinSettings(_OFF, _ON, _OFF, _OFF, _OFF),
}

# Simulated element response at 2.3 GHz, keyed by configuration number.
# Phases kept unwrapped exactly as published; reduce mod 360 at use sites.
MEASURED_PHASE_DEG = {1: -205.5, 2: -383.2, 3: -290.2, 4: -110.3}
MEASURED_MAGNITUDE_DB = {1: -1.1, 2: -1.2, 3: -0.8, 4: -0.8}

IDEAL_PHASE_DEG = {
    ElementState.S0: 0.0,
    ElementState.S1: 90.0,
    ElementState.S2: 180.0,
    ElementState.S3: 270.0,
}


def pin_impedance(
    model: PinDiodeModel, diode_state: DiodeState, frequency_hz: float
) -> complex:
    """Series impedance of one diode at the given frequency, in ohms."""
    if frequency_hz <= 0.0:
        raise ValueError(f"frequency must be positive, got {frequency_hz}")
    omega = TWO_PI * frequency_hz
    if diode_state is DiodeState.ON:
        return complex(model.r_on_ohm, omega * model.l_series_h)
    return complex(
        model.r_off_ohm, omega * model.l_series_h - 1.0 / (omega * model.c_off_f)
    )


def state_to_pins(state: ElementState) -> PinSettings:
    """Per-diode bias settings realizing a logical element code."""
    if state is ElementState.MASKED:
        raise ValueError("masked elements have no PIN settings")
    return _PINS_OF_CONFIGURATION[CONFIGURATION_OF_CODE[state]]


def _check_measured_band(frequency_hz: float) -> None:
    lo, hi = MEASURED_BAND_HZ
    if not (lo <= frequency_hz <= hi):
        raise ValueError(
            f"measured element model is valid for {lo / 1e9:.1f}-{hi / 1e9:.1f} GHz, "
            f"got {frequency_hz / 1e9:.4g} GHz"
        )


def response_phase_deg(state: ElementState, kind: ModelKind) -> float:
    """Reflection phase of a state in degrees (unwrapped, as stored)."""
    if state is ElementState.MASKED:
        raise ValueError("masked elements have no reflection response")
    if kind is ModelKind.IDEAL:
        return IDEAL_PHASE_DEG[state]
    return MEASURED_PHASE_DEG[CONFIGURATION_OF_CODE[state]]


def response_magnitude_db(state: ElementState, kind: ModelKind) -> float:
    """Reflection magnitude of a state in dB (<= 0)."""
    if state is ElementState.MASKED:
        raise ValueError("masked elements have no reflection response")
    if kind is ModelKind.IDEAL:
        return 0.0
    return MEASURED_MAGNITUDE_DB[CONFIGURATION_OF_CODE[state]]


def available_phases_deg(kind: ModelKind) -> list[float]:
    """Reflection phases of codes S0..S3 in code order, reduced to [0, 360)."""
    return [
        response_phase_deg(state, kind) % 360.0
        for state in (ElementState.S0, ElementState.S1, ElementState.S2, ElementState.S3)
    ]


def element_response(
    state: ElementState, frequency_hz: float, kind: ModelKind
) -> complex:
    """Complex reflection coefficient of a state at one frequency.

    coefficient = 10**(magnitude_dB/20) * exp(j*phase)

    The measured model is frequency-flat inside its validity band; all
    frequency dependence of an array response comes from electrical path
    lengths, not from the element itself.
    """
    if state is ElementState.MASKED:
        raise ValueError("masked elements have no reflection response")
    if frequency_hz <= 0.0:
        raise ValueError(f"frequency must be positive, got {frequency_hz}")
    if kind is ModelKind.MEASURED:
        _check_measured_band(frequency_hz)
    mag = 10.0 ** (response_magnitude_db(state, kind) / 20.0)
    phase_rad = math.radians(response_phase_deg(state, kind))
    return mag * complex(math.cos(phase_rad), math.sin(phase_rad))
