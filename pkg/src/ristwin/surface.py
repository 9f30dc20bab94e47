"""Physical surface: grid geometry, feed placement, the removed-element
mask, per-element state codewords, and the bias-frame codec that stands in
for the FPGA control board.

Coordinate convention: surface in the z=0 plane with its grid centroid at
the origin, feed on the +z side.  Element (row, col) maps to x along
columns and y along rows.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field

import numpy as np

from .element import ElementState

MAGIC = b"RIS1"
VERSION = 1
HEADER_LEN = 7  # magic(4) + version(1) + rows(1) + cols(1)

# Prototype defaults: 16x16 grid, 50 mm pitch, prime-focus feed 720 mm out,
# 2.3 GHz design frequency.  Sixteen elements of one interior column are
# removed for bias-line routing (published figure shows the removals but
# not their coordinates; a full column approximates it).
DEFAULT_ROWS = 16
DEFAULT_COLS = 16
DEFAULT_SPACING_M = 0.050
DEFAULT_FEED_XYZ_M = (0.0, 0.0, 0.720)
DEFAULT_DESIGN_FREQUENCY_HZ = 2.3e9
DEFAULT_MASK_COLUMN = 5
DEFAULT_Q_FEED = 4.5
DEFAULT_Q_ELEMENT = 0.0


class BiasFrameError(ValueError):
    """Malformed bias frame; the message names the offending field."""


def default_mask(rows: int = DEFAULT_ROWS, column: int = DEFAULT_MASK_COLUMN):
    return frozenset((r, column) for r in range(rows))


@dataclass(frozen=True)
class SurfaceLayout:
    rows: int = DEFAULT_ROWS
    cols: int = DEFAULT_COLS
    spacing_m: float = DEFAULT_SPACING_M
    mask: frozenset = field(default_factory=default_mask)
    feed_position_m: tuple = DEFAULT_FEED_XYZ_M
    design_frequency_hz: float = DEFAULT_DESIGN_FREQUENCY_HZ
    q_feed: float = DEFAULT_Q_FEED
    q_element: float = DEFAULT_Q_ELEMENT

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ValueError("rows and cols must be >= 1")
        if self.spacing_m <= 0.0:
            raise ValueError("spacing must be positive")
        if len(self.feed_position_m) != 3:
            raise ValueError("feed position must be an (x, y, z) triple")
        if self.feed_position_m[2] <= 0.0:
            raise ValueError("feed must sit on the +z side of the surface")
        if self.design_frequency_hz <= 0.0:
            raise ValueError("design frequency must be positive")
        for r, c in self.mask:
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ValueError(f"mask position ({r}, {c}) outside the grid")
        if len(self.mask) >= self.rows * self.cols:
            raise ValueError("mask may not cover the whole surface")
        object.__setattr__(self, "mask", frozenset(self.mask))
        object.__setattr__(self, "feed_position_m", tuple(float(v) for v in self.feed_position_m))

    @property
    def n_active(self) -> int:
        return self.rows * self.cols - len(self.mask)

    def is_masked(self, row: int, col: int) -> bool:
        return (row, col) in self.mask

    def active_indices(self):
        """(row, col) pairs of live elements, row-major."""
        return [
            (r, c)
            for r in range(self.rows)
            for c in range(self.cols)
            if (r, c) not in self.mask
        ]


def element_position(layout: SurfaceLayout, row: int, col: int):
    """Center of element (row, col) in meters; grid centered on the origin."""
    if not (0 <= row < layout.rows and 0 <= col < layout.cols):
        raise ValueError(f"element index ({row}, {col}) out of range")
    x = (col - (layout.cols - 1) / 2.0) * layout.spacing_m
    y = (row - (layout.rows - 1) / 2.0) * layout.spacing_m
    return (x, y, 0.0)


def element_positions(layout: SurfaceLayout) -> np.ndarray:
    """Positions of every element as an (rows*cols, 3) array, row-major."""
    cols = np.arange(layout.cols) - (layout.cols - 1) / 2.0
    rows = np.arange(layout.rows) - (layout.rows - 1) / 2.0
    xx, yy = np.meshgrid(cols * layout.spacing_m, rows * layout.spacing_m)
    out = np.zeros((layout.rows * layout.cols, 3))
    out[:, 0] = xx.ravel()
    out[:, 1] = yy.ravel()
    return out


def active_mask_array(layout: SurfaceLayout) -> np.ndarray:
    """Boolean (rows, cols) array, True where the element is live."""
    live = np.ones((layout.rows, layout.cols), dtype=bool)
    for r, c in layout.mask:
        live[r, c] = False
    return live


@dataclass(frozen=True)
class Codeword:
    """Per-element state grid loaded into the control board."""

    states: tuple  # tuple of row tuples of ElementState

    def __post_init__(self) -> None:
        rows = tuple(tuple(ElementState(s) for s in row) for row in self.states)
        if not rows or not rows[0]:
            raise ValueError("codeword grid must be non-empty")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise ValueError("codeword rows must have equal length")
        object.__setattr__(self, "states", rows)

    @property
    def rows(self) -> int:
        return len(self.states)

    @property
    def cols(self) -> int:
        return len(self.states[0])

    def __getitem__(self, rc) -> ElementState:
        r, c = rc
        return self.states[r][c]

    def validate_against(self, layout: SurfaceLayout) -> None:
        if self.rows != layout.rows or self.cols != layout.cols:
            raise ValueError(
                f"codeword is {self.rows}x{self.cols}, layout is "
                f"{layout.rows}x{layout.cols}"
            )
        for r in range(self.rows):
            for c in range(self.cols):
                masked_here = layout.is_masked(r, c)
                if masked_here != (self.states[r][c] is ElementState.MASKED):
                    raise ValueError(
                        f"codeword/mask mismatch at ({r}, {c}): "
                        f"state {self.states[r][c].name}, "
                        f"layout {'masked' if masked_here else 'active'}"
                    )

    def to_int_array(self) -> np.ndarray:
        """Grid as int8, MASKED encoded as -1."""
        return np.array(
            [[int(s) for s in row] for row in self.states], dtype=np.int8
        )

    @classmethod
    def from_int_array(cls, grid) -> "Codeword":
        return cls(tuple(tuple(ElementState(int(v)) for v in row) for row in grid))

    @classmethod
    def uniform(cls, layout: SurfaceLayout, state: ElementState) -> "Codeword":
        rows = []
        for r in range(layout.rows):
            rows.append(
                tuple(
                    ElementState.MASKED if layout.is_masked(r, c) else state
                    for c in range(layout.cols)
                )
            )
        return cls(tuple(rows))


def encode_bias_frame(codeword: Codeword) -> bytes:
    """Serialize a codeword to the control-board wire format.

    Layout: magic "RIS1", version byte, rows byte, cols byte, then
    ceil(rows*cols/4) payload bytes packing the 2-bit codes row-major,
    least-significant bits first.  MASKED packs as 00; the mask itself
    travels with the layout, not the frame.
    """
    if codeword.rows > 255 or codeword.cols > 255:
        raise ValueError("bias frame supports at most 255 rows/cols")
    n = codeword.rows * codeword.cols
    payload = bytearray(math.ceil(n / 4))
    idx = 0
    for row in codeword.states:
        for state in row:
            code = 0 if state is ElementState.MASKED else int(state)
            payload[idx >> 2] |= code << (2 * (idx & 3))
            idx += 1
    header = MAGIC + struct.pack("BBB", VERSION, codeword.rows, codeword.cols)
    return header + bytes(payload)


def decode_bias_frame(frame: bytes, layout: SurfaceLayout) -> Codeword:
    """Inverse of encode_bias_frame; mask positions come back as MASKED."""
    if len(frame) < HEADER_LEN:
        raise BiasFrameError(
            f"frame too short for header: {len(frame)} < {HEADER_LEN} bytes (length)"
        )
    if frame[:4] != MAGIC:
        raise BiasFrameError(f"bad magic {frame[:4]!r}, expected {MAGIC!r} (magic)")
    version, rows, cols = struct.unpack("BBB", frame[4:HEADER_LEN])
    if version != VERSION:
        raise BiasFrameError(f"unsupported version {version}, expected {VERSION} (version)")
    if rows != layout.rows or cols != layout.cols:
        raise ValueError(
            f"frame is {rows}x{cols}, layout is {layout.rows}x{layout.cols}"
        )
    expected = HEADER_LEN + math.ceil(rows * cols / 4)
    if len(frame) != expected:
        raise BiasFrameError(
            f"frame length {len(frame)} != expected {expected} bytes (length)"
        )
    payload = frame[HEADER_LEN:]
    grid = []
    idx = 0
    for r in range(rows):
        row = []
        for c in range(cols):
            code = (payload[idx >> 2] >> (2 * (idx & 3))) & 0b11
            idx += 1
            if layout.is_masked(r, c):
                row.append(ElementState.MASKED)
            else:
                row.append(ElementState(code))
        grid.append(tuple(row))
    return Codeword(tuple(grid))
