"""ristwin: computational twin of a 256-element 2-bit reconfigurable
intelligent surface and the OFDM link built around it."""

__version__ = "0.1.0"

from .element import DiodeState, ElementState, ModelKind, PinDiodeModel
from .surface import BiasFrameError, Codeword, SurfaceLayout

__all__ = [
    "DiodeState",
    "ElementState",
    "ModelKind",
    "PinDiodeModel",
    "BiasFrameError",
    "Codeword",
    "SurfaceLayout",
    "__version__",
]
