"""Phase-space array rendering as binary portable pixmaps.

Complex amplitudes use the HLS convention: hue carries the phase,
lightness carries the modulus clipped to [0, 1], saturation is 1.  The hue
origin is rotated so that positive reals render blue and negative reals
yellow.  Output is deterministic down to the byte: rounding is
ties-to-even, and the pixel grid is an integer upscale of the data grid.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import TorusWeylError
from .phase_repr import PhaseArray

HLS_COMPLEX = "hls-complex"
REAL_DIVERGING = "real-diverging"

# hue of a positive real value: 2/3 of a turn (blue); pi lands on yellow
_HUE_ORIGIN = 2.0 / 3.0


@dataclass(frozen=True)
class RenderSpec:
    """Pixel geometry and color handling for one image."""

    width: int
    height: int
    mode: str = HLS_COMPLEX
    gamma: float = 1.0

    def __post_init__(self) -> None:
        if self.mode not in (HLS_COMPLEX, REAL_DIVERGING):
            raise TorusWeylError(f"unknown color mode {self.mode!r}")
        if self.width < 1 or self.height < 1:
            raise TorusWeylError("render size must be positive")
        if self.gamma <= 0:
            raise TorusWeylError("gamma must be positive")


def hsl_to_rgb(h: np.ndarray, s: np.ndarray, light: np.ndarray) -> np.ndarray:
    """Vectorized hexcone HSL -> RGB, channels in [0, 1], stacked last."""
    h = np.mod(h, 1.0)
    c = (1.0 - np.abs(2.0 * light - 1.0)) * s
    hp = h * 6.0
    x = c * (1.0 - np.abs(np.mod(hp, 2.0) - 1.0))
    zero = np.zeros_like(c)
    sector = np.floor(hp).astype(int) % 6
    r = np.choose(sector, [c, x, zero, zero, x, c])
    g = np.choose(sector, [x, c, c, x, zero, zero])
    b = np.choose(sector, [zero, zero, x, c, c, x])
    m = light - c / 2.0
    return np.stack([r + m, g + m, b + m], axis=-1)


def colorize(values: np.ndarray, mode: str = HLS_COMPLEX, gamma: float = 1.0) -> np.ndarray:
    """Map a complex array to float RGB in [0, 1]."""
    z = np.asarray(values, dtype=complex)
    if mode == REAL_DIVERGING:
        z = z.real.astype(complex)
    hue = np.angle(z) / (2.0 * np.pi) + _HUE_ORIGIN
    light = np.clip(np.abs(z), 0.0, 1.0) ** gamma
    return hsl_to_rgb(hue, np.ones_like(light), light)


def render_array(arr: PhaseArray, spec: RenderSpec) -> np.ndarray:
    """Render to a (height, width, 3) uint8 image.

    Columns run over q left to right; rows over p with p increasing upward
    (row 0 is p = 2d-1).  Each data cell becomes a constant pixel block.
    """
    n = arr.dim.two_d
    if spec.width % n or spec.height % n:
        raise TorusWeylError(
            f"render size {spec.width}x{spec.height} must be an integer multiple "
            f"of the {n}x{n} data grid"
        )
    # values[q, p] -> image[row, col] with row = n-1-p, col = q
    img_data = arr.values.T[::-1, :]
    rgb = colorize(img_data, spec.mode, spec.gamma)
    sy = spec.height // n
    sx = spec.width // n
    rgb = np.repeat(np.repeat(rgb, sy, axis=0), sx, axis=1)
    return np.rint(rgb * 255.0).astype(np.uint8)


def write_ppm(path, image: np.ndarray) -> None:
    """Binary P6 pixmap, 8 bits per channel."""
    if image.ndim != 3 or image.shape[2] != 3 or image.dtype != np.uint8:
        raise TorusWeylError("image must be uint8 with shape (h, w, 3)")
    h, w = image.shape[:2]
    header = f"P6\n{w} {h}\n255\n".encode("ascii")
    Path(path).write_bytes(header + image.tobytes())


def read_ppm(path) -> np.ndarray:
    """Parse a binary P6 pixmap written by write_ppm."""
    raw = Path(path).read_bytes()
    parts = raw.split(b"\n", 3)
    if len(parts) != 4 or parts[0] != b"P6" or parts[2] != b"255":
        raise TorusWeylError(f"{path}: not a P6 pixmap in this package's layout")
    w, h = (int(v) for v in parts[1].split())
    data = np.frombuffer(parts[3], dtype=np.uint8, count=w * h * 3)
    return data.reshape(h, w, 3)
