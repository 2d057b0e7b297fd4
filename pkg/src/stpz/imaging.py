"""Raster image I/O (binary PPM/PGM), tensor conversion, and quality metrics.

Images are 8-bit with samples stored as a uint8 array of shape
(height, width, channels), channels interleaved row-major; maxval is fixed
at 255.  PSNR uses the 8-bit peak; SSIM uses the standard 11x11 Gaussian
window (sigma 1.5, unit sum), stabilizers C1 = (0.01*255)^2 and
C2 = (0.03*255)^2, valid-region cropping at the borders, and an unweighted
mean over channels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import DimensionError, FormatError
from .tensor import as_tensor3

__all__ = [
    "ImageBuffer",
    "load_ppm",
    "save_ppm",
    "image_to_tensor",
    "tensor_to_image",
    "psnr",
    "ssim",
    "relative_error",
]

_WINDOW = 11
_SIGMA = 1.5
_C1 = (0.01 * 255.0) ** 2
_C2 = (0.03 * 255.0) ** 2
_IMAG_TOL = 1e-6
_WHITESPACE = b" \t\r\n\x0b\x0c"


@dataclass(eq=False)
class ImageBuffer:
    """8-bit raster image; ``samples`` is uint8 (height, width, channels).

    ``imag_warning`` is set by :func:`tensor_to_image` when the discarded
    imaginary part exceeded the documented threshold.
    """

    samples: np.ndarray
    imag_warning: bool = False

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=np.uint8)
        if self.samples.ndim != 3 or self.samples.shape[2] not in (1, 3):
            raise DimensionError(
                f"samples must be (height, width, 1|3), got {self.samples.shape}"
            )

    @property
    def height(self) -> int:
        return self.samples.shape[0]

    @property
    def width(self) -> int:
        return self.samples.shape[1]

    @property
    def channels(self) -> int:
        return self.samples.shape[2]


def _next_token(data: bytes, pos: int) -> tuple[bytes, int]:
    n = len(data)
    while pos < n:
        c = data[pos]
        if c in _WHITESPACE:
            pos += 1
        elif c == ord("#"):
            while pos < n and data[pos] not in b"\r\n":
                pos += 1
        else:
            break
    start = pos
    while pos < n and data[pos] not in _WHITESPACE:
        pos += 1
    if start == pos:
        raise FormatError("unexpected end of image header", start)
    return data[start:pos], pos


def load_ppm(data: bytes) -> ImageBuffer:
    """Parse a binary PPM (P6) or PGM (P5) with maxval 255."""
    data = bytes(data)
    magic, pos = _next_token(data, 0)
    if magic == b"P6":
        channels = 3
    elif magic == b"P5":
        channels = 1
    else:
        raise FormatError(f"bad magic {magic!r}, expected P5 or P6", 0)
    fields = []
    for name in ("width", "height", "maxval"):
        at = pos
        tok, pos = _next_token(data, pos)
        try:
            fields.append(int(tok))
        except ValueError:
            raise FormatError(f"non-numeric {name} field {tok!r}", at) from None
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise FormatError(f"non-positive image size {width}x{height}", 0)
    if maxval != 255:
        raise FormatError(f"unsupported maxval {maxval}, only 255", 0)
    if pos >= len(data) or data[pos] not in _WHITESPACE:
        raise FormatError("missing whitespace after maxval", pos)
    pos += 1
    need = width * height * channels
    if len(data) - pos < need:
        raise FormatError(
            f"short payload: need {need} sample bytes, have {len(data) - pos}", pos
        )
    samples = np.frombuffer(data, dtype=np.uint8, count=need, offset=pos)
    return ImageBuffer(samples.reshape(height, width, channels).copy())


def save_ppm(img: ImageBuffer) -> bytes:
    """Encode with the canonical header 'P6\\n<w> <h>\\n255\\n' (P5 for gray)."""
    magic = "P6" if img.channels == 3 else "P5"
    header = f"{magic}\n{img.width} {img.height}\n255\n".encode("ascii")
    return header + np.ascontiguousarray(img.samples).tobytes()


def image_to_tensor(img: ImageBuffer) -> np.ndarray:
    """Image as a height x width x channels complex tensor of values 0..255."""
    return img.samples.astype(np.complex128)


def tensor_to_image(A) -> ImageBuffer:
    """Inverse of :func:`image_to_tensor` for tensors with 1 or 3 slices.

    The real part is clamped to [0, 255] and rounded half away from zero;
    imaginary parts above 1e-6 in modulus set ``imag_warning``.
    """
    A = as_tensor3(A)
    if A.shape[2] not in (1, 3):
        raise DimensionError(f"expected 1 or 3 slices, got {A.shape[2]}")
    warn = bool(np.max(np.abs(A.imag)) > _IMAG_TOL) if A.size else False
    x = np.clip(A.real, 0.0, 255.0)
    samples = np.floor(x + 0.5).astype(np.uint8)
    return ImageBuffer(samples, imag_warning=warn)


def _check_same_shape(ref: ImageBuffer, test: ImageBuffer) -> None:
    if ref.samples.shape != test.samples.shape:
        raise DimensionError(
            f"image shapes differ: {ref.samples.shape} vs {test.samples.shape}"
        )


def psnr(ref: ImageBuffer, test: ImageBuffer) -> float:
    """10*log10(255^2 / MSE) over all samples; +inf for identical images."""
    _check_same_shape(ref, test)
    diff = ref.samples.astype(np.float64) - test.samples.astype(np.float64)
    mse = float(np.mean(diff * diff))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(255.0**2 / mse)


def _gaussian_window() -> np.ndarray:
    x = np.arange(_WINDOW) - (_WINDOW - 1) / 2.0
    g = np.exp(-(x * x) / (2.0 * _SIGMA * _SIGMA))
    return g / g.sum()


def _window_mean(img: np.ndarray, g: np.ndarray) -> np.ndarray:
    # Separable valid-mode correlation with the unit-sum Gaussian window.
    t = sliding_window_view(img, _WINDOW, axis=0) @ g
    return sliding_window_view(t, _WINDOW, axis=1) @ g


def ssim(ref: ImageBuffer, test: ImageBuffer) -> float:
    """Mean local structural similarity, averaged over channels."""
    _check_same_shape(ref, test)
    if ref.height < _WINDOW or ref.width < _WINDOW:
        raise DimensionError(
            f"image {ref.width}x{ref.height} smaller than the {_WINDOW}x{_WINDOW} window"
        )
    g = _gaussian_window()
    vals = []
    for c in range(ref.channels):
        x = ref.samples[:, :, c].astype(np.float64)
        y = test.samples[:, :, c].astype(np.float64)
        mu_x = _window_mean(x, g)
        mu_y = _window_mean(y, g)
        var_x = _window_mean(x * x, g) - mu_x * mu_x
        var_y = _window_mean(y * y, g) - mu_y * mu_y
        cov = _window_mean(x * y, g) - mu_x * mu_y
        num = (2.0 * mu_x * mu_y + _C1) * (2.0 * cov + _C2)
        den = (mu_x * mu_x + mu_y * mu_y + _C1) * (var_x + var_y + _C2)
        vals.append(float(np.mean(num / den)))
    return float(np.mean(vals))


def relative_error(ref: ImageBuffer, test: ImageBuffer) -> float:
    """||ref - test||_F / ||ref||_F over the raw samples."""
    _check_same_shape(ref, test)
    r = ref.samples.astype(np.float64)
    t = test.samples.astype(np.float64)
    denom = np.linalg.norm(r.ravel())
    if denom == 0.0:
        return 0.0 if np.array_equal(r, t) else math.inf
    return float(np.linalg.norm((r - t).ravel()) / denom)
