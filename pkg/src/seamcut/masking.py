"""Instance selection, exact Euclidean distance transforms, and the
three-way decomposition of an image into fixed foreground, fixed
background, and an ambiguous band around the object boundary.

Pixels are unit squares centered on integer lattice points; all distances
are Euclidean and measured center to center.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from enum import IntEnum

import numpy as np

from .errors import (
    DegenerateMaskWarning,
    EmptyRegionError,
    NoInstanceAtPointError,
    OutOfBoundsError,
)
from .imagery import InstanceMask


class Region(IntEnum):
    """Per-pixel role in the band decomposition."""

    FIXED_BACKGROUND = 0
    AMBIGUOUS = 1
    FIXED_FOREGROUND = 2


@dataclass(frozen=True)
class BinaryMask:
    """An H x W boolean grid; True marks the selected object."""

    bits: np.ndarray

    def __post_init__(self):
        bits = np.array(self.bits, dtype=bool)
        if bits.ndim != 2:
            raise ValueError(f"expected an (H, W) array, got shape {bits.shape}")
        if bits.shape[0] < 1 or bits.shape[1] < 1:
            raise ValueError("mask must be at least 1x1")
        bits.setflags(write=False)
        object.__setattr__(self, "bits", bits)

    @property
    def height(self) -> int:
        return self.bits.shape[0]

    @property
    def width(self) -> int:
        return self.bits.shape[1]


@dataclass(frozen=True)
class TriMap:
    """Fixed-foreground / fixed-background / ambiguous partition of a grid.

    ``ambiguous_pixels`` is derived from ``state`` on construction: the
    (x, y) coordinates of every ambiguous pixel in row-major scan order.
    ``degenerate`` flags maps that had no boundary to band around.
    """

    state: np.ndarray
    degenerate: bool = False
    ambiguous_pixels: np.ndarray = field(init=False)

    def __post_init__(self):
        state = np.array(self.state, dtype=np.uint8)
        if state.ndim != 2:
            raise ValueError(f"expected an (H, W) array, got shape {state.shape}")
        if not np.isin(state, (0, 1, 2)).all():
            raise ValueError("trimap states must be Region values")
        state.setflags(write=False)
        ys, xs = np.nonzero(state == Region.AMBIGUOUS)
        ambiguous = np.column_stack([xs, ys]).astype(np.int64)
        ambiguous.setflags(write=False)
        object.__setattr__(self, "state", state)
        object.__setattr__(self, "ambiguous_pixels", ambiguous)

    @property
    def height(self) -> int:
        return self.state.shape[0]

    @property
    def width(self) -> int:
        return self.state.shape[1]

    @property
    def num_ambiguous(self) -> int:
        return self.ambiguous_pixels.shape[0]


def select_instance(mask: InstanceMask, click: tuple[int, int]) -> BinaryMask:
    """Return the set of pixels sharing the instance id under `click`.

    `click` is an (x, y) pixel coordinate. Clicking background (id 0)
    raises :class:`NoInstanceAtPointError`; clicking outside the mask
    raises :class:`OutOfBoundsError`.
    """
    x, y = click
    if not (0 <= x < mask.width and 0 <= y < mask.height):
        raise OutOfBoundsError(
            f"click ({x}, {y}) outside {mask.width}x{mask.height} mask"
        )
    instance = int(mask.ids[y, x])
    if instance == 0:
        raise NoInstanceAtPointError(f"pixel ({x}, {y}) is background")
    return BinaryMask(mask.ids == instance)


def select_instance_by_id(mask: InstanceMask, instance_id: int) -> BinaryMask:
    """Return the set of pixels carrying `instance_id` (must be nonempty)."""
    if instance_id <= 0:
        raise NoInstanceAtPointError(f"instance id must be positive, got {instance_id}")
    bits = mask.ids == instance_id
    if not bits.any():
        raise NoInstanceAtPointError(f"no pixels carry instance id {instance_id}")
    return BinaryMask(bits)


def distance_transform(seeds: BinaryMask) -> np.ndarray:
    """Exact Euclidean distance from every pixel to the nearest True pixel.

    Computed with the two-pass separable lower-envelope scheme: a linear
    sweep per column yields vertical distances, then a parabola lower
    envelope per row combines them into exact squared distances. Returns
    an (H, W) float64 array; zero exactly on seed pixels.

    Raises :class:`EmptyRegionError` when no pixel is a seed.
    """
    if not seeds.bits.any():
        raise EmptyRegionError("distance transform needs at least one seed pixel")
    return np.sqrt(_squared_edt(seeds.bits))


def _squared_edt(bits: np.ndarray) -> np.ndarray:
    height, width = bits.shape
    vertical = np.where(bits, 0.0, np.inf)
    for i in range(1, height):
        np.minimum(vertical[i], vertical[i - 1] + 1.0, out=vertical[i])
    for i in range(height - 2, -1, -1):
        np.minimum(vertical[i], vertical[i + 1] + 1.0, out=vertical[i])
    f = vertical * vertical
    out = np.empty((height, width), dtype=np.float64)
    for i in range(height):
        out[i] = _lower_envelope_1d(f[i])
    return out


def _lower_envelope_1d(f: np.ndarray) -> np.ndarray:
    """min_q (x - q)^2 + f[q] for every x, skipping infinite entries."""
    n = f.shape[0]
    loci = np.zeros(n, dtype=np.int64)
    bounds = np.empty(n + 1, dtype=np.float64)
    k = -1
    for q in range(n):
        fq = f[q]
        if fq == np.inf:
            continue
        s = -np.inf
        while k >= 0:
            p = loci[k]
            s = ((fq + q * q) - (f[p] + p * p)) / (2.0 * (q - p))
            if s <= bounds[k]:
                k -= 1
            else:
                break
        k += 1
        loci[k] = q
        bounds[k] = -np.inf if k == 0 else s
        bounds[k + 1] = np.inf
    if k < 0:
        return np.full(n, np.inf)
    out = np.empty(n, dtype=np.float64)
    j = 0
    for x in range(n):
        while bounds[j + 1] < x:
            j += 1
        q = loci[j]
        out[x] = (x - q) * (x - q) + f[q]
    return out


def compute_band(object_mask: BinaryMask, radius: float) -> TriMap:
    """Split the grid into fixed regions and an ambiguous boundary band.

    A pixel is ambiguous when it lies within `radius` (Euclidean) of both
    the object and its complement, i.e. the band is the disk dilation of
    the object minus its disk erosion. All other pixels keep their mask
    assignment. Radius 0 leaves nothing ambiguous.

    An all-True or all-False mask has no boundary; the result is then
    all-fixed, flagged degenerate, and a :class:`DegenerateMaskWarning`
    is emitted.
    """
    if not np.isfinite(radius) or radius < 0:
        raise ValueError(f"band radius must be finite and nonnegative, got {radius}")
    bits = object_mask.bits
    if bits.all() or not bits.any():
        warnings.warn(
            "object mask covers the whole grid or nothing; no band to build",
            DegenerateMaskWarning,
            stacklevel=2,
        )
        state = np.where(bits, Region.FIXED_FOREGROUND, Region.FIXED_BACKGROUND)
        return TriMap(state=state.astype(np.uint8), degenerate=True)
    dist_fg = distance_transform(object_mask)
    dist_bg = distance_transform(BinaryMask(~bits))
    ambiguous = (dist_fg <= radius) & (dist_bg <= radius)
    state = np.where(
        ambiguous,
        Region.AMBIGUOUS,
        np.where(bits, Region.FIXED_FOREGROUND, Region.FIXED_BACKGROUND),
    )
    return TriMap(state=state.astype(np.uint8))


def trimap_debug_image(trimap: TriMap) -> InstanceMask:
    """Render a trimap as 8-bit gray values: background 0, ambiguous 128,
    foreground 255 (written as a grayscale PNG by the `band` subcommand)."""
    lut = np.array([0, 128, 255], dtype=np.int64)
    return InstanceMask(lut[trimap.state])
