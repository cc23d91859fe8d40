"""End-to-end orchestration: select, band, build, solve, composite.

`blend` chains the stages and returns both the composited image and the
solver's certificate (labeling, energy, stats). Compositing is a hard
per-pixel choice between the stylized and original renditions; the band
optimization is the only smoothing mechanism, there is no alpha
feathering.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, InvalidParamsError, LengthMismatchError
from .imagery import InstanceMask, RgbImage
from .masking import BinaryMask, Region, TriMap, compute_band, select_instance, select_instance_by_id
from .mrf import EnergyModel, Label, build_energy
from .solver import (
    METHOD_ICM,
    METHOD_MINCUT,
    METHOD_NAIVE,
    METHOD_ORACLE,
    SolveResult,
    solve_icm,
    solve_mincut,
    solve_naive,
    solve_oracle,
)

SOLVER_NAMES = (METHOD_MINCUT, METHOD_ICM, METHOD_NAIVE, METHOD_ORACLE)


@dataclass(frozen=True)
class BlendConfig:
    """Settings for one blend run.

    Exactly one of `click` (an (x, y) pixel) and `instance_id` selects the
    object. `radius` is the band half-width in pixels, `lam` scales the
    pairwise term, and `solver` picks the minimizer.
    """

    radius: float = 5.0
    lam: float = 1.0
    connectivity: int = 4
    solver: str = METHOD_MINCUT
    click: tuple[int, int] | None = None
    instance_id: int | None = None
    max_sweeps: int = 100

    def __post_init__(self):
        if (self.click is None) == (self.instance_id is None):
            raise InvalidParamsError(
                "exactly one of click and instance_id must be given"
            )
        if self.radius < 0 or not np.isfinite(self.radius):
            raise InvalidParamsError(f"radius must be finite and >= 0, got {self.radius!r}")
        if self.lam < 0 or not np.isfinite(self.lam):
            raise InvalidParamsError(f"lambda must be finite and >= 0, got {self.lam!r}")
        if self.connectivity not in (4, 8):
            raise InvalidParamsError(f"connectivity must be 4 or 8, got {self.connectivity!r}")
        if self.solver not in SOLVER_NAMES:
            raise InvalidParamsError(
                f"solver must be one of {', '.join(SOLVER_NAMES)}, got {self.solver!r}"
            )
        if self.max_sweeps < 1:
            raise InvalidParamsError(f"max_sweeps must be >= 1, got {self.max_sweeps!r}")


def foreground_map(trimap: TriMap, labeling: np.ndarray) -> np.ndarray:
    """Expand a band labeling to a full (H, W) boolean foreground map:
    fixed foreground plus ambiguous pixels labeled foreground."""
    labeling = np.asarray(labeling)
    if labeling.shape[0] != trimap.num_ambiguous:
        raise LengthMismatchError(
            f"labeling has {labeling.shape[0]} entries for "
            f"{trimap.num_ambiguous} ambiguous pixels"
        )
    fg = trimap.state == Region.FIXED_FOREGROUND
    if trimap.num_ambiguous:
        xs, ys = trimap.ambiguous_pixels[:, 0], trimap.ambiguous_pixels[:, 1]
        fg = fg.copy()
        fg[ys, xs] = labeling == Label.FOREGROUND
    return fg


def composite(
    original: RgbImage,
    stylized: RgbImage,
    trimap: TriMap,
    labeling: np.ndarray,
) -> RgbImage:
    """Merge the two renditions under the final labels.

    A pixel takes the stylized value when it is fixed foreground or an
    ambiguous pixel labeled foreground, and the original value otherwise.

    Parameters
    ----------
    original, stylized : RgbImage
        Background and foreground renditions, same dimensions.
    trimap : TriMap
        Band decomposition of the image.
    labeling : ndarray
        One Label per ambiguous pixel, in trimap order.

    Returns
    -------
    RgbImage
        The hard composite.
    """
    _check_dims(original, stylized, trimap)
    fg = foreground_map(trimap, labeling)
    return RgbImage(np.where(fg[:, :, None], stylized.data, original.data))


def render_seam_overlay(
    original: RgbImage, trimap: TriMap, labeling: np.ndarray
) -> RgbImage:
    """Copy the original and paint pure red on every pixel that has a
    4-neighbor with the opposite final label."""
    if (original.height, original.width) != (trimap.height, trimap.width):
        raise DimensionMismatchError(
            f"image {(original.height, original.width)} and trimap "
            f"{(trimap.height, trimap.width)} must share dimensions"
        )
    fg = foreground_map(trimap, labeling)
    seam = np.zeros_like(fg)
    seam[:-1, :] |= fg[:-1, :] != fg[1:, :]
    seam[1:, :] |= fg[1:, :] != fg[:-1, :]
    seam[:, :-1] |= fg[:, :-1] != fg[:, 1:]
    seam[:, 1:] |= fg[:, 1:] != fg[:, :-1]
    data = original.data.copy()
    data[seam] = (1.0, 0.0, 0.0)
    return RgbImage(data)


@dataclass(frozen=True)
class BlendArtifacts:
    """Everything one blend run produced, including the intermediates the
    debug renderings are derived from."""

    image: RgbImage
    result: SolveResult
    object_mask: BinaryMask
    trimap: TriMap
    model: EnergyModel


def blend_with_artifacts(
    original: RgbImage,
    stylized: RgbImage,
    mask: InstanceMask,
    config: BlendConfig,
) -> BlendArtifacts:
    """Run the full blend and keep the intermediate artifacts.

    Stages: resolve the selection to a binary object mask, carve the
    ambiguous band around its boundary, assemble the band energy, minimize
    it with the configured solver, and composite under the resulting
    labels.

    Parameters
    ----------
    original : RgbImage
        The photograph.
    stylized : RgbImage
        Stylized rendition of the whole photograph, same dimensions.
    mask : InstanceMask
        Instance segmentation of the photograph.
    config : BlendConfig
        Selection, band radius, energy and solver settings.

    Returns
    -------
    BlendArtifacts
        The composite, the solver certificate, and the object mask,
        trimap and energy model that led to them.
    """
    _check_dims(original, stylized, None)
    if (mask.height, mask.width) != (original.height, original.width):
        raise DimensionMismatchError(
            f"mask {(mask.height, mask.width)} and image "
            f"{(original.height, original.width)} must share dimensions"
        )
    if config.click is not None:
        object_mask = select_instance(mask, config.click)
    else:
        object_mask = select_instance_by_id(mask, config.instance_id)
    trimap = compute_band(object_mask, config.radius)
    model = build_energy(
        original, stylized, trimap, lam=config.lam, connectivity=config.connectivity
    )
    result = _dispatch(model, trimap, object_mask, config)
    image = composite(original, stylized, trimap, result.labeling)
    return BlendArtifacts(
        image=image,
        result=result,
        object_mask=object_mask,
        trimap=trimap,
        model=model,
    )


def blend(
    original: RgbImage,
    stylized: RgbImage,
    mask: InstanceMask,
    config: BlendConfig,
) -> tuple[RgbImage, SolveResult]:
    """Blend the stylized rendition of one selected instance into the
    original photograph along an optimized seam.

    Convenience wrapper over :func:`blend_with_artifacts` returning just
    the composite and the solver certificate.
    """
    artifacts = blend_with_artifacts(original, stylized, mask, config)
    return artifacts.image, artifacts.result


def _dispatch(model, trimap, object_mask, config: BlendConfig) -> SolveResult:
    if config.solver == METHOD_MINCUT:
        return solve_mincut(model)
    if config.solver == METHOD_ORACLE:
        return solve_oracle(model)
    if config.solver == METHOD_NAIVE:
        return solve_naive(model, trimap, object_mask)
    naive = solve_naive(model, trimap, object_mask)
    return solve_icm(model, naive.labeling, max_sweeps=config.max_sweeps)


def _check_dims(original: RgbImage, stylized: RgbImage, trimap: TriMap | None) -> None:
    shape = (original.height, original.width)
    if (stylized.height, stylized.width) != shape:
        raise DimensionMismatchError(
            f"original {shape} and stylized "
            f"{(stylized.height, stylized.width)} must share dimensions"
        )
    if trimap is not None and (trimap.height, trimap.width) != shape:
        raise DimensionMismatchError(
            f"trimap {(trimap.height, trimap.width)} and images {shape} "
            "must share dimensions"
        )
