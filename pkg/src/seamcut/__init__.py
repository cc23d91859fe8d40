"""Blend a stylized rendition of a selected object instance back into its
photograph along a seam chosen by exact energy minimization.

The pieces: :mod:`imagery` (containers and bit-exact file I/O),
:mod:`masking` (instance selection, distance transforms, the ambiguous
band), :mod:`mrf` (the band energy), :mod:`solver` (min-cut and baseline
minimizers), :mod:`stylize` (the procedural stylizer) and :mod:`pipeline`
(orchestration). The `seamcut` command line fronts the pipeline.
"""
from .errors import (
    CorruptDataError,
    DegenerateMaskWarning,
    DimensionMismatchError,
    EmptyRegionError,
    InvalidParamsError,
    LengthMismatchError,
    MalformedModelError,
    NoInstanceAtPointError,
    OutOfBoundsError,
    SeamcutError,
    TooManyAmbiguousError,
    UnsupportedFormatError,
)
from .imagery import (
    InstanceMask,
    RgbImage,
    load_image,
    load_mask,
    quantize,
    save_image,
    save_mask,
)
from .masking import (
    BinaryMask,
    Region,
    TriMap,
    compute_band,
    distance_transform,
    select_instance,
    select_instance_by_id,
    trimap_debug_image,
)
from .mrf import (
    EnergyModel,
    Label,
    build_energy,
    dump_energy,
    node_labels,
    pairwise_cost,
    total_energy,
)
from .pipeline import (
    BlendArtifacts,
    BlendConfig,
    blend,
    blend_with_artifacts,
    composite,
    foreground_map,
    render_seam_overlay,
)
from .solver import (
    SolveResult,
    solve_icm,
    solve_mincut,
    solve_naive,
    solve_oracle,
)
from .stylize import StylizeParams, edge_magnitude, posterize, stylize

__version__ = "0.1.0"

__all__ = [
    "BinaryMask",
    "BlendArtifacts",
    "BlendConfig",
    "CorruptDataError",
    "DegenerateMaskWarning",
    "DimensionMismatchError",
    "EmptyRegionError",
    "EnergyModel",
    "InstanceMask",
    "InvalidParamsError",
    "Label",
    "LengthMismatchError",
    "MalformedModelError",
    "NoInstanceAtPointError",
    "OutOfBoundsError",
    "Region",
    "RgbImage",
    "SeamcutError",
    "SolveResult",
    "StylizeParams",
    "TooManyAmbiguousError",
    "TriMap",
    "UnsupportedFormatError",
    "blend",
    "blend_with_artifacts",
    "build_energy",
    "composite",
    "compute_band",
    "distance_transform",
    "dump_energy",
    "edge_magnitude",
    "foreground_map",
    "load_image",
    "load_mask",
    "node_labels",
    "pairwise_cost",
    "posterize",
    "quantize",
    "render_seam_overlay",
    "save_image",
    "save_mask",
    "select_instance",
    "select_instance_by_id",
    "solve_icm",
    "solve_mincut",
    "solve_naive",
    "solve_oracle",
    "stylize",
    "total_energy",
    "trimap_debug_image",
]
