"""Command line interface.

Subcommands: `stylize` (procedural stylization of a whole image), `band`
(trimap debug rendering for a selection), `energy` (text dump of the band
energy for cross-checking), and `blend` (the full pipeline).

Exit codes: 0 success, 2 usage error, 3 input or format error, 4 solver
error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import (
    CorruptDataError,
    DimensionMismatchError,
    EmptyRegionError,
    InvalidParamsError,
    MalformedModelError,
    NoInstanceAtPointError,
    OutOfBoundsError,
    TooManyAmbiguousError,
    UnsupportedFormatError,
)
from .imagery import load_image, load_mask, save_image, save_mask
from .masking import compute_band, select_instance, select_instance_by_id, trimap_debug_image
from .mrf import build_energy, dump_energy
from .pipeline import (
    SOLVER_NAMES,
    BlendConfig,
    blend_with_artifacts,
    render_seam_overlay,
)
from .stylize import StylizeParams, stylize

EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_SOLVER = 4

_INPUT_ERRORS = (
    OSError,  # includes FileNotFoundError
    UnsupportedFormatError,
    CorruptDataError,
    DimensionMismatchError,
    OutOfBoundsError,
    NoInstanceAtPointError,
    EmptyRegionError,
    ValueError,
)
_SOLVER_ERRORS = (MalformedModelError, TooManyAmbiguousError)


def _click(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected X,Y, got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integer X,Y, got {text!r}")


def _nonnegative_float(text: str) -> float:
    value = float(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return value


def _add_stylize_params(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--levels", type=int, default=4, help="posterization levels per channel (>= 2)")
    parser.add_argument("--edge-strength", type=_nonnegative_float, default=0.5, help="edge darkening amount in [0, 1]")
    parser.add_argument("--edge-threshold", type=_nonnegative_float, default=0.05, help="gradient magnitude above which a pixel counts as an edge")


def _add_selection(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--click", type=_click, metavar="X,Y", help="pixel whose instance to select")
    group.add_argument("--instance-id", type=int, metavar="K", help="instance id to select")


def _add_energy_inputs(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--original", required=True, help="original photograph (PNG or PPM)")
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--stylized", help="stylized rendition of the whole image (PNG or PPM)")
    group.add_argument("--auto-stylize", action="store_true", help="produce the stylized rendition procedurally")
    _add_stylize_params(parser)
    parser.add_argument("--mask", required=True, help="instance mask (PNG or PGM)")
    _add_selection(parser)
    parser.add_argument("--radius", type=_nonnegative_float, default=5.0, help="band half-width in pixels")
    parser.add_argument("--lambda", dest="lam", type=_nonnegative_float, default=1.0, help="pairwise term multiplier")
    parser.add_argument("--connectivity", type=int, choices=(4, 8), default=4, help="neighborhood system")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seamcut",
        description="Blend a stylized rendition of a selected object instance "
        "into the original photograph along an optimized seam.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stylize", help="stylize a whole image procedurally")
    p.add_argument("--in", dest="input", required=True, help="input image (PNG or PPM)")
    _add_stylize_params(p)
    p.add_argument("--out", required=True, help="output image path")
    p.set_defaults(func=_cmd_stylize)

    p = sub.add_parser("band", help="render the trimap band for a selection")
    p.add_argument("--mask", required=True, help="instance mask (PNG or PGM)")
    _add_selection(p)
    p.add_argument("--radius", type=_nonnegative_float, default=5.0, help="band half-width in pixels")
    p.add_argument("--out", required=True, help="trimap PNG path (0=background, 128=ambiguous, 255=foreground)")
    p.set_defaults(func=_cmd_band)

    p = sub.add_parser("energy", help="dump the band energy as text")
    _add_energy_inputs(p)
    p.add_argument("--out", required=True, help="energy dump path")
    p.set_defaults(func=_cmd_energy)

    p = sub.add_parser("blend", help="run the full blending pipeline")
    _add_energy_inputs(p)
    p.add_argument("--solver", choices=SOLVER_NAMES, default="mincut", help="band labeling method")
    p.add_argument("--out", required=True, help="composite output path")
    p.add_argument("--seam-overlay", help="also write the original with the final seam painted red")
    p.add_argument("--trimap-out", help="also write the trimap debug PNG")
    p.add_argument("--energy-dump", help="also write the band energy text dump")
    p.add_argument("--verbose", action="store_true", help="print solver stats to stderr")
    p.set_defaults(func=_cmd_blend)

    return parser


def _stylize_params(args: argparse.Namespace) -> StylizeParams:
    return StylizeParams(
        levels=args.levels,
        edge_strength=args.edge_strength,
        edge_threshold=args.edge_threshold,
    )


def _select(args: argparse.Namespace, mask):
    if args.click is not None:
        return select_instance(mask, args.click)
    return select_instance_by_id(mask, args.instance_id)


def _cmd_stylize(args: argparse.Namespace) -> int:
    image = load_image(args.input)
    save_image(stylize(image, _stylize_params(args)), args.out)
    return 0


def _cmd_band(args: argparse.Namespace) -> int:
    mask = load_mask(args.mask)
    trimap = compute_band(_select(args, mask), args.radius)
    save_mask(trimap_debug_image(trimap), args.out)
    return 0


def _load_renditions(args: argparse.Namespace):
    original = load_image(args.original)
    if args.stylized is not None:
        stylized = load_image(args.stylized)
    else:
        stylized = stylize(original, _stylize_params(args))
    return original, stylized


def _cmd_energy(args: argparse.Namespace) -> int:
    original, stylized = _load_renditions(args)
    mask = load_mask(args.mask)
    trimap = compute_band(_select(args, mask), args.radius)
    model = build_energy(
        original, stylized, trimap, lam=args.lam, connectivity=args.connectivity
    )
    Path(args.out).write_text(dump_energy(model))
    return 0


def _cmd_blend(args: argparse.Namespace) -> int:
    original, stylized = _load_renditions(args)
    mask = load_mask(args.mask)
    config = BlendConfig(
        radius=args.radius,
        lam=args.lam,
        connectivity=args.connectivity,
        solver=args.solver,
        click=args.click,
        instance_id=args.instance_id,
    )
    artifacts = blend_with_artifacts(original, stylized, mask, config)
    save_image(artifacts.image, args.out)
    if args.seam_overlay:
        overlay = render_seam_overlay(
            original, artifacts.trimap, artifacts.result.labeling
        )
        save_image(overlay, args.seam_overlay)
    if args.trimap_out:
        save_mask(trimap_debug_image(artifacts.trimap), args.trimap_out)
    if args.energy_dump:
        Path(args.energy_dump).write_text(dump_energy(artifacts.model))
    if args.verbose:
        result = artifacts.result
        print(
            f"energy={result.energy:.12g} method={result.method} "
            f"nodes={result.nodes} edges={result.edges}",
            file=sys.stderr,
        )
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidParamsError as exc:
        print(f"seamcut: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _SOLVER_ERRORS as exc:
        print(f"seamcut: solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except _INPUT_ERRORS as exc:
        print(f"seamcut: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
