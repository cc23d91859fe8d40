"""
Posterization with edge darkening
=================================

Reduce an image to a few tonal levels per channel, then darken the
pixels where the original image had strong luminance edges. The result
is a flat, poster-like rendition with inked outlines.
"""

from pathlib import Path

import numpy as np

from seamcut import RgbImage, StylizeParams, edge_magnitude, posterize, save_image, stylize

out_dir = Path(__file__).resolve().parent / "out"
out_dir.mkdir(exist_ok=True)

# Build a synthetic photograph: a bright disk on a smooth diagonal ramp.
size = 160
yy, xx = np.mgrid[0:size, 0:size].astype(np.float64)
ramp = (xx + yy) / (2 * (size - 1))
disk = (xx - 60) ** 2 + (yy - 90) ** 2 <= 40 ** 2
data = np.stack([ramp * 0.8 + 0.1, ramp * 0.5 + 0.2, 1.0 - ramp * 0.6], axis=-1)
data[disk] = [0.15, 0.1, 0.3]
image = RgbImage(data)
save_image(image, out_dir / "stylize_input.png")

# Posterization alone: each channel snaps to the nearest of `levels`
# evenly spaced values in [0, 1].
flat = posterize(image, levels=4)
save_image(flat, out_dir / "stylize_posterized.png")

# The luminance gradient magnitude picks out the disk boundary. The
# smooth ramp has a tiny but nonzero slope, so the threshold below
# keeps it untouched.
grad = edge_magnitude(image)
print(f"gradient range: {grad.min():.4f} .. {grad.max():.4f}")

# The full stylizer: posterize, then scale edge pixels toward black.
params = StylizeParams(levels=4, edge_strength=0.6, edge_threshold=0.05)
styled = stylize(image, params)
save_image(styled, out_dir / "stylize_full.png")

darkened = (styled.data != flat.data).any(axis=-1)
print(f"pixels darkened by edges: {int(darkened.sum())} of {size * size}")
print(f"wrote 3 images to {out_dir}")
