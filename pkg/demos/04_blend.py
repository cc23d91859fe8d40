"""
End-to-end blend with a seam overlay
====================================

Stylize one object out of a photograph and splice it back in along the
least visible seam. The comparison at the end shows why the optimized
seam beats pasting along the raw mask boundary.
"""

from pathlib import Path

import numpy as np

from seamcut import (
    BlendConfig,
    InstanceMask,
    RgbImage,
    blend_with_artifacts,
    render_seam_overlay,
    save_image,
    stylize,
)

out_dir = Path(__file__).resolve().parent / "out"
out_dir.mkdir(exist_ok=True)

# A synthetic photo: smooth shaded background, one textured disk.
size = 128
yy, xx = np.mgrid[0:size, 0:size].astype(np.float64)
r = np.sqrt((xx - 64) ** 2 + (yy - 64) ** 2)
data = np.stack(
    [
        ((xx * 3 + yy * 5) % 251) / 250 * 0.25 + 0.3,
        np.clip(r / size, 0.0, 1.0) * 0.5 + 0.25,
        ((xx + yy) % 97) / 96 * 0.3 + 0.35,
    ],
    axis=-1,
)
original = RgbImage(data)
ids = ((xx - 64) ** 2 + (yy - 64) ** 2 <= 30 ** 2).astype(np.int64)
mask = InstanceMask(ids)
stylized = stylize(original)
save_image(original, out_dir / "blend_original.png")
save_image(stylized, out_dir / "blend_stylized_full.png")

# Blend the disk instance. The solver places the seam inside a 5 px
# band around the mask boundary, wherever the two renditions differ
# least.
config = BlendConfig(radius=5.0, lam=1.0, solver="mincut", click=(64, 64))
artifacts = blend_with_artifacts(original, stylized, mask, config)
result = artifacts.result
print(
    f"solved {result.nodes} nodes / {result.edges} edges, "
    f"energy {result.energy:.3f}, flow matches: {abs(result.flow - result.energy) < 1e-9}"
)
save_image(artifacts.image, out_dir / "blend_mincut.png")

# Paint the seam in red for inspection.
overlay = render_seam_overlay(artifacts.image, artifacts.trimap, result.labeling)
save_image(overlay, out_dir / "blend_seam.png")

# The naive alternative pastes along the mask boundary and pays for it.
naive = blend_with_artifacts(
    original, stylized, mask,
    BlendConfig(radius=5.0, lam=1.0, solver="naive", click=(64, 64)),
)
save_image(naive.image, out_dir / "blend_naive.png")
print(
    f"seam energy: optimized {result.energy:.3f} "
    f"vs mask boundary {naive.result.energy:.3f}"
)
print(f"wrote 5 images to {out_dir}")
