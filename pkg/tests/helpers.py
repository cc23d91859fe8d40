"""Shared test utilities: slow independent oracles and instance generators.

The oracles here deliberately avoid the library's own algorithms: distances
by exhaustive nearest-seed search, band membership by brute-force disk
morphology, energies by a plain Python re-summation. Agreement between the
fast implementations and these unsophisticated references is the backbone
of the suite.
"""
from __future__ import annotations

import numpy as np

import seamcut as sc


def brute_force_distance(bits: np.ndarray) -> np.ndarray:
    """Exhaustive nearest-seed Euclidean distance, O(pixels * seeds)."""
    h, w = bits.shape
    sy, sx = np.nonzero(bits)
    assert sy.size, "oracle needs at least one seed"
    yy, xx = np.mgrid[0:h, 0:w]
    d2 = (yy[:, :, None] - sy[None, None, :]) ** 2 + (
        xx[:, :, None] - sx[None, None, :]
    ) ** 2
    return np.sqrt(d2.min(axis=2).astype(np.float64))


def brute_force_band(bits: np.ndarray, radius: float) -> np.ndarray:
    """Ambiguous set as disk dilation minus disk erosion of the object.

    Literal Minkowski definition, one shifted copy per disk offset.
    Off-grid neighbors affect neither operation (the distance transforms
    only see in-grid pixels), so dilation pads with False and erosion
    pads with True.
    """
    r = int(np.floor(radius))
    h, w = bits.shape
    dilated = np.zeros((h, w), dtype=bool)
    eroded = np.ones((h, w), dtype=bool)
    for dy in range(-r, r + 1):
        for dx in range(-r, r + 1):
            if dy * dy + dx * dx > radius * radius:
                continue
            ys = slice(max(0, -dy), min(h, h - dy))
            xs = slice(max(0, -dx), min(w, w - dx))
            src_ys = slice(max(0, dy), min(h, h + dy))
            src_xs = slice(max(0, dx), min(w, w + dx))
            shifted_hit = np.zeros((h, w), dtype=bool)
            shifted_hit[ys, xs] = bits[src_ys, src_xs]
            shifted_miss = np.zeros((h, w), dtype=bool)
            shifted_miss[ys, xs] = ~bits[src_ys, src_xs]
            dilated |= shifted_hit
            eroded &= ~shifted_miss
    return dilated & ~eroded


def reference_energy(model: sc.EnergyModel, labeling: np.ndarray) -> float:
    """Plain-Python re-summation of E(l), no shared code with the library."""
    full = list(int(v) for v in labeling) + [int(v) for v in model.pinned_labels]
    total = 0.0
    for idx in range(model.num_ambiguous):
        u_bg, u_fg = model.unary[idx]
        total += u_fg if full[idx] == 1 else u_bg
    for i, j, w in zip(model.edge_i, model.edge_j, model.edge_w):
        if full[int(i)] != full[int(j)]:
            total += model.lam * float(w)
    return total


def random_rgb(rng: np.random.Generator, h: int, w: int) -> sc.RgbImage:
    return sc.RgbImage(rng.random((h, w, 3)))


def random_blob_mask(rng: np.random.Generator, h: int, w: int) -> sc.InstanceMask:
    """One random rectangular-ish instance (id 1) against background."""
    y0 = int(rng.integers(0, h - 2))
    x0 = int(rng.integers(0, w - 2))
    y1 = int(rng.integers(y0 + 1, h))
    x1 = int(rng.integers(x0 + 1, w))
    ids = np.zeros((h, w), dtype=np.int64)
    ids[y0 : y1 + 1, x0 : x1 + 1] = 1
    # poke random holes so boundaries are not axis-aligned rectangles only
    holes = rng.random((h, w)) < 0.15
    ids[holes] = 0
    if not (ids == 1).any():
        ids[y0, x0] = 1
    if (ids == 1).all():
        ids[0, 0] = 0
    return sc.InstanceMask(ids)


def random_model(
    rng: np.random.Generator,
    max_side: int = 10,
    radius: float = 1.0,
    max_ambiguous: int = 20,
    levels: int = 4,
):
    """A random small energy model plus the pieces that built it.

    Returns (original, stylized, mask, object_mask, trimap, model) or None
    when the drawn instance has no usable band.
    """
    h = int(rng.integers(6, max_side + 1))
    w = int(rng.integers(6, max_side + 1))
    original = random_rgb(rng, h, w)
    stylized = sc.stylize(
        original,
        sc.StylizeParams(levels=levels, edge_strength=0.5, edge_threshold=0.05),
    )
    mask = random_blob_mask(rng, h, w)
    object_mask = sc.select_instance_by_id(mask, 1)
    trimap = sc.compute_band(object_mask, radius)
    if not 1 <= trimap.num_ambiguous <= max_ambiguous:
        return None
    lam = float(rng.uniform(0.1, 2.0))
    connectivity = int(rng.choice([4, 8]))
    model = sc.build_energy(original, stylized, trimap, lam=lam, connectivity=connectivity)
    return original, stylized, mask, object_mask, trimap, model


def ring_instance():
    """The 32x32 annulus construction for the zero-weight-seam property.

    A radius-8 disk instance sits at the center; the stylized image equals
    the original exactly on the annulus 7 <= r < 10 (two-plus pixels thick,
    so a cut can keep both endpoints inside it) and differs at every pixel
    elsewhere. With band radius 3 the unary tie locus falls inside the
    annulus, so the global optimum cuts only zero-difference edges.

    Returns (original, stylized, mask, ring) with ring the boolean annulus.
    """
    size = 32
    yy, xx = np.mgrid[0:size, 0:size]
    r2 = (xx - 16) ** 2 + (yy - 16) ** 2
    data = np.empty((size, size, 3))
    data[:, :, 0] = (xx + 1) / 34.0
    data[:, :, 1] = (yy + 1) / 34.0
    data[:, :, 2] = 0.25  # 1 - v differs by 0.5 at every pixel off the ring
    original = sc.RgbImage(data)
    ring = (r2 >= 49) & (r2 < 100)
    styl = 1.0 - data
    styl[ring] = data[ring]
    stylized = sc.RgbImage(styl)
    mask = sc.InstanceMask((r2 <= 64).astype(np.int64))
    return original, stylized, mask, ring


def cut_edges(model: sc.EnergyModel, labeling: np.ndarray) -> np.ndarray:
    """Indices of edges whose endpoint labels differ under `labeling`."""
    full = sc.node_labels(model, labeling)
    return np.nonzero(full[model.edge_i] != full[model.edge_j])[0]
