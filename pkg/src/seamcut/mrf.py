"""The binary blending energy over the ambiguous band.

For ambiguous pixels p with labels l_p in {foreground, background} the
energy is

    E(l) = sum_p U(p, l_p)  +  lambda * sum_{(p,q) in N} w(p, q) * [l_p != l_q]

where U(p, fg) and U(p, bg) are the exact Euclidean distances from p to
the fixed foreground and fixed background regions, and the discontinuity
weight is w(p, q) = d(p) + d(q) with d(x) the squared RGB difference
between the stylized (foreground) and original (background) renditions at
x, summed over the three channels. Equal labels on a neighbor pair cost
nothing; a label change costs the stylization disagreement at both ends,
so seams are pushed toward pixels the stylization left alone.

N ranges over 4- or 8-neighbor pairs with at least one ambiguous endpoint.
A fixed endpoint is kept as a pinned node carrying its frozen label;
pairs with both endpoints fixed are constants and dropped. When a fixed
region is empty (a band so wide it swallowed the region), the distance to
it is +inf: that label is unattainable.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .errors import DimensionMismatchError, LengthMismatchError
from .imagery import RgbImage
from .masking import BinaryMask, Region, TriMap, distance_transform

# Offsets enumerating each unordered neighbor pair once, scan order.
_OFFSETS_4 = ((1, 0), (0, 1))
_OFFSETS_8 = ((1, 0), (0, 1), (1, 1), (1, -1))


class Label(IntEnum):
    """Binary pixel assignment; Background sorts before Foreground."""

    BACKGROUND = 0
    FOREGROUND = 1


@dataclass(frozen=True)
class EnergyModel:
    """Unary and pairwise terms of the band energy, ready for a solver.

    Node indices 0..n-1 are the ambiguous pixels (same order as
    ``ambiguous_pixels``); indices n..n+k-1 are pinned nodes for fixed
    pixels that touch the band, frozen to ``pinned_labels``. ``unary`` is
    (n, 2) with columns indexed by :class:`Label`. Edge weights carry the
    raw discontinuity w; the pairwise multiplier ``lam`` is applied at
    evaluation time.
    """

    ambiguous_pixels: np.ndarray  # (n, 2) int64 (x, y), row-major scan order
    unary: np.ndarray  # (n, 2) float64, columns Label.BACKGROUND / FOREGROUND
    edge_i: np.ndarray  # (m,) int64
    edge_j: np.ndarray  # (m,) int64
    edge_w: np.ndarray  # (m,) float64, in [0, 6]
    pinned_pixels: np.ndarray  # (k, 2) int64 (x, y)
    pinned_labels: np.ndarray  # (k,) uint8 Label values
    lam: float
    connectivity: int

    @property
    def num_ambiguous(self) -> int:
        return self.ambiguous_pixels.shape[0]

    @property
    def num_pinned(self) -> int:
        return self.pinned_pixels.shape[0]

    @property
    def num_edges(self) -> int:
        return self.edge_i.shape[0]

    @property
    def num_nodes(self) -> int:
        return self.num_ambiguous + self.num_pinned


def build_energy(
    original: RgbImage,
    stylized: RgbImage,
    trimap: TriMap,
    lam: float = 1.0,
    connectivity: int = 4,
) -> EnergyModel:
    """Assemble the band energy from the two renditions and a trimap.

    The foreground rendition of a pixel is read from `stylized`, the
    background rendition from `original`.
    """
    if connectivity not in (4, 8):
        raise ValueError(f"connectivity must be 4 or 8, got {connectivity}")
    if not np.isfinite(lam) or lam < 0:
        raise ValueError(f"lambda must be finite and nonnegative, got {lam}")
    shape = (original.height, original.width)
    if (stylized.height, stylized.width) != shape or (
        trimap.height,
        trimap.width,
    ) != shape:
        raise DimensionMismatchError(
            f"original {shape}, stylized {(stylized.height, stylized.width)} and "
            f"trimap {(trimap.height, trimap.width)} must share dimensions"
        )

    height, width = shape
    diff = stylized.data - original.data
    discontinuity = np.einsum("ijk,ijk->ij", diff, diff)

    ambiguous = trimap.ambiguous_pixels
    n = ambiguous.shape[0]
    xs, ys = ambiguous[:, 0], ambiguous[:, 1]
    unary = np.empty((n, 2), dtype=np.float64)
    if n:
        unary[:, Label.FOREGROUND] = _fixed_distance(trimap, Region.FIXED_FOREGROUND)[
            ys, xs
        ]
        unary[:, Label.BACKGROUND] = _fixed_distance(trimap, Region.FIXED_BACKGROUND)[
            ys, xs
        ]

    node_index = np.full((height, width), -1, dtype=np.int64)
    node_index[ys, xs] = np.arange(n, dtype=np.int64)
    is_ambiguous = trimap.state == Region.AMBIGUOUS

    offsets = _OFFSETS_4 if connectivity == 4 else _OFFSETS_8
    flat_p, flat_q, weights = [], [], []
    for dx, dy in offsets:
        y0, y1 = max(0, -dy), height - max(0, dy)
        x0, x1 = max(0, -dx), width - max(0, dx)
        p_amb = is_ambiguous[y0:y1, x0:x1]
        q_amb = is_ambiguous[y0 + dy : y1 + dy, x0 + dx : x1 + dx]
        keep = p_amb | q_amb
        if not keep.any():
            continue
        py, px = np.nonzero(keep)
        py, px = py + y0, px + x0
        qy, qx = py + dy, px + dx
        flat_p.append(py * width + px)
        flat_q.append(qy * width + qx)
        weights.append(discontinuity[py, px] + discontinuity[qy, qx])

    if flat_p:
        flat_p = np.concatenate(flat_p)
        flat_q = np.concatenate(flat_q)
        edge_w = np.concatenate(weights)
    else:
        flat_p = np.empty(0, dtype=np.int64)
        flat_q = np.empty(0, dtype=np.int64)
        edge_w = np.empty(0, dtype=np.float64)

    # Fixed pixels referenced by any edge become pinned nodes, indexed
    # after the ambiguous ones in row-major order of their coordinates.
    flat_index = node_index.ravel()
    endpoint_flat = np.concatenate([flat_p, flat_q])
    fixed_flat = np.unique(endpoint_flat[flat_index[endpoint_flat] < 0])
    pin_lookup = {int(fp): n + i for i, fp in enumerate(fixed_flat)}
    pinned_pixels = np.column_stack([fixed_flat % width, fixed_flat // width]).astype(
        np.int64
    )
    pinned_labels = np.where(
        trimap.state.ravel()[fixed_flat] == Region.FIXED_FOREGROUND,
        Label.FOREGROUND,
        Label.BACKGROUND,
    ).astype(np.uint8)

    def to_node(flat: np.ndarray) -> np.ndarray:
        idx = flat_index[flat]
        missing = idx < 0
        if missing.any():
            idx = idx.copy()
            idx[missing] = [pin_lookup[int(fp)] for fp in flat[missing]]
        return idx

    return EnergyModel(
        ambiguous_pixels=ambiguous,
        unary=unary,
        edge_i=to_node(flat_p),
        edge_j=to_node(flat_q),
        edge_w=edge_w,
        pinned_pixels=pinned_pixels,
        pinned_labels=pinned_labels,
        lam=float(lam),
        connectivity=connectivity,
    )


def _fixed_distance(trimap: TriMap, region: Region) -> np.ndarray:
    seeds = trimap.state == region
    if not seeds.any():
        return np.full(trimap.state.shape, np.inf)
    return distance_transform(BinaryMask(seeds))


def node_labels(model: EnergyModel, labeling: np.ndarray) -> np.ndarray:
    """Labels over the full node index space: `labeling` then the pins."""
    if labeling.shape[0] != model.num_ambiguous:
        raise LengthMismatchError(
            f"labeling has {labeling.shape[0]} entries for "
            f"{model.num_ambiguous} ambiguous pixels"
        )
    return np.concatenate(
        [np.asarray(labeling, dtype=np.uint8), model.pinned_labels]
    )


def total_energy(model: EnergyModel, labeling: np.ndarray) -> float:
    """Evaluate E(l): selected unaries plus lambda-weighted disagreement
    over every edge whose endpoint labels differ (pins use their frozen
    label)."""
    labels = node_labels(model, labeling)
    n = model.num_ambiguous
    unary_sum = model.unary[np.arange(n), labels[:n]].sum() if n else 0.0
    cut = labels[model.edge_i] != labels[model.edge_j]
    return float(unary_sum + model.lam * model.edge_w[cut].sum())


def pairwise_cost(model: EnergyModel, edge: int, l1: Label, l2: Label) -> float:
    """Cost contributed by one edge under the given endpoint labels."""
    if not 0 <= edge < model.num_edges:
        raise IndexError(f"edge index {edge} out of range [0, {model.num_edges})")
    if l1 == l2:
        return 0.0
    return float(model.lam * model.edge_w[edge])


def dump_energy(model: EnergyModel) -> str:
    """Serialize a model for cross-checking: one line per ambiguous pixel
    ('pixel x y u_fg u_bg'), per pinned node ('pin x y fg|bg', indices
    continuing after the pixels), and per edge ('edge i j w'), 12
    significant digits."""
    lines = []
    for (x, y), u in zip(model.ambiguous_pixels, model.unary):
        lines.append(
            f"pixel {x} {y} {u[Label.FOREGROUND]:.12g} {u[Label.BACKGROUND]:.12g}"
        )
    for (x, y), lab in zip(model.pinned_pixels, model.pinned_labels):
        lines.append(f"pin {x} {y} {'fg' if lab == Label.FOREGROUND else 'bg'}")
    for i, j, w in zip(model.edge_i, model.edge_j, model.edge_w):
        lines.append(f"edge {i} {j} {w:.12g}")
    return "\n".join(lines) + "\n"
