"""Minimizers for the band energy.

The energy is binary with nonnegative disagreement weights, so it is
submodular and a single s-t min-cut finds the exact global optimum:
source = foreground, sink = background, terminal capacities carry the
unaries, each neighbor edge becomes a pair of opposing arcs with capacity
lambda * w, and pinned nodes hang off their terminal with effectively
infinite capacity. The max-flow routine is a Dinic-style augmenting-path
algorithm on floating-point capacities; exactness of the cut, not the
particular algorithm, is the contract.

Also provided: iterated conditional modes (greedy single-flip descent),
exhaustive enumeration for small bands (the ground truth the min-cut is
tested against), and the no-optimization baseline that keeps the original
segmentation labels.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    LengthMismatchError,
    MalformedModelError,
    TooManyAmbiguousError,
)
from .masking import BinaryMask, TriMap
from .mrf import EnergyModel, Label, total_energy

# Capacity standing in for +inf on pinned terminal arcs; dwarfs any
# achievable finite cut (unaries <= image diagonal, weights <= 6*lambda).
PIN_CAPACITY = 1e30

# Residual capacities at or below this are treated as saturated.
FLOW_EPSILON = 1e-12

METHOD_MINCUT = "mincut"
METHOD_ICM = "icm"
METHOD_ORACLE = "oracle"
METHOD_NAIVE = "naive"

_ORACLE_LIMIT = 25
_ORACLE_CHUNK_BITS = 16


@dataclass(frozen=True)
class SolveResult:
    """A labeling, its energy as the energy module evaluates it, and
    bookkeeping about how it was obtained."""

    labeling: np.ndarray  # (n,) uint8 Label values over ambiguous pixels
    energy: float
    method: str
    nodes: int  # ambiguous + pinned
    edges: int
    iterations: int  # augmentations / sweeps / labelings evaluated
    flow: float | None = None  # max-flow value, min-cut only


class _FlowGraph:
    """Residual network with arcs stored in reverse-paired slots."""

    def __init__(self, num_nodes: int):
        self.num_nodes = num_nodes
        self.adj: list[list[int]] = [[] for _ in range(num_nodes)]
        self.to: list[int] = []
        self.cap: list[float] = []

    def add_arc(self, u: int, v: int, cap_uv: float, cap_vu: float) -> None:
        self.adj[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(cap_uv)
        self.adj[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(cap_vu)

    def _bfs_levels(self, source: int, sink: int) -> bool:
        self.level = [-1] * self.num_nodes
        self.level[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for a in self.adj[u]:
                v = self.to[a]
                if self.level[v] < 0 and self.cap[a] > FLOW_EPSILON:
                    self.level[v] = self.level[u] + 1
                    queue.append(v)
        return self.level[sink] >= 0

    def _augment(self, source: int, sink: int, arc_iter: list[int]) -> float:
        """Advance/retreat one augmenting path in the level graph."""
        path: list[int] = []
        u = source
        while True:
            if u == sink:
                pushed = min(self.cap[a] for a in path)
                for a in path:
                    self.cap[a] -= pushed
                    self.cap[a ^ 1] += pushed
                return pushed
            advanced = False
            arcs = self.adj[u]
            while arc_iter[u] < len(arcs):
                a = arcs[arc_iter[u]]
                v = self.to[a]
                if self.cap[a] > FLOW_EPSILON and self.level[v] == self.level[u] + 1:
                    path.append(a)
                    u = v
                    advanced = True
                    break
                arc_iter[u] += 1
            if not advanced:
                if u == source:
                    return 0.0
                self.level[u] = -1
                a = path.pop()
                u = self.to[a ^ 1]
                arc_iter[u] += 1

    def max_flow(self, source: int, sink: int) -> tuple[float, int]:
        total = 0.0
        augmentations = 0
        while self._bfs_levels(source, sink):
            arc_iter = [0] * self.num_nodes
            while True:
                pushed = self._augment(source, sink, arc_iter)
                if pushed <= 0.0:
                    break
                total += pushed
                augmentations += 1
        return total, augmentations

    def source_side(self, source: int) -> np.ndarray:
        """Nodes reachable from the source in the final residual graph."""
        seen = np.zeros(self.num_nodes, dtype=bool)
        seen[source] = True
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for a in self.adj[u]:
                v = self.to[a]
                if not seen[v] and self.cap[a] > FLOW_EPSILON:
                    seen[v] = True
                    queue.append(v)
        return seen


def _validate(model: EnergyModel) -> None:
    if model.num_edges and (
        model.edge_i.min() < 0 or model.edge_j.min() < 0
        or max(model.edge_i.max(), model.edge_j.max()) >= model.num_nodes
    ):
        raise MalformedModelError("edge endpoint outside the node index space")
    if np.any(model.edge_w < 0) or not np.all(np.isfinite(model.edge_w)):
        raise MalformedModelError("edge weights must be finite and nonnegative")
    if model.num_edges:
        lo = np.minimum(model.edge_i, model.edge_j)
        hi = np.maximum(model.edge_i, model.edge_j)
        if np.any(lo == hi):
            raise MalformedModelError("self-loop edge")
        pairs = np.unique(np.column_stack([lo, hi]), axis=0)
        if pairs.shape[0] != model.num_edges:
            raise MalformedModelError("duplicate unordered edge")


def solve_mincut(model: EnergyModel) -> SolveResult:
    """Globally minimize the energy with one exact s-t min-cut.

    A node ends foreground when it stays on the source side of the cut;
    the cut then pays u_fg for foreground nodes (sink-side terminal arc),
    u_bg for background nodes, and lambda * w for every severed neighbor
    pair, i.e. exactly E(l).
    """
    _validate(model)
    n = model.num_ambiguous
    k = model.num_pinned
    source = n + k
    sink = n + k + 1
    graph = _FlowGraph(n + k + 2)
    for i in range(n):
        u_bg = min(float(model.unary[i, Label.BACKGROUND]), PIN_CAPACITY)
        u_fg = min(float(model.unary[i, Label.FOREGROUND]), PIN_CAPACITY)
        if u_bg > 0.0:
            graph.add_arc(source, i, u_bg, 0.0)
        if u_fg > 0.0:
            graph.add_arc(i, sink, u_fg, 0.0)
    for j in range(k):
        if model.pinned_labels[j] == Label.FOREGROUND:
            graph.add_arc(source, n + j, PIN_CAPACITY, 0.0)
        else:
            graph.add_arc(n + j, sink, PIN_CAPACITY, 0.0)
    lam = model.lam
    for i, j, w in zip(model.edge_i, model.edge_j, model.edge_w):
        c = lam * float(w)
        if c > 0.0:
            graph.add_arc(int(i), int(j), c, c)

    flow, augmentations = graph.max_flow(source, sink)
    with_source = graph.source_side(source)
    labeling = np.where(with_source[:n], Label.FOREGROUND, Label.BACKGROUND).astype(
        np.uint8
    )
    return SolveResult(
        labeling=labeling,
        energy=total_energy(model, labeling),
        method=METHOD_MINCUT,
        nodes=n + k,
        edges=model.num_edges,
        iterations=augmentations,
        flow=flow,
    )


def solve_icm(model: EnergyModel, init: np.ndarray, max_sweeps: int = 100) -> SolveResult:
    """Iterated conditional modes: row-major sweeps of single-pixel flips,
    keeping any flip that strictly lowers the energy, until a sweep changes
    nothing or `max_sweeps` is hit. A local minimum, not the global one."""
    n = model.num_ambiguous
    init = np.asarray(init, dtype=np.uint8)
    if init.shape[0] != n:
        raise LengthMismatchError(f"init has {init.shape[0]} labels for {n} pixels")
    labels = np.concatenate([init.copy(), model.pinned_labels])

    incident: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    for i, j, w in zip(model.edge_i, model.edge_j, model.edge_w):
        lw = model.lam * float(w)
        if i < n:
            incident[i].append((int(j), lw))
        if j < n:
            incident[int(j)].append((int(i), lw))

    unary = model.unary
    sweeps = 0
    while sweeps < max_sweeps:
        sweeps += 1
        changed = False
        for i in range(n):
            cur = labels[i]
            flip = 1 - cur
            delta = unary[i, flip] - unary[i, cur]
            for other, lw in incident[i]:
                if labels[other] == cur:
                    delta += lw
                else:
                    delta -= lw
            if delta < 0.0:
                labels[i] = flip
                changed = True
        if not changed:
            break
    labeling = labels[:n].copy()
    return SolveResult(
        labeling=labeling,
        energy=total_energy(model, labeling),
        method=METHOD_ICM,
        nodes=model.num_nodes,
        edges=model.num_edges,
        iterations=sweeps,
    )


def solve_oracle(model: EnergyModel) -> SolveResult:
    """Exhaustively enumerate all 2^n labelings and return a minimizer.

    Ties break toward the lexicographically smallest assignment with
    Background < Foreground. Refuses more than 25 ambiguous pixels.
    """
    n = model.num_ambiguous
    if n > _ORACLE_LIMIT:
        raise TooManyAmbiguousError(
            f"{n} ambiguous pixels exceed the enumeration limit of {_ORACLE_LIMIT}"
        )
    # Evaluate energies by an independent vectorized summation (clamping
    # infinite unaries, which cannot flip the argmin at this scale).
    u_bg = np.minimum(model.unary[:, Label.BACKGROUND], PIN_CAPACITY)
    u_fg = np.minimum(model.unary[:, Label.FOREGROUND], PIN_CAPACITY)
    total = 1 << n
    shifts = (n - 1) - np.arange(n, dtype=np.int64)  # first pixel most significant
    chunk = 1 << _ORACLE_CHUNK_BITS
    best_energy = np.inf
    best_code = 0
    base = float(u_bg.sum())
    gain = u_fg - u_bg
    for start in range(0, total, chunk):
        codes = np.arange(start, min(start + chunk, total), dtype=np.int64)
        bits = ((codes[:, None] >> shifts[None, :]) & 1).astype(np.float64)
        energies = base + bits @ gain
        for i, j, w in zip(model.edge_i, model.edge_j, model.edge_w):
            li = bits[:, i] if i < n else float(model.pinned_labels[i - n])
            lj = bits[:, j] if j < n else float(model.pinned_labels[j - n])
            energies += (model.lam * float(w)) * (li != lj)
        pick = int(np.argmin(energies))
        if energies[pick] < best_energy:
            best_energy = float(energies[pick])
            best_code = int(codes[pick])
    labeling = ((best_code >> shifts) & 1).astype(np.uint8)
    return SolveResult(
        labeling=labeling,
        energy=total_energy(model, labeling),
        method=METHOD_ORACLE,
        nodes=model.num_nodes,
        edges=model.num_edges,
        iterations=total,
    )


def solve_naive(model: EnergyModel, trimap: TriMap, object_mask: BinaryMask) -> SolveResult:
    """Keep the original segmentation: every ambiguous pixel takes the label
    the object mask gave it. No optimization; the reported energy is what
    that labeling costs."""
    if (trimap.height, trimap.width) != (object_mask.height, object_mask.width):
        raise DimensionMismatchError(
            f"trimap {(trimap.height, trimap.width)} and object mask "
            f"{(object_mask.height, object_mask.width)} must share dimensions"
        )
    if trimap.num_ambiguous != model.num_ambiguous:
        raise DimensionMismatchError(
            "model was built from a different trimap (ambiguous counts differ)"
        )
    xs, ys = trimap.ambiguous_pixels[:, 0], trimap.ambiguous_pixels[:, 1]
    labeling = np.where(
        object_mask.bits[ys, xs], Label.FOREGROUND, Label.BACKGROUND
    ).astype(np.uint8)
    return SolveResult(
        labeling=labeling,
        energy=total_energy(model, labeling),
        method=METHOD_NAIVE,
        nodes=model.num_nodes,
        edges=model.num_edges,
        iterations=0,
    )
