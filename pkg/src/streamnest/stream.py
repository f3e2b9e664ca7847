"""Stream assembly: connect per-timestep bands into drawable stream paths.

Horizontal anatomy around a timestep at pixel x with neighbor gap g:

    flat        [x - w, x + w] with w = 0.5 * HCR * gap  (the treemap block)
    transition  [x_i + w, x_{i+1} - w]                   (the curved part)

HCR 1 makes transitions zero-width (juxtaposed treemaps), HCR 0 makes flats
zero-width (a nested streamgraph).  A chain's first and last nodes carry
elliptical caps of the same extent w instead of the missing flat half.

Traversal starts one StreamPath per predecessor-free node, walking next links
depth-first with visited marking; a merge node is emitted by whichever path
delivers its last predecessor.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .layout import LayoutFrame, MarginSpec, RenderConfig, margin_for_depth
from .model import ChangeSet, AncestorInversion, TemporalForest, TemporalNode

log = logging.getLogger("streamnest")

CAP_START = "start"
CAP_END = "end"


def axis_x(t: int, cfg: RenderConfig) -> float:
    """Pixel x of timestep t; timesteps sit mid-gap."""
    return (t + 0.5) * cfg.gap


def half_width(cfg: RenderConfig) -> float:
    return 0.5 * cfg.hcr * cfg.gap


@dataclass(frozen=True, slots=True)
class TimeAnchor:
    """Transition interval between two timesteps.

    The curve occupies [t1, t2]; both shrink toward the midpoint as HCR
    grows: t1 = x_i + 0.5*HCR*(x_j - x_i), t2 = x_j - 0.5*HCR*(x_j - x_i).
    """

    from_t: int
    to_t: int
    x_from: float
    x_to: float
    t1: float
    t2: float


def time_anchors(n_timesteps: int, cfg: RenderConfig) -> list[TimeAnchor]:
    out = []
    for i in range(n_timesteps - 1):
        xi, xj = axis_x(i, cfg), axis_x(i + 1, cfg)
        shift = 0.5 * cfg.hcr * (xj - xi)
        out.append(TimeAnchor(i, i + 1, xi, xj, xi + shift, xj - shift))
    return out


@dataclass(slots=True)
class FlatSeg:
    node: TemporalNode
    x0: float
    x1: float
    y0: float
    y1: float
    has_left: bool              # half toward the previous timestep exists
    has_right: bool


@dataclass(slots=True)
class TransitionSeg:
    src: TemporalNode | None    # None for synthetic cut/hole pieces
    dst: TemporalNode | None
    x0: float
    x1: float
    top0: float
    bot0: float
    top1: float
    bot1: float
    depth: int
    bias: int = 0               # paint bias: -1 under, +1 over (inversions)
    depth_override: int | None = None


@dataclass(slots=True)
class CapSeg:
    node: TemporalNode
    side: str                   # "start" | "end"
    x0: float
    x1: float
    y0: float
    y1: float


@dataclass(slots=True)
class HolePassSeg:
    """Annotation only: an inversion thread passing through a hole."""

    over: TransitionSeg
    under: TransitionSeg
    pierced: TransitionSeg
    x: float


Segment = FlatSeg | TransitionSeg | CapSeg | HolePassSeg


@dataclass(slots=True)
class StreamPath:
    chain_id: int
    segments: list[Segment] = field(default_factory=list)
    nodes: list[TemporalNode] = field(default_factory=list)

    def depth_at(self) -> dict[int, int]:
        return {n.t: n.depth for n in self.nodes}


def _band(frames: list[LayoutFrame], node: TemporalNode):
    return frames[node.t].bands[node.id]


def assemble_streams(forest: TemporalForest, frames: list[LayoutFrame],
                     cfg: RenderConfig) -> list[StreamPath]:
    """Build one StreamPath per predecessor-free node.

    Every node lands in exactly one Flat segment; transitions are emitted on
    the path that walks the link; merge nodes wait for their last
    predecessor.  Flats cover only the halves that connect onward; missing
    halves become caps.
    """
    w = half_width(cfg)
    paths: list[StreamPath] = []
    arrivals: dict[int, int] = {}

    starts = [n for snap in forest.snapshots for n in snap.nodes if not n.prev]

    for start in starts:
        path = StreamPath(chain_id=len(paths))
        # ("emit", node) places the node's flat; ("link", (m, n)) places the
        # transition m->n and emits n once all its predecessors arrived.
        stack: list[tuple[str, object]] = [("emit", start)]
        while stack:
            op, payload = stack.pop()
            if op == "emit":
                node = payload
                _emit_node(node, path, frames, cfg, w)
                for s in reversed(node.next):
                    stack.append(("link", (node, s)))
            else:
                m, n = payload
                path.segments.append(_transition(m, n, frames, cfg, w))
                arrivals[id(n)] = arrivals.get(id(n), 0) + 1
                if arrivals[id(n)] == len(n.prev):
                    stack.append(("emit", n))
        paths.append(path)
    return paths


def _emit_node(node: TemporalNode, path: StreamPath, frames: list[LayoutFrame],
               cfg: RenderConfig, w: float) -> None:
    band = _band(frames, node)
    x = axis_x(node.t, cfg)
    has_left = bool(node.prev)
    has_right = bool(node.next)
    if not has_left:
        path.segments.append(CapSeg(node, CAP_START, x - w, x, band.y0, band.y1))
    path.segments.append(FlatSeg(
        node,
        x - w if has_left else x,
        x + w if has_right else x,
        band.y0, band.y1, has_left, has_right))
    path.nodes.append(node)
    if not has_right:
        path.segments.append(CapSeg(node, CAP_END, x, x + w, band.y0, band.y1))


def _transition(m: TemporalNode, n: TemporalNode, frames: list[LayoutFrame],
                cfg: RenderConfig, w: float) -> TransitionSeg:
    mb = _band(frames, m)
    nb = _band(frames, n)
    return TransitionSeg(
        src=m, dst=n,
        x0=axis_x(m.t, cfg) + w, x1=axis_x(n.t, cfg) - w,
        top0=mb.y0, bot0=mb.y1, top1=nb.y0, bot1=nb.y1,
        depth=max(m.depth, n.depth))


def apply_splits(paths: list[StreamPath], frames: list[LayoutFrame],
                 spec: MarginSpec, cfg: RenderConfig) -> list[StreamPath]:
    """Clip every flat block by its node's accumulated x-margin.

    Each present half loses margin_x(node) at its outer end, so the block
    stays centered on its timestep and nested blocks stay inside their
    parents.  A block whose width would drop to zero or below collapses and
    the node is flagged hidden at that timestep.
    """
    w = half_width(cfg)
    hidden: list[TemporalNode] = []
    for path in paths:
        for seg in path.segments:
            if not isinstance(seg, FlatSeg):
                continue
            node = seg.node
            m = margin_for_depth(node.depth, spec)
            band = frames[node.t].bands[node.id]
            x = axis_x(node.t, cfg)
            nominal = w - m
            if nominal > 0:
                band.x0, band.x1 = x - nominal, x + nominal
            else:
                band.x0 = band.x1 = x
                if m > 0:
                    band.hidden = True
            if not (seg.has_left or seg.has_right):
                continue            # caps only, nothing to clip
            if seg.has_left:
                seg.x0 = min(seg.x0 + m, x)
            if seg.has_right:
                seg.x1 = max(seg.x1 - m, x)
            if m >= w and m > 0:
                seg.x0 = seg.x1 = x
                hidden.append(node)
    if hidden:
        log.warning("%d node occurrence(s) lost their flat width to x-margins "
                    "(first: '%s' at timestep %d)",
                    len(hidden), hidden[0].id, hidden[0].t)
    return paths


def resolve_ancestor_inversions(paths: list[StreamPath],
                                change_sets: list[ChangeSet],
                                forest: TemporalForest,
                                cfg: RenderConfig) -> list[StreamPath]:
    """Rework transitions so inverted streams visibly thread through.

    For an inversion (n, m) the transition of n is cut at its x-midpoint into
    an approach half (drawn above m) and an exit half (drawn below m); the
    pierced transition of m later gets a hole carved around the same x when
    the document is emitted.  Each half is itself a midpoint-rule curve, so
    the cut introduces a short plateau instead of a tangent break.
    """
    index: dict[tuple[int, int], tuple[StreamPath, int]] = {}
    for path in paths:
        for i, seg in enumerate(path.segments):
            if isinstance(seg, TransitionSeg) and seg.src is not None:
                index[(id(seg.src), id(seg.dst))] = (path, i)

    cut_halves: dict[tuple[int, int], tuple[TransitionSeg, TransitionSeg]] = {}

    for cs in change_sets:
        snap_from = forest.snapshots[cs.to_t - 1] if cs.to_t > 0 else None
        for ev in cs.events:
            if not isinstance(ev, AncestorInversion):
                continue
            n = forest.snapshots[cs.from_t].by_id[ev.node]
            m = forest.snapshots[cs.from_t].by_id[ev.former_ancestor]
            for sn in n.next:
                sm_hits = [sm for sm in m.next
                           if any(a is sn for a in sm.ancestors())]
                if not sm_hits:
                    continue
                entry = index.get((id(n), id(sn)))
                if entry is None:
                    continue
                path, i = entry
                seg = path.segments[i]
                if seg.x1 - seg.x0 <= 0:
                    continue        # zero-width transition, nothing to thread
                key = (id(n), id(sn))
                if key not in cut_halves:
                    halves = _cut_transition(seg)
                    cut_halves[key] = halves
                    path.segments[i:i + 1] = list(halves)
                    _reindex(index, path, i)
                approach, exit_ = cut_halves[key]
                for sm in sm_hits:
                    p_entry = index.get((id(m), id(sm)))
                    if p_entry is None:
                        continue
                    pierced = p_entry[0].segments[p_entry[1]]
                    level = pierced.depth
                    approach.depth_override = level
                    approach.bias = 1
                    exit_.depth_override = level
                    exit_.bias = -1
                    xc = (approach.x0 + approach.x1 + exit_.x0 + exit_.x1) / 4
                    path.segments.append(
                        HolePassSeg(over=approach, under=exit_,
                                    pierced=pierced, x=xc))
    return paths


def _cut_transition(seg: TransitionSeg) -> tuple[TransitionSeg, TransitionSeg]:
    xc = (seg.x0 + seg.x1) / 2
    top_mid = (seg.top0 + seg.top1) / 2
    bot_mid = (seg.bot0 + seg.bot1) / 2
    approach = TransitionSeg(seg.src, seg.dst, seg.x0, xc,
                             seg.top0, seg.bot0, top_mid, bot_mid,
                             depth=seg.depth)
    exit_ = TransitionSeg(seg.src, seg.dst, xc, seg.x1,
                          top_mid, bot_mid, seg.top1, seg.bot1,
                          depth=seg.depth)
    return approach, exit_


def _reindex(index: dict[tuple[int, int], tuple[StreamPath, int]],
             path: StreamPath, from_i: int) -> None:
    # splice shifted later segments of this path by one
    for key, (p, i) in list(index.items()):
        if p is path and i > from_i:
            index[key] = (p, i + 1)
    # the cut transition itself no longer maps to a single segment
    for key, (p, i) in list(index.items()):
        if p is path and i == from_i:
            del index[key]


def generate(forest: TemporalForest, cfg: RenderConfig,
             change_sets: list[ChangeSet] | None = None):
    """Layout plus assembly in pipeline order.

    Returns (frames, paths, violations).  change_sets enables inversion
    threading; pass the output of classify_changes.
    """
    from .layout import check_feasibility, layout_forest

    frames = layout_forest(forest, cfg)
    violations = check_feasibility(forest, cfg)
    paths = assemble_streams(forest, frames, cfg)
    apply_splits(paths, frames, cfg.margin, cfg)
    if change_sets:
        resolve_ancestor_inversions(paths, change_sets, forest, cfg)
    return frames, paths, violations
