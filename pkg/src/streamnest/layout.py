"""Per-timestep layout: sizes, in-parent offsets, pixel bands, margins.

All vertical geometry is derived from node sizes via one global scale
(canvasHeight / max root size) so equal values occupy equal pixel heights in
every timestep; the Expand baseline deliberately breaks that to fill the
canvas per timestep.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import StructureError, TemporalForest, TemporalNode, TreeSnapshot

MARGIN_FIXED = "fixed"
MARGIN_HIERARCHICAL = "hierarchical"
MARGIN_REVERSED = "hierarchical-reversed"
MARGIN_KINDS = (MARGIN_FIXED, MARGIN_HIERARCHICAL, MARGIN_REVERSED)

BASELINE_ZERO = "zero"
BASELINE_EXPAND = "expand"
BASELINE_SILHOUETTE = "silhouette"
BASELINES = (BASELINE_ZERO, BASELINE_EXPAND, BASELINE_SILHOUETTE)

Y_PADDING_NONE = "none"
Y_PADDING_AUTO = "auto"


@dataclass(frozen=True, slots=True)
class MarginSpec:
    """X-margin growth per hierarchy level.

    fixed                  m(n) = m(parent) + value
    hierarchical           m(n) = m(parent) + depth(n) * value
    hierarchical-reversed  m(n) = m(parent) + value / depth(n)

    Roots carry no margin.
    """

    kind: str = MARGIN_FIXED
    value: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in MARGIN_KINDS:
            raise ValueError(f"unknown margin kind {self.kind!r}")
        if not (self.value >= 0):
            raise ValueError("margin value must be >= 0")


def margin_for_depth(depth: int, spec: MarginSpec) -> float:
    if depth <= 0 or spec.value == 0:
        return 0.0
    if spec.kind == MARGIN_FIXED:
        return depth * spec.value
    if spec.kind == MARGIN_HIERARCHICAL:
        return spec.value * depth * (depth + 1) / 2
    return spec.value * _harmonic(depth)


def _harmonic(n: int) -> float:
    return sum(1.0 / k for k in range(1, n + 1))


def margin_x(node: TemporalNode, spec: MarginSpec) -> float:
    """Accumulated x-margin of a node; depends only on its depth."""
    return margin_for_depth(node.depth, spec)


@dataclass(frozen=True, slots=True)
class RenderConfig:
    hcr: float = 0.5
    margin: MarginSpec = MarginSpec(MARGIN_FIXED, 5.0)
    y_padding: float | str = Y_PADDING_NONE     # "none" | "auto" | constant
    y_margin: float = 0.0                       # in value units, non-roots only
    baseline: str = BASELINE_SILHOUETTE
    width: float = 960.0
    height: float = 400.0
    gap: float = 100.0                          # x distance between timesteps

    def __post_init__(self) -> None:
        if not (0.0 <= self.hcr <= 1.0):
            raise ValueError("hcr must be within [0, 1]")
        if isinstance(self.y_padding, str):
            if self.y_padding not in (Y_PADDING_NONE, Y_PADDING_AUTO):
                raise ValueError(f"unknown y-padding mode {self.y_padding!r}")
        elif not (self.y_padding >= 0):
            raise ValueError("y-padding must be >= 0")
        if not (self.y_margin >= 0):
            raise ValueError("y-margin must be >= 0")
        if self.baseline not in BASELINES:
            raise ValueError(f"unknown baseline {self.baseline!r}")
        for name in ("width", "height", "gap"):
            if not (getattr(self, name) > 0):
                raise ValueError(f"{name} must be > 0")


@dataclass(slots=True)
class Band:
    """Pixel extent of one node at one timestep."""

    y0: float
    y1: float
    x0: float = 0.0
    x1: float = 0.0
    hidden: bool = False


@dataclass(slots=True)
class LayoutFrame:
    t: int
    bands: dict[str, Band] = field(default_factory=dict)


# ---------- Values and spacing ----------

def compute_values(snapshot: TreeSnapshot,
                   y_padding: float | str = Y_PADDING_NONE) -> TreeSnapshot:
    """Fill aggregate and size bottom-up.

    Leaves default to size 1 when no value is given.  Non-leaves without a
    value take their children's total plus padding: Auto adds 1 + #children,
    a constant mode adds that constant.  A declared value wins but must cover
    the padded children's total.
    """
    for node in sorted(snapshot.nodes, key=lambda n: -n.depth):
        agg = 0.0
        for c in node.children:
            agg += c.size
        node.aggregate = agg
        if node.is_leaf:
            node.size = node.own_value if node.own_value is not None else 1.0
        elif node.own_value is not None:
            if node.own_value < agg:
                raise StructureError(
                    f"node '{node.id}' at timestep {node.t} declares value "
                    f"{node.own_value} smaller than its children's padded "
                    f"total {agg}")
            node.size = node.own_value
        elif y_padding == Y_PADDING_AUTO:
            node.size = agg + 1 + len(node.children)
        elif y_padding == Y_PADDING_NONE:
            node.size = agg
        else:
            node.size = agg + float(y_padding)
    return snapshot


def compute_spacing_positions(snapshot: TreeSnapshot) -> TreeSnapshot:
    """Distribute each node's slack evenly between and around its children.

    With k children, spacing = (size - aggregate) / (k + 1); child i sits at
    i * spacing plus the sizes of its preceding siblings.  Explicit input
    positions are honored and validated against the parent's extent.
    """
    for node in snapshot.nodes:
        if node.parent is None:
            node.pos = 0.0
        if not node.children:
            continue
        k = len(node.children)
        spacing = (node.size - node.aggregate) / (k + 1)
        running = 0.0
        for i, child in enumerate(node.children, start=1):
            if child.explicit_pos is not None:
                limit = node.size * (1 + 1e-12) + 1e-12
                if child.explicit_pos + child.size > limit:
                    raise StructureError(
                        f"node '{child.id}' at timestep {child.t} has pos "
                        f"{child.explicit_pos} + size {child.size} exceeding "
                        f"its parent's size {node.size}")
                child.pos = child.explicit_pos
            else:
                child.pos = i * spacing + running
            running += child.size
    return snapshot


def global_scale(forest: TemporalForest, cfg: RenderConfig) -> float:
    """Pixels per value unit: canvasHeight / max root size over all timesteps."""
    max_root = max((s.root.size for s in forest.snapshots), default=0.0)
    if max_root <= 0:
        return 0.0
    return cfg.height / max_root


# ---------- Vertical extents ----------

def compute_vertical_extents(snapshot: TreeSnapshot, cfg: RenderConfig,
                             scale: float) -> LayoutFrame:
    """Map sizes and offsets to pixel bands under the configured baseline.

    zero        root band [0, H * size / maxRootSize], anchored at the top
    expand      root band [0, H] regardless of size
    silhouette  root band of proportional height centered at H / 2

    Children occupy parent fractions: y0(c) = y0(p) + h(p) * pos(c)/size(p),
    h(c) = h(p) * size(c)/size(p).
    """
    frame = LayoutFrame(t=snapshot.t)
    root = snapshot.root
    if cfg.baseline == BASELINE_ZERO:
        top, h = 0.0, scale * root.size
    elif cfg.baseline == BASELINE_EXPAND:
        top, h = 0.0, cfg.height
    else:
        h = scale * root.size
        top = (cfg.height - h) / 2
    frame.bands[root.id] = Band(y0=top, y1=top + h)

    stack = list(root.children)
    while stack:
        node = stack.pop()
        p = frame.bands[node.parent.id]
        psize = node.parent.size
        ph = p.y1 - p.y0
        if psize > 0:
            y0 = p.y0 + ph * (node.pos / psize)
            hh = ph * (node.size / psize)
        else:
            y0, hh = p.y0, 0.0
        frame.bands[node.id] = Band(y0=y0, y1=y0 + hh)
        stack.extend(node.children)
    return frame


def apply_y_margin(frame: LayoutFrame, snapshot: TreeSnapshot,
                   cfg: RenderConfig, scale: float) -> LayoutFrame:
    """Shrink every non-root band symmetrically by the configured y-margin.

    The margin is given in value units and converted by the global scale, so
    it competes directly with node values: a node whose height drops to zero
    or below collapses to its center line and is flagged hidden.
    """
    if cfg.y_margin <= 0:
        return frame
    cut = cfg.y_margin * scale
    for node in snapshot.nodes:
        if node.parent is None:
            continue
        band = frame.bands[node.id]
        h = band.y1 - band.y0
        if h - cut <= 0:
            mid = (band.y0 + band.y1) / 2
            band.y0 = band.y1 = mid
            band.hidden = True
        else:
            band.y0 += cut / 2
            band.y1 -= cut / 2
    return frame


def layout_forest(forest: TemporalForest, cfg: RenderConfig) -> list[LayoutFrame]:
    """Full per-timestep layout: values, spacing, bands, y-margin."""
    for snap in forest.snapshots:
        compute_values(snap, cfg.y_padding)
        compute_spacing_positions(snap)
    scale = global_scale(forest, cfg)
    frames = []
    for snap in forest.snapshots:
        frame = compute_vertical_extents(snap, cfg, scale)
        apply_y_margin(frame, snap, cfg, scale)
        frames.append(frame)
    return frames


# ---------- Feasibility ----------

@dataclass(frozen=True, slots=True)
class FeasibilityViolation:
    kind: str                   # "pair" | "timestep"
    from_t: int
    to_t: int
    available: float
    required: float

    @property
    def deficit(self) -> float:
        return self.required - self.available

    def describe(self) -> str:
        where = (f"timesteps {self.from_t}-{self.to_t}"
                 if self.kind == "pair" else f"timestep {self.from_t}")
        return (f"{where}: margins need {self.required:g} px but only "
                f"{self.available:g} px of flat width is available "
                f"(deficit {self.deficit:g})")


def check_feasibility(forest: TemporalForest,
                      cfg: RenderConfig) -> list[FeasibilityViolation]:
    """Check that flat extents survive the margin clipping.

    For each consecutive pair, HCR * gap must exceed the deepest margins of
    both timesteps combined; additionally each timestep's own block must keep
    positive width, 2 * m(dmax) < HCR * gap.  An empty result means every
    node keeps a positive flat width.  Margin 0 never violates.
    """
    out: list[FeasibilityViolation] = []
    available = cfg.hcr * cfg.gap
    margins = [margin_for_depth(s.max_depth, cfg.margin) for s in forest.snapshots]
    for i in range(len(margins) - 1):
        required = margins[i] + margins[i + 1]
        if required > 0 and available <= required:
            out.append(FeasibilityViolation("pair", i, i + 1, available, required))
    for i, m in enumerate(margins):
        required = 2 * m
        if required > 0 and available <= required:
            out.append(FeasibilityViolation("timestep", i, i, available, required))
    return out


def violations_as_json(violations: list[FeasibilityViolation]) -> list[dict]:
    return [
        {"kind": v.kind, "fromT": v.from_t, "toT": v.to_t,
         "available": v.available, "required": v.required, "deficit": v.deficit,
         "message": v.describe()}
        for v in violations
    ]
