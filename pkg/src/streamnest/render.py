"""SVG emission.

Streams are serialized as closed filled paths, one per contiguous
constant-depth run of segments; margins and depth changes break a stream
into several pieces.  Transition edges are cubic Beziers whose control
points sit at the x-midpoint with the ordinates of their endpoints, which
keeps streams horizontal at every timestep.  Flat edges use H commands
exclusively and transitions use C exclusively, so flat widths can be
recovered from the document by scanning path data.

Output is deterministic byte for byte: coordinates are fixed to three
decimals, element order is (depth, inversion bias, chain, piece).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .layout import LayoutFrame, RenderConfig
from .stream import (CAP_END, CAP_START, CapSeg, FlatSeg, HolePassSeg,
                     StreamPath, TransitionSeg)

PALETTES: dict[str, tuple[str, ...]] = {
    # light-to-dark ramps so deeper nodes read darker
    "blues": ("#deebf7", "#c6dbef", "#9ecae1", "#6baed6",
              "#4292c6", "#2171b5", "#08519c"),
    "sunset": ("#ffffcc", "#ffeda0", "#fed976", "#feb24c",
               "#fd8d3c", "#f03b20", "#bd0026"),
    "greys": ("#f7f7f7", "#d9d9d9", "#bdbdbd", "#969696",
              "#737373", "#525252", "#252525"),
}
DEFAULT_PALETTE = "blues"


@dataclass(frozen=True, slots=True)
class StyleConfig:
    palette: tuple[str, ...] = PALETTES[DEFAULT_PALETTE]
    outline_only: bool = False
    stroke_width: float = 1.0
    background: str = "#ffffff"           # "none" disables the backdrop rect
    hole_gap: float = 6.0                 # px opened around inversion threads
    show_transitions: bool = True

    def __post_init__(self) -> None:
        if not self.palette:
            raise ValueError("palette must contain at least one color")
        if not (self.stroke_width > 0):
            raise ValueError("stroke width must be > 0")
        if not (self.hole_gap >= 0):
            raise ValueError("hole gap must be >= 0")


def resolve_palette(name_or_colors) -> tuple[str, ...]:
    if isinstance(name_or_colors, str):
        try:
            return PALETTES[name_or_colors]
        except KeyError:
            raise ValueError(f"unknown palette {name_or_colors!r}") from None
    colors = tuple(name_or_colors)
    if not all(isinstance(c, str) and c for c in colors):
        raise ValueError("palette colors must be non-empty strings")
    return colors


def depth_color(depth: int, style: StyleConfig) -> str:
    return style.palette[min(depth, len(style.palette) - 1)]


def bezier_edge(x0: float, y0: float, x1: float, y1: float):
    """Control points for one transition edge: both at the x-midpoint,
    carrying the endpoint ordinates."""
    xm = (x0 + x1) / 2
    return (xm, y0), (xm, y1)


def fmt(v: float) -> str:
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


@dataclass(slots=True)
class SvgElement:
    id: str
    d: str
    fill: str
    stroke: str
    stroke_width: float | None
    sort_key: tuple

    def to_text(self) -> str:
        sw = ""
        if self.stroke != "none" and self.stroke_width is not None:
            sw = f' stroke-width="{fmt(self.stroke_width)}"'
        return (f'<path id="{self.id}" d="{self.d}" fill="{self.fill}" '
                f'stroke="{self.stroke}"{sw}/>')


@dataclass(slots=True)
class SvgDocument:
    width: float
    height: float
    view_w: float
    view_h: float
    background: str
    elements: list[SvgElement] = field(default_factory=list)

    def to_text(self) -> str:
        lines = [
            f'<svg xmlns="http://www.w3.org/2000/svg" '
            f'width="{fmt(self.width)}" height="{fmt(self.height)}" '
            f'viewBox="0 0 {fmt(self.view_w)} {fmt(self.view_h)}">'
        ]
        if self.background and self.background != "none":
            lines.append(f'<rect x="0" y="0" width="{fmt(self.view_w)}" '
                         f'height="{fmt(self.view_h)}" '
                         f'fill="{self.background}"/>')
        lines.extend(el.to_text() for el in self.elements)
        lines.append("</svg>")
        return "\n".join(lines) + "\n"

    def to_bytes(self) -> bytes:
        return self.to_text().encode("utf-8")


# ---------- Piece assembly ----------

def _element_depth(seg) -> int:
    if isinstance(seg, TransitionSeg):
        return seg.depth_override if seg.depth_override is not None else seg.depth
    return seg.node.depth


def _bias(seg) -> int:
    return seg.bias if isinstance(seg, TransitionSeg) else 0


def _left_edge(seg):
    if isinstance(seg, FlatSeg):
        return seg.x0, seg.y0, seg.y1
    return seg.x0, seg.top0, seg.bot0


def _right_edge(seg):
    if isinstance(seg, FlatSeg):
        return seg.x1, seg.y0, seg.y1
    return seg.x1, seg.top1, seg.bot1


def _collect_holes(paths: list[StreamPath], hole_gap: float):
    holes: dict[int, list[float]] = {}
    if hole_gap <= 0:
        return holes
    for path in paths:
        for seg in path.segments:
            if isinstance(seg, HolePassSeg):
                holes.setdefault(id(seg.pierced), []).append(seg.x)
    for xs in holes.values():
        xs.sort()
    return holes


def _smoothstep_y(seg: TransitionSeg, x: float) -> tuple[float, float]:
    """Ordinates of the transition's edges at x.

    With both control points at the x-midpoint the curve's vertical blend
    reduces to 3u^2 - 2u^3 in the parameter; solve x(t) = x by bisection
    (x(t) is strictly increasing for positive-width transitions).
    """
    x0, x1 = seg.x0, seg.x1
    xm = (x0 + x1) / 2
    lo, hi = 0.0, 1.0
    for _ in range(80):
        mid = (lo + hi) / 2
        u = 1 - mid
        xt = (u * u * u) * x0 + 3 * (u * u * mid + u * mid * mid) * xm \
            + (mid * mid * mid) * x1
        if xt < x:
            lo = mid
        else:
            hi = mid
    t = (lo + hi) / 2
    blend = t * t * (3 - 2 * t)
    top = seg.top0 + (seg.top1 - seg.top0) * blend
    bot = seg.bot0 + (seg.bot1 - seg.bot0) * blend
    return top, bot


def _carve(seg: TransitionSeg, centers: list[float],
           hole_gap: float) -> list[TransitionSeg]:
    """Split a pierced transition into parts around each hole center."""
    parts = []
    cursor = seg.x0
    cursor_top, cursor_bot = seg.top0, seg.bot0
    for xc in centers:
        a = max(seg.x0, xc - hole_gap / 2)
        b = min(seg.x1, xc + hole_gap / 2)
        if a > cursor:
            top_a, bot_a = _smoothstep_y(seg, a)
            parts.append(TransitionSeg(seg.src, seg.dst, cursor, a,
                                       cursor_top, cursor_bot, top_a, bot_a,
                                       depth=seg.depth, bias=seg.bias,
                                       depth_override=seg.depth_override))
        if b > cursor:
            cursor = b
            cursor_top, cursor_bot = _smoothstep_y(seg, b)
    if seg.x1 > cursor:
        parts.append(TransitionSeg(seg.src, seg.dst, cursor, seg.x1,
                                   cursor_top, cursor_bot, seg.top1, seg.bot1,
                                   depth=seg.depth, bias=seg.bias,
                                   depth_override=seg.depth_override))
    return parts


def _drawables(path: StreamPath, frames: list[LayoutFrame],
               holes: dict[int, list[float]], hole_gap: float,
               show_transitions: bool) -> list:
    out = []
    for seg in path.segments:
        if isinstance(seg, HolePassSeg):
            continue
        if isinstance(seg, FlatSeg):
            if frames[seg.node.t].bands[seg.node.id].hidden:
                continue
        elif isinstance(seg, TransitionSeg):
            if not show_transitions:
                continue
            if seg.x1 - seg.x0 <= 0:
                continue            # zero-width edge, omitted
            centers = holes.get(id(seg))
            if centers:
                out.extend(_carve(seg, centers, hole_gap))
                continue
        out.append(seg)
    return out


def _split_pieces(drawables: list) -> list[list]:
    """Group consecutive segments that connect seamlessly."""
    pieces: list[list] = []
    cur: list = []
    for seg in drawables:
        if not cur:
            cur = [seg]
            continue
        prev = cur[-1]
        if _connects(prev, seg):
            cur.append(seg)
        else:
            pieces.append(cur)
            cur = [seg]
    if cur:
        pieces.append(cur)
    return pieces


def _connects(a, b) -> bool:
    if isinstance(a, CapSeg) and a.side == CAP_END:
        return False
    if isinstance(b, CapSeg):
        if b.side == CAP_START:
            return False
        # end cap: attaches to its node's flat
        return isinstance(a, FlatSeg) and a.node is b.node
    if isinstance(a, CapSeg):
        # start cap: the node's flat follows
        return isinstance(b, FlatSeg) and b.node is a.node
    if _element_depth(a) != _element_depth(b) or _bias(a) != _bias(b):
        return False
    ax, at, ab = _right_edge(a)
    bx, bt, bb = _left_edge(b)
    return ax == bx and at == bt and ab == bb


def _piece_d(piece: list) -> str | None:
    start_cap = piece[0] if isinstance(piece[0], CapSeg) else None
    end_cap = piece[-1] if isinstance(piece[-1], CapSeg) else None
    core = [s for s in piece if not isinstance(s, CapSeg)]
    if not core:
        return None

    lx, lt, lb = _left_edge(core[0])
    rx, rt, rb = _right_edge(core[-1])

    has_area = any(_right_edge(s)[0] > _left_edge(s)[0] for s in core)
    if start_cap is not None and start_cap.x1 - start_cap.x0 > 0:
        has_area = True
    if end_cap is not None and end_cap.x1 - end_cap.x0 > 0:
        has_area = True
    if not has_area:
        return None

    cmds = [f"M{fmt(lx)},{fmt(lt)}"]
    x = lx
    for seg in core:                       # top edge, left to right
        sx, st, _ = _left_edge(seg)
        ex, et, _ = _right_edge(seg)
        if isinstance(seg, FlatSeg):
            if ex != x:
                cmds.append(f"H{fmt(ex)}")
        else:
            (c1x, c1y), (c2x, c2y) = bezier_edge(sx, st, ex, et)
            cmds.append(f"C{fmt(c1x)},{fmt(c1y)} {fmt(c2x)},{fmt(c2y)} "
                        f"{fmt(ex)},{fmt(et)}")
        x = ex

    if end_cap is not None and end_cap.x1 - end_cap.x0 > 0:
        rxr = end_cap.x1 - end_cap.x0
        ryr = (rb - rt) / 2
        cmds.append(f"A{fmt(rxr)},{fmt(ryr)} 0 0 1 {fmt(rx)},{fmt(rb)}")
    elif rb != rt:
        cmds.append(f"L{fmt(rx)},{fmt(rb)}")

    for seg in reversed(core):             # bottom edge, right to left
        sx, _, sb = _left_edge(seg)
        ex, _, eb = _right_edge(seg)
        if isinstance(seg, FlatSeg):
            if sx != ex:
                cmds.append(f"H{fmt(sx)}")
        else:
            (c1x, c1y), (c2x, c2y) = bezier_edge(ex, eb, sx, sb)
            cmds.append(f"C{fmt(c1x)},{fmt(c1y)} {fmt(c2x)},{fmt(c2y)} "
                        f"{fmt(sx)},{fmt(sb)}")

    if start_cap is not None and start_cap.x1 - start_cap.x0 > 0:
        rxr = start_cap.x1 - start_cap.x0
        ryr = (lb - lt) / 2
        cmds.append(f"A{fmt(rxr)},{fmt(ryr)} 0 0 1 {fmt(lx)},{fmt(lt)}")
    cmds.append("Z")
    return "".join(cmds)


def emit_svg(paths: list[StreamPath], frames: list[LayoutFrame],
             style: StyleConfig, cfg: RenderConfig) -> SvgDocument:
    """Serialize assembled streams into a deterministic SVG document."""
    view_w = max(len(frames), 1) * cfg.gap
    doc = SvgDocument(width=cfg.width, height=cfg.height,
                      view_w=view_w, view_h=cfg.height,
                      background=style.background)
    holes = _collect_holes(paths, style.hole_gap)
    elements: list[SvgElement] = []
    for path in paths:
        drawables = _drawables(path, frames, holes, style.hole_gap,
                               style.show_transitions)
        idx = 0
        for piece in _split_pieces(drawables):
            d = _piece_d(piece)
            if d is None:
                continue
            ref = next(s for s in piece if not isinstance(s, CapSeg))
            depth = _element_depth(ref)
            bias = _bias(ref)
            color = depth_color(depth, style)
            if style.outline_only:
                fill, stroke, sw = "none", color, style.stroke_width
            else:
                fill, stroke, sw = color, "none", None
            elements.append(SvgElement(
                id=f"stream-{path.chain_id}-{idx}",
                d=d, fill=fill, stroke=stroke, stroke_width=sw,
                sort_key=(depth, bias, path.chain_id, idx)))
            idx += 1
    elements.sort(key=lambda el: el.sort_key)
    doc.elements = elements
    return doc
