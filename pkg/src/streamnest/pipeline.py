"""End-to-end pipeline: validated forest -> frames -> streams -> SVG.

Shared by the CLI and the HTTP service so both emit byte-identical
documents for the same inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .layout import (LayoutFrame, MarginSpec, RenderConfig,
                     FeasibilityViolation, violations_as_json)
from .model import ChangeSet, TemporalForest, classify_changes
from .render import (StyleConfig, SvgDocument, emit_svg, resolve_palette)
from .stream import StreamPath, generate


@dataclass(slots=True)
class RenderResult:
    svg: SvgDocument
    frames: list[LayoutFrame]
    paths: list[StreamPath]
    violations: list[FeasibilityViolation]
    change_sets: list[ChangeSet]


def run_pipeline(forest: TemporalForest, cfg: RenderConfig,
                 style: StyleConfig) -> RenderResult:
    change_sets = classify_changes(forest)
    frames, paths, violations = generate(forest, cfg, change_sets)
    svg = emit_svg(paths, frames, style, cfg)
    return RenderResult(svg=svg, frames=frames, paths=paths,
                        violations=violations, change_sets=change_sets)


def layout_as_json(result: RenderResult) -> dict:
    """Layout frames in the sidecar document shape: one band per node per
    timestep, plus any feasibility violations."""
    steps = []
    for frame in result.frames:
        bands = {}
        for node_id, band in frame.bands.items():
            bands[node_id] = {
                "y0": band.y0, "y1": band.y1,
                "x0": band.x0, "x1": band.x1,
                "hidden": band.hidden,
            }
        steps.append({"t": frame.t, "bands": bands})
    return {"timesteps": steps,
            "violations": violations_as_json(result.violations)}


_CONFIG_KEYS = {
    "hcr": "hcr",
    "yPadding": "y_padding",
    "yMargin": "y_margin",
    "baseline": "baseline",
    "width": "width",
    "height": "height",
    "gap": "gap",
}
_STYLE_KEYS = {
    "palette": "palette",
    "outlineOnly": "outline_only",
    "strokeWidth": "stroke_width",
    "background": "background",
    "holeGap": "hole_gap",
    "showTransitions": "show_transitions",
}


def config_from_params(params: dict | None) -> tuple[RenderConfig, StyleConfig, bool]:
    """Build configuration from the wire-format parameter object.

    Raises ValueError on unknown keys or invalid values; the service maps
    that to 400 and the CLI to a usage error.
    """
    params = dict(params or {})
    strict = params.pop("strict", False)
    if not isinstance(strict, bool):
        raise ValueError("'strict' must be a boolean")

    cfg_kwargs = {}
    margin_fn = params.pop("marginFn", None)
    margin_value = params.pop("marginValue", None)
    defaults = RenderConfig()
    if margin_fn is not None or margin_value is not None:
        cfg_kwargs["margin"] = MarginSpec(
            kind=margin_fn if margin_fn is not None else defaults.margin.kind,
            value=_number(margin_value, "marginValue")
            if margin_value is not None else defaults.margin.value)
    for wire, attr in _CONFIG_KEYS.items():
        if wire not in params:
            continue
        v = params.pop(wire)
        if wire == "yPadding":
            cfg_kwargs[attr] = v if isinstance(v, str) else _number(v, wire)
        elif wire == "baseline":
            cfg_kwargs[attr] = _string(v, wire)
        else:
            cfg_kwargs[attr] = _number(v, wire)

    style_kwargs = {}
    for wire, attr in _STYLE_KEYS.items():
        if wire not in params:
            continue
        v = params.pop(wire)
        if wire == "palette":
            style_kwargs[attr] = resolve_palette(v)
        elif wire in ("outlineOnly", "showTransitions"):
            if not isinstance(v, bool):
                raise ValueError(f"'{wire}' must be a boolean")
            style_kwargs[attr] = v
        elif wire == "background":
            style_kwargs[attr] = _string(v, wire)
        else:
            style_kwargs[attr] = _number(v, wire)

    if params:
        raise ValueError(f"unknown parameter(s): {', '.join(sorted(params))}")
    return RenderConfig(**cfg_kwargs), StyleConfig(**style_kwargs), strict


def _number(v, name: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ValueError(f"'{name}' must be a number")
    return float(v)


def _string(v, name: str) -> str:
    if not isinstance(v, str):
        raise ValueError(f"'{name}' must be a string")
    return v
