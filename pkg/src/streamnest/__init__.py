"""streamnest: layout and SVG rendering for time-varying hierarchies.

Each timestep of a temporal forest becomes a one-dimensional treemap; the
treemaps are joined by nested stream curves.  One parameter, the
hierarchy-change ratio (HCR), blends between pure juxtaposed treemaps
(HCR 1) and a pure nested streamgraph (HCR 0).  Depth-scaled x-margins open
visible gaps at splits, y-padding and y-margins drive semantic zoom, and
hierarchy changes (add, remove, split, merge, moves, ancestor inversions)
are detected and rendered, inversions as threads through holes.

Typical use:

    from streamnest import load_forest, RenderConfig, StyleConfig, run_pipeline

    forest = load_forest(open("data.json", "rb").read())
    result = run_pipeline(forest, RenderConfig(hcr=0.6), StyleConfig())
    open("out.svg", "wb").write(result.svg.to_bytes())
"""

from .model import (ARTIFICIAL_ROOT_ID, Add, AncestorInversion, ChangeEvent,
                    ChangeSet, DatasetError, LinkError, Merge, MoveAcross,
                    MoveWithin, ParseError, Remove, Split, StructureError,
                    TemporalForest, TemporalNode, TreeSnapshot,
                    classify_changes, detect_ancestor_inversions,
                    document_from_forest, forest_from_document,
                    link_across_time, load_forest, parse_dataset)
from .layout import (BASELINE_EXPAND, BASELINE_SILHOUETTE, BASELINE_ZERO,
                     Band, FeasibilityViolation, LayoutFrame,
                     MARGIN_FIXED, MARGIN_HIERARCHICAL, MARGIN_REVERSED,
                     MarginSpec, RenderConfig, apply_y_margin,
                     check_feasibility, compute_spacing_positions,
                     compute_values, compute_vertical_extents, global_scale,
                     layout_forest, margin_for_depth, margin_x)
from .stream import (CapSeg, FlatSeg, HolePassSeg, StreamPath, TimeAnchor,
                     TransitionSeg, apply_splits, assemble_streams, axis_x,
                     generate, half_width, resolve_ancestor_inversions,
                     time_anchors)
from .render import (PALETTES, StyleConfig, SvgDocument, SvgElement,
                     bezier_edge, depth_color, emit_svg, resolve_palette)
from .pipeline import (RenderResult, config_from_params, layout_as_json,
                       run_pipeline)
from .bench import (BenchReport, generate_synthetic_forest,
                    measure_generation, run_scaling_bench)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
