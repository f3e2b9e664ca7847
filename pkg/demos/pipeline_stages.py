"""Rebuild the five classic views of one dataset, stage by stage.

The same eight node occurrences render as: juxtaposed one-column treemaps,
a nested streamgraph, fixed-width treemap columns without connections, the
connected blend, and finally the blend with depth margins opening the
splits.  These match tests/golden/*.svg byte for byte.
"""

import pathlib
import sys

from streamnest import run_pipeline

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "tests"))
from conftest import golden_stages, load, tiny_document  # noqa: E402

CAPTIONS = {
    "treemaps-hcr100-margin4": "one-column treemaps, side by side",
    "streamgraph-hcr000": "nested streamgraph, no blocks",
    "flats-only-hcr050": "half-width columns, streams hidden",
    "blended-hcr050": "columns joined by streams",
    "blended-hcr050-margin4": "margins open the splits per depth",
}


def main() -> None:
    out = pathlib.Path(__file__).parent / "out"
    out.mkdir(exist_ok=True)
    for name, cfg, style in golden_stages():
        result = run_pipeline(load(tiny_document()), cfg, style)
        path = out / f"stage_{name}.svg"
        path.write_bytes(result.svg.to_bytes())
        print(f"{name:<28} {CAPTIONS[name]:<42} -> {path.name}")


if __name__ == "__main__":
    main()
