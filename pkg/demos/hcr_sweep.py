"""Sweep the hierarchy-change ratio from treemap columns to a streamgraph.

HCR decides how the horizontal space between timesteps is spent: at 1.0
every node is a full-width block and transitions vanish; at 0.0 the blocks
vanish and only the connecting streams remain.  Everything in between blends
the two.  Writes one SVG per step into demos/out/.
"""

import pathlib

from streamnest import (MarginSpec, RenderConfig, StyleConfig, load_forest,
                        run_pipeline)

DATASET = {
    "timesteps": [
        {"nodes": [
            {"id": "all"},
            {"id": "ops", "parent": "all", "value": 5},
            {"id": "dev", "parent": "all", "value": 3}]},
        {"nodes": [
            {"id": "all"},
            {"id": "ops", "parent": "all", "value": 4},
            {"id": "dev", "parent": "all", "value": 4},
            {"id": "qa", "parent": "all", "value": 2}]},
        {"nodes": [
            {"id": "all"},
            {"id": "ops", "parent": "all", "value": 2},
            {"id": "dev", "parent": "all", "value": 5},
            {"id": "qa", "parent": "all", "value": 3}]},
    ]
}


def main() -> None:
    out = pathlib.Path(__file__).parent / "out"
    out.mkdir(exist_ok=True)
    forest = load_forest(DATASET)
    for hcr in (0.0, 0.25, 0.5, 0.75, 1.0):
        # at hcr 0 there is no flat width for margins to act on
        margin = MarginSpec("fixed", 2 if hcr > 0 else 0)
        cfg = RenderConfig(hcr=hcr, margin=margin, height=240, gap=120)
        result = run_pipeline(forest, cfg, StyleConfig())
        path = out / f"hcr_{int(hcr * 100):03d}.svg"
        path.write_bytes(result.svg.to_bytes())
        print(f"hcr={hcr:.2f}  ->  {path.name}  "
              f"({len(result.svg.elements)} paths)")
    print("open the files in order to watch blocks dissolve into streams")


if __name__ == "__main__":
    main()
