"""Compare the three x-margin functions and read a feasibility report.

Margins inset each depth level at the timestep splits, which is what makes
the nesting legible: deeper nodes end earlier, so every ancestor stays
visible as a rim around its children.  The fixed function grows linearly
with depth, the hierarchical one quadratically, and the reversed one
converges, keeping deep trees affordable.  When margins outgrow the block
width the checker says so instead of silently hiding everything.
"""

import pathlib

from streamnest import (MarginSpec, RenderConfig, StyleConfig,
                        check_feasibility, load_forest, margin_for_depth,
                        run_pipeline)

DATASET = {
    "timesteps": [
        {"nodes": [
            {"id": "fs"},
            {"id": "usr", "parent": "fs", "value": 6},
            {"id": "lib", "parent": "usr", "value": 4},
            {"id": "ssl", "parent": "lib", "value": 2},
            {"id": "var", "parent": "fs", "value": 2}]},
        {"nodes": [
            {"id": "fs"},
            {"id": "usr", "parent": "fs", "value": 5},
            {"id": "lib", "parent": "usr", "value": 4},
            {"id": "ssl", "parent": "lib", "value": 3},
            {"id": "var", "parent": "fs", "value": 3}]},
    ]
}


def main() -> None:
    out = pathlib.Path(__file__).parent / "out"
    out.mkdir(exist_ok=True)
    forest = load_forest(DATASET)

    print("margin by depth (value=2):")
    print(f"{'depth':<22}" + "".join(f"{d:>8}" for d in range(6)))
    for kind in ("fixed", "hierarchical", "hierarchical-reversed"):
        spec = MarginSpec(kind, 2.0)
        row = "".join(f"{margin_for_depth(d, spec):>8.3f}" for d in range(6))
        print(f"{kind:<22}{row}")

    for kind in ("fixed", "hierarchical", "hierarchical-reversed"):
        cfg = RenderConfig(hcr=0.6, margin=MarginSpec(kind, 3),
                           height=240, gap=140)
        result = run_pipeline(forest, cfg, StyleConfig())
        path = out / f"margin_{kind.replace('-', '_')}.svg"
        path.write_bytes(result.svg.to_bytes())
        print(f"{kind:<22}->  {path.name}")

    # squeeze until the checker objects
    tight = RenderConfig(hcr=0.15, margin=MarginSpec("hierarchical", 3),
                         gap=140)
    for v in check_feasibility(forest, tight):
        print("violation:", v.describe())


if __name__ == "__main__":
    main()
