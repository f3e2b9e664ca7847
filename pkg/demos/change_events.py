"""Classify what happened between timesteps, then watch the drawing agree.

A department splits in two, the halves re-merge, a team moves between
parents, and one reorganization inverts an ancestry (the former parent ends
up inside its former child).  The classifier names each event; the renderer
answers the inversion by cutting the moving stream and threading it through
a gap in the stream it crosses.
"""

import pathlib

from streamnest import (MarginSpec, RenderConfig, StyleConfig,
                        classify_changes, load_forest, run_pipeline)

DATASET = {
    "timesteps": [
        {"nodes": [
            {"id": "org"},
            {"id": "eng", "parent": "org", "value": 6,
             "next": ["web", "infra"]},
            {"id": "sales", "parent": "org", "value": 3},
            {"id": "intern", "parent": "eng", "value": 1}]},
        {"nodes": [
            {"id": "org"},
            {"id": "web", "parent": "org", "prev": ["eng"], "value": 3},
            {"id": "infra", "parent": "org", "prev": ["eng"], "value": 3},
            {"id": "sales", "parent": "org", "value": 3},
            {"id": "intern", "parent": "web", "value": 1}]},
        {"nodes": [
            {"id": "org"},
            {"id": "eng", "parent": "org", "prev": ["web", "infra"],
             "value": 7},
            {"id": "sales", "parent": "org", "value": 2},
            {"id": "intern", "parent": "eng", "value": 1}]},
        {"nodes": [
            {"id": "org"},
            {"id": "intern", "parent": "org", "value": 5},
            {"id": "eng", "parent": "intern", "value": 3},
            {"id": "sales", "parent": "org", "value": 2}]},
    ]
}


def main() -> None:
    out = pathlib.Path(__file__).parent / "out"
    out.mkdir(exist_ok=True)
    forest = load_forest(DATASET)

    for cs in classify_changes(forest):
        print(f"t{cs.from_t} -> t{cs.to_t}:")
        for event in cs.events:
            print(f"   {event}")

    cfg = RenderConfig(hcr=0.45, margin=MarginSpec("fixed", 3),
                       height=280, gap=150)
    result = run_pipeline(forest, cfg, StyleConfig())
    path = out / "change_events.svg"
    path.write_bytes(result.svg.to_bytes())
    print(f"rendered with threaded inversion -> {path.name}")


if __name__ == "__main__":
    main()
