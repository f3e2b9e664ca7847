"""Semantic zoom: grow the y-margin until only the big players remain.

The y-margin shaves a fixed number of value units off every non-root band.
Small nodes hit zero first and vanish, so stepping the margin up is a zoom
out: detail recedes, structure stays.  Writes one SVG per margin step and
reports which nodes survive.
"""

import pathlib

from streamnest import RenderConfig, StyleConfig, load_forest, run_pipeline

DATASET = {
    "timesteps": [
        {"nodes": [
            {"id": "mail"},
            {"id": "inbox", "parent": "mail", "value": 120},
            {"id": "spam", "parent": "mail", "value": 30},
            {"id": "drafts", "parent": "mail", "value": 6},
            {"id": "outbox", "parent": "mail", "value": 2}]},
        {"nodes": [
            {"id": "mail"},
            {"id": "inbox", "parent": "mail", "value": 110},
            {"id": "spam", "parent": "mail", "value": 55},
            {"id": "drafts", "parent": "mail", "value": 4},
            {"id": "outbox", "parent": "mail", "value": 3}]},
        {"nodes": [
            {"id": "mail"},
            {"id": "inbox", "parent": "mail", "value": 130},
            {"id": "spam", "parent": "mail", "value": 70},
            {"id": "drafts", "parent": "mail", "value": 8}]},
    ]
}


def main() -> None:
    out = pathlib.Path(__file__).parent / "out"
    out.mkdir(exist_ok=True)
    forest = load_forest(DATASET)
    for y_margin in (0.0, 3.0, 10.0, 40.0):
        cfg = RenderConfig(y_margin=y_margin, height=260, gap=120)
        result = run_pipeline(forest, cfg, StyleConfig())
        survivors = sorted({
            nid for frame in result.frames
            for nid, band in frame.bands.items() if not band.hidden})
        path = out / f"zoom_ymargin_{int(y_margin):02d}.svg"
        path.write_bytes(result.svg.to_bytes())
        print(f"y_margin={y_margin:>5.1f}  visible={survivors}")


if __name__ == "__main__":
    main()
