"""Command-line front end.

    streamnest render input.json -o out.svg --hcr 0.6 --margin-fn fixed
    streamnest render input.json --strict --layout-dump layout.json
    streamnest serve --port 8011
    streamnest bench datasets/ --hcr 0.5

Exit codes: 0 success, 1 I/O failure, 2 dataset or feasibility rejection,
64 usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .bench import best_of, format_reports
from .layout import BASELINES, MARGIN_KINDS
from .model import DatasetError, link_across_time, parse_dataset
from .pipeline import config_from_params, layout_as_json, run_pipeline

EXIT_OK = 0
EXIT_IO = 1
EXIT_DATA = 2
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage problems exit 64, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_param_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--hcr", type=float, default=None,
                   help="hierarchy-change ratio in [0,1]; 1 gives juxtaposed "
                        "treemaps, 0 a nested streamgraph")
    p.add_argument("--margin-fn", choices=MARGIN_KINDS, default=None)
    p.add_argument("--margin-value", type=float, default=None)
    p.add_argument("--y-padding", default=None, metavar="MODE",
                   help="'none', 'auto', or a constant added to aggregates")
    p.add_argument("--y-margin", type=float, default=None,
                   help="per-node vertical margin in value units")
    p.add_argument("--baseline", choices=BASELINES, default=None)
    p.add_argument("--width", type=float, default=None)
    p.add_argument("--height", type=float, default=None)
    p.add_argument("--gap", type=float, default=None,
                   help="horizontal distance between timesteps")
    p.add_argument("--palette", default=None)
    p.add_argument("--outline-only", action="store_true", default=None)
    p.add_argument("--stroke-width", type=float, default=None)
    p.add_argument("--background", default=None)
    p.add_argument("--hole-gap", type=float, default=None)
    p.add_argument("--no-transitions", action="store_true", default=None)
    p.add_argument("--strict", action="store_true", default=None,
                   help="refuse to render layouts with feasibility violations")


def _params_from_args(args: argparse.Namespace) -> dict:
    params = {}
    mapping = [
        ("hcr", "hcr"), ("margin_fn", "marginFn"),
        ("margin_value", "marginValue"), ("y_margin", "yMargin"),
        ("baseline", "baseline"), ("width", "width"), ("height", "height"),
        ("gap", "gap"), ("palette", "palette"),
        ("stroke_width", "strokeWidth"), ("background", "background"),
        ("hole_gap", "holeGap"),
    ]
    for attr, wire in mapping:
        v = getattr(args, attr)
        if v is not None:
            params[wire] = v
    if args.y_padding is not None:
        txt = args.y_padding
        try:
            params["yPadding"] = float(txt)
        except ValueError:
            params["yPadding"] = txt
    if args.outline_only:
        params["outlineOnly"] = True
    if args.no_transitions:
        params["showTransitions"] = False
    if args.strict:
        params["strict"] = True
    return params


def build_parser() -> _Parser:
    parser = _Parser(prog="streamnest",
                     description="Layout and render time-varying hierarchies "
                                 "as nested streams")
    sub = parser.add_subparsers(dest="command", required=True)

    p_render = sub.add_parser("render", parents=[], help="render a dataset to SVG")
    p_render.add_argument("input", help="dataset JSON path ('-' for stdin)")
    p_render.add_argument("-o", "--output", default="-",
                          help="output SVG path (default stdout)")
    p_render.add_argument("--layout-dump", metavar="PATH", default=None,
                          help="also write computed bands as JSON")
    _add_param_args(p_render)

    p_serve = sub.add_parser("serve", help="run the local render service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8011)

    p_bench = sub.add_parser("bench", help="time layout generation")
    p_bench.add_argument("target",
                         help="dataset file or directory of *.json datasets")
    p_bench.add_argument("--repeats", type=int, default=3)
    _add_param_args(p_bench)
    return parser


def _load_forest_cli(path_text: str):
    if path_text == "-":
        raw = sys.stdin.buffer.read()
    else:
        raw = Path(path_text).read_bytes()
    return link_across_time(parse_dataset(raw))


def _cmd_render(args: argparse.Namespace) -> int:
    try:
        cfg, style, strict = config_from_params(_params_from_args(args))
    except ValueError as exc:
        print(f"streamnest: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        forest = _load_forest_cli(args.input)
    except OSError as exc:
        print(f"streamnest: cannot read {args.input}: {exc}", file=sys.stderr)
        return EXIT_IO
    except DatasetError as exc:
        print(f"streamnest: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA

    try:
        result = run_pipeline(forest, cfg, style)
    except DatasetError as exc:
        print(f"streamnest: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA
    for v in result.violations:
        print(f"streamnest: feasibility: {v.describe()}", file=sys.stderr)
    if strict and result.violations:
        print("streamnest: strict mode: refusing to render an infeasible "
              "layout", file=sys.stderr)
        return EXIT_DATA

    try:
        if args.layout_dump:
            Path(args.layout_dump).write_text(
                json.dumps(layout_as_json(result), indent=2) + "\n",
                encoding="utf-8")
        payload = result.svg.to_bytes()
        if args.output == "-":
            sys.stdout.buffer.write(payload)
        else:
            Path(args.output).write_bytes(payload)
    except OSError as exc:
        print(f"streamnest: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port,
                log_level="warning")
    return EXIT_OK


def _cmd_bench(args: argparse.Namespace) -> int:
    try:
        cfg, _style, _strict = config_from_params(_params_from_args(args))
    except ValueError as exc:
        print(f"streamnest: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    target = Path(args.target)
    if target.is_dir():
        files = sorted(target.glob("*.json"))
        if not files:
            print(f"streamnest: no *.json datasets in {target}", file=sys.stderr)
            return EXIT_IO
    elif target.is_file():
        files = [target]
    else:
        print(f"streamnest: no such file or directory: {target}", file=sys.stderr)
        return EXIT_IO

    reports = []
    for f in files:
        try:
            forest = _load_forest_cli(str(f))
            reports.append(best_of(args.repeats, forest, cfg, name=f.stem))
        except OSError as exc:
            print(f"streamnest: cannot read {f}: {exc}", file=sys.stderr)
            return EXIT_IO
        except DatasetError as exc:
            print(f"streamnest: {f}: {type(exc).__name__}: {exc}",
                  file=sys.stderr)
            return EXIT_DATA
    sys.stdout.write(format_reports(reports))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    if args.command == "render":
        return _cmd_render(args)
    if args.command == "serve":
        return _cmd_serve(args)
    return _cmd_bench(args)


if __name__ == "__main__":
    sys.exit(main())
