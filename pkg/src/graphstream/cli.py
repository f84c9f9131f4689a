"""``graphstream`` command line: generate, convert, run, ged.

Exit codes: 0 success, 2 configuration error, 3 data error, 4 runtime error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import os
import platform
import sys

from graphstream.config import RunConfig, load_config
from graphstream.exceptions import ConfigError
from graphstream.ged import GedCostModel, GedPolicy, approx_ged, distance, exact_ged
from graphstream.io.atomic import atomic_write
from graphstream.io.gxl import corpus_to_stream, load_corpus, parse_gxl
from graphstream.io.results import write_results_csv
from graphstream.io.streamfile import dumps, graph_from_dict, read_stream
from graphstream.io.synthetic import generate_synthetic
from graphstream.pipeline import run_stream

EXIT_OK, EXIT_CONFIG, EXIT_DATA, EXIT_RUNTIME = 0, 2, 3, 4

STREAM_FILE = "stream.jsonl"
WARM_START_FILE = "warm_start.jsonl"
STEPS_FILE = "steps.csv"
AGGREGATE_FILE = "aggregate.csv"
METADATA_FILE = "metadata.json"

logger = logging.getLogger("graphstream")


def _apply_overrides(cfg: RunConfig, args) -> RunConfig:
    if getattr(args, "out", None):
        cfg.output_dir = os.path.abspath(args.out)
    if getattr(args, "reps", None) is not None:
        if args.reps < 1:
            raise ConfigError("--reps must be >= 1")
        cfg.repetitions = args.reps
    if getattr(args, "seed", None) is not None:
        cfg.pipeline = dataclasses.replace(cfg.pipeline, seed=args.seed)
        if cfg.dataset.kind == "synthetic":
            cfg.dataset.synthetic.seed = args.seed
        elif cfg.dataset.kind == "gxl_dir":
            cfg.dataset.shuffle_seed = args.seed
    return cfg


def _load(args, require_files=True) -> RunConfig:
    return _apply_overrides(load_config(args.config, require_files), args)


def _stream_from_source(cfg: RunConfig):
    src = cfg.dataset
    if src.kind == "synthetic":
        return generate_synthetic(src.synthetic)
    if src.kind == "stream_file":
        return read_stream(src.warm_start_file), read_stream(src.stream_file)
    corpus = load_corpus(src.gxl_dir, src.cxl_index, src.classes, src.schema)
    return corpus_to_stream(corpus, cfg.pipeline.memory_size, src.shuffle_seed)


def _write_pair(out_dir: str, warm, stream) -> None:
    warm_text, stream_text = dumps(warm), dumps(stream)
    with atomic_write(os.path.join(out_dir, WARM_START_FILE)) as fh:
        fh.write(warm_text)
    with atomic_write(os.path.join(out_dir, STREAM_FILE)) as fh:
        fh.write(stream_text)


def cmd_generate(args) -> int:
    cfg = _load(args)
    if cfg.dataset.kind != "synthetic":
        raise ConfigError("generate needs a dataset.synthetic block")
    warm, stream = generate_synthetic(cfg.dataset.synthetic)
    _write_pair(cfg.output_dir, warm, stream)
    print(f"wrote {len(warm)} warm-start and {len(stream)} stream records to {cfg.output_dir}")
    return EXIT_OK


def cmd_convert(args) -> int:
    cfg = _load(args)
    if cfg.dataset.kind != "gxl_dir":
        raise ConfigError("convert needs a dataset block with gxl_dir and cxl_index")
    warm, stream = _stream_from_source(cfg)
    _write_pair(cfg.output_dir, warm, stream)
    print(f"wrote {len(warm)} warm-start and {len(stream)} stream records to {cfg.output_dir}")
    return EXIT_OK


def _versions() -> dict:
    import numpy
    import scipy
    import sklearn

    from graphstream import __version__

    return {"graphstream": __version__, "python": platform.python_version(), "numpy": numpy.__version__,
            "scipy": scipy.__version__, "scikit-learn": sklearn.__version__}


def cmd_run(args) -> int:
    cfg = _load(args)
    warm, stream = _stream_from_source(cfg)
    result = run_stream(cfg.pipeline, warm, stream, repetitions=cfg.repetitions)
    out = cfg.output_dir
    write_results_csv(result.records, result.mean_gmean, result.stderr_gmean, os.path.join(out, STEPS_FILE),
                      os.path.join(out, AGGREGATE_FILE))
    metadata = cfg.to_dict()
    metadata["run_metadata"] = {
        "seeds": result.seeds,
        "drift_steps": result.drift_steps,
        "final_mean_gmean": result.final_gmean,
        "label_mapping": _label_mapping(cfg),
        "versions": _versions(),
    }
    with atomic_write(os.path.join(out, METADATA_FILE)) as fh:
        json.dump(metadata, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"final mean G-mean {result.final_gmean:.4f} over {cfg.repetitions} repetition(s); results in {out}")
    return EXIT_OK


def _label_mapping(cfg: RunConfig) -> dict:
    src = cfg.dataset
    if src.kind == "synthetic":
        return {str(i): t.name for i, t in enumerate(src.synthetic.templates, start=1)}
    if src.kind == "gxl_dir" and src.classes:
        return {str(i): c for i, c in enumerate(src.classes, start=1)}
    return {}


def _read_graph(path: str):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc.strerror}") from None
    if path.lower().endswith(".gxl") or data.lstrip()[:1] == b"<":
        return parse_gxl(data, source=path)
    first = data.decode("utf-8").strip().split("\n", 1)[0]
    try:
        obj = json.loads(first)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}:1: invalid JSON ({exc.msg})") from None
    return graph_from_dict(obj, f"{path}:1", default_id=os.path.basename(path))


def cmd_ged(args) -> int:
    try:
        cm = GedCostModel(args.node_insert, args.node_delete, args.edge_insert, args.edge_delete, args.node_subst,
                          args.node_subst_weight, args.edge_subst, args.edge_subst_weight)
        policy = GedPolicy(args.exact_below, args.budget)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    g1, g2 = _read_graph(args.graph_a), _read_graph(args.graph_b)
    if args.method == "exact":
        res = exact_ged(g1, g2, cm, budget=args.budget)
    elif args.method == "approx":
        res = approx_ged(g1, g2, cm)
    else:
        res = distance(g1, g2, cm, policy)
    print(f"distance {res.distance:.10g}")
    print(f"exact {str(res.exact).lower()}")
    print(f"expanded_states {res.expanded_states}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graphstream", description="Graph stream classification experiments")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_config(name, text, reps=False):
        p = sub.add_parser(name, help=text)
        p.add_argument("config", help="run configuration file (YAML or JSON)")
        p.add_argument("--out", help="override output_dir")
        p.add_argument("--seed", type=int, help="override the seed")
        if reps:
            p.add_argument("--reps", type=int, help="override repetitions")
        return p

    with_config("generate", "write a synthetic stream and warm-start file").set_defaults(func=cmd_generate)
    with_config("convert", "convert a GXL/CXL corpus into stream files").set_defaults(func=cmd_convert)
    with_config("run", "run the pipeline and write result CSVs", reps=True).set_defaults(func=cmd_run)

    g = sub.add_parser("ged", help="graph edit distance between two graph files")
    g.add_argument("graph_a")
    g.add_argument("graph_b")
    g.add_argument("--method", choices=("exact", "approx", "auto"), default="exact")
    g.add_argument("--node-insert", type=float, default=1.0)
    g.add_argument("--node-delete", type=float, default=1.0)
    g.add_argument("--edge-insert", type=float, default=1.0)
    g.add_argument("--edge-delete", type=float, default=1.0)
    g.add_argument("--node-subst", default="euclidean")
    g.add_argument("--node-subst-weight", type=float, default=1.0)
    g.add_argument("--edge-subst", default="zero")
    g.add_argument("--edge-subst-weight", type=float, default=1.0)
    g.add_argument("--budget", type=int, default=1_000_000)
    g.add_argument("--exact-below", type=int, default=10, help="node count threshold for --method auto")
    g.set_defaults(func=cmd_ged)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, OSError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except RuntimeError as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
