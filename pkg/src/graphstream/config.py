"""Run configuration files (YAML; JSON is accepted too).

Pipeline settings sit at the top level next to a ``dataset`` block naming
exactly one source::

    n_classes: 3
    memory_size: 10
    n_prototypes: 3
    method: prototype_embedding
    classifier: {hidden_layers: [128, 64], learning_rate: 0.001}
    cost_model: {node_insert: 1.0, node_subst: euclidean}
    repetitions: 10
    output_dir: results/letter_high
    dataset:
      synthetic:
        templates: [A, I, Z]
        segments: [{count: 300, level: none}, {count: 450, level: high}]
        seed: 0

Other sources are ``{stream_file, warm_start_file}`` or
``{gxl_dir, cxl_index, classes, schema, shuffle_seed}``. Relative paths are
resolved against the directory holding the config file.
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass, field

import yaml

from graphstream.classifier import ClassifierConfig
from graphstream.exceptions import ConfigError
from graphstream.ged import GedCostModel, GedPolicy
from graphstream.io.gxl import AttributeSchema
from graphstream.io.synthetic import SyntheticStreamSpec
from graphstream.pipeline import PipelineConfig

_PIPELINE_SCALARS = ("n_classes", "memory_size", "n_prototypes", "window_size", "beta", "fading_factor", "method",
                     "drift_detection", "use_memory", "seed")
_TOP_LEVEL = set(_PIPELINE_SCALARS) | {"cost_model", "ged_policy", "classifier", "dataset", "output_dir",
                                       "repetitions", "run_metadata"}
SOURCES = ("synthetic", "stream_file", "gxl_dir")


@dataclass
class DatasetSource:
    kind: str
    synthetic: SyntheticStreamSpec | None = None
    stream_file: str | None = None
    warm_start_file: str | None = None
    gxl_dir: str | None = None
    cxl_index: str | None = None
    classes: list[str] | None = None
    schema: AttributeSchema = field(default_factory=AttributeSchema)
    shuffle_seed: int = 0

    def to_dict(self) -> dict:
        if self.kind == "synthetic":
            return {"synthetic": self.synthetic.to_dict()}
        if self.kind == "stream_file":
            return {"stream_file": self.stream_file, "warm_start_file": self.warm_start_file}
        return {"gxl_dir": self.gxl_dir, "cxl_index": self.cxl_index, "classes": self.classes,
                "schema": dataclasses.asdict(self.schema), "shuffle_seed": self.shuffle_seed}


@dataclass
class RunConfig:
    pipeline: PipelineConfig
    dataset: DatasetSource
    output_dir: str
    repetitions: int = 1

    def to_dict(self) -> dict:
        p = self.pipeline
        out = {name: getattr(p, name) for name in _PIPELINE_SCALARS}
        out["cost_model"] = dataclasses.asdict(p.cost_model)
        out["ged_policy"] = dataclasses.asdict(p.ged_policy)
        out["classifier"] = dataclasses.asdict(p.classifier)
        out["dataset"] = self.dataset.to_dict()
        out["output_dir"] = self.output_dir
        out["repetitions"] = self.repetitions
        return out


def _build(cls, data, what):
    if data is None:
        return cls()
    if not isinstance(data, dict):
        raise ConfigError(f"{what} must be a mapping")
    names = {f.name for f in dataclasses.fields(cls)}
    unknown = sorted(set(data) - names)
    if unknown:
        raise ConfigError(f"unknown {what} field(s): {unknown}")
    try:
        return cls(**data)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid {what}: {exc}") from None


def _path(base: str, value, what: str, must_exist: bool) -> str:
    if not isinstance(value, str) or not value:
        raise ConfigError(f"{what} must be a non-empty path string")
    path = os.path.abspath(os.path.join(base, value))
    if must_exist and not os.path.exists(path):
        raise ConfigError(f"{what} does not exist: {path}")
    return path


def _dataset(data, base: str, memory_size: int, require_files: bool) -> DatasetSource:
    if not isinstance(data, dict):
        raise ConfigError("dataset must be a mapping naming one source")
    present = [k for k in SOURCES if k in data]
    if len(present) != 1:
        raise ConfigError(f"dataset must name exactly one of {SOURCES}, got {present or 'none'}")
    kind = present[0]
    if kind == "synthetic":
        raw = dict(data["synthetic"] or {})
        raw.setdefault("warm_start_count", memory_size)
        try:
            spec = SyntheticStreamSpec.from_dict(raw).validate()
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"invalid synthetic spec: {exc}") from None
        if spec.warm_start_count != memory_size:
            raise ConfigError(f"synthetic warm_start_count ({spec.warm_start_count}) must equal memory_size "
                              f"({memory_size})")
        return DatasetSource(kind, synthetic=spec)
    if kind == "stream_file":
        if "warm_start_file" not in data:
            raise ConfigError("a stream_file source also needs warm_start_file")
        return DatasetSource(kind, stream_file=_path(base, data["stream_file"], "stream_file", require_files),
                             warm_start_file=_path(base, data["warm_start_file"], "warm_start_file", require_files))
    if "cxl_index" not in data:
        raise ConfigError("a gxl_dir source also needs cxl_index")
    classes = data.get("classes")
    if classes is not None and (not isinstance(classes, list) or not all(isinstance(c, str) for c in classes)):
        raise ConfigError("classes must be a list of class names")
    try:
        schema = AttributeSchema.from_dict(data.get("schema"))
    except (AttributeError, TypeError) as exc:
        raise ConfigError(f"invalid attribute schema: {exc}") from None
    return DatasetSource(kind, gxl_dir=_path(base, data["gxl_dir"], "gxl_dir", require_files),
                         cxl_index=_path(base, data["cxl_index"], "cxl_index", require_files), classes=classes,
                         schema=schema, shuffle_seed=int(data.get("shuffle_seed", 0)))


def parse_config(data: dict, base_dir: str = ".", require_files: bool = True) -> RunConfig:
    if not isinstance(data, dict):
        raise ConfigError("config must be a mapping at the top level")
    unknown = sorted(set(data) - _TOP_LEVEL)
    if unknown:
        raise ConfigError(f"unknown config field(s): {unknown}")
    scalars = {k: data[k] for k in _PIPELINE_SCALARS if k in data}
    try:
        pipeline = PipelineConfig(**scalars,
                                  cost_model=_build(GedCostModel, data.get("cost_model"), "cost_model"),
                                  ged_policy=_build(GedPolicy, data.get("ged_policy"), "ged_policy"),
                                  classifier=_build(ClassifierConfig, data.get("classifier"), "classifier"))
        pipeline.validate()
    except TypeError as exc:
        raise ConfigError(f"invalid pipeline settings: {exc}") from None
    if "dataset" not in data:
        raise ConfigError("config has no dataset block")
    dataset = _dataset(data["dataset"], base_dir, pipeline.memory_size, require_files)
    reps = data.get("repetitions", 1)
    if isinstance(reps, bool) or not isinstance(reps, int) or reps < 1:
        raise ConfigError(f"repetitions must be a positive integer, got {reps!r}")
    output_dir = _path(base_dir, data.get("output_dir", "results"), "output_dir", must_exist=False)
    return RunConfig(pipeline, dataset, output_dir, reps)


def load_config(path: str, require_files: bool = True) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            data = yaml.safe_load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    except yaml.YAMLError as exc:
        raise ConfigError(f"config {path} is not valid YAML: {exc}") from None
    return parse_config(data, os.path.dirname(os.path.abspath(path)), require_files)
