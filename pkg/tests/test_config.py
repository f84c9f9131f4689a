import json
import os

import pytest
import yaml

from graphstream.config import load_config, parse_config
from graphstream.exceptions import ConfigError

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
CONFIGS = os.path.join(ROOT, "configs")

SYNTHETIC = {"synthetic": {"segments": [{"count": 20, "level": "med"}], "seed": 1}}


def small(**overrides):
    data = {"memory_size": 4, "n_prototypes": 2, "repetitions": 2, "dataset": SYNTHETIC}
    data.update(overrides)
    return data


@pytest.mark.parametrize("name", sorted(os.listdir(CONFIGS)))
def test_bundled_configs_load(name):
    cfg = load_config(os.path.join(CONFIGS, name))
    assert cfg.repetitions >= 1
    assert os.path.isabs(cfg.output_dir)


def test_letter_high_settings():
    cfg = load_config(os.path.join(CONFIGS, "letter_high.yaml"))
    p = cfg.pipeline
    assert (p.n_classes, p.memory_size, p.n_prototypes, p.window_size) == (3, 10, 3, 50)
    assert (p.beta, p.fading_factor, list(p.classifier.hidden_layers)) == (4.5, 0.99, [128, 64])
    assert [(s.count, s.level) for s in cfg.dataset.synthetic.segments] == [(300, "none"), (450, "high")]
    assert cfg.dataset.synthetic.warm_start_count == 10


def test_defaults_and_warm_start_count():
    cfg = parse_config(small())
    assert cfg.dataset.kind == "synthetic" and cfg.dataset.synthetic.warm_start_count == 4
    assert cfg.pipeline.window_size == 50 and cfg.pipeline.drift_detection


def test_to_dict_round_trip(tmp_path):
    cfg = parse_config(small())
    path = tmp_path / "again.json"
    path.write_text(json.dumps(cfg.to_dict()))
    again = load_config(str(path))
    assert again.to_dict() == cfg.to_dict()


@pytest.mark.parametrize(
    "data, pattern",
    [
        (small(bogus=1), "unknown config field"),
        (small(n_prototypes=4), "n_prototypes < memory_size"),
        (small(fading_factor=1.5), "fading_factor"),
        (small(method="knn"), "method"),
        (small(repetitions=0), "repetitions"),
        (small(cost_model={"node_insert": -1}), "cost_model"),
        (small(cost_model={"nodes": 1}), "unknown cost_model"),
        (small(classifier={"learning_rate": -0.1}), "classifier"),
        (small(dataset={}), "exactly one"),
        (small(dataset={"stream_file": "a.jsonl"}), "warm_start_file"),
        (small(dataset={"gxl_dir": "."}), "cxl_index"),
        (small(dataset={"synthetic": {"segments": [[-3, "none"]]}}), "synthetic"),
        (small(dataset={"synthetic": {"segments": [[5, "none"]], "warm_start_count": 7}}), "must equal memory_size"),
        ({"memory_size": 4, "n_prototypes": 2}, "no dataset"),
        ([1, 2], "mapping"),
    ],
)
def test_invalid_configs(data, pattern):
    with pytest.raises(ConfigError, match=pattern):
        parse_config(data)


def test_missing_input_files_are_reported(tmp_path):
    data = small(dataset={"stream_file": "missing.jsonl", "warm_start_file": "w.jsonl"})
    with pytest.raises(ConfigError, match="does not exist"):
        parse_config(data, str(tmp_path))
    cfg = parse_config(data, str(tmp_path), require_files=False)
    assert cfg.dataset.stream_file == str(tmp_path / "missing.jsonl")


def test_invalid_yaml_and_missing_file(tmp_path):
    bad = tmp_path / "bad.yaml"
    bad.write_text("memory_size: [1,\n")
    with pytest.raises(ConfigError, match="not valid YAML"):
        load_config(str(bad))
    with pytest.raises(ConfigError, match="cannot read"):
        load_config(str(tmp_path / "nope.yaml"))


def test_paths_resolve_against_config_directory(tmp_path):
    sub = tmp_path / "cfg"
    sub.mkdir()
    (sub / "c.yaml").write_text(yaml.safe_dump(small(output_dir="out")))
    assert load_config(str(sub / "c.yaml")).output_dir == str(sub / "out")
