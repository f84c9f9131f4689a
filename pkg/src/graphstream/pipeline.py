"""Test-then-train graph stream classification.

Each step: represent the arriving graph, predict, receive the label, feed the
0/1 score to the drift detector, recompute prototypes and re-embed the memory
on drift, append the graph to the memory, then run one incremental training
step on the whole embedding memory.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np
from sklearn.base import BaseEstimator

from graphstream.classifier import ClassifierConfig, IncrementalMLPClassifier
from graphstream.drift import BinomialDriftDetector
from graphstream.evaluation import GraphFeatureExtractor, PrequentialTracker
from graphstream.exceptions import ConfigError, PipelineStepError
from graphstream.ged import DistanceCache, GedCostModel, GedPolicy, GraphDistance
from graphstream.graph import AttributedGraph
from graphstream.prototypes import ClassMemory, EmbeddingMemory, append, embed, recalculate_prototypes, reembed_all
from graphstream.validation import check_graphs, check_homogeneous, check_is_fitted, check_labels

logger = logging.getLogger(__name__)

METHODS = ("prototype_embedding", "feature_baseline")


@dataclass
class PipelineConfig:
    n_classes: int = 3
    memory_size: int = 10
    n_prototypes: int = 3
    window_size: int = 50
    beta: float = 4.5
    fading_factor: float = 0.99
    cost_model: GedCostModel = field(default_factory=GedCostModel)
    ged_policy: GedPolicy = field(default_factory=GedPolicy)
    classifier: ClassifierConfig = field(default_factory=ClassifierConfig)
    method: str = "prototype_embedding"
    drift_detection: bool = True
    use_memory: bool = True
    seed: int = 0

    def validate(self) -> "PipelineConfig":
        if self.n_classes < 2:
            raise ConfigError("n_classes must be >= 2")
        if not 1 <= self.n_prototypes < self.memory_size:
            raise ConfigError(f"need 1 <= n_prototypes < memory_size, got R={self.n_prototypes}, "
                              f"L={self.memory_size}")
        if not 0.0 < self.fading_factor <= 1.0:
            raise ConfigError("fading_factor must lie in (0, 1]")
        if self.window_size < 1 or not self.beta > 0:
            raise ConfigError("window_size must be >= 1 and beta > 0")
        if self.method not in METHODS:
            raise ConfigError(f"method must be one of {METHODS}, got {self.method!r}")
        c = self.classifier
        if c.learning_rate < 0 or c.batch_size < 1 or c.epochs < 1 or min(c.hidden_layers, default=1) < 1:
            raise ConfigError(f"invalid classifier settings: {c}")
        return self


@dataclass
class StepRecord:
    t: int
    y: int
    y_pred: int
    correct: int
    drift: bool
    gmean: float
    recalls: tuple
    loss: float
    wall_time: float = 0.0


class GraphStreamClassifier(BaseEstimator):
    """Incremental graph stream classifier with optional drift-triggered prototype refresh.

    Parameters
    ----------
    n_classes : int
        Labels are ``1..n_classes``.
    memory_size : int
        Capacity ``L`` of every per-class memory queue.
    n_prototypes : int
        Prototypes ``R`` per class; embeddings have ``R * n_classes`` entries.
    window_size, beta : detector settings.
    fading_factor : float
        Fading factor of the prequential G-mean.
    method : {"prototype_embedding", "feature_baseline"}
    drift_detection : bool
    use_memory : bool
        When false, each step trains on the arriving example only and the
        warm-start prototypes are kept for the whole stream.
    cost_model, ged_policy : GED settings (defaults when None).
    classifier : ClassifierConfig or None
    random_state : int
        Seeds classifier initialisation and shuffling.
    distance_cache : DistanceCache or None
        Shared memo of graph distances. Values are deterministic, so sharing a
        cache between runs over the same graphs never changes results.
    """

    def __init__(self, n_classes=3, memory_size=10, n_prototypes=3, window_size=50, beta=4.5, fading_factor=0.99,
                 method="prototype_embedding", drift_detection=True, use_memory=True, cost_model=None,
                 ged_policy=None, classifier=None, random_state=0, distance_cache=None):
        self.n_classes = n_classes
        self.memory_size = memory_size
        self.n_prototypes = n_prototypes
        self.window_size = window_size
        self.beta = beta
        self.fading_factor = fading_factor
        self.method = method
        self.drift_detection = drift_detection
        self.use_memory = use_memory
        self.cost_model = cost_model
        self.ged_policy = ged_policy
        self.classifier = classifier
        self.random_state = random_state
        self.distance_cache = distance_cache

    @classmethod
    def from_config(cls, config: PipelineConfig, random_state=None, distance_cache=None):
        config.validate()
        return cls(n_classes=config.n_classes, memory_size=config.memory_size, n_prototypes=config.n_prototypes,
                   window_size=config.window_size, beta=config.beta, fading_factor=config.fading_factor,
                   method=config.method, drift_detection=config.drift_detection, use_memory=config.use_memory,
                   cost_model=config.cost_model, ged_policy=config.ged_policy, classifier=config.classifier,
                   random_state=config.seed if random_state is None else random_state,
                   distance_cache=distance_cache)

    def _config(self) -> PipelineConfig:
        return PipelineConfig(self.n_classes, self.memory_size, self.n_prototypes, self.window_size, self.beta,
                              self.fading_factor, self.cost_model or GedCostModel(), self.ged_policy or GedPolicy(),
                              self.classifier or ClassifierConfig(), self.method, self.drift_detection,
                              self.use_memory, self.random_state).validate()

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(range(1, self.n_classes + 1))

    def _represent(self, graph: AttributedGraph) -> np.ndarray:
        if self.method == "feature_baseline":
            return self.features_.transform_one(graph)
        return embed(graph, self.prototypes_, self.metric_)

    def warm_start(self, graphs: Sequence[AttributedGraph], y) -> "GraphStreamClassifier":
        """Fill the memories with exactly ``memory_size`` labelled graphs per class; no training happens."""
        if hasattr(self, "t_"):
            raise RuntimeError("pipeline is already warm-started")
        config = self._config()
        graphs = check_graphs(graphs, validate=True)
        y = check_labels(y, self.n_classes)
        if len(graphs) != len(y):
            raise ValueError("graphs and labels have different lengths")
        counts = np.bincount(y, minlength=self.n_classes + 1)[1:]
        if np.any(counts != self.memory_size):
            raise ValueError(f"warm start needs exactly {self.memory_size} graphs per class, got {counts.tolist()}")
        check_homogeneous(graphs)
        # one graph with nodes and one with edges (if any) pin the stream's attribute dimensions
        self._reference = [g for g in (next((g for g in graphs if g.n_nodes), None),
                                       next((g for g in graphs if g.n_edges), None)) if g is not None]

        self.metric_ = GraphDistance(config.cost_model, config.ged_policy,
                                     self.distance_cache if self.distance_cache is not None else DistanceCache())
        self.memory_ = ClassMemory(self.labels, self.memory_size)
        self.embeddings_ = EmbeddingMemory(self.labels, self.memory_size)
        self._arrival = 0
        for g, c in zip(graphs, y.tolist()):
            self._arrival += 1
            self.memory_.append(g, c, self._arrival)

        if self.method == "feature_baseline":
            self.features_ = GraphFeatureExtractor().fit(graphs)
            self.prototypes_ = None
            n_features = 2
        else:
            self.prototypes_ = recalculate_prototypes(self.memory_, self.n_prototypes, self.metric_)
            n_features = len(self.prototypes_)
        for c in self.labels:
            for g in self.memory_.graphs(c):
                self.embeddings_.append(self._represent(g), c)

        self.classifier_ = IncrementalMLPClassifier(**config.classifier.estimator_params(),
                                                    random_state=self.random_state)
        self.classifier_.initialize(n_features, np.array(self.labels))
        self.detector_ = BinomialDriftDetector(self.window_size, self.beta)
        self.tracker_ = PrequentialTracker(self.n_classes, self.fading_factor)
        self.drift_steps_ = []
        self.t_ = 0
        return self

    def predict(self, graphs) -> np.ndarray:
        check_is_fitted(self, "t_")
        graphs = check_graphs(graphs)
        X = np.array([self._represent(g) for g in graphs])
        return self.classifier_.predict(X)

    def run_step(self, graph: AttributedGraph, y: int) -> StepRecord:
        check_is_fitted(self, "t_")
        step = self.t_ + 1
        start = time.perf_counter()
        try:
            record = self._step(graph, int(y), step)
        except Exception as exc:
            raise PipelineStepError(step, exc) from exc
        record.wall_time = time.perf_counter() - start
        return record

    def _step(self, graph, y, step) -> StepRecord:
        if not 1 <= y <= self.n_classes:
            raise ValueError(f"label {y} outside 1..{self.n_classes}")
        graph.check()
        check_homogeneous([*self._reference, graph])
        self.t_ = step
        x = self._represent(graph)
        y_pred = int(self.classifier_.predict(x[None, :])[0])
        correct = int(y_pred == y)

        drift = False
        if self.drift_detection:
            drift = self.detector_.update(correct)
            if drift:
                self.drift_steps_.append(step)
                if self.method == "prototype_embedding" and self.use_memory:
                    self.prototypes_ = recalculate_prototypes(self.memory_, self.n_prototypes, self.metric_)
                    reembed_all(self.memory_, self.embeddings_, self.prototypes_, self.metric_)
                    x = self._represent(graph)
                self.detector_.reset()
                logger.debug("drift at t=%d", step)

        if self.use_memory:
            self._arrival += 1
            append(self.memory_, self.embeddings_, graph, y, x, self._arrival)
            X, Y = self.embeddings_.training_set()
        else:
            X, Y = x[None, :], np.array([y])
        loss = self.classifier_.train_step(X, Y)
        gm = self.tracker_.update(y, y_pred)
        return StepRecord(step, y, y_pred, correct, drift, gm, tuple(self.tracker_.recalls), loss)

    def partial_fit(self, graphs, y):
        """Run one test-then-train step per (graph, label) pair."""
        for g, c in zip(check_graphs(graphs), check_labels(y, self.n_classes).tolist()):
            self.run_step(g, c)
        return self


@dataclass
class StreamRunResult:
    records: list[list[StepRecord]]
    mean_gmean: np.ndarray
    stderr_gmean: np.ndarray
    seeds: list[int]
    drift_steps: list[list[int]]

    @property
    def final_gmean(self) -> float:
        return float(self.mean_gmean[-1])


def aggregate(records: list[list[StepRecord]]) -> tuple[np.ndarray, np.ndarray]:
    """Per-step mean and standard error of the prequential G-mean across repetitions."""
    g = np.array([[r.gmean for r in rep] for rep in records], dtype=float)
    mean = g.mean(axis=0)
    if g.shape[0] < 2:
        return mean, np.zeros_like(mean)
    return mean, g.std(axis=0, ddof=1) / np.sqrt(g.shape[0])


def run_stream(config: PipelineConfig, warm_start, stream, repetitions: int = 1, base_seed: int | None = None,
               cache: DistanceCache | None = None) -> StreamRunResult:
    """Run the pipeline ``repetitions`` times; repetition ``r`` uses seed ``base_seed + r``.

    ``warm_start`` and ``stream`` are sequences of records with ``graph`` and
    ``label`` attributes. One distance cache is shared across repetitions.
    """
    config.validate()
    warm_start, stream = list(warm_start), list(stream)
    if not stream:
        raise ValueError("stream is empty")
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    check_homogeneous([r.graph for r in warm_start + stream])
    base = config.seed if base_seed is None else base_seed
    cache = cache if cache is not None else DistanceCache()
    all_records, seeds, drifts = [], [], []
    for rep in range(repetitions):
        seed = base + rep
        model = GraphStreamClassifier.from_config(replace(config, seed=seed), distance_cache=cache)
        model.warm_start([r.graph for r in warm_start], [r.label for r in warm_start])
        records = [model.run_step(r.graph, r.label) for r in stream]
        logger.info("repetition %d (seed %d): final G-mean %.4f, drifts at %s", rep, seed, records[-1].gmean,
                    model.drift_steps_)
        all_records.append(records)
        seeds.append(seed)
        drifts.append(list(model.drift_steps_))
    mean, stderr = aggregate(all_records)
    return StreamRunResult(all_records, mean, stderr, seeds, drifts)
