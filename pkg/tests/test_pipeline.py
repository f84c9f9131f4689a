import numpy as np
import pytest

from graphstream.classifier import ClassifierConfig, IncrementalMLPClassifier
from graphstream.exceptions import ConfigError, PipelineStepError
from graphstream.graph import AttributedGraph
from graphstream.io.synthetic import SyntheticStreamSpec, generate_synthetic
from graphstream.pipeline import GraphStreamClassifier, PipelineConfig, run_stream
from graphstream.prototypes import embed, recalculate_prototypes

SMALL = ClassifierConfig(hidden_layers=[16])


@pytest.fixture(scope="module")
def letters():
    return generate_synthetic(SyntheticStreamSpec.letters(segments=((30, "none"), (30, "high")), seed=2))


def started(warm, **kw):
    kw.setdefault("classifier", SMALL)
    return GraphStreamClassifier(**kw).warm_start([r.graph for r in warm], [r.label for r in warm])


def test_warm_start_fills_memories(letters):
    warm, _ = letters
    model = started(warm)
    assert len(model.memory_) == 30 and len(model.embeddings_) == 30
    assert len(model.prototypes_) == 9
    assert model.t_ == 0 and model.drift_steps_ == []
    X, y = model.embeddings_.training_set()
    assert X.shape == (30, 9) and np.bincount(y).tolist() == [0, 10, 10, 10]


def test_no_training_during_warm_start(letters):
    warm, _ = letters
    model = started(warm, random_state=4)
    fresh = IncrementalMLPClassifier(**SMALL.estimator_params(), random_state=4).initialize(9, np.array([1, 2, 3]))
    for a, b in zip(model.classifier_.coefs_ + model.classifier_.intercepts_, fresh.coefs_ + fresh.intercepts_):
        assert np.array_equal(a, b)


def test_second_warm_start_rejected(letters):
    warm, _ = letters
    model = started(warm)
    with pytest.raises(RuntimeError, match="already"):
        model.warm_start([r.graph for r in warm], [r.label for r in warm])


def test_wrong_per_class_counts_rejected(letters):
    warm, _ = letters
    with pytest.raises(ValueError, match="exactly 10"):
        started(warm[:-1])


def test_invalid_settings_rejected(letters):
    warm, _ = letters
    with pytest.raises(ConfigError):
        started(warm, n_prototypes=10)
    with pytest.raises(ConfigError):
        started(warm, method="svm")


def test_prediction_uses_parameters_from_the_previous_step(letters):
    warm, stream = letters
    model = started(warm)
    for r in stream[:20]:
        frozen = IncrementalMLPClassifier(**SMALL.estimator_params()).initialize(9, np.array([1, 2, 3]))
        frozen.coefs_ = [w.copy() for w in model.classifier_.coefs_]
        frozen.intercepts_ = [b.copy() for b in model.classifier_.intercepts_]
        x = embed(r.graph, model.prototypes_, model.metric_)
        record = model.run_step(r.graph, r.label)
        assert record.y_pred == frozen.predict(x[None, :])[0]
        assert record.correct == int(record.y_pred == r.label)


def test_disabled_detector_keeps_prototype_object(letters):
    warm, stream = letters
    model = started(warm, drift_detection=False, window_size=5)
    protos = model.prototypes_
    for r in stream:
        assert not model.run_step(r.graph, r.label).drift
        assert model.prototypes_ is protos


def test_drift_branch_recomputes_everything(letters):
    warm, stream = letters
    model = started(warm)
    for r in stream[:5]:
        model.run_step(r.graph, r.label)
    old = model.prototypes_
    expected = recalculate_prototypes(model.memory_, 3, model.metric_)
    model.detector_.update = lambda score: True
    g = stream[5]
    record = model.run_step(g.graph, g.label)
    assert record.drift and model.drift_steps_ == [6]
    assert model.prototypes_ is not old
    assert [p.id for p in model.prototypes_.graphs] == [p.id for p in expected.graphs]
    for c in model.labels:
        audit = np.array([embed(h, model.prototypes_, model.metric_) for h in model.memory_.graphs(c)])
        assert np.array_equal(audit, np.array(list(model.embeddings_.queues[c])))


def test_detector_is_reset_but_classifier_is_not(letters):
    warm, stream = letters
    model = started(warm)
    model.detector_.update = lambda score: True
    reset_calls = []
    model.detector_.reset = lambda: reset_calls.append(1)
    before = [w.copy() for w in model.classifier_.coefs_]
    model.run_step(stream[0].graph, stream[0].label)
    assert reset_calls == [1]
    assert model.classifier_.n_iter_ == 1
    assert model.classifier_.coefs_[0].shape == before[0].shape


def test_memory_is_conserved(letters):
    warm, stream = letters
    model = started(warm)
    for r in stream:
        model.run_step(r.graph, r.label)
        assert [len(model.memory_.queues[c]) for c in model.labels] == [10, 10, 10]
        assert model.memory_.graphs(r.label)[-1] is r.graph
    assert model.t_ == len(stream)


def test_without_memory_trains_on_the_current_example_only(letters):
    warm, stream = letters
    model = started(warm, use_memory=False, window_size=5)
    shapes = []
    original = model.classifier_.train_step
    model.classifier_.train_step = lambda X, y: shapes.append(X.shape) or original(X, y)
    protos = model.prototypes_
    warm_ids = [g.id for g in model.memory_.graphs(1)]
    model.detector_.update = lambda score: True
    for r in stream[:10]:
        model.run_step(r.graph, r.label)
    assert shapes == [(1, 9)] * 10
    assert model.prototypes_ is protos
    assert [g.id for g in model.memory_.graphs(1)] == warm_ids


def test_repeating_the_warm_start_lowers_training_loss():
    monotone = 0
    for seed in range(10):
        warm, _ = generate_synthetic(SyntheticStreamSpec.letters(segments=((1, "med"),), seed=seed))
        model = started(warm, random_state=seed, classifier=ClassifierConfig(learning_rate=1e-4))
        losses = [model.run_step(warm[k % 30].graph, warm[k % 30].label).loss for k in range(50)]
        monotone += bool(np.all(np.diff(losses) <= 0))
    assert monotone >= 8


def test_feature_baseline_runs(letters):
    warm, stream = letters
    model = started(warm, method="feature_baseline")
    assert model.prototypes_ is None
    records = [model.run_step(r.graph, r.label) for r in stream[:10]]
    assert model.classifier_.coefs_[0].shape[0] == 2
    assert all(0.0 <= rec.gmean <= 1.0 for rec in records)


def test_step_errors_carry_the_step_index(letters):
    warm, stream = letters
    model = started(warm)
    model.run_step(stream[0].graph, stream[0].label)
    odd = AttributedGraph.from_arrays("odd", [[0.0, 0.0, 0.0]], [])
    with pytest.raises(PipelineStepError) as info:
        model.run_step(odd, 1)
    assert info.value.step == 2
    with pytest.raises(PipelineStepError, match="label 7"):
        model.run_step(stream[1].graph, 7)


def test_single_repetition_has_zero_stderr(letters):
    warm, stream = letters
    res = run_stream(PipelineConfig(classifier=SMALL), warm, stream[:15], repetitions=1)
    assert np.all(res.stderr_gmean == 0)
    assert np.array_equal(res.mean_gmean, [r.gmean for r in res.records[0]])
    assert res.seeds == [0]


def test_repetitions_use_consecutive_seeds_and_are_deterministic(letters):
    warm, stream = letters
    config = PipelineConfig(classifier=SMALL, seed=5)
    a = run_stream(config, warm, stream[:15], repetitions=3)
    b = run_stream(config, warm, stream[:15], repetitions=3)
    assert a.seeds == [5, 6, 7]
    assert np.array_equal(a.mean_gmean, b.mean_gmean)
    assert [[r.y_pred for r in rep] for rep in a.records] == [[r.y_pred for r in rep] for rep in b.records]
    assert np.all((a.mean_gmean >= 0) & (a.mean_gmean <= 1))


def test_empty_stream_rejected(letters):
    warm, _ = letters
    with pytest.raises(ValueError, match="empty"):
        run_stream(PipelineConfig(), warm, [])


def test_estimator_surface(letters):
    warm, stream = letters
    model = GraphStreamClassifier(n_prototypes=2, classifier=SMALL)
    assert model.get_params()["n_prototypes"] == 2
    model.warm_start([r.graph for r in warm], [r.label for r in warm])
    model.partial_fit([r.graph for r in stream[:5]], [r.label for r in stream[:5]])
    assert model.t_ == 5
    assert model.predict([r.graph for r in stream[5:8]]).shape == (3,)
