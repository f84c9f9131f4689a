import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphstream.drift import BinomialDriftDetector, window_stats


def filled(reference, moving, beta=4.5):
    det = BinomialDriftDetector(window_size=len(reference), beta=beta)
    for s in [*reference, *moving]:
        det.push_score(s)
    return det


def test_first_push_goes_to_moving_window():
    det = BinomialDriftDetector(window_size=3).push_score(1)
    assert len(det.moving_) == 1 and len(det.reference_) == 0


def test_cascade_after_w_plus_one_and_two_w_pushes():
    det = BinomialDriftDetector(window_size=3)
    scores = [1, 0, 1, 1, 0, 0]
    for s in scores[:4]:
        det.push_score(s)
    assert list(det.reference_) == [1]
    for s in scores[4:]:
        det.push_score(s)
    assert list(det.reference_) == scores[:3]
    assert list(det.moving_) == scores[3:]


def test_non_binary_score_rejected():
    with pytest.raises(ValueError):
        BinomialDriftDetector().push_score(0.5)


def test_window_stats_examples():
    mu, sigma = window_stats([1] * 90 + [0] * 10)
    assert mu == pytest.approx(0.9) and sigma == pytest.approx(0.03)
    assert window_stats([1, 1, 1]) == (1.0, 0.0)
    assert window_stats([0, 0]) == (0.0, 0.0)
    with pytest.raises(ValueError):
        window_stats([])


def test_threshold_and_alarm_examples():
    ref = [1] * 90 + [0] * 10
    det = filled(ref, [1] * 70 + [0] * 30)
    assert det.threshold == pytest.approx(0.765)
    assert det.check()
    assert not filled(ref, [1] * 80 + [0] * 20).check()


def test_perfect_windows_do_not_alarm():
    assert not filled([1] * 20, [1] * 20).check()


def test_reset_examples():
    det = filled([1] * 10, [0] * 10)
    assert det.check() and det.alarms_raised_ == 1
    det.reset()
    assert not det.check()
    det.reset()
    assert len(det.reference_) == len(det.moving_) == 0
    assert det.alarms_raised_ == 1


def test_invalid_parameters():
    with pytest.raises(ValueError):
        BinomialDriftDetector(window_size=0)
    with pytest.raises(ValueError):
        BinomialDriftDetector(beta=0.0)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 12), st.lists(st.integers(0, 1), max_size=80), st.floats(0.1, 6.0))
def test_window_invariants(w, scores, beta):
    det = BinomialDriftDetector(window_size=w, beta=beta)
    pushed = []
    for t, s in enumerate(scores, start=1):
        pushed.append(s)
        flag = det.update(s)
        if t < 2 * w:
            assert not flag
        assert len(det.moving_) <= w and len(det.reference_) <= w
        assert list(det.moving_) == pushed[-w:]
        assert list(det.reference_) == pushed[max(0, len(pushed) - 2 * w):max(0, len(pushed) - w)]
        if det.reference_:
            mu, sigma = window_stats(det.reference_)
            assert 0.0 <= mu <= 1.0 and det.threshold <= mu
            if len(det.reference_) == w and len(det.moving_) == w:
                assert flag == (sum(det.moving_) / w < mu - beta * sigma)
        if flag:
            det.reset()
            pushed = []
