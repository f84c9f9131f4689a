from __future__ import annotations

import csv
from typing import Sequence

import numpy as np

from graphstream.io.atomic import atomic_write

STEP_COLUMNS = ("rep", "t", "y", "yhat", "correct", "drift_flag", "gmean")
AGGREGATE_COLUMNS = ("t", "mean_gmean", "stderr_gmean")


def _fmt(x: float) -> str:
    return repr(float(x))


def write_results_csv(records: Sequence[Sequence], mean: np.ndarray, stderr: np.ndarray, path: str,
                      aggregate_path: str) -> None:
    """Per-step rows for every repetition (``rep`` counts from 1) plus the per-step aggregate file."""
    if not records or not any(records):
        raise ValueError("no step records to write")
    with atomic_write(path, newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(STEP_COLUMNS)
        for rep, steps in enumerate(records, start=1):
            for r in steps:
                w.writerow([rep, r.t, r.y, r.y_pred, r.correct, int(r.drift), _fmt(r.gmean)])
    t_values = [r.t for r in records[0]]
    with atomic_write(aggregate_path, newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(AGGREGATE_COLUMNS)
        for t, m, s in zip(t_values, mean, stderr):
            w.writerow([t, _fmt(m), _fmt(s)])


def read_results_csv(path: str) -> list[dict]:
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))
