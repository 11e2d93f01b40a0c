"""Out-of-sample accuracy measures and cross-method rank comparison."""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

GROUPS = ("Yearly", "Quarterly", "Monthly", "Other")
ALL_GROUP = "All"


class UndefinedMetricError(ValueError):
    """The metric is undefined for this input; callers report and exclude it."""


def _paired(actuals, forecasts) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(actuals, dtype=np.float64)
    f = np.asarray(forecasts, dtype=np.float64)
    if a.ndim != 1 or a.shape != f.shape:
        raise ValueError(f"actuals and forecasts must be 1-d and equal length, got {a.shape} vs {f.shape}")
    if a.size == 0:
        raise ValueError("need at least one forecast to score")
    return a, f


def smape(actuals, forecasts) -> float:
    """Symmetric MAPE in percent: (200/h) * sum(|y - yhat| / (|y| + |yhat|)).

    A term with |y| + |yhat| = 0 contributes zero. Always in [0, 200].
    """
    a, f = _paired(actuals, forecasts)
    denom = np.abs(a) + np.abs(f)
    terms = np.divide(np.abs(a - f), denom, out=np.zeros_like(denom), where=denom != 0)
    return float(200.0 / a.size * terms.sum())


def mase(insample, actuals, forecasts) -> float:
    """Mean absolute error scaled by the in-sample mean absolute first difference.

    Raises :class:`UndefinedMetricError` when the in-sample series is
    constant (zero scaling denominator).
    """
    y = np.asarray(insample, dtype=np.float64)
    if y.ndim != 1 or y.size < 2:
        raise ValueError(f"in-sample series must be 1-d with n >= 2, got shape {y.shape}")
    a, f = _paired(actuals, forecasts)
    scale = float(np.abs(np.diff(y)).sum())
    if scale == 0.0:
        raise UndefinedMetricError("constant in-sample series: scaled error undefined")
    return float((y.size - 1) / a.size * np.abs(a - f).sum() / scale)


def average_ranks(scores: Mapping[str, Sequence[float]]) -> dict[str, float]:
    """Mean rank of each method across series (rank 1 = lowest error, ties averaged).

    Every method must provide a finite score for every series; incomplete
    matrices are refused.
    """
    methods = list(scores)
    if not methods:
        raise ValueError("need at least one method to rank")
    matrix = np.array([np.asarray(scores[m], dtype=np.float64) for m in methods])
    if matrix.ndim != 2 or matrix.shape[1] == 0:
        raise ValueError("every method needs the same, non-empty series list")
    if not np.all(np.isfinite(matrix)):
        raise ValueError("missing or non-finite scores: rank matrix must be complete")
    ranks = np.apply_along_axis(rankdata, 0, matrix)
    return {m: float(r) for m, r in zip(methods, ranks.mean(axis=1))}


@dataclass(frozen=True)
class SeriesScore:
    """One (series, method) evaluation cell.

    ``smape``/``mase`` are None when undefined or failed; ``error`` carries
    the failure message when the method produced no forecasts at all.
    """

    series_id: str
    group: str
    method: str
    smape: float | None
    mase: float | None
    theta: float | None = None
    elapsed: float = 0.0
    error: str | None = None


@dataclass(frozen=True)
class AggregateRow:
    """Per (method, group) means in the shape of an M3-style results table."""

    method: str
    group: str
    n_series: int
    n_smape: int
    n_mase: int
    n_failed: int
    smape_mean: float | None
    mase_mean: float | None
    elapsed: float


# the shape of an M3-style results table: one row per (method, group)
EvaluationTable = list[AggregateRow]


def aggregate_scores(scores: Iterable[SeriesScore]) -> EvaluationTable:
    """Fold per-series scores into per-group and All rows, one set per method.

    The fold runs in input order, so the output is bit-stable regardless of
    how the scores were produced. The All row averages over every scored
    series, not over group means.
    """
    scores = list(scores)
    methods: list[str] = []
    for s in scores:
        if s.method not in methods:
            methods.append(s.method)
    rows: list[AggregateRow] = []
    for method in methods:
        per_method = [s for s in scores if s.method == method]
        for group in GROUPS + (ALL_GROUP,):
            cells = per_method if group == ALL_GROUP else [s for s in per_method if s.group == group]
            if group != ALL_GROUP and not cells:
                continue
            smapes = [s.smape for s in cells if s.smape is not None]
            mases = [s.mase for s in cells if s.mase is not None]
            rows.append(
                AggregateRow(
                    method=method,
                    group=group,
                    n_series=len(cells),
                    n_smape=len(smapes),
                    n_mase=len(mases),
                    n_failed=sum(1 for s in cells if s.error is not None),
                    smape_mean=float(np.mean(smapes)) if smapes else None,
                    mase_mean=float(np.mean(mases)) if mases else None,
                    elapsed=float(sum(s.elapsed for s in cells)),
                )
            )
    return rows
